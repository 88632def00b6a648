#include "newcoef/cli.hpp"

#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "newcoef/acceptance.hpp"
#include "newcoef/report.hpp"

namespace newcoef {

namespace {

constexpr int exit_conclusive = 0;
constexpr int exit_inconclusive = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpz_class parse_or_throw(const std::string & what, const std::string & text)
{
    try {
        return parse_integer(text);
    } catch (const std::exception &) {
        throw usage_error(what + ": not an integer: '" + text + "'");
    }
}

void require_positive(const std::string & what, const mpz_class & v)
{
    if (v <= 0)
        throw usage_error(what + " must be positive");
}

std::string lower_exp(const Real & x) { return x.str(2, std::ios_base::fixed); }

ThueForm parse_form(const std::string & name)
{
    auto number = [&](std::size_t pos) {
        const std::string digits = name.substr(pos);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw usage_error("form must be F_<2m> or Fhat_<prime>, got '" + name + "'");
        return std::stoul(digits);
    };
    if (name.rfind("Fhat_", 0) == 0)
        return build_Fhat(number(5));
    if (name.rfind("F_", 0) == 0) {
        const unsigned long k = number(2);
        if (k % 2 || k == 0)
            throw usage_error("F_k needs an even k >= 2");
        return build_F(unsigned(k / 2));
    }
    throw usage_error("form must be F_<2m> or Fhat_<prime>, got '" + name + "'");
}

struct Common {
    unsigned threads = 1;
    std::string format;
};

void emit(std::ostream & out, const Json & j) { out << j.dump(2) << "\n"; }

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"certificates that integers are not newform coefficients", "newcoef"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    Common common;
    std::string static_data;
    app.add_option("--threads", common.threads, "worker threads for sieve and search kernels")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--static-data", static_data, "static table file (overrides NEWCOEF_STATIC_DATA)");

    // tau
    auto * tau_cmd = app.add_subcommand("tau", "tau(n) for 1 <= n <= bound");
    std::string tau_bound = "100";
    std::string tau_format = "csv";
    tau_cmd->add_option("--bound", tau_bound, "largest n")->required();
    tau_cmd->add_option("--format", tau_format)->check(CLI::IsMember({"csv", "json"}));

    // exclude
    auto * ex_cmd = app.add_subcommand("exclude", "certify that alpha = +-ell^m is never a coefficient");
    std::string ex_alpha, ex_deep_bound = "10^300", ex_format = "json";
    unsigned ex_weight = 12;
    u64 ex_prime_bound = 10'000;
    i64 ex_xb = 3000, ex_yb = 13000;
    ex_cmd->add_option("--alpha", ex_alpha)->required();
    ex_cmd->add_option("--weight", ex_weight);
    ex_cmd->add_option("--sieve-prime-bound", ex_prime_bound);
    ex_cmd->add_option("--deep-index-bound", ex_deep_bound);
    ex_cmd->add_option("--thue-x-bound", ex_xb);
    ex_cmd->add_option("--thue-y-bound", ex_yb);
    ex_cmd->add_option("--format", ex_format)->check(CLI::IsMember({"json", "text"}));

    // sieve
    auto * sv_cmd = app.add_subcommand("sieve", "congruence sieve for d-th powers in a u_n + b v_n");
    std::string sv_a, sv_b;
    unsigned long sv_d = 0;
    u64 sv_bound = 10'000;
    sv_cmd->add_option("--a", sv_a)->required();
    sv_cmd->add_option("--b", sv_b)->required();
    sv_cmd->add_option("--d", sv_d)->required();
    sv_cmd->add_option("--prime-bound", sv_bound);

    // deep-sieve
    auto * ds_cmd = app.add_subcommand("deep-sieve", "CRT index sieve: any d-th power has index beyond the bound");
    std::string ds_a, ds_b, ds_bound = "10^50";
    unsigned long ds_d = 11;
    DeepSieveOptions ds_opt;
    ds_cmd->add_option("--a", ds_a)->required();
    ds_cmd->add_option("--b", ds_b)->required();
    ds_cmd->add_option("--d", ds_d);
    ds_cmd->add_option("--index-bound", ds_bound);
    ds_cmd->add_option("--prime-limit", ds_opt.prime_limit);
    ds_cmd->add_option("--smooth-bound", ds_opt.smooth_bound);
    ds_cmd->add_option("--residue-cap", ds_opt.residue_cap);
    ds_cmd->add_option("--work-cap", ds_opt.work_cap);
    ds_cmd->add_option("--explicit-check-limit", ds_opt.explicit_check_limit);

    // thue
    auto * th_cmd = app.add_subcommand("thue", "bounded search for form(x, y) in rhs");
    std::string th_form;
    std::vector<std::string> th_rhs;
    i64 th_xb = 3000, th_yb = 13000;
    bool th_full = false;
    th_cmd->add_option("--form", th_form, "F_<2m> or Fhat_<prime>")->required();
    th_cmd->add_option("--rhs", th_rhs, "target values (repeatable)")->required();
    th_cmd->add_option("--x-bound", th_xb);
    th_cmd->add_option("--y-bound", th_yb);
    th_cmd->add_flag("--full-scan", th_full, "evaluate every point of the box");

    // bounds
    auto * bd_cmd = app.add_subcommand("bounds", "chain the Thue solution bound against index growth");
    std::string bd_preset = "ell97", bd_format = "text";
    ChainParameters bd_params;
    std::string bd_index = "10^300", bd_L, bd_H, bd_gamma;
    bd_cmd->add_option("--preset", bd_preset)->check(CLI::IsMember({"ell97", "custom"}));
    bd_cmd->add_option("--L", bd_L, "discriminant bound");
    bd_cmd->add_option("--H", bd_H, "coefficient height bound");
    bd_cmd->add_option("--gamma", bd_gamma, "bound on |gamma|");
    bd_cmd->add_option("--ell", bd_params.ell);
    bd_cmd->add_option("--degree", bd_params.degree);
    bd_cmd->add_option("--rank", bd_params.unit_rank);
    bd_cmd->add_option("--index-bound", bd_index);
    bd_cmd->add_option("--growth-offset", bd_params.growth_offset);
    bd_cmd->add_option("--format", bd_format)->check(CLI::IsMember({"json", "text"}));

    // frey
    auto * fr_cmd = app.add_subcommand("frey", "Frey curve conductor, lowered level, norm test, point counts");
    fr_cmd->require_subcommand(1);
    std::string fr_A, fr_B, fr_C, fr_sa, fr_sb, fr_sc;
    unsigned long fr_n = 0;
    std::optional<int> fr_bmod4;
    bool fr_ab_even = false;
    auto add_instance = [&](CLI::App * c) {
        c->add_option("--A", fr_A)->required();
        c->add_option("--B", fr_B)->required();
        c->add_option("--C", fr_C)->required();
        c->add_option("--n", fr_n, "odd prime exponent")->required();
        c->add_option("--sol-a", fr_sa, "solution a (with --sol-b, --sol-c)");
        c->add_option("--sol-b", fr_sb);
        c->add_option("--sol-c", fr_sc);
        c->add_option("--b-mod4", fr_bmod4, "b mod 4 when no solution is given")->check(CLI::Range(0, 3));
        c->add_flag("--ab-even", fr_ab_even, "ab is even (when no solution is given)");
    };
    auto * fr_cond = fr_cmd->add_subcommand("conductor", "conductor of the Frey curve");
    add_instance(fr_cond);
    auto * fr_level = fr_cmd->add_subcommand("level", "level after level lowering");
    add_instance(fr_level);
    auto * fr_norm = fr_cmd->add_subcommand("norm-test", "does n divide Norm(c_p +- 2r)");
    std::string fr_x, fr_y, fr_disc, fr_div;
    u64 fr_p = 0;
    fr_norm->add_option("--x", fr_x)->required();
    fr_norm->add_option("--y", fr_y)->required();
    fr_norm->add_option("--disc", fr_disc, "field discriminant")->required();
    fr_norm->add_option("--p", fr_p)->required();
    fr_norm->add_option("--divisor", fr_div)->required();
    auto * fr_pts = fr_cmd->add_subcommand("points", "count points on Y^2 = X^3 + a2 X^2 + a4 X over F_p");
    i64 fr_a2 = 0, fr_a4 = 0;
    fr_pts->add_option("--a2", fr_a2)->required();
    fr_pts->add_option("--a4", fr_a4)->required();
    fr_pts->add_option("--p", fr_p)->required();

    // verify
    auto * vf_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<int> vf_only;
    bool vf_full = false;
    vf_cmd->add_option("--only", vf_only, "criterion ids")->delimiter(',')->check(CLI::Range(1, 9));
    vf_cmd->add_flag("--full-scale", vf_full, "criterion 4 at 10^300 and criterion 5 for more primes");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_conclusive;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_conclusive;
    } catch (const CLI::CallForVersion &) {
        out << tool_version() << "\n";
        return exit_conclusive;
    } catch (const CLI::ParseError & e) {
        err << "newcoef: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        std::unique_ptr<StaticTables> owned_tables;
        if (!static_data.empty())
            owned_tables = std::make_unique<StaticTables>(load_static_tables(static_data));

        if (*tau_cmd) {
            const mpz_class b = parse_or_throw("--bound", tau_bound);
            require_positive("--bound", b);
            if (b > 1'000'000)
                throw usage_error("--bound is limited to 10^6");
            const auto t = tau_table(b.get_ui());
            if (tau_format == "csv") {
                out << "n,tau\n";
                for (std::size_t n = 1; n < t.size(); ++n)
                    out << n << "," << t[n] << "\n";
            } else {
                Json vals = Json::array();
                for (std::size_t n = 1; n < t.size(); ++n)
                    vals.push_back(t[n].get_str());
                emit(out, envelope("tau", {{"bound", b.get_ui()}}, {{"tau", vals}}));
            }
            return exit_conclusive;
        }

        if (*ex_cmd) {
            ExclusionConfig cfg;
            cfg.sieve_prime_bound = ex_prime_bound;
            cfg.deep_index_bound = parse_or_throw("--deep-index-bound", ex_deep_bound);
            require_positive("--deep-index-bound", cfg.deep_index_bound);
            cfg.thue_x_bound = ex_xb;
            cfg.thue_y_bound = ex_yb;
            cfg.threads = common.threads;
            cfg.tables = owned_tables.get();
            const mpz_class alpha = parse_or_throw("--alpha", ex_alpha);
            const auto rep = exclude_value(alpha, ex_weight, cfg);
            const StaticTables & tables = cfg.tables ? *cfg.tables : default_static_tables();
            Json config{{"alpha", alpha.get_str()},
                        {"weight", ex_weight},
                        {"sieve_prime_bound", ex_prime_bound},
                        {"deep_index_bound", cfg.deep_index_bound.get_str()},
                        {"deep_prime_limit", cfg.deep.prime_limit},
                        {"deep_smooth_bound", cfg.deep.smooth_bound},
                        {"thue_box", {ex_xb, ex_yb}},
                        {"static_data", tables.origin}};
            if (ex_format == "json") {
                emit(out, envelope("exclusion", std::move(config), to_json(rep)));
            } else {
                out << "alpha = " << alpha << ", weight " << ex_weight << ": "
                    << (rep.excluded ? "excluded" : "inconclusive") << "\n";
                for (const auto & c : rep.cases)
                    out << "  d = " << c.d << " [" << c.route << "] " << to_string(c.status) << "\n";
                for (const auto & a : rep.assumptions)
                    out << "  assumes " << a << "\n";
            }
            return rep.excluded ? exit_conclusive : exit_inconclusive;
        }

        if (*sv_cmd) {
            const SequenceSpec spec(parse_or_throw("--a", sv_a), parse_or_throw("--b", sv_b));
            const auto v = congruence_sieve(spec, sv_d, sv_bound, {common.threads});
            emit(out, envelope("congruence-sieve",
                               {{"a", spec.a.get_str()}, {"b", spec.b.get_str()}, {"d", sv_d}, {"prime_bound", sv_bound}},
                               to_json(v)));
            return v.outcome == SieveOutcome::Eliminated ? exit_conclusive : exit_inconclusive;
        }

        if (*ds_cmd) {
            const SequenceSpec spec(parse_or_throw("--a", ds_a), parse_or_throw("--b", ds_b));
            const mpz_class bound = parse_or_throw("--index-bound", ds_bound);
            ds_opt.threads = common.threads;
            const auto v = deep_sieve(spec, ds_d, bound, ds_opt);
            emit(out, envelope("deep-sieve",
                               {{"a", spec.a.get_str()},
                                {"b", spec.b.get_str()},
                                {"d", ds_d},
                                {"index_bound", bound.get_str()},
                                {"prime_limit", ds_opt.prime_limit},
                                {"smooth_bound", ds_opt.smooth_bound},
                                {"residue_cap", ds_opt.residue_cap},
                                {"work_cap", ds_opt.work_cap},
                                {"explicit_check_limit", ds_opt.explicit_check_limit}},
                               to_json(v)));
            return v.outcome == SieveOutcome::Inconclusive ? exit_inconclusive : exit_conclusive;
        }

        if (*th_cmd) {
            const ThueForm form = parse_form(th_form);
            std::vector<mpz_class> rhs;
            Json rhs_json = Json::array();
            for (const auto & r : th_rhs) {
                rhs.push_back(parse_or_throw("--rhs", r));
                rhs_json.push_back(rhs.back().get_str());
            }
            const auto sols = bounded_search(form, rhs, th_xb, th_yb, th_full ? SearchMode::FullScan : SearchMode::Pruned,
                                             common.threads);
            Json coeffs = Json::array();
            for (const auto & c : form.coefficients)
                coeffs.push_back(c.get_str());
            Json sj = Json::array();
            for (const auto & s : sols)
                sj.push_back(to_json(s));
            emit(out, envelope("thue",
                               {{"form", form.name},
                                {"rhs", rhs_json},
                                {"x_bound", th_xb},
                                {"y_bound", th_yb},
                                {"mode", th_full ? "full-scan" : "pruned"}},
                               {{"coefficients_by_x_power", coeffs}, {"solutions", sj}}));
            return exit_conclusive;
        }

        if (*bd_cmd) {
            if (bd_preset == "custom") {
                if (!bd_L.empty())
                    bd_params.discriminant_bound = Real(parse_or_throw("--L", bd_L).get_str());
                if (!bd_H.empty())
                    bd_params.height_bound = Real(parse_or_throw("--H", bd_H).get_str());
                if (!bd_gamma.empty())
                    bd_params.gamma_bound = Real(parse_or_throw("--gamma", bd_gamma).get_str());
                bd_params.regulator = 4 * bd_params.discriminant_bound;
                bd_params.index_bound = parse_or_throw("--index-bound", bd_index);
            } else if (!bd_L.empty() || !bd_H.empty() || !bd_gamma.empty()) {
                throw usage_error("--L, --H and --gamma need --preset custom");
            }
            const auto rep = chained_bound_check(bd_params);
            if (bd_format == "json") {
                emit(out, envelope("bounds", {{"preset", bd_preset}, {"ell", bd_params.ell}}, to_json(rep)));
            } else {
                for (const auto & s : rep.steps)
                    out << s.label << ": " << (s.value.ln() > 0 ? "exp(10^" + lower_exp(s.value.log10_ln()) + ")" : "")
                        << "\n";
                const Real up = rep.x_power_bound.log10_ln(), lo = rep.growth_lower.log10_ln();
                // The preset states the round milestones; custom runs state ceil/floor.
                const long up_m = bd_preset == "ell97" ? 281 : long(ceil(up).convert_to<double>());
                const long lo_m = bd_preset == "ell97" ? 298 : long(floor(lo).convert_to<double>());
                const bool milestones = up <= up_m && lo >= lo_m && up_m < lo_m;
                out << "phi^3 > e: " << (rep.phi_cubed_exceeds_e ? "yes" : "no") << "\n";
                if (rep.closed && milestones)
                    out << "bound ≤ exp(10^" << up_m << ") < exp(10^" << lo_m << ") ≤ |x_n|\n";
                else
                    out << "chain does not close: bound exp(10^" << lower_exp(up) << "), |x_n| ≥ exp(10^"
                        << lower_exp(lo) << ")\n";
            }
            return rep.closed ? exit_conclusive : exit_inconclusive;
        }

        if (*fr_cmd) {
            if (*fr_norm) {
                const auto r = norm_test({parse_or_throw("--x", fr_x), parse_or_throw("--y", fr_y)},
                                         parse_or_throw("--disc", fr_disc), fr_p, parse_or_throw("--divisor", fr_div));
                emit(out, envelope("norm-test",
                                   {{"x", fr_x}, {"y", fr_y}, {"disc", fr_disc}, {"p", fr_p}, {"divisor", fr_div}},
                                   to_json(r)));
                return exit_conclusive;
            }
            if (*fr_pts) {
                const auto r = count_points_fp(fr_a2, fr_a4, fr_p);
                Json res{{"singular", r.singular}};
                if (!r.singular) {
                    res["count"] = r.count;
                    res["trace"] = r.trace;
                }
                emit(out, envelope("points", {{"a2", fr_a2}, {"a4", fr_a4}, {"p", fr_p}}, res));
                return exit_conclusive;
            }
            const FermatInstance inst{parse_or_throw("--A", fr_A), parse_or_throw("--B", fr_B),
                                      parse_or_throw("--C", fr_C), fr_n};
            Json config{{"A", fr_A}, {"B", fr_B}, {"C", fr_C}, {"n", fr_n}};
            const bool have_sol = !fr_sa.empty() || !fr_sb.empty() || !fr_sc.empty();
            std::optional<FreySolution> sol;
            SolutionShape shape;
            if (have_sol) {
                if (fr_sa.empty() || fr_sb.empty() || fr_sc.empty())
                    throw usage_error("--sol-a, --sol-b and --sol-c go together");
                sol = FreySolution{parse_or_throw("--sol-a", fr_sa), parse_or_throw("--sol-b", fr_sb),
                                   parse_or_throw("--sol-c", fr_sc)};
                config["solution"] = {fr_sa, fr_sb, fr_sc};
            } else {
                shape.ab_even = fr_ab_even;
                shape.b_mod4 = fr_bmod4;
                config["ab_even"] = fr_ab_even;
                if (fr_bmod4)
                    config["b_mod4"] = *fr_bmod4;
            }
            if (*fr_cond) {
                const auto r = sol ? frey_conductor(inst, *sol) : frey_conductor(inst, shape);
                emit(out, envelope("frey-conductor", std::move(config), to_json(r)));
            } else {
                const auto r = sol ? lowered_level(inst, *sol) : lowered_level(inst, shape);
                emit(out, envelope("frey-level", std::move(config), to_json(r)));
            }
            return exit_conclusive;
        }

        if (*vf_cmd) {
            AcceptanceOptions opt;
            opt.only = vf_only;
            opt.full_scale = vf_full;
            opt.threads = common.threads;
            const auto results = run_acceptance(opt, &out);
            const bool all = std::all_of(results.begin(), results.end(), [](const auto & r) { return r.pass; });
            return all ? exit_conclusive : exit_inconclusive;
        }
    } catch (const usage_error & e) {
        err << "newcoef: " << e.what() << "\n";
        return exit_usage;
    } catch (const table_load_error & e) {
        err << "newcoef: " << e.what() << "\n";
        return exit_usage;
    } catch (const invalid_input & e) {
        err << "newcoef: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

int run(int argc, const char * const * argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace newcoef
