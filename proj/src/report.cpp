#include "newcoef/report.hpp"

#include <sstream>

namespace newcoef {

namespace {

std::string str(const mpz_class & x) { return x.get_str(); }

Json strings(const std::vector<std::string> & v)
{
    Json a = Json::array();
    for (const auto & s : v)
        a.push_back(s);
    return a;
}

Json log_value(const LogMagnitude & m)
{
    Json j;
    j["ln"] = format_real(m.ln(), 12);
    if (m.ln() > 0)
        j["log10_ln"] = format_real(m.log10_ln(), 12);
    return j;
}

} // namespace

const char * tool_version() { return NEWCOEF_VERSION; }

std::string format_real(const Real & x, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << std::scientific << x;
    return os.str();
}

Json envelope(const std::string & kind, Json config, Json result)
{
    Json j;
    j["schema"] = report_schema;
    j["tool_version"] = tool_version();
    j["kind"] = kind;
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j;
}

Json to_json(const SequenceSpec & spec)
{
    Json j;
    j["a"] = str(spec.a);
    j["b"] = str(spec.b);
    j["disc_norm"] = str(spec.disc_norm());
    return j;
}

Json to_json(const SieveVerdict & v)
{
    Json j;
    j["outcome"] = to_string(v.outcome);
    j["spec"] = to_json(v.spec);
    j["power"] = v.power;
    if (v.index_bound)
        j["index_bound"] = str(*v.index_bound);
    Json primes = Json::array();
    for (const auto & p : v.primes_used)
        primes.push_back(Json::array({p.prime, p.period, p.allowed_count}));
    j["primes_used"] = std::move(primes); // [q, period, allowed residues]
    if (!v.witness.constraints().empty()) {
        Json w = Json::array();
        for (const auto & [l, c] : v.witness.constraints())
            w.push_back({{"prime", l}, {"modulus", c.modulus}, {"allowed", c.size()}});
        j["congruences"] = std::move(w);
    }
    if (v.modulus != 1) {
        j["modulus"] = str(v.modulus);
        j["surviving_residues"] = v.surviving_residues.size();
        j["checked_indices"] = v.checked_indices;
        j["nontrivial_powers"] = v.nontrivial_powers;
    }
    j["exceptions"] = v.exceptions;
    if (!v.note.empty())
        j["note"] = v.note;
    return j;
}

Json to_json(const ChainReport & r)
{
    Json j;
    Json steps = Json::array();
    for (const auto & s : r.steps) {
        Json step;
        step["label"] = s.label;
        step["value"] = log_value(s.value);
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    j["phi_cubed_exceeds_e"] = r.phi_cubed_exceeds_e;
    j["closed"] = r.closed;
    return j;
}

Json to_json(const ThueSolution & s) { return Json::array({s.x, s.y, str(s.value)}); }

Json to_json(const ExclusionReport & r)
{
    Json j;
    j["alpha"] = str(r.alpha);
    j["weight"] = r.weight;
    j["ell"] = r.ell;
    j["ell_exponent"] = r.ell_exponent;
    j["conclusion"] = r.excluded ? "excluded" : "inconclusive";
    j["assumptions"] = strings(r.assumptions);
    Json cases = Json::array();
    for (const auto & c : r.cases) {
        Json cj;
        cj["d"] = c.d;
        cj["route"] = c.route;
        cj["status"] = to_string(c.status);
        cj["assumptions"] = strings(c.assumptions);
        if (!c.table_points.empty()) {
            Json pts = Json::array();
            for (const auto & p : c.table_points)
                pts.push_back({{"x", str(p.x)}, {"y", str(p.y)}, {"source", p.source}});
            cj["table_points"] = std::move(pts);
        }
        if (!c.sequences.empty()) {
            Json seqs = Json::array();
            for (const auto & s : c.sequences) {
                Json sj;
                sj["spec"] = to_json(s.spec);
                sj["method"] = s.method;
                sj["status"] = to_string(s.status);
                if (s.congruence)
                    sj["congruence_sieve"] = to_json(*s.congruence);
                if (s.deep)
                    sj["deep_sieve"] = to_json(*s.deep);
                if (s.chain)
                    sj["bound_chain"] = to_json(*s.chain);
                sj["notes"] = strings(s.notes);
                seqs.push_back(std::move(sj));
            }
            cj["sequences"] = std::move(seqs);
        }
        if (c.thue_x_bound) {
            cj["box"] = {*c.thue_x_bound, *c.thue_y_bound};
            Json sols = Json::array();
            for (const auto & t : c.thue_solutions) {
                Json tj;
                tj["x"] = t.solution.x;
                tj["y"] = t.solution.y;
                tj["value"] = str(t.solution.value);
                tj["x_is_prime_power"] = t.x_is_prime_power;
                tj["y_is_square"] = t.y_is_square;
                tj["value_matches"] = t.value_matches;
                sols.push_back(std::move(tj));
            }
            cj["solutions"] = std::move(sols);
        }
        cj["notes"] = strings(c.notes);
        cases.push_back(std::move(cj));
    }
    j["cases"] = std::move(cases);
    return j;
}

Json to_json(const ConductorResult & r)
{
    Json j;
    j["alpha"] = r.alpha;
    j["known_part"] = str(r.known_part);
    j["ab_symbolic"] = r.ab_symbolic;
    j["formula"] = r.formula;
    if (auto v = r.value())
        j["value"] = str(*v);
    return j;
}

Json to_json(const LevelResult & r)
{
    Json j;
    Json levels = Json::array();
    for (const auto & l : r.levels)
        levels.push_back(str(l));
    j["levels"] = std::move(levels);
    j["trace"] = strings(r.trace);
    return j;
}

Json to_json(const NormTestResult & r)
{
    Json j;
    j["divisible"] = r.divisible;
    Json norms = Json::array();
    for (const auto & n : r.norms)
        norms.push_back(str(n));
    j["norms"] = std::move(norms);
    return j;
}

} // namespace newcoef
