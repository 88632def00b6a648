#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "newcoef/acceptance.hpp"

int main(int argc, char ** argv)
{
    CLI::App app{"acceptance criteria, one PASS/FAIL line each"};
    newcoef::AcceptanceOptions opt;
    app.add_option("--only", opt.only)->delimiter(',')->check(CLI::Range(1, 9));
    app.add_flag("--full-scale", opt.full_scale);
    app.add_option("--threads", opt.threads);
    CLI11_PARSE(app, argc, argv);

    const auto results = newcoef::run_acceptance(opt, &std::cout);
    for (const auto & r : results)
        if (!r.pass)
            return EXIT_FAILURE;
    return EXIT_SUCCESS;
}
