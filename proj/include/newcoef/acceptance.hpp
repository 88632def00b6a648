#ifndef NEWCOEF_ACCEPTANCE_HPP
#define NEWCOEF_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace newcoef {

struct AcceptanceOptions {
    std::vector<int> only;   // empty runs criteria 1..9
    bool full_scale = false; // criterion 4 at 10^300, criterion 5 also for ell in {41, 43, 47, 97}
    unsigned threads = 1;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// "PASS 3 <title> (12.3 s): <detail>"
std::string format_line(const CriterionResult & r);

/// Runs the selected criteria, printing each line to `live` (when non-null) as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions & options, std::ostream * live = nullptr);

} // namespace newcoef

#endif
