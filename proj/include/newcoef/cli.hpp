#ifndef NEWCOEF_CLI_HPP
#define NEWCOEF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace newcoef {

/// Exit codes: 0 conclusive, 1 inconclusive, 2 usage or configuration error.
int run(int argc, const char * const * argv);
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace newcoef

#endif
