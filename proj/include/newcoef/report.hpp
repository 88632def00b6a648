#ifndef NEWCOEF_REPORT_HPP
#define NEWCOEF_REPORT_HPP

#include <string>

#include <json.hpp>

#include "newcoef/analytic_bounds.hpp"
#include "newcoef/frey_modular.hpp"
#include "newcoef/newform_engine.hpp"
#include "newcoef/power_sieve.hpp"
#include "newcoef/thue_forms.hpp"

namespace newcoef {

// Insertion-ordered so identical inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char * report_schema = "newcoef-report/1";

const char * tool_version();

/// {"schema", "tool_version", "kind", "config", "result"}.
Json envelope(const std::string & kind, Json config, Json result);

Json to_json(const SequenceSpec & spec);
Json to_json(const SieveVerdict & v);
Json to_json(const ChainReport & r);
Json to_json(const ThueSolution & s);
Json to_json(const ExclusionReport & r);
Json to_json(const ConductorResult & r);
Json to_json(const LevelResult & r);
Json to_json(const NormTestResult & r);

/// 6 significant digits in scientific form, e.g. "2.77393e+02".
std::string format_real(const Real & x, int digits = 6);

} // namespace newcoef

#endif
