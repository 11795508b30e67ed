#ifndef TRILAYER_REPORT_HPP
#define TRILAYER_REPORT_HPP

// Deterministic text artifacts: numbers, JSON and CSV.
//
// Numbers use the shortest decimal that round-trips (never more than 17
// significant digits), are locale independent, and print signed zero as "0".
// JSON objects keep insertion order; complex values are [re, im] pairs.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace trilayer {

class GrowthCurve;
struct CompatibilityReport;
struct EigenPair;
struct RowResiduals;
struct MuOptimum;
struct ScanTable;
class ValidatedConfig;

using Json = nlohmann::ordered_json;

std::string format_number(double value);

Json complex_json(std::complex<double> z);

/// Two-space indented JSON; arrays are written inline as `[x, y]`.
/// Non-finite numbers become null. Output ends with a newline.
std::string dump_json(const Json& value);

Json to_json(const CompatibilityReport& report);
Json eigen_json(const ValidatedConfig& cfg, const EigenPair& pair);
Json to_json(const MuOptimum& optimum);

/// `k,re_sigma_plus,im_sigma_plus,re_sigma_minus,im_sigma_minus,E_a,E_b,discriminant`
std::string dispersion_csv(const GrowthCurve& curve);
std::string trace_csv(const MuOptimum& optimum);
std::string scan_csv(const ScanTable& table);

}  // namespace trilayer

#endif  // TRILAYER_REPORT_HPP
