#ifndef TRILAYER_MODEL_HPP
#define TRILAYER_MODEL_HPP

/**
 * @file model.hpp
 * @brief Physical configuration of a three-layer Hele-Shaw displacement.
 *
 * Three immiscible fluids with constant viscosities sit in a Hele-Shaw cell,
 * viewed in the frame moving with the far-upstream speed U:
 *
 *   nu(x) = mu_L   for x < a     (displacing fluid)
 *   nu(x) = mu     for a < x < b (middle layer)
 *   nu(x) = mu_R   for x > b     (displaced fluid)
 *
 * Planar interfaces at x = a and x = b carry surface tensions T_a and T_b.
 * All quantities are in one consistent nondimensional system; the Darcy
 * permeability prefactor is absorbed into U.
 */

#include <string>
#include <string_view>
#include <vector>

#include "trilayer/errors.hpp"

namespace trilayer {

/// Raw, unchecked parameters. Field names match the JSON config keys.
struct FlowConfig {
    double mu_L = 0.0;  ///< displacing-fluid viscosity
    double mu = 0.0;    ///< middle-layer viscosity
    double mu_R = 0.0;  ///< displaced-fluid viscosity
    double U = 0.0;     ///< far-upstream displacement speed
    double T_a = 0.0;   ///< surface tension at x = a
    double T_b = 0.0;   ///< surface tension at x = b
    double a = 0.0;     ///< left interface position
    double b = 0.0;     ///< right interface position
    /// Skip the viscosity ordering and U > 0 checks (symmetry experiments).
    bool relax_ordering = false;

    friend bool operator==(const FlowConfig&, const FlowConfig&) = default;
};

/// One failed constraint, named, with the offending value(s) in `detail`.
struct Violation {
    std::string constraint;
    std::string detail;
};

class ValidatedConfig;

/// Every violated constraint of `raw`; empty iff the config is valid.
std::vector<Violation> check(const FlowConfig& raw);

/// Validates `raw`, throwing ConfigError listing all violations.
ValidatedConfig validate(const FlowConfig& raw);

/**
 * @brief A FlowConfig that passed validation.
 *
 * Only validate() constructs one, so holding a ValidatedConfig is proof that
 * 0 < mu_L < mu < mu_R, U > 0 (unless relaxed), T_a, T_b > 0 and a < b <= 0.
 */
class ValidatedConfig {
public:
    const FlowConfig& params() const noexcept { return params_; }

    /// Middle-layer thickness b - a (strictly positive).
    double layer_length() const noexcept { return params_.b - params_.a; }

    friend bool operator==(const ValidatedConfig&, const ValidatedConfig&) = default;

private:
    explicit ValidatedConfig(const FlowConfig& params) : params_(params) {}
    friend ValidatedConfig validate(const FlowConfig& raw);

    FlowConfig params_;
};

/// Re-validating is a no-op.
inline ValidatedConfig validate(const ValidatedConfig& cfg) { return cfg; }

/// Piecewise-constant viscosity profile. At x = a and x = b the middle value
/// is returned.
double viscosity_at(const ValidatedConfig& cfg, double x);

/// Parses the JSON config schema. Unknown keys are rejected and missing keys
/// reported by name; throws ConfigError.
FlowConfig parse_config(std::string_view json_text);

/// Reads and parses a config file; a missing file is a ConfigError naming it.
FlowConfig load_config(const std::string& path);

/// JSON text for `cfg` that parse_config maps back to the identical value.
std::string serialize_config(const FlowConfig& cfg);

}  // namespace trilayer

#endif  // TRILAYER_MODEL_HPP
