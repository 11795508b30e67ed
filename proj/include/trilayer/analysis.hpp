#ifndef TRILAYER_ANALYSIS_HPP
#define TRILAYER_ANALYSIS_HPP

// Wavenumber sweeps, maximal growth, middle-viscosity optimization and
// two-parameter scans. "Growth" is always the real part of the larger root.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trilayer/compatibility.hpp"
#include "trilayer/dispersion.hpp"

namespace trilayer {

/// Re(sigma_plus) at k.
double max_branch_growth(const ValidatedConfig& cfg, double k);

/// Largest k at which E_a or E_b changes sign; nullopt when neither does.
std::optional<double> largest_resonant_wavenumber(const ValidatedConfig& cfg);

/// 10 sqrt(U max(mu - mu_L, mu_R - mu) / min(T_a, T_b)); beyond the cut both
/// driving terms are negative.
double default_k_max(const ValidatedConfig& cfg);

/// Linear spacing up to the largest resonant wavenumber, logarithmic above
/// it. Endpoints are exact; `samples` >= 2 points.
std::vector<double> wavenumber_grid(const ValidatedConfig& cfg, double k_min, double k_max, int samples);

struct KInterval {
    double lo = 0.0;
    double hi = 0.0;
};

class GrowthCurve {
public:
    std::vector<double> k_grid;
    std::vector<SpectralPoint> points;
    double sigma_max = 0.0;
    double k_at_max = 0.0;
    /// Maximal intervals where growth > 0, edges bisected to 1e-9 k_max.
    std::vector<KInterval> unstable_bands;
};

/// Throws ConfigError on an invalid range or samples < 2.
GrowthCurve sweep(const ValidatedConfig& cfg, double k_min, double k_max, int samples);

/// Same curve evaluated over the grid in reverse order; used to check that
/// assembly is by index only.
GrowthCurve sweep_reversed(const ValidatedConfig& cfg, double k_min, double k_max, int samples);

struct MaxGrowth {
    double k_star = 0.0;
    double sigma_star = 0.0;
};

inline constexpr int kDefaultGrowthSamples = 512;

/// Grid search, then golden-section refinement in the bracketing cells to
/// |dk| <= 1e-10 (k_max - k_min). Never returns less than the grid maximum.
MaxGrowth max_growth(const ValidatedConfig& cfg, double k_min, double k_max, int samples = kDefaultGrowthSamples);

struct MuEvaluation {
    double mu = 0.0;
    double objective = 0.0;
};

struct MuOptimum {
    double mu_star = 0.0;
    double objective_star = 0.0;
    std::vector<MuEvaluation> trace;  ///< every objective evaluation, in order
};

struct MuSearchOptions {
    int coarse_points = 32;
    int restarts = 3;
    int growth_samples = kDefaultGrowthSamples;
};

/**
 * Minimizes J(mu) = max growth over [k_min, k_max], with every other
 * parameter taken from `base`. The coarse grid also includes base's own mu
 * when it lies in the bounds, so the result is never worse than it.
 *
 * @throws ConfigError for empty bounds or bounds outside (mu_L, mu_R).
 */
MuOptimum optimize_mu(const ValidatedConfig& base, double mu_lo, double mu_hi, double k_min, double k_max,
                      const MuSearchOptions& options = {});

/// J(mu) for one middle viscosity.
double mu_objective(const ValidatedConfig& base, double mu, double k_min, double k_max,
                    int samples = kDefaultGrowthSamples);

enum class ScanParameter { mu, U, T_a, T_b, b, a };

std::string_view to_string(ScanParameter param);
/// Throws ConfigError for names outside {mu, U, T_a, T_b, b, a}.
ScanParameter parse_scan_parameter(std::string_view name);

struct ScanAxis {
    ScanParameter param = ScanParameter::mu;
    std::vector<double> values;
};

struct ScanCell {
    std::size_t row = 0;
    std::size_t col = 0;
    double value1 = 0.0;
    double value2 = 0.0;
    std::optional<MaxGrowth> growth;  ///< empty when the cell config is invalid
    Verdict verdict = Verdict::incompatible;
    std::string error;
};

struct ScanTable {
    ScanAxis axis1;
    ScanAxis axis2;
    std::vector<ScanCell> cells;  ///< row-major, axis1 selects the row
};

/// Invalid cells keep their error text and the scan continues.
ScanTable param_scan(const ValidatedConfig& base, const ScanAxis& axis1, const ScanAxis& axis2, double k_min,
                     double k_max, int samples = kDefaultGrowthSamples);

}  // namespace trilayer

#endif  // TRILAYER_ANALYSIS_HPP
