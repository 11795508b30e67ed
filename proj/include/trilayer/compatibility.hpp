#ifndef TRILAYER_COMPATIBILITY_HPP
#define TRILAYER_COMPATIBILITY_HPP

/**
 * @file compatibility.hpp
 * @brief Compatibility of the two interface conditions and its large-k limit.
 *
 * Each interface condition determines the same growth rate:
 *
 *   sigma = E_b / (mu F(k,b) + mu_R) = E_a / (mu_L - mu F(k,a)).
 *
 * For a genuine eigenpair both identities hold at every finite k. As
 * k -> infinity each root approaches one of E_b/(mu + mu_R) or
 * E_a/(mu_L + mu), so along one branch only one of the two quotients
 * E_b/sigma, E_a/sigma tends to its single-interface value. Requiring both
 * limits at once forces the tension-ratio restriction
 *
 *   T_b / T_a = (mu + mu_R) / (mu_L + mu),
 *
 * which a generic configuration violates.
 */

#include <string_view>
#include <vector>

#include "trilayer/eigenfunctions.hpp"

namespace trilayer {

/// The two identities in sigma-multiplied form:
///   res_b = sigma (mu F(k,b) + mu_R) - E_b
///   res_a = sigma (mu_L - mu F(k,a)) - E_a
struct R9Residuals {
    Complex res_b;
    Complex res_a;
    double scale_b = 0.0;
    double scale_a = 0.0;

    double relative_b() const { return scale_b > 0.0 ? std::abs(res_b) / scale_b : 0.0; }
    double relative_a() const { return scale_a > 0.0 ? std::abs(res_a) / scale_a : 0.0; }
};

R9Residuals r9_identity_residuals(const ValidatedConfig& cfg, const EigenPair& pair);

enum class Verdict { compatible, incompatible };

std::string_view to_string(Verdict verdict);

/// Relative tolerance on cross_limit_mismatch, against mu_L + mu_R.
inline constexpr double kCompatibilityTolerance = 1e-6;

/// Largest Q = e^{2k(a-b)} accepted at the last wavenumber of a report.
inline constexpr double kLimitDecayThreshold = 1e-12;

struct CompatibilityReport {
    Branch branch = Branch::plus;
    std::vector<double> k_sequence;
    std::vector<Complex> sigma;
    std::vector<Complex> Eb_over_sigma;
    std::vector<Complex> Ea_over_sigma;
    std::vector<Complex> F_at_a;
    std::vector<Complex> F_at_b;
    Complex limit_Eb_over_sigma;
    Complex limit_Ea_over_sigma;
    /// Interface whose single-interface rate the branch attains.
    Interface matched_interface = Interface::right;
    /// Distance of the unmatched quotient's limit from its required value:
    /// |n T_a/T_b - m| when matched at b, |m T_b/T_a - n| when matched at a.
    double cross_limit_mismatch = 0.0;
    double tension_ratio_residual = 0.0;
    Verdict verdict = Verdict::incompatible;
};

/**
 * Tabulates the quotients and interface ratios along an ascending wavenumber
 * sequence and classifies the branch by its last entry.
 *
 * @throws ConfigError "sequence too short" when the last k has Q >= 1e-12,
 *         or when the sequence is empty, non-positive or not ascending.
 * @throws NumericalError if an interface ratio is indeterminate.
 */
CompatibilityReport branch_limit_report(const ValidatedConfig& cfg, Branch branch, const std::vector<double>& k_sequence,
                                        double tolerance = kCompatibilityTolerance);

/// Large-k limit of the unmatched quotient, minus its required value.
double cross_limit_mismatch(const ValidatedConfig& cfg, Interface matched);

/// Verdict from the analytic mismatch with the branch matched at b.
Verdict compatibility_verdict(const ValidatedConfig& cfg, double tolerance = kCompatibilityTolerance);

/// T_b / T_a - (mu + mu_R) / (mu_L + mu).
double tension_ratio_residual(const ValidatedConfig& cfg);

enum class MuFeasibility { feasible, equal_tensions, below_lower_bound, above_upper_bound };

std::string_view to_string(MuFeasibility status);

/// Middle viscosity forced by the tension-ratio restriction,
/// mu = (mu_R T_a - mu_L T_b) / (T_b - T_a), and whether it lies strictly
/// inside (mu_L, mu_R).
struct FeasibleMu {
    MuFeasibility status = MuFeasibility::equal_tensions;
    double mu_hat = 0.0;  ///< NaN when the tensions are equal

    bool feasible() const { return status == MuFeasibility::feasible; }
};

/// Throws ConfigError unless all inputs are positive and mu_L < mu_R.
FeasibleMu feasible_mu(double mu_L, double mu_R, double T_a, double T_b);

}  // namespace trilayer

#endif  // TRILAYER_COMPATIBILITY_HPP
