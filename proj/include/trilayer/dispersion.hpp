#ifndef TRILAYER_DISPERSION_HPP
#define TRILAYER_DISPERSION_HPP

/**
 * @file dispersion.hpp
 * @brief Quadratic dispersion relation for the three-layer interface system.
 *
 * For a Fourier mode exp(iky + sigma t) the middle-layer amplitude is
 * f = A e^{kx} + B e^{-kx}. The two interface conditions form a homogeneous
 * 2x2 system in (A, B) whose sigma-multiplied determinant is
 *
 *   Q (sigma i - E_a)(sigma j - E_b) - (sigma n - E_b)(sigma m - E_a)
 *     = alpha sigma^2 + beta sigma + gamma,
 *
 * with Q = e^{2k(a-b)}, i = mu_L - mu, j = mu_R - mu, m = mu_L + mu,
 * n = mu_R + mu and the interface driving terms
 *
 *   E_a = ((mu - mu_L) U k^2 - T_a k^4) / mu
 *   E_b = ((mu_R - mu) U k^2 - T_b k^4) / mu.
 */

#include <complex>
#include <utility>

#include "trilayer/model.hpp"

namespace trilayer {

using Complex = std::complex<double>;

struct DrivingTerms {
    double E_a = 0.0;
    double E_b = 0.0;
};

/// Viscosity sums and differences that appear in the interface rows.
struct ViscosityCombinations {
    double left_diff = 0.0;   ///< mu_L - mu
    double right_diff = 0.0;  ///< mu_R - mu
    double left_sum = 0.0;    ///< mu_L + mu
    double right_sum = 0.0;   ///< mu_R + mu
};

/// alpha sigma^2 + beta sigma + gamma = 0. alpha < 0 for every valid config.
struct QuadraticCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct SpectralPoint {
    double k = 0.0;
    DrivingTerms drive;
    double Q = 1.0;  ///< e^{2k(a-b)}; underflows to 0 harmlessly at large k
    ViscosityCombinations visc;
    QuadraticCoefficients coeffs;
    double discriminant = 0.0;
    /// Roots ordered by descending real part, ties by descending imaginary
    /// part. Complex-conjugate pairs are exact conjugates.
    Complex sigma_plus;
    Complex sigma_minus;
};

ViscosityCombinations viscosity_combinations(const ValidatedConfig& cfg);

/// e^{2k(a-b)}.
double decay_factor(const ValidatedConfig& cfg, double k);

DrivingTerms mobility_terms(const ValidatedConfig& cfg, double k);

QuadraticCoefficients quadratic_coefficients(const ValidatedConfig& cfg, double k);

/// Both roots of the dispersion quadratic. Throws std::invalid_argument for k < 0.
SpectralPoint growth_rates(const ValidatedConfig& cfg, double k);

/// Roots of alpha s^2 + beta s + gamma (alpha != 0), larger-magnitude root
/// first by the cancellation-free formula, then ordered as in SpectralPoint.
std::pair<Complex, Complex> solve_quadratic(const QuadraticCoefficients& q);

/// Expanded form alpha s^2 + beta s + gamma.
Complex quadratic_residual(const QuadraticCoefficients& q, Complex sigma);

/// |alpha||s|^2 + |beta||s| + |gamma|.
double quadratic_scale(const QuadraticCoefficients& q, Complex sigma);

/// The sigma-multiplied interface determinant built directly from the four
/// row factors, not from (alpha, beta, gamma). Finite at sigma = 0, where it
/// equals gamma.
Complex determinant_residual(const ValidatedConfig& cfg, double k, Complex sigma);

/// Sum of the magnitudes of the two products in determinant_residual; the
/// reference size for its rounding error.
double determinant_scale(const ValidatedConfig& cfg, double k, Complex sigma);

/// Exact roots of the Q = 0 quadratic, which factors as
/// -(n sigma - E_b)(m sigma - E_a).
struct BranchLimits {
    double b_branch = 0.0;  ///< E_b / (mu_R + mu)
    double a_branch = 0.0;  ///< E_a / (mu_L + mu)
};
BranchLimits asymptotic_growth_rates(const ValidatedConfig& cfg, double k);

/// Nonzero root of the Q = 1 quadratic: (E_a + E_b) / (mu_L + mu_R), the
/// rate of a single interface carrying both tensions.
double collapsed_layer_rate(const ValidatedConfig& cfg, double k);

}  // namespace trilayer

#endif  // TRILAYER_DISPERSION_HPP
