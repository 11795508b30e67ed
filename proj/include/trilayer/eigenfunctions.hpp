#ifndef TRILAYER_EIGENFUNCTIONS_HPP
#define TRILAYER_EIGENFUNCTIONS_HPP

/**
 * @file eigenfunctions.hpp
 * @brief Null vectors of the interface system and the amplitude f(x).
 *
 * Inside the middle layer f(x) = A e^{kx} + B e^{-kx}. Bare exponentials of
 * a or b are never formed; instead an eigenpair carries the coefficients
 * scaled at each interface,
 *
 *   left:  (a_hat, b_hat)             = (A e^{ka}, B e^{-ka}) / w
 *   right: (a_hat_right, b_hat_right) = (A e^{kb}, B e^{-kb}) / (w * right_scale)
 *
 * each normalized so its larger component is exactly 1. `right_scale` is
 * held as mantissa and exponent, so pairs with k (b - a) ~ 1e6 stay finite.
 *
 * The interface values f(a) and f(b) are stored separately (`f_left`,
 * `f_right`, in the same normalizations). Near sigma = 0 they are much
 * smaller than either coefficient and would be lost to cancellation if
 * recomputed as a sum.
 *
 * The interface rows are used in sigma-multiplied form,
 *
 *   row a:  a_hat (sigma (mu_L - mu) - E_a) + b_hat (sigma (mu_L + mu) - E_a) = 0
 *   row b:  a_hat_right (sigma (mu_R + mu) - E_b) + b_hat_right (sigma (mu_R - mu) - E_b) = 0
 *
 * so sigma = 0 never needs a division.
 */

#include <complex>
#include <string_view>

#include "trilayer/dispersion.hpp"

namespace trilayer {

enum class Branch { plus, minus };

std::string_view to_string(Branch branch);
/// Accepts "plus" or "minus"; throws ConfigError otherwise.
Branch parse_branch(std::string_view text);

/// Which interface: left is x = a, right is x = b.
enum class Interface { left, right };

std::string_view to_string(Interface side);

/// z = mantissa * exp(exponent); lets e^{+-k(b-a)} factors ride along
/// without overflowing.
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double exponent = 0.0;

    Complex value() const;
    /// log|z|; -inf for zero.
    double log_abs() const;
    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }
};

ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y);

struct EigenPair {
    double k = 0.0;
    Complex sigma;
    Branch branch = Branch::plus;
    Complex a_hat;
    Complex b_hat;
    Complex a_hat_right;
    Complex b_hat_right;
    Complex f_left;   ///< a_hat + b_hat, without cancellation
    Complex f_right;  ///< a_hat_right + b_hat_right, without cancellation
    ScaledComplex right_scale;  ///< links the right pair to the left normalization
    Interface source_row = Interface::left;  ///< row the vector was solved from
};

/// Multiplies the eigenfunction by c; every derived ratio is unchanged.
EigenPair scaled_by(const EigenPair& pair, Complex c);

struct RowResiduals {
    Complex row_a;
    Complex row_b;
    double scale_a = 0.0;  ///< sum of term magnitudes in row a
    double scale_b = 0.0;
    bool row_a_degenerate = false;  ///< both row-a coefficients vanish
    bool row_b_degenerate = false;

    double relative_a() const { return scale_a > 0.0 ? std::abs(row_a) / scale_a : 0.0; }
    double relative_b() const { return scale_b > 0.0 ? std::abs(row_b) / scale_b : 0.0; }
};

/// Default relative tolerance for accepting sigma as a dispersion root.
inline constexpr double kRootTolerance = 1e-8;

/**
 * @brief Null vector of the interface system at a dispersion root.
 *
 * Each non-degenerate row yields a candidate, (D, -C) from row a or (H, -G)
 * from row b. The candidate kept is the one with the smaller worst residual,
 * over both rows and both interface-ratio forms of the rows.
 * The branch label is that of the nearer computed root.
 *
 * @throws std::invalid_argument for k <= 0
 * @throws NumericalError not_a_root or doubly_degenerate
 */
EigenPair null_vector(const ValidatedConfig& cfg, double k, Complex sigma,
                      double root_tolerance = kRootTolerance);

/// null_vector for the requested root of growth_rates(cfg, k).
EigenPair eigenpair(const ValidatedConfig& cfg, double k, Branch branch);

RowResiduals boundary_residuals(const EigenPair& pair, const ValidatedConfig& cfg);

/// f(x) on the whole line: the layer solution between a and b, and the
/// decaying continuations f(a) e^{k(x-a)} and f(b) e^{-k(x-b)} outside.
ScaledComplex amplitude_scaled(const EigenPair& pair, const ValidatedConfig& cfg, double x);

/// amplitude_scaled(...).value(); may overflow to infinity for huge k (b - a).
Complex amplitude_at(const EigenPair& pair, const ValidatedConfig& cfg, double x);

/// F = (A e^{kx} - B e^{-kx}) / (A e^{kx} + B e^{-kx}) at an interface.
/// Throws NumericalError indeterminate_ratio when f vanishes there.
Complex interface_ratio(const EigenPair& pair, Interface side);

/// |f(b)| / |f(a)|; the cross-layer amplification. Throws if f(a) = 0.
double amplitude_ratio(const EigenPair& pair, const ValidatedConfig& cfg);
double log_amplitude_ratio(const EigenPair& pair, const ValidatedConfig& cfg);

/// eps f(x) exp(iky + sigma t).
Complex perturbation_velocity(const EigenPair& pair, const ValidatedConfig& cfg, double eps, double x, double y,
                              double t);

}  // namespace trilayer

#endif  // TRILAYER_EIGENFUNCTIONS_HPP
