#include "trilayer/dispersion.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace trilayer {

namespace {

void require_nonnegative(double k) {
    if (!(k >= 0.0)) throw std::invalid_argument("wavenumber must be >= 0");
}

}  // namespace

ViscosityCombinations viscosity_combinations(const ValidatedConfig& cfg) {
    const auto& p = cfg.params();
    return {p.mu_L - p.mu, p.mu_R - p.mu, p.mu_L + p.mu, p.mu_R + p.mu};
}

double decay_factor(const ValidatedConfig& cfg, double k) {
    return std::exp(-2.0 * k * cfg.layer_length());
}

DrivingTerms mobility_terms(const ValidatedConfig& cfg, double k) {
    require_nonnegative(k);
    const auto& p = cfg.params();
    const double k2 = k * k;
    const double k4 = k2 * k2;
    return {((p.mu - p.mu_L) * p.U * k2 - p.T_a * k4) / p.mu,
            ((p.mu_R - p.mu) * p.U * k2 - p.T_b * k4) / p.mu};
}

QuadraticCoefficients quadratic_coefficients(const ValidatedConfig& cfg, double k) {
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto v = viscosity_combinations(cfg);
    const double Q = decay_factor(cfg, k);
    return {Q * v.left_diff * v.right_diff - v.left_sum * v.right_sum,
            (v.left_sum * E_b + v.right_sum * E_a) - Q * (v.left_diff * E_b + v.right_diff * E_a),
            (Q - 1.0) * E_a * E_b};
}

std::pair<Complex, Complex> solve_quadratic(const QuadraticCoefficients& q) {
    const double disc = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
    if (disc < 0.0) {
        const double re = -q.beta / (2.0 * q.alpha);
        const double im = std::sqrt(-disc) / (2.0 * std::abs(q.alpha));
        return {Complex(re, im), Complex(re, -im)};
    }
    const double half = -0.5 * (q.beta + std::copysign(std::sqrt(disc), q.beta));
    if (half == 0.0) return {Complex(0.0), Complex(0.0)};
    double r1 = half / q.alpha;
    double r2 = q.gamma / half;
    if (r2 > r1) std::swap(r1, r2);
    return {Complex(r1), Complex(r2)};
}

SpectralPoint growth_rates(const ValidatedConfig& cfg, double k) {
    SpectralPoint sp;
    sp.k = k;
    sp.drive = mobility_terms(cfg, k);
    sp.Q = decay_factor(cfg, k);
    sp.visc = viscosity_combinations(cfg);
    sp.coeffs = quadratic_coefficients(cfg, k);
    sp.discriminant = sp.coeffs.beta * sp.coeffs.beta - 4.0 * sp.coeffs.alpha * sp.coeffs.gamma;
    std::tie(sp.sigma_plus, sp.sigma_minus) = solve_quadratic(sp.coeffs);
    return sp;
}

Complex quadratic_residual(const QuadraticCoefficients& q, Complex sigma) {
    return (q.alpha * sigma + q.beta) * sigma + q.gamma;
}

double quadratic_scale(const QuadraticCoefficients& q, Complex sigma) {
    const double s = std::abs(sigma);
    return std::abs(q.alpha) * s * s + std::abs(q.beta) * s + std::abs(q.gamma);
}

Complex determinant_residual(const ValidatedConfig& cfg, double k, Complex sigma) {
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto v = viscosity_combinations(cfg);
    const double Q = decay_factor(cfg, k);
    const Complex c = sigma * v.left_diff - E_a;
    const Complex d = sigma * v.left_sum - E_a;
    const Complex g = sigma * v.right_sum - E_b;
    const Complex h = sigma * v.right_diff - E_b;
    return Q * c * h - g * d;
}

double determinant_scale(const ValidatedConfig& cfg, double k, Complex sigma) {
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto v = viscosity_combinations(cfg);
    const double Q = decay_factor(cfg, k);
    const double s = std::abs(sigma);
    const double c = s * std::abs(v.left_diff) + std::abs(E_a);
    const double d = s * v.left_sum + std::abs(E_a);
    const double g = s * v.right_sum + std::abs(E_b);
    const double h = s * std::abs(v.right_diff) + std::abs(E_b);
    return Q * c * h + g * d;
}

BranchLimits asymptotic_growth_rates(const ValidatedConfig& cfg, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("asymptotic rates need k > 0");
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto v = viscosity_combinations(cfg);
    return {E_b / v.right_sum, E_a / v.left_sum};
}

double collapsed_layer_rate(const ValidatedConfig& cfg, double k) {
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto& p = cfg.params();
    return (E_a + E_b) / (p.mu_L + p.mu_R);
}

}  // namespace trilayer
