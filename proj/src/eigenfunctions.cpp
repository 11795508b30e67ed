#include "trilayer/eigenfunctions.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace trilayer {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUnderflowFloor = std::numeric_limits<double>::min();

/// sigma-multiplied row factors: row a (C, D), row b (G, H).
struct RowFactors {
    Complex C, D, G, H;
    double scale_C, scale_D, scale_G, scale_H;
};

RowFactors row_factors(const ValidatedConfig& cfg, double k, Complex sigma) {
    const auto [E_a, E_b] = mobility_terms(cfg, k);
    const auto v = viscosity_combinations(cfg);
    const double s = std::abs(sigma);
    return {sigma * v.left_diff - E_a,
            sigma * v.left_sum - E_a,
            sigma * v.right_sum - E_b,
            sigma * v.right_diff - E_b,
            s * std::abs(v.left_diff) + std::abs(E_a),
            s * v.left_sum + std::abs(E_a),
            s * v.right_sum + std::abs(E_b),
            s * std::abs(v.right_diff) + std::abs(E_b)};
}

bool degenerate(Complex x, Complex y, double scale) {
    return std::abs(x) + std::abs(y) <= 8.0 * kEps * scale;
}

/// (num / den) e^{expo} for |result| <= 1, even when e^{expo} alone overflows.
Complex scaled_ratio(Complex num, Complex den, double expo) {
    if (num == Complex(0.0, 0.0)) return {0.0, 0.0};
    const Complex r = num / den;
    const Complex direct = r * std::exp(expo);
    if (std::isfinite(direct.real()) && std::isfinite(direct.imag()) && direct != Complex(0.0, 0.0)) return direct;
    return std::polar(std::exp(std::log(std::abs(r)) + expo), std::arg(r));
}

/// Below this k L' the interface values are carried across the layer in
/// cosh/sinh form.
constexpr double kSmallLayer = 0.5;

/// p e^{t} + q e^{-t} with |p|, |q| <= 1 and sum = p + q. Small |t| uses
/// sum cosh t + (p - q) sinh t so a nearly cancelling sum keeps its digits;
/// otherwise the larger exponential is factored out.
ScaledComplex two_exp_sum(Complex p, Complex q, Complex sum, double t) {
    if (std::abs(t) <= kSmallLayer) return {sum * std::cosh(t) + (p - q) * std::sinh(t), 0.0};
    if (t >= 0.0) return {p + q * std::exp(-2.0 * t), t};
    return {p * std::exp(2.0 * t) + q, -t};
}

/// Normalizes the null vector (p, q), known at one interface, and carries it
/// across the layer. `sum` is p + q evaluated without cancellation. Left and
/// right coefficients differ by e^{+-k L'}.
EigenPair assemble(double k, double layer, Complex sigma, Complex p, Complex q, Complex sum, Interface known_at) {
    const double s = k * layer;
    EigenPair pair;
    pair.k = k;
    pair.sigma = sigma;
    pair.source_row = known_at;

    // Normalize the known side so its larger component is exactly 1.
    Complex np = 1.0, nq = 1.0, nsum;
    if (std::abs(p) >= std::abs(q)) {
        nq = q / p;
        nsum = sum / p;
    } else {
        np = p / q;
        nsum = sum / q;
    }

    // Carry to the other side: (p, q) -> (p e^{dir s}, q e^{-dir s}).
    const double dir = known_at == Interface::left ? 1.0 : -1.0;
    const double log_p = np == Complex(0.0, 0.0) ? -INFINITY : std::log(std::abs(np)) + dir * s;
    const double log_q = nq == Complex(0.0, 0.0) ? -INFINITY : std::log(std::abs(nq)) - dir * s;
    Complex op, oq;
    ScaledComplex other_scale;  // other side = other_scale * (op, oq), in the known side's normalization
    if (log_p >= log_q) {
        op = 1.0;
        oq = scaled_ratio(nq, np, -2.0 * dir * s);
        other_scale = {np, dir * s};
    } else {
        oq = 1.0;
        op = scaled_ratio(np, nq, 2.0 * dir * s);
        other_scale = {nq, -dir * s};
    }
    Complex osum = op + oq;
    if (s <= kSmallLayer) {
        osum = (nsum * std::cosh(s) + dir * (np - nq) * std::sinh(s)) / other_scale.value();
    }

    if (known_at == Interface::left) {
        pair.a_hat = np;
        pair.b_hat = nq;
        pair.f_left = nsum;
        pair.a_hat_right = op;
        pair.b_hat_right = oq;
        pair.f_right = osum;
        pair.right_scale = other_scale;
    } else {
        // Re-express with the left side as the reference normalization.
        pair.a_hat = op;
        pair.b_hat = oq;
        pair.f_left = osum;
        pair.a_hat_right = np;
        pair.b_hat_right = nq;
        pair.f_right = nsum;
        pair.right_scale = {1.0 / other_scale.mantissa, -other_scale.exponent};
    }
    return pair;
}

/// Relative residuals of sigma (mu_L - mu F_a) = E_a and sigma (mu F_b + mu_R)
/// = E_b. These divide the rows by f at each interface, so they expose a
/// candidate whose small interface value has lost digits.
double ratio_identity_relative(const EigenPair& pair, const ValidatedConfig& cfg) {
    const auto& p = cfg.params();
    const auto [E_a, E_b] = mobility_terms(cfg, pair.k);
    const double s = std::abs(pair.sigma);
    double worst = 0.0;
    if (std::abs(pair.f_left) >= kUnderflowFloor) {
        const Complex F = (pair.a_hat - pair.b_hat) / pair.f_left;
        const double scale = s * (p.mu_L + p.mu * std::abs(F)) + std::abs(E_a);
        if (scale > 0.0) worst = std::max(worst, std::abs(pair.sigma * (p.mu_L - p.mu * F) - E_a) / scale);
    }
    if (std::abs(pair.f_right) >= kUnderflowFloor) {
        const Complex F = (pair.a_hat_right - pair.b_hat_right) / pair.f_right;
        const double scale = s * (p.mu * std::abs(F) + p.mu_R) + std::abs(E_b);
        if (scale > 0.0) worst = std::max(worst, std::abs(pair.sigma * (p.mu * F + p.mu_R) - E_b) / scale);
    }
    return worst;
}

double worst_relative(const EigenPair& pair, const ValidatedConfig& cfg) {
    const RowResiduals r = boundary_residuals(pair, cfg);
    return std::max({r.relative_a(), r.relative_b(), ratio_identity_relative(pair, cfg)});
}

}  // namespace

std::string_view to_string(Branch branch) { return branch == Branch::plus ? "plus" : "minus"; }

Branch parse_branch(std::string_view text) {
    if (text == "plus") return Branch::plus;
    if (text == "minus") return Branch::minus;
    throw ConfigError({"branch must be plus or minus, got " + std::string(text)});
}

std::string_view to_string(Interface side) { return side == Interface::left ? "a" : "b"; }

Complex ScaledComplex::value() const {
    if (is_zero()) return {0.0, 0.0};
    const Complex direct = mantissa * std::exp(exponent);
    if (std::isfinite(direct.real()) && std::isfinite(direct.imag()) && direct != Complex(0.0, 0.0)) return direct;
    return std::polar(std::exp(log_abs()), std::arg(mantissa));
}

double ScaledComplex::log_abs() const {
    if (is_zero()) return -INFINITY;
    return std::log(std::abs(mantissa)) + exponent;
}

ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
    return {x.mantissa * y.mantissa, x.exponent + y.exponent};
}

EigenPair scaled_by(const EigenPair& pair, Complex c) {
    EigenPair out = pair;
    out.a_hat *= c;
    out.b_hat *= c;
    out.f_left *= c;
    out.right_scale.mantissa *= c;
    return out;
}

RowResiduals boundary_residuals(const EigenPair& pair, const ValidatedConfig& cfg) {
    const RowFactors f = row_factors(cfg, pair.k, pair.sigma);
    RowResiduals r;
    r.row_a = pair.a_hat * f.C + pair.b_hat * f.D;
    r.scale_a = std::abs(pair.a_hat) * f.scale_C + std::abs(pair.b_hat) * f.scale_D;
    r.row_b = pair.a_hat_right * f.G + pair.b_hat_right * f.H;
    r.scale_b = std::abs(pair.a_hat_right) * f.scale_G + std::abs(pair.b_hat_right) * f.scale_H;
    r.row_a_degenerate = degenerate(f.C, f.D, f.scale_C + f.scale_D);
    r.row_b_degenerate = degenerate(f.G, f.H, f.scale_G + f.scale_H);
    return r;
}

EigenPair null_vector(const ValidatedConfig& cfg, double k, Complex sigma, double root_tolerance) {
    if (!(k > 0.0)) throw std::invalid_argument("null vector needs k > 0");

    const double det = std::abs(determinant_residual(cfg, k, sigma));
    const double det_scale = determinant_scale(cfg, k, sigma);
    if (det > root_tolerance * det_scale) {
        throw NumericalError(NumericalError::Kind::not_a_root,
                             "sigma is not a dispersion root at k=" + std::to_string(k) +
                                 " (relative residual " + std::to_string(det / det_scale) + ")");
    }

    const RowFactors f = row_factors(cfg, k, sigma);
    const double layer = cfg.layer_length();
    std::optional<EigenPair> best;
    double best_residual = 0.0;
    auto consider = [&](EigenPair candidate) {
        const double res = worst_relative(candidate, cfg);
        if (!best || res < best_residual) {
            best = candidate;
            best_residual = res;
        }
    };
    // D - C = 2 mu sigma and H - G = -2 mu sigma exactly.
    const double mu = cfg.params().mu;
    if (!degenerate(f.C, f.D, f.scale_C + f.scale_D)) {
        consider(assemble(k, layer, sigma, f.D, -f.C, 2.0 * mu * sigma, Interface::left));
    }
    if (!degenerate(f.G, f.H, f.scale_G + f.scale_H)) {
        consider(assemble(k, layer, sigma, f.H, -f.G, -2.0 * mu * sigma, Interface::right));
    }
    if (!best) {
        throw NumericalError(NumericalError::Kind::doubly_degenerate,
                             "both interface rows vanish at k=" + std::to_string(k) + "; the null space is 2-D");
    }

    const SpectralPoint sp = growth_rates(cfg, k);
    best->branch = std::abs(sigma - sp.sigma_plus) <= std::abs(sigma - sp.sigma_minus) ? Branch::plus : Branch::minus;
    return *best;
}

EigenPair eigenpair(const ValidatedConfig& cfg, double k, Branch branch) {
    const SpectralPoint sp = growth_rates(cfg, k);
    EigenPair pair = null_vector(cfg, k, branch == Branch::plus ? sp.sigma_plus : sp.sigma_minus);
    pair.branch = branch;
    return pair;
}

ScaledComplex amplitude_scaled(const EigenPair& pair, const ValidatedConfig& cfg, double x) {
    const auto& p = cfg.params();
    const double k = pair.k;
    if (x < p.a) return {pair.f_left, k * (x - p.a)};
    if (x > p.b) return pair.right_scale * ScaledComplex{pair.f_right, -k * (x - p.b)};
    // Expand about the nearer interface so the exponent stays <= k L'/2.
    if (x - p.a <= p.b - x) return two_exp_sum(pair.a_hat, pair.b_hat, pair.f_left, k * (x - p.a));
    return pair.right_scale * two_exp_sum(pair.a_hat_right, pair.b_hat_right, pair.f_right, k * (x - p.b));
}

Complex amplitude_at(const EigenPair& pair, const ValidatedConfig& cfg, double x) {
    return amplitude_scaled(pair, cfg, x).value();
}

Complex interface_ratio(const EigenPair& pair, Interface side) {
    const Complex p = side == Interface::left ? pair.a_hat : pair.a_hat_right;
    const Complex q = side == Interface::left ? pair.b_hat : pair.b_hat_right;
    const Complex den = side == Interface::left ? pair.f_left : pair.f_right;
    if (!(std::abs(den) >= kUnderflowFloor)) {
        throw NumericalError(NumericalError::Kind::indeterminate_ratio,
                             "indeterminate ratio: f vanishes at interface " + std::string(to_string(side)));
    }
    return (p - q) / den;
}

double log_amplitude_ratio(const EigenPair& pair, const ValidatedConfig& cfg) {
    const Complex fa = pair.f_left;
    if (!(std::abs(fa) >= kUnderflowFloor)) {
        throw NumericalError(NumericalError::Kind::indeterminate_ratio, "indeterminate: f(a) vanishes");
    }
    return amplitude_scaled(pair, cfg, cfg.params().b).log_abs() - std::log(std::abs(fa));
}

double amplitude_ratio(const EigenPair& pair, const ValidatedConfig& cfg) {
    const Complex fa = pair.f_left;
    if (!(std::abs(fa) >= kUnderflowFloor)) {
        throw NumericalError(NumericalError::Kind::indeterminate_ratio, "indeterminate: f(a) vanishes");
    }
    const ScaledComplex fb = amplitude_scaled(pair, cfg, cfg.params().b);
    return std::abs(fb.mantissa) / std::abs(fa) * std::exp(fb.exponent);
}

Complex perturbation_velocity(const EigenPair& pair, const ValidatedConfig& cfg, double eps, double x, double y,
                              double t) {
    if (!(eps > 0.0)) throw std::invalid_argument("perturbation amplitude must be > 0");
    ScaledComplex f = amplitude_scaled(pair, cfg, x);
    f.mantissa *= eps * std::polar(1.0, pair.k * y + pair.sigma.imag() * t);
    f.exponent += pair.sigma.real() * t;
    return f.value();
}

}  // namespace trilayer
