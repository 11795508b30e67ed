#include "trilayer/compatibility.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "trilayer/report.hpp"

namespace trilayer {

R9Residuals r9_identity_residuals(const ValidatedConfig& cfg, const EigenPair& pair) {
    const auto& p = cfg.params();
    const auto [E_a, E_b] = mobility_terms(cfg, pair.k);
    const Complex F_b = interface_ratio(pair, Interface::right);
    const Complex F_a = interface_ratio(pair, Interface::left);
    const double s = std::abs(pair.sigma);

    R9Residuals r;
    r.res_b = pair.sigma * (p.mu * F_b + p.mu_R) - E_b;
    r.res_a = pair.sigma * (p.mu_L - p.mu * F_a) - E_a;
    r.scale_b = s * (p.mu * std::abs(F_b) + p.mu_R) + std::abs(E_b);
    r.scale_a = s * (p.mu_L + p.mu * std::abs(F_a)) + std::abs(E_a);
    return r;
}

std::string_view to_string(Verdict verdict) {
    return verdict == Verdict::compatible ? "compatible" : "incompatible";
}

double cross_limit_mismatch(const ValidatedConfig& cfg, Interface matched) {
    const auto& p = cfg.params();
    const double m = p.mu_L + p.mu;
    const double n = p.mu_R + p.mu;
    // E_a / E_b -> T_a / T_b as k -> infinity.
    if (matched == Interface::right) return std::abs(n * p.T_a / p.T_b - m);
    return std::abs(m * p.T_b / p.T_a - n);
}

Verdict compatibility_verdict(const ValidatedConfig& cfg, double tolerance) {
    const auto& p = cfg.params();
    return cross_limit_mismatch(cfg, Interface::right) <= tolerance * (p.mu_L + p.mu_R) ? Verdict::compatible
                                                                                       : Verdict::incompatible;
}

double tension_ratio_residual(const ValidatedConfig& cfg) {
    const auto& p = cfg.params();
    return p.T_b / p.T_a - (p.mu + p.mu_R) / (p.mu_L + p.mu);
}

CompatibilityReport branch_limit_report(const ValidatedConfig& cfg, Branch branch, const std::vector<double>& k_sequence,
                                        double tolerance) {
    if (k_sequence.empty()) throw ConfigError({"k sequence is empty"});
    for (std::size_t i = 0; i < k_sequence.size(); ++i) {
        if (!(k_sequence[i] > 0.0) || !std::isfinite(k_sequence[i])) {
            throw ConfigError({"k sequence entries must be finite and > 0"});
        }
        if (i > 0 && !(k_sequence[i] > k_sequence[i - 1])) throw ConfigError({"k sequence must be ascending"});
    }
    const double k_last = k_sequence.back();
    if (decay_factor(cfg, k_last) >= kLimitDecayThreshold) {
        throw ConfigError({"sequence too short: e^{2k(a-b)} = " + format_number(decay_factor(cfg, k_last)) +
                           " at k=" + format_number(k_last) + " is not below 1e-12"});
    }

    const auto& p = cfg.params();
    const double m = p.mu_L + p.mu;
    const double n = p.mu_R + p.mu;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CompatibilityReport rep;
    rep.branch = branch;
    rep.k_sequence = k_sequence;
    for (const double k : k_sequence) {
        const EigenPair pair = eigenpair(cfg, k, branch);
        const auto [E_a, E_b] = mobility_terms(cfg, k);
        const bool zero = pair.sigma == Complex(0.0, 0.0);
        rep.sigma.push_back(pair.sigma);
        rep.Eb_over_sigma.push_back(zero ? Complex(nan, nan) : E_b / pair.sigma);
        rep.Ea_over_sigma.push_back(zero ? Complex(nan, nan) : E_a / pair.sigma);
        rep.F_at_a.push_back(interface_ratio(pair, Interface::left));
        rep.F_at_b.push_back(interface_ratio(pair, Interface::right));
    }
    rep.limit_Eb_over_sigma = rep.Eb_over_sigma.back();
    rep.limit_Ea_over_sigma = rep.Ea_over_sigma.back();

    const double err_b = std::abs(rep.limit_Eb_over_sigma - n) / n;
    const double err_a = std::abs(rep.limit_Ea_over_sigma - m) / m;
    rep.matched_interface = err_a < err_b ? Interface::left : Interface::right;
    rep.cross_limit_mismatch = cross_limit_mismatch(cfg, rep.matched_interface);
    rep.tension_ratio_residual = tension_ratio_residual(cfg);
    rep.verdict = rep.cross_limit_mismatch <= tolerance * (p.mu_L + p.mu_R) ? Verdict::compatible
                                                                            : Verdict::incompatible;
    return rep;
}

std::string_view to_string(MuFeasibility status) {
    switch (status) {
        case MuFeasibility::feasible: return "feasible";
        case MuFeasibility::equal_tensions: return "infeasible: equal tensions";
        case MuFeasibility::below_lower_bound: return "infeasible: lower bound";
        case MuFeasibility::above_upper_bound: return "infeasible: upper bound";
    }
    return "unknown";
}

FeasibleMu feasible_mu(double mu_L, double mu_R, double T_a, double T_b) {
    std::vector<std::string> problems;
    if (!(mu_L > 0.0)) problems.push_back("muL > 0 (muL=" + format_number(mu_L) + ")");
    if (!(mu_R > 0.0)) problems.push_back("muR > 0 (muR=" + format_number(mu_R) + ")");
    if (!(T_a > 0.0)) problems.push_back("Ta > 0 (Ta=" + format_number(T_a) + ")");
    if (!(T_b > 0.0)) problems.push_back("Tb > 0 (Tb=" + format_number(T_b) + ")");
    if (!(mu_L < mu_R)) problems.push_back("muL < muR violated");
    if (!problems.empty()) throw ConfigError(std::move(problems));

    if (T_a == T_b) return {MuFeasibility::equal_tensions, std::numeric_limits<double>::quiet_NaN()};
    const double mu_hat = (mu_R * T_a - mu_L * T_b) / (T_b - T_a);
    if (!(mu_hat > mu_L)) return {MuFeasibility::below_lower_bound, mu_hat};
    if (!(mu_hat < mu_R)) return {MuFeasibility::above_upper_bound, mu_hat};
    return {MuFeasibility::feasible, mu_hat};
}

}  // namespace trilayer
