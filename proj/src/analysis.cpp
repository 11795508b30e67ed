#include "trilayer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trilayer/report.hpp"

namespace trilayer {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

void check_range(double k_min, double k_max, int samples) {
    if (!std::isfinite(k_min) || !std::isfinite(k_max) || !(k_min >= 0.0) || !(k_min < k_max)) {
        throw ConfigError({"invalid wavenumber range [" + format_number(k_min) + ", " + format_number(k_max) +
                           "]: need 0 <= kmin < kmax"});
    }
    if (samples < 2) throw ConfigError({"samples must be >= 2"});
}

std::vector<double> linear_points(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int j = 0; j < n; ++j) out[j] = lo + (hi - lo) * j / (n - 1);
    out.back() = hi;
    return out;
}

/// n points lo (hi/lo)^{j/n}, j = 1..n (lo itself excluded).
std::vector<double> log_points_after(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double ratio = std::log(hi / lo);
    for (int j = 1; j <= n; ++j) out[j - 1] = lo * std::exp(ratio * j / n);
    out.back() = hi;
    return out;
}

/// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
double golden_maximize(F&& f, double lo, double hi, double tol) {
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden refinement of the grid maximum in the cells either side of it.
MaxGrowth refine_max(const ValidatedConfig& cfg, const std::vector<double>& grid, const std::vector<double>& growth,
                     double tol) {
    const auto best = std::max_element(growth.begin(), growth.end());
    const std::size_t i = static_cast<std::size_t>(best - growth.begin());
    MaxGrowth incumbent{grid[i], *best};

    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, grid.size() - 1)];
    auto f = [&cfg](double k) { return max_branch_growth(cfg, k); };
    const double k_ref = golden_maximize(f, lo, hi, tol);
    const double g_ref = f(k_ref);
    if (g_ref > incumbent.sigma_star) incumbent = {k_ref, g_ref};
    return incumbent;
}

double bisect_sign_change(const ValidatedConfig& cfg, double lo, double hi, double tol) {
    const bool lo_positive = max_branch_growth(cfg, lo) > 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if ((max_branch_growth(cfg, mid) > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

GrowthCurve sweep_impl(const ValidatedConfig& cfg, double k_min, double k_max, int samples, bool reverse) {
    GrowthCurve curve;
    curve.k_grid = wavenumber_grid(cfg, k_min, k_max, samples);
    const std::size_t n = curve.k_grid.size();
    curve.points.resize(n);
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t idx = reverse ? n - 1 - step : step;
        curve.points[idx] = growth_rates(cfg, curve.k_grid[idx]);
    }

    std::vector<double> growth(n);
    for (std::size_t i = 0; i < n; ++i) growth[i] = curve.points[i].sigma_plus.real();

    const MaxGrowth peak = refine_max(cfg, curve.k_grid, growth, 1e-10 * (k_max - k_min));
    curve.sigma_max = peak.sigma_star;
    curve.k_at_max = peak.k_star;

    const double edge_tol = 1e-9 * k_max;
    bool in_band = growth[0] > 0.0;
    double band_start = curve.k_grid[0];
    for (std::size_t i = 1; i < n; ++i) {
        const bool prev = growth[i - 1] > 0.0;
        const bool cur = growth[i] > 0.0;
        if (prev == cur) continue;
        const double edge = bisect_sign_change(cfg, curve.k_grid[i - 1], curve.k_grid[i], edge_tol);
        if (cur) {
            band_start = edge;
        } else {
            curve.unstable_bands.push_back({band_start, edge});
        }
        in_band = cur;
    }
    if (in_band) curve.unstable_bands.push_back({band_start, curve.k_grid.back()});
    return curve;
}

void set_param(FlowConfig& raw, ScanParameter param, double value) {
    switch (param) {
        case ScanParameter::mu: raw.mu = value; break;
        case ScanParameter::U: raw.U = value; break;
        case ScanParameter::T_a: raw.T_a = value; break;
        case ScanParameter::T_b: raw.T_b = value; break;
        case ScanParameter::b: raw.b = value; break;
        case ScanParameter::a: raw.a = value; break;
    }
}

}  // namespace

double max_branch_growth(const ValidatedConfig& cfg, double k) { return growth_rates(cfg, k).sigma_plus.real(); }

std::optional<double> largest_resonant_wavenumber(const ValidatedConfig& cfg) {
    const auto& p = cfg.params();
    std::optional<double> out;
    for (const double k2 : {p.U * (p.mu - p.mu_L) / p.T_a, p.U * (p.mu_R - p.mu) / p.T_b}) {
        if (k2 > 0.0 && std::isfinite(k2)) out = std::max(out.value_or(0.0), std::sqrt(k2));
    }
    return out;
}

double default_k_max(const ValidatedConfig& cfg) {
    const auto& p = cfg.params();
    const double arg = p.U * std::max(p.mu - p.mu_L, p.mu_R - p.mu) / std::min(p.T_a, p.T_b);
    if (arg > 0.0) return 10.0 * std::sqrt(arg);
    // Relaxed configs can have no destabilized interface at all.
    return 10.0 * largest_resonant_wavenumber(cfg).value_or(1.0);
}

std::vector<double> wavenumber_grid(const ValidatedConfig& cfg, double k_min, double k_max, int samples) {
    check_range(k_min, k_max, samples);
    const auto k_res = largest_resonant_wavenumber(cfg);
    if (k_res && *k_res > k_min && *k_res < k_max) {
        const int n_lin = (samples + 1) / 2;
        auto grid = linear_points(k_min, *k_res, n_lin);
        const auto upper = log_points_after(*k_res, k_max, samples - n_lin);
        grid.insert(grid.end(), upper.begin(), upper.end());
        return grid;
    }
    if (k_res && *k_res <= k_min && k_min > 0.0) {
        auto grid = log_points_after(k_min, k_max, samples - 1);
        grid.insert(grid.begin(), k_min);
        return grid;
    }
    return linear_points(k_min, k_max, samples);
}

GrowthCurve sweep(const ValidatedConfig& cfg, double k_min, double k_max, int samples) {
    return sweep_impl(cfg, k_min, k_max, samples, false);
}

GrowthCurve sweep_reversed(const ValidatedConfig& cfg, double k_min, double k_max, int samples) {
    return sweep_impl(cfg, k_min, k_max, samples, true);
}

MaxGrowth max_growth(const ValidatedConfig& cfg, double k_min, double k_max, int samples) {
    const auto grid = wavenumber_grid(cfg, k_min, k_max, samples);
    std::vector<double> growth(grid.size());
    std::transform(grid.begin(), grid.end(), growth.begin(), [&cfg](double k) { return max_branch_growth(cfg, k); });
    return refine_max(cfg, grid, growth, 1e-10 * (k_max - k_min));
}

double mu_objective(const ValidatedConfig& base, double mu, double k_min, double k_max, int samples) {
    FlowConfig raw = base.params();
    raw.mu = mu;
    return max_growth(validate(raw), k_min, k_max, samples).sigma_star;
}

MuOptimum optimize_mu(const ValidatedConfig& base, double mu_lo, double mu_hi, double k_min, double k_max,
                      const MuSearchOptions& options) {
    const auto& p = base.params();
    if (!(mu_lo <= mu_hi)) {
        throw ConfigError({"empty mu bounds [" + format_number(mu_lo) + ", " + format_number(mu_hi) + "]"});
    }
    if (!(mu_lo > p.mu_L && mu_hi < p.mu_R)) {
        throw ConfigError({"mu bounds must lie inside (mu_L, mu_R) = (" + format_number(p.mu_L) + ", " +
                           format_number(p.mu_R) + ")"});
    }
    check_range(k_min, k_max, options.growth_samples);
    if (options.coarse_points < 2 || options.restarts < 1) throw ConfigError({"invalid mu search options"});

    MuOptimum result;
    auto evaluate = [&](double mu) {
        const double j = mu_objective(base, mu, k_min, k_max, options.growth_samples);
        result.trace.push_back({mu, j});
        if (result.trace.size() == 1 || j < result.objective_star) {
            result.mu_star = mu;
            result.objective_star = j;
        }
        return j;
    };

    if (mu_lo == mu_hi) {
        evaluate(mu_lo);
        return result;
    }

    const auto mus = linear_points(mu_lo, mu_hi, options.coarse_points);
    std::vector<double> values;
    values.reserve(mus.size());
    for (const double mu : mus) values.push_back(evaluate(mu));
    if (p.mu >= mu_lo && p.mu <= mu_hi && std::find(mus.begin(), mus.end(), p.mu) == mus.end()) evaluate(p.mu);

    std::vector<std::size_t> order(mus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&values](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    const double tol = 1e-10 * (mu_hi - mu_lo);
    const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(options.restarts), order.size());
    for (std::size_t r = 0; r < starts; ++r) {
        const std::size_t j = order[r];
        const double lo = mus[j == 0 ? 0 : j - 1];
        const double hi = mus[std::min(j + 1, mus.size() - 1)];
        const double mu_ref = golden_maximize([&](double mu) { return -evaluate(mu); }, lo, hi, tol);
        evaluate(mu_ref);
    }
    return result;
}

std::string_view to_string(ScanParameter param) {
    switch (param) {
        case ScanParameter::mu: return "mu";
        case ScanParameter::U: return "U";
        case ScanParameter::T_a: return "T_a";
        case ScanParameter::T_b: return "T_b";
        case ScanParameter::b: return "b";
        case ScanParameter::a: return "a";
    }
    return "?";
}

ScanParameter parse_scan_parameter(std::string_view name) {
    for (const auto param : {ScanParameter::mu, ScanParameter::U, ScanParameter::T_a, ScanParameter::T_b,
                             ScanParameter::b, ScanParameter::a}) {
        if (name == to_string(param)) return param;
    }
    throw ConfigError({"unknown scan axis " + std::string(name) + " (expected mu, U, T_a, T_b, b or a)"});
}

ScanTable param_scan(const ValidatedConfig& base, const ScanAxis& axis1, const ScanAxis& axis2, double k_min,
                     double k_max, int samples) {
    check_range(k_min, k_max, samples);
    for (const auto* axis : {&axis1, &axis2}) {
        for (const double v : axis->values) {
            if (!std::isfinite(v)) throw ConfigError({"non-finite value on scan axis " + std::string(to_string(axis->param))});
        }
    }

    ScanTable table{axis1, axis2, {}};
    table.cells.reserve(axis1.values.size() * axis2.values.size());
    for (std::size_t r = 0; r < axis1.values.size(); ++r) {
        for (std::size_t c = 0; c < axis2.values.size(); ++c) {
            ScanCell cell;
            cell.row = r;
            cell.col = c;
            cell.value1 = axis1.values[r];
            cell.value2 = axis2.values[c];
            FlowConfig raw = base.params();
            set_param(raw, axis1.param, cell.value1);
            set_param(raw, axis2.param, cell.value2);
            try {
                const ValidatedConfig cfg = validate(raw);
                cell.growth = max_growth(cfg, k_min, k_max, samples);
                cell.verdict = compatibility_verdict(cfg);
            } catch (const ConfigError& e) {
                cell.error = e.what();
            }
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

}  // namespace trilayer
