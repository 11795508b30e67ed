// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "trilayer/analysis.hpp"
#include "trilayer/cli.hpp"
#include "trilayer/compatibility.hpp"
#include "trilayer/report.hpp"

using namespace trilayer;
using namespace trilayer::testing;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = TRILAYER_FIXTURES;
const std::string kGolden = TRILAYER_GOLDEN;

/// Collects failure notes for one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && notes_.size() < 5) notes_.push_back(what);
        if (!ok) ++failures_;
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        std::string s = std::to_string(failures_) + " failure(s)";
        for (const auto& n : notes_) s += "; " + n;
        return s;
    }

private:
    int failures_ = 0;
    std::vector<std::string> notes_;
};

std::string num(double x) { return format_number(x); }

Complex nearer(const SpectralPoint& sp, Complex target) {
    return std::abs(sp.sigma_plus - target) <= std::abs(sp.sigma_minus - target) ? sp.sigma_plus : sp.sigma_minus;
}

// 1 ---------------------------------------------------------------------
std::string root_correctness(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    ConfigGenerator gen(1);
    double worst_root = 0.0, worst_equiv = 0.0;
    int pairs = 0;
    for (int i = 0; i < 1000; ++i) {
        const FlowConfig raw = gen.next();
        const auto cfg = validate(raw);
        for (int j = 0; j < 32; ++j) {
            const double k = gen.log_uniform(1e-3, 50.0);
            const auto sp = growth_rates(cfg, k);
            for (const Complex s : {sp.sigma_plus, sp.sigma_minus}) {
                const double rel = std::abs(oracle_determinant(raw, k, s)) / determinant_scale(cfg, k, s);
                worst_root = std::max(worst_root, rel);
                const double scale = determinant_scale(cfg, k, s);
                const double eq = std::abs(determinant_residual(cfg, k, s) -
                                           quadratic_residual(quadratic_coefficients(cfg, k), s)) /
                                  scale;
                worst_equiv = std::max(worst_equiv, eq);
                ++pairs;
            }
            // Off-shell as well.
            const Complex z(gen.uniform(-10.0, 10.0), gen.uniform(-10.0, 10.0));
            const double eq = std::abs(oracle_determinant(raw, k, z) -
                                       quadratic_residual(quadratic_coefficients(cfg, k), z)) /
                              determinant_scale(cfg, k, z);
            worst_equiv = std::max(worst_equiv, eq);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(worst_root <= 1e-9, "root residual " + num(worst_root));
    c.expect(worst_equiv <= 1e-12, "oracle equivalence " + num(worst_equiv));
    c.expect(secs < 5.0, "runtime " + num(secs) + " s");
    return std::to_string(pairs) + " roots, worst residual " + num(worst_root) + ", worst equivalence " +
           num(worst_equiv) + ", " + num(std::round(secs * 1000.0) / 1000.0) + " s";
}

// 2 ---------------------------------------------------------------------
std::string hand_value(Check& c) {
    const auto cfg = validate(cfg0_raw());
    const auto sp = growth_rates(cfg, 0.5);
    const double hi = oracle_bisect_root(cfg0_raw(), 0.5, 0.02, 1.0);
    const double lo = oracle_bisect_root(cfg0_raw(), 0.5, 0.0, 0.02);
    const double e_hi = rel_diff(sp.sigma_plus.real(), hi);
    const double e_lo = rel_diff(sp.sigma_minus.real(), lo);
    c.expect(sp.sigma_plus.imag() == 0.0 && sp.sigma_minus.imag() == 0.0, "roots not real");
    c.expect(e_hi <= 1e-4 && e_lo <= 1e-4, "bisection mismatch");
    c.expect(std::abs(sp.sigma_plus.real() - 0.03970) <= 1e-5 && std::abs(sp.sigma_minus.real() - 0.00911) <= 1e-5,
             "not near {0.03970, 0.00911}");
    return "roots {" + num(sp.sigma_plus.real()) + ", " + num(sp.sigma_minus.real()) + "}, relative errors " +
           num(e_hi) + ", " + num(e_lo);
}

// 3 ---------------------------------------------------------------------
std::string branch_limits(Check& c) {
    const auto cfg = validate(cfg0_raw());
    const auto& p = cfg.params();
    const double n = p.mu + p.mu_R, m = p.mu_L + p.mu;
    double prev_b = INFINITY, prev_a = INFINITY, err_b = 0.0, err_a = 0.0;
    for (const double k : {5.0, 10.0, 15.0}) {
        const auto sp = growth_rates(cfg, k);
        const auto lim = asymptotic_growth_rates(cfg, k);
        const Complex qb = sp.drive.E_b / nearer(sp, lim.b_branch);
        const Complex qa = sp.drive.E_a / nearer(sp, lim.a_branch);
        err_b = std::abs(qb - n) / std::abs(qb);
        err_a = std::abs(qa - m) / std::abs(qa);
        c.expect(err_b < prev_b, "b-branch error not decreasing at k=" + num(k));
        c.expect(err_a < prev_a, "a-branch error not decreasing at k=" + num(k));
        prev_b = err_b;
        prev_a = err_a;
    }
    c.expect(err_b <= 1e-8, "b-branch at k=15: " + num(err_b));
    c.expect(err_a <= 1e-8, "a-branch at k=15: " + num(err_a));
    return "k=15 relative errors: E_b/sigma " + num(err_b) + ", E_a/sigma " + num(err_a);
}

// 4 ---------------------------------------------------------------------
std::string tension_restriction(Check& c) {
    const auto cfg0 = validate(cfg0_raw());
    const auto rep = branch_limit_report(cfg0, Branch::plus, {5.0, 10.0, 15.0});
    c.expect(rep.verdict == Verdict::incompatible, "cfg0 not incompatible");
    c.expect(std::abs(rep.cross_limit_mismatch - 2.0) <= 1e-6, "mismatch " + num(rep.cross_limit_mismatch));
    c.expect(compatibility_verdict(cfg0) == Verdict::incompatible, "cfg0 analytic verdict");

    const auto good = validate(compatible_raw());
    const double res = tension_ratio_residual(good);
    const auto rep2 = branch_limit_report(good, Branch::plus, {5.0, 10.0, 15.0});
    c.expect(rep2.verdict == Verdict::compatible, "constructed config not compatible");
    c.expect(compatibility_verdict(good) == Verdict::compatible, "constructed config analytic verdict");
    c.expect(std::abs(res) <= 1e-12, "tension residual " + num(res));
    return "cfg0 mismatch " + num(rep.cross_limit_mismatch) + " (incompatible); constructed residual " + num(res) +
           " (compatible)";
}

// 5 ---------------------------------------------------------------------
std::string r9_identities(Check& c) {
    double worst = 0.0;
    int tested = 0;
    auto probe = [&](const ValidatedConfig& cfg, double k) {
        for (const Branch br : {Branch::plus, Branch::minus}) {
            EigenPair pair;
            try {
                pair = eigenpair(cfg, k, br);
            } catch (const NumericalError& e) {
                c.expect(false, "eigenpair failed at k=" + num(k) + ": " + e.what());
                continue;
            }
            const auto r = r9_identity_residuals(cfg, pair);
            worst = std::max({worst, r.relative_a(), r.relative_b()});
            ++tested;
        }
    };
    const auto cfg0 = validate(cfg0_raw());
    for (const double k : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 5.0, 10.0, 15.0, 30.0}) probe(cfg0, k);
    ConfigGenerator gen(5);
    for (int i = 0; i < 1000; ++i) {
        const auto cfg = validate(gen.next());
        for (int j = 0; j < 8; ++j) probe(cfg, gen.log_uniform(1e-3, 50.0));
    }
    c.expect(worst <= 1e-9, "worst relative residual " + num(worst));
    return std::to_string(tested) + " eigenpairs, worst relative residual " + num(worst);
}

// 6 ---------------------------------------------------------------------
std::string feasibility(Check& c) {
    const auto f1 = feasible_mu(1, 4, 1, 2);
    const auto f2 = feasible_mu(1, 3, 1, 2);
    const auto f3 = feasible_mu(1, 4, 1, 1.5);
    c.expect(f1.status == MuFeasibility::feasible && f1.mu_hat == 2.0, "(1,4,1,2)");
    c.expect(f2.status == MuFeasibility::below_lower_bound && f2.mu_hat == 1.0, "(1,3,1,2)");
    c.expect(f3.status == MuFeasibility::above_upper_bound && f3.mu_hat == 5.0, "(1,4,1,1.5)");
    return "(1,4,1,2) -> " + num(f1.mu_hat) + " " + std::string(to_string(f1.status)) + "; (1,3,1,2) -> " +
           std::string(to_string(f2.status)) + "; (1,4,1,1.5) -> " + std::string(to_string(f3.status));
}

// 7 ---------------------------------------------------------------------
std::string collapsed_layer(Check& c) {
    FlowConfig raw = cfg0_raw();
    raw.a = -1e-6;
    const auto cfg = validate(raw);
    double worst = 0.0;
    for (const double k : {0.1, 0.5, 2.0}) {
        const double lim = collapsed_layer_rate(cfg, k);
        const auto sp = growth_rates(cfg, k);
        const Complex root = std::abs(sp.sigma_plus) >= std::abs(sp.sigma_minus) ? sp.sigma_plus : sp.sigma_minus;
        const double e = std::abs(root - lim) / std::abs(lim);
        worst = std::max(worst, e);
        c.expect(e <= 1e-5, "k=" + num(k) + ": " + num(e));
    }
    return "worst relative error " + num(worst);
}

// 8 ---------------------------------------------------------------------
std::string swap_symmetry(Check& c) {
    ConfigGenerator gen(8);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        FlowConfig raw = gen.next();
        raw.relax_ordering = true;
        FlowConfig sw = raw;
        std::swap(sw.mu_L, sw.mu_R);
        std::swap(sw.T_a, sw.T_b);
        sw.U = -raw.U;
        const auto c1 = validate(raw);
        const auto c2 = validate(sw);
        for (int j = 0; j < 8; ++j) {
            const double k = gen.log_uniform(1e-3, 50.0);
            const auto s1 = growth_rates(c1, k);
            const auto s2 = growth_rates(c2, k);
            const double scale = std::max(std::abs(s1.sigma_plus), std::abs(s1.sigma_minus));
            if (scale == 0.0) continue;
            const double same = std::max(std::abs(s1.sigma_plus - s2.sigma_plus), std::abs(s1.sigma_minus - s2.sigma_minus));
            const double crossed =
                std::max(std::abs(s1.sigma_plus - s2.sigma_minus), std::abs(s1.sigma_minus - s2.sigma_plus));
            worst = std::max(worst, std::min(same, crossed) / scale);
        }
    }
    c.expect(worst <= 1e-10, "worst relative difference " + num(worst));
    return "8000 wavenumbers, worst relative difference " + num(worst);
}

// 9 ---------------------------------------------------------------------
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string robustness(Check& c) {
    FlowConfig raw = cfg0_raw();
    raw.a = -100.0;
    const auto cfg = validate(raw);
    const auto sp = growth_rates(cfg, 1e4);
    c.expect(finite(sp.sigma_plus) && finite(sp.sigma_minus), "roots not finite");
    std::string detail;
    for (const Branch br : {Branch::plus, Branch::minus}) {
        const auto pair = eigenpair(cfg, 1e4, br);
        const auto rows = boundary_residuals(pair, cfg);
        c.expect(rows.relative_a() <= 1e-9 && rows.relative_b() <= 1e-9, "row residuals");
        c.expect(finite(interface_ratio(pair, Interface::left)) && finite(interface_ratio(pair, Interface::right)),
                 "interface ratios");
        c.expect(std::isfinite(log_amplitude_ratio(pair, cfg)), "log amplitude ratio");
        const auto rep = branch_limit_report(cfg, br, {1e2, 1e3, 1e4});
        for (std::size_t i = 0; i < rep.k_sequence.size(); ++i) {
            c.expect(finite(rep.sigma[i]) && finite(rep.Eb_over_sigma[i]) && finite(rep.Ea_over_sigma[i]) &&
                         finite(rep.F_at_a[i]) && finite(rep.F_at_b[i]),
                     "report entry not finite");
        }
        c.expect(std::isfinite(rep.cross_limit_mismatch) && std::isfinite(rep.tension_ratio_residual), "report");
        detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(br)) + " matched at " +
                  std::string(to_string(rep.matched_interface)) + ", E_b/sigma -> " +
                  num(rep.limit_Eb_over_sigma.real()) + ", E_a/sigma -> " + num(rep.limit_Ea_over_sigma.real());
    }
    return detail;
}

// 10 --------------------------------------------------------------------
struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    int exit_code;
    std::string extra_file;  ///< a second artifact written by the run, compared too
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string cli_determinism(Check& c) {
    const fs::path scratch = fs::temp_directory_path() / "trilayer_acceptance";
    fs::create_directories(scratch);
    const std::string cfg0 = kFixtures + "/cfg0.json";
    const std::string compatible = kFixtures + "/compatible.json";
    const std::string trace = (scratch / "optimize_trace.csv").string();

    const std::vector<GoldenCase> cases{
        {"dispersion_cfg0.csv", {"dispersion", "--config", cfg0, "--kmin", "0", "--kmax", "2", "--samples", "21"}, 0, ""},
        {"eigen_cfg0_plus.json", {"eigen", "--config", cfg0, "--k", "0.5", "--branch", "plus"}, 0, ""},
        {"compat_cfg0_plus.json", {"compat", "--config", cfg0, "--branch", "plus"}, 3, ""},
        {"compat_compatible_minus.json", {"compat", "--config", compatible, "--branch", "minus"}, 0, ""},
        {"feasible_mu.txt", {"feasible-mu", "--muL", "1", "--muR", "4", "--Ta", "1", "--Tb", "2"}, 0, ""},
        {"optimize_cfg0.json",
         {"optimize", "--config", cfg0, "--mu-lo", "1.5", "--mu-hi", "2.5", "--kmin", "0", "--kmax", "2", "--coarse",
          "8", "--trace", trace},
         0,
         "optimize_cfg0_trace.csv"},
        {"scan_compatible.csv",
         {"scan", "--config", compatible, "--axis1", "mu=1.5,2,3", "--axis2", "T_b=1.5,2,3", "--kmin", "0", "--kmax",
          "3", "--samples", "64"},
         0,
         ""},
    };

    int compared = 0;
    for (const auto& gc : cases) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            std::ostringstream out, err;
            const int code = cli::run(gc.args, out, err);
            c.expect(code == gc.exit_code, gc.name + " exit " + std::to_string(code));
            if (rep == 0) {
                first = out.str();
                c.expect(first == slurp(kGolden + "/" + gc.name), gc.name + " differs from golden");
                if (!gc.extra_file.empty()) {
                    c.expect(slurp(trace) == slurp(kGolden + "/" + gc.extra_file), gc.extra_file + " differs");
                }
            } else {
                c.expect(out.str() == first, gc.name + " not repeatable");
            }
        }
        compared += gc.extra_file.empty() ? 1 : 2;
    }

    // Exit-code taxonomy: one case each.
    std::ostringstream sink;
    const int ok = cli::run({"feasible-mu", "--muL", "1", "--muR", "4", "--Ta", "1", "--Tb", "2"}, sink, sink);
    const int bad = cli::run({"dispersion", "--config", kFixtures + "/does_not_exist.json"}, sink, sink);
    const int numerical = cli::run({"eigen", "--config", cfg0, "--k", "1"}, sink, sink);
    const int verdict = cli::run({"compat", "--config", cfg0}, sink, sink);
    c.expect(ok == 0 && bad == 1 && numerical == 2 && verdict == 3,
             "exit codes " + std::to_string(ok) + std::to_string(bad) + std::to_string(numerical) +
                 std::to_string(verdict));
    return std::to_string(compared) + " golden artifacts byte-identical on repeat; exit codes {" + std::to_string(ok) +
           "," + std::to_string(bad) + "," + std::to_string(numerical) + "," + std::to_string(verdict) + "}";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string(Check&)>>> criteria{
        {"root correctness", root_correctness},
        {"hand value cfg0 k=0.5", hand_value},
        {"large-k branch limits", branch_limits},
        {"tension-ratio restriction", tension_restriction},
        {"interface identities on-shell", r9_identities},
        {"feasible middle viscosity", feasibility},
        {"collapsed layer", collapsed_layer},
        {"swap symmetry", swap_symmetry},
        {"robustness at k=1e4, a=-100", robustness},
        {"CLI determinism and exit codes", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        std::string detail;
        try {
            detail = criteria[i].second(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const bool ok = check.ok();
        if (!ok) ++failed;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": "
                  << (ok ? detail : check.summary()) << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed\n";
    return failed == 0 ? 0 : 1;
}
