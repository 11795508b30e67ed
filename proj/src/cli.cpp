#include "trilayer/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <string_view>

#include "CLI11.hpp"
#include "trilayer/analysis.hpp"
#include "trilayer/compatibility.hpp"
#include "trilayer/eigenfunctions.hpp"
#include "trilayer/report.hpp"

namespace trilayer::cli {

namespace {

class SinkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        if (!out) throw SinkError("failed writing to output stream");
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw SinkError("cannot open output file " + path);
    file << content;
    file.flush();
    if (!file) throw SinkError("failed writing " + path);
}

double parse_double(std::string_view text, const std::string& what) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError({"non-numeric value '" + std::string(text) + "' in " + what});
    }
    return value;
}

ScanAxis parse_axis(const std::string& spec, const std::string& flag) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError({flag + " must look like name=v1,v2,..."});
    ScanAxis axis;
    axis.param = parse_scan_parameter(spec.substr(0, eq));
    std::string_view rest(spec);
    rest.remove_prefix(eq + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        axis.values.push_back(parse_double(rest.substr(0, comma), flag));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (axis.values.empty()) throw ConfigError({flag + " has no values"});
    return axis;
}

ValidatedConfig load(const std::string& path) { return validate(load_config(path)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear stability of three-layer Hele-Shaw displacements", "trilayer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    double k_min = 0.0;
    double k_max = 0.0;

    auto* dispersion = app.add_subcommand("dispersion", "Growth rates over a wavenumber grid (CSV)");
    int samples = 201;
    dispersion->add_option("--config", config_path, "Config JSON")->required();
    dispersion->add_option("--kmin", k_min, "Smallest wavenumber")->capture_default_str();
    auto* disp_kmax = dispersion->add_option("--kmax", k_max, "Largest wavenumber (default: 10 k_cut)");
    dispersion->add_option("--samples", samples, "Grid points")->capture_default_str();
    dispersion->add_option("--out", out_path, "CSV output path (default: stdout)");

    auto* eigen = app.add_subcommand("eigen", "Eigenfunction of one root (JSON)");
    double k = 0.0;
    std::string branch_name = "plus";
    eigen->add_option("--config", config_path, "Config JSON")->required();
    eigen->add_option("--k", k, "Wavenumber")->required();
    eigen->add_option("--branch", branch_name, "plus | minus")->capture_default_str();
    eigen->add_option("--out", out_path, "JSON output path (default: stdout)");

    auto* compat = app.add_subcommand("compat", "Large-k compatibility report (JSON); exit 3 if incompatible");
    std::vector<double> k_seq{5.0, 10.0, 15.0};
    double tolerance = kCompatibilityTolerance;
    compat->add_option("--config", config_path, "Config JSON")->required();
    compat->add_option("--branch", branch_name, "plus | minus")->capture_default_str();
    compat->add_option("--kseq", k_seq, "Ascending wavenumbers")->delimiter(',')->capture_default_str();
    compat->add_option("--tol", tolerance, "Relative tolerance on the cross-limit mismatch")->capture_default_str();
    compat->add_option("--out", out_path, "JSON output path (default: stdout)");

    auto* feasible = app.add_subcommand("feasible-mu", "Middle viscosity forced by the tension ratio; exit 3 if infeasible");
    double mu_L = 0.0, mu_R = 0.0, T_a = 0.0, T_b = 0.0;
    feasible->add_option("--muL", mu_L, "Displacing viscosity")->required();
    feasible->add_option("--muR", mu_R, "Displaced viscosity")->required();
    feasible->add_option("--Ta", T_a, "Tension at x = a")->required();
    feasible->add_option("--Tb", T_b, "Tension at x = b")->required();

    auto* optimize = app.add_subcommand("optimize", "Minimize the maximal growth over the middle viscosity");
    double mu_lo = 0.0, mu_hi = 0.0;
    std::string trace_path = "optimize_trace.csv";
    MuSearchOptions search;
    optimize->add_option("--config", config_path, "Config JSON")->required();
    optimize->add_option("--mu-lo", mu_lo, "Lower mu bound")->required();
    optimize->add_option("--mu-hi", mu_hi, "Upper mu bound")->required();
    optimize->add_option("--kmin", k_min, "Smallest wavenumber")->capture_default_str();
    auto* opt_kmax = optimize->add_option("--kmax", k_max, "Largest wavenumber (default: 10 k_cut)");
    optimize->add_option("--coarse", search.coarse_points, "Coarse mu grid points")->capture_default_str();
    optimize->add_option("--out", out_path, "JSON output path (default: stdout)");
    optimize->add_option("--trace", trace_path, "Evaluation trace CSV path")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "Two-parameter scan of maximal growth and verdict (CSV)");
    std::string axis1_spec, axis2_spec;
    int scan_samples = kDefaultGrowthSamples;
    scan->add_option("--config", config_path, "Config JSON")->required();
    scan->add_option("--axis1", axis1_spec, "name=v1,v2,... (mu, U, T_a, T_b, b, a)")->required();
    scan->add_option("--axis2", axis2_spec, "name=v1,v2,...")->required();
    scan->add_option("--kmin", k_min, "Smallest wavenumber")->capture_default_str();
    auto* scan_kmax = scan->add_option("--kmax", k_max, "Largest wavenumber (default: 10 k_cut of the base config)");
    scan->add_option("--samples", scan_samples, "Grid points per cell")->capture_default_str();
    scan->add_option("--out", out_path, "CSV output path (default: stdout)");

    std::vector<std::string> argv_store{"trilayer"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInvocation;
    }

    try {
        if (dispersion->parsed()) {
            const auto cfg = load(config_path);
            if (disp_kmax->count() == 0) k_max = default_k_max(cfg);
            const GrowthCurve curve = sweep(cfg, k_min, k_max, samples);
            emit(out_path, dispersion_csv(curve), out);
            return kOk;
        }
        if (eigen->parsed()) {
            const Branch branch = parse_branch(branch_name);
            if (!(k > 0.0)) throw ConfigError({"--k must be > 0"});
            const auto cfg = load(config_path);
            const EigenPair pair = eigenpair(cfg, k, branch);
            emit(out_path, dump_json(eigen_json(cfg, pair)), out);
            return kOk;
        }
        if (compat->parsed()) {
            const Branch branch = parse_branch(branch_name);
            const auto cfg = load(config_path);
            const CompatibilityReport report = branch_limit_report(cfg, branch, k_seq, tolerance);
            emit(out_path, dump_json(to_json(report)), out);
            return report.verdict == Verdict::compatible ? kOk : kNegativeVerdict;
        }
        if (feasible->parsed()) {
            const FeasibleMu result = feasible_mu(mu_L, mu_R, T_a, T_b);
            if (result.feasible()) {
                emit("", format_number(result.mu_hat) + "\n", out);
                return kOk;
            }
            emit("", std::string(to_string(result.status)) + " (mu_hat=" + format_number(result.mu_hat) + ")\n", out);
            return kNegativeVerdict;
        }
        if (optimize->parsed()) {
            const auto cfg = load(config_path);
            if (opt_kmax->count() == 0) k_max = default_k_max(cfg);
            const MuOptimum optimum = optimize_mu(cfg, mu_lo, mu_hi, k_min, k_max, search);
            emit(trace_path, trace_csv(optimum), out);
            emit(out_path, dump_json(to_json(optimum)), out);
            return kOk;
        }
        if (scan->parsed()) {
            const ScanAxis axis1 = parse_axis(axis1_spec, "--axis1");
            const ScanAxis axis2 = parse_axis(axis2_spec, "--axis2");
            const auto cfg = load(config_path);
            if (scan_kmax->count() == 0) k_max = default_k_max(cfg);
            const ScanTable table = param_scan(cfg, axis1, axis2, k_min, k_max, scan_samples);
            for (const auto& cell : table.cells) {
                if (!cell.error.empty()) {
                    err << "cell " << cell.row << "," << cell.col << " invalid: " << cell.error << '\n';
                }
            }
            emit(out_path, scan_csv(table), out);
            return kOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInvocation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadInvocation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const SinkError& e) {
        err << "output failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    err << "error: no subcommand\n";
    return kBadInvocation;
}

}  // namespace trilayer::cli
