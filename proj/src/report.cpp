#include "trilayer/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "trilayer/analysis.hpp"
#include "trilayer/compatibility.hpp"
#include "trilayer/eigenfunctions.hpp"

namespace trilayer {

namespace {

void write_json(const Json& v, std::string& out, int indent, bool inline_only) {
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            if (inline_only) {
                out += '{';
                bool first = true;
                for (const auto& [key, val] : v.items()) {
                    if (!first) out += ", ";
                    first = false;
                    out += Json(key).dump();
                    out += ": ";
                    write_json(val, out, indent, true);
                }
                out += '}';
                return;
            }
            const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : v.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += Json(key).dump();
                out += ": ";
                write_json(val, out, indent + 2, false);
            }
            out += '\n';
            out.append(static_cast<std::size_t>(indent), ' ');
            out += '}';
            return;
        }
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ", ";
                first = false;
                write_json(item, out, indent, true);
            }
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            out += std::isfinite(d) ? format_number(d) : "null";
            return;
        }
        default:
            // Strings, booleans, integers and null: nlohmann's encoding is
            // already canonical.
            out += v.dump();
            return;
    }
}

std::string csv_row(std::initializer_list<double> values) {
    std::string line;
    bool first = true;
    for (const double v : values) {
        if (!first) line += ',';
        first = false;
        line += format_number(v);
    }
    line += '\n';
    return line;
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) return "0";
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::string dump_json(const Json& value) {
    std::string out;
    write_json(value, out, 0, false);
    out += '\n';
    return out;
}

Json to_json(const CompatibilityReport& report) {
    auto complex_list = [](const std::vector<Complex>& zs) {
        Json arr = Json::array();
        for (const auto& z : zs) arr.push_back(complex_json(z));
        return arr;
    };
    Json j;
    j["branch"] = std::string(to_string(report.branch));
    j["k_sequence"] = report.k_sequence;
    j["sigma"] = complex_list(report.sigma);
    j["Eb_over_sigma"] = complex_list(report.Eb_over_sigma);
    j["Ea_over_sigma"] = complex_list(report.Ea_over_sigma);
    j["F_at_a"] = complex_list(report.F_at_a);
    j["F_at_b"] = complex_list(report.F_at_b);
    j["limit_Eb_over_sigma"] = complex_json(report.limit_Eb_over_sigma);
    j["limit_Ea_over_sigma"] = complex_json(report.limit_Ea_over_sigma);
    j["matched_interface"] = std::string(to_string(report.matched_interface));
    j["cross_limit_mismatch"] = report.cross_limit_mismatch;
    j["tension_ratio_residual"] = report.tension_ratio_residual;
    j["verdict"] = std::string(to_string(report.verdict));
    return j;
}

Json eigen_json(const ValidatedConfig& cfg, const EigenPair& pair) {
    const RowResiduals rows = boundary_residuals(pair, cfg);
    Json residuals;
    residuals["row_a"] = complex_json(rows.row_a);
    residuals["row_b"] = complex_json(rows.row_b);
    residuals["scale_a"] = rows.scale_a;
    residuals["scale_b"] = rows.scale_b;
    residuals["relative_a"] = rows.relative_a();
    residuals["relative_b"] = rows.relative_b();
    residuals["row_a_degenerate"] = rows.row_a_degenerate;
    residuals["row_b_degenerate"] = rows.row_b_degenerate;

    Json j;
    j["k"] = pair.k;
    j["branch"] = std::string(to_string(pair.branch));
    j["sigma"] = complex_json(pair.sigma);
    j["a_hat"] = complex_json(pair.a_hat);
    j["b_hat"] = complex_json(pair.b_hat);
    j["a_hat_right"] = complex_json(pair.a_hat_right);
    j["b_hat_right"] = complex_json(pair.b_hat_right);
    j["F_at_a"] = complex_json(interface_ratio(pair, Interface::left));
    j["F_at_b"] = complex_json(interface_ratio(pair, Interface::right));
    j["row_residuals"] = residuals;
    j["amplitude_ratio"] = amplitude_ratio(pair, cfg);
    j["log_amplitude_ratio"] = log_amplitude_ratio(pair, cfg);
    return j;
}

Json to_json(const MuOptimum& optimum) {
    Json j;
    j["mu_star"] = optimum.mu_star;
    j["objective_star"] = optimum.objective_star;
    j["evaluations"] = optimum.trace.size();
    return j;
}

std::string dispersion_csv(const GrowthCurve& curve) {
    std::string out = "k,re_sigma_plus,im_sigma_plus,re_sigma_minus,im_sigma_minus,E_a,E_b,discriminant\n";
    for (const auto& sp : curve.points) {
        out += csv_row({sp.k, sp.sigma_plus.real(), sp.sigma_plus.imag(), sp.sigma_minus.real(),
                        sp.sigma_minus.imag(), sp.drive.E_a, sp.drive.E_b, sp.discriminant});
    }
    return out;
}

std::string trace_csv(const MuOptimum& optimum) {
    std::string out = "index,mu,objective\n";
    for (std::size_t i = 0; i < optimum.trace.size(); ++i) {
        out += std::to_string(i) + ',' + format_number(optimum.trace[i].mu) + ',' +
               format_number(optimum.trace[i].objective) + '\n';
    }
    return out;
}

std::string scan_csv(const ScanTable& table) {
    std::string out = "row,col," + std::string(to_string(table.axis1.param)) + ',' +
                      std::string(to_string(table.axis2.param)) + ",k_star,sigma_star,verdict\n";
    for (const auto& cell : table.cells) {
        out += std::to_string(cell.row) + ',' + std::to_string(cell.col) + ',' + format_number(cell.value1) + ',' +
               format_number(cell.value2) + ',';
        if (cell.growth) {
            out += format_number(cell.growth->k_star) + ',' + format_number(cell.growth->sigma_star) + ',' +
                   std::string(to_string(cell.verdict));
        } else {
            out += ",,invalid";
        }
        out += '\n';
    }
    return out;
}

}  // namespace trilayer
