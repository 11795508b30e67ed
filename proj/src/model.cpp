#include "trilayer/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "trilayer/report.hpp"

namespace trilayer {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += "; ";
        out += item;
    }
    return out;
}

struct FieldRef {
    const char* name;
    double FlowConfig::*member;
};

constexpr FieldRef kNumericFields[] = {
    {"mu_L", &FlowConfig::mu_L}, {"mu", &FlowConfig::mu},   {"mu_R", &FlowConfig::mu_R},
    {"U", &FlowConfig::U},       {"T_a", &FlowConfig::T_a}, {"T_b", &FlowConfig::T_b},
    {"a", &FlowConfig::a},       {"b", &FlowConfig::b},
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::vector<Violation> check(const FlowConfig& raw) {
    std::vector<Violation> out;
    auto fail = [&out](std::string constraint, std::string detail) {
        out.push_back({std::move(constraint), std::move(detail)});
    };

    bool all_finite = true;
    for (const auto& field : kNumericFields) {
        const double v = raw.*field.member;
        if (!std::isfinite(v)) {
            fail(std::string(field.name) + " finite", std::string(field.name) + "=" + format_number(v));
            all_finite = false;
        }
    }
    if (!all_finite) return out;

    for (const auto& field : {kNumericFields[0], kNumericFields[1], kNumericFields[2], kNumericFields[4],
                              kNumericFields[5]}) {
        const double v = raw.*field.member;
        if (!(v > 0.0)) {
            fail(std::string(field.name) + " > 0", std::string(field.name) + "=" + format_number(v));
        }
    }
    if (!raw.relax_ordering) {
        if (!(raw.mu_L < raw.mu && raw.mu < raw.mu_R)) {
            fail("ordering violated: mu_L < mu < mu_R", "mu_L=" + format_number(raw.mu_L) +
                                                            ", mu=" + format_number(raw.mu) +
                                                            ", mu_R=" + format_number(raw.mu_R));
        }
        if (!(raw.U > 0.0)) fail("U > 0", "U=" + format_number(raw.U));
    }
    if (!(raw.b <= 0.0)) fail("b <= 0", "b=" + format_number(raw.b));
    if (!(raw.a < raw.b)) {
        fail("a < b violated", "a=" + format_number(raw.a) + ", b=" + format_number(raw.b));
    }
    return out;
}

ValidatedConfig validate(const FlowConfig& raw) {
    const auto violations = check(raw);
    if (!violations.empty()) {
        std::vector<std::string> problems;
        problems.reserve(violations.size());
        for (const auto& v : violations) problems.push_back(v.constraint + " (" + v.detail + ")");
        throw ConfigError(std::move(problems));
    }
    return ValidatedConfig(raw);
}

double viscosity_at(const ValidatedConfig& cfg, double x) {
    const auto& p = cfg.params();
    if (x < p.a) return p.mu_L;
    if (x > p.b) return p.mu_R;
    return p.mu;
}

FlowConfig parse_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

    std::vector<std::string> problems;
    for (const auto& [key, _] : doc.items()) {
        bool known = key == "relax_ordering";
        for (const auto& field : kNumericFields) known = known || key == field.name;
        if (!known) problems.push_back("unknown field " + key);
    }

    FlowConfig cfg;
    for (const auto& field : kNumericFields) {
        const auto it = doc.find(field.name);
        if (it == doc.end()) {
            problems.push_back(std::string("missing field ") + field.name);
        } else if (!it->is_number()) {
            problems.push_back(std::string("non-numeric ") + field.name);
        } else {
            cfg.*field.member = it->get<double>();
            if (!std::isfinite(cfg.*field.member)) problems.push_back(std::string("non-finite ") + field.name);
        }
    }
    if (const auto it = doc.find("relax_ordering"); it != doc.end()) {
        if (!it->is_boolean()) {
            problems.push_back("non-boolean relax_ordering");
        } else {
            cfg.relax_ordering = it->get<bool>();
        }
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cfg;
}

FlowConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file " + path});
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const ConfigError& e) {
        std::vector<std::string> problems;
        for (const auto& p : e.problems()) problems.push_back(path + ": " + p);
        throw ConfigError(std::move(problems));
    }
}

std::string serialize_config(const FlowConfig& cfg) {
    Json doc;
    for (const auto& field : kNumericFields) doc[field.name] = cfg.*field.member;
    if (cfg.relax_ordering) doc["relax_ordering"] = true;
    return dump_json(doc);
}

}  // namespace trilayer
