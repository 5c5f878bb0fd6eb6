#include "vbag/scenario.hpp"

#include <fstream>
#include <sstream>

#include "vbag/errors.hpp"

namespace vbag {

std::vector<std::string> scenario_names() {
    return {"toy-gaussian", "toy-gaussian-grid", "gmm-misspec",
            "sparse-reg",   "mixture-example",   "coverage"};
}

ScenarioKind parse_scenario(const std::string& name) {
    if (name == "toy-gaussian") return ScenarioKind::ToyGaussian;
    if (name == "toy-gaussian-grid") return ScenarioKind::ToyGaussianGrid;
    if (name == "gmm-misspec") return ScenarioKind::GmmMisspec;
    if (name == "sparse-reg") return ScenarioKind::SparseReg;
    if (name == "mixture-example") return ScenarioKind::MixtureExample;
    if (name == "coverage") return ScenarioKind::Coverage;
    std::ostringstream os;
    os << "scenario: unknown name '" << name << "'; valid:";
    for (const auto& s : scenario_names()) os << " " << s;
    throw ConfigError(os.str());
}

std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::ToyGaussian: return "toy-gaussian";
        case ScenarioKind::ToyGaussianGrid: return "toy-gaussian-grid";
        case ScenarioKind::GmmMisspec: return "gmm-misspec";
        case ScenarioKind::SparseReg: return "sparse-reg";
        case ScenarioKind::MixtureExample: return "mixture-example";
        case ScenarioKind::Coverage: return "coverage";
    }
    throw ConfigError("scenario: invalid kind");
}

namespace {

std::string m_policy_name(MPolicy p) {
    switch (p) {
        case MPolicy::Fixed: return "fixed";
        case MPolicy::Eq4: return "eq4";
        case MPolicy::FsOpt: return "fs_opt";
        case MPolicy::EqualsN: return "equals_n";
    }
    throw ConfigError("M_policy: invalid value");
}

MPolicy parse_m_policy(const std::string& s) {
    if (s == "fixed") return MPolicy::Fixed;
    if (s == "eq4") return MPolicy::Eq4;
    if (s == "fs_opt") return MPolicy::FsOpt;
    if (s == "equals_n") return MPolicy::EqualsN;
    throw ConfigError("M_policy: unknown value '" + s +
                      "'; valid: fixed, eq4, fs_opt, equals_n");
}

std::string error_family_name(ErrorFamily f) {
    switch (f) {
        case ErrorFamily::Gaussian: return "gaussian";
        case ErrorFamily::StudentT: return "student_t";
        case ErrorFamily::Laplace: return "laplace";
    }
    throw ConfigError("error_family: invalid value");
}

ErrorFamily parse_error_family(const std::string& s) {
    if (s == "gaussian") return ErrorFamily::Gaussian;
    if (s == "student_t") return ErrorFamily::StudentT;
    if (s == "laplace") return ErrorFamily::Laplace;
    throw ConfigError("error_family: unknown value '" + s +
                      "'; valid: gaussian, student_t, laplace");
}

}  // namespace

void ScenarioConfig::validate() const {
    if (n < 1) throw ConfigError("n: must be >= 1");
    if (B < 1) throw ConfigError("B: must be >= 1");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("level: must lie in (0,1)");
    if (m_policy == MPolicy::Fixed && m_fixed < 1)
        throw ConfigError("M: fixed policy requires M >= 1");
    if (reps < 1) throw ConfigError("reps: must be >= 1");
    if (data_seeds < 1) throw ConfigError("data_seeds: must be >= 1");
    if (workers < 1) throw ConfigError("workers: must be >= 1");
    if (t_df <= 0.0) throw ConfigError("t_df: must be > 0");
    if (functional_index < 0) throw ConfigError("functional_index: must be >= 0");
    if (scenario == ScenarioKind::ToyGaussianGrid) {
        if (grid_B.empty() || grid_n.empty())
            throw ConfigError("grid_B/grid_n: must be nonempty");
        for (int b : grid_B)
            if (b < 1) throw ConfigError("grid_B: entries must be >= 1");
        for (std::int64_t v : grid_n)
            if (v < 2) throw ConfigError("grid_n: entries must be >= 2");
    }
}

Json ScenarioConfig::to_json() const {
    Json j;
    j["scenario"] = scenario_name(scenario);
    j["n"] = n;
    j["B"] = B;
    j["M_policy"] = m_policy_name(m_policy);
    if (m_policy == MPolicy::Fixed) j["M"] = m_fixed;
    j["seed"] = seed;
    j["level"] = level;
    j["error_family"] = error_family_name(error_family);
    j["t_df"] = t_df;
    j["reps"] = reps;
    j["data_seeds"] = data_seeds;
    j["functional_index"] = functional_index;
    j["output_path"] = output_path;
    j["model"] = model;
    if (scenario == ScenarioKind::ToyGaussianGrid) {
        j["grid_B"] = grid_B;
        j["grid_n"] = grid_n;
    }
    return j;
}

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    if (!j.contains("scenario")) throw ConfigError("scenario: missing");
    ScenarioConfig c;
    try {
        c.scenario = parse_scenario(j.at("scenario").get<std::string>());
        if (j.contains("n")) c.n = j.at("n").get<std::int64_t>();
        if (j.contains("B")) c.B = j.at("B").get<int>();
        if (j.contains("M_policy"))
            c.m_policy = parse_m_policy(j.at("M_policy").get<std::string>());
        if (j.contains("M")) c.m_fixed = j.at("M").get<std::int64_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("level")) c.level = j.at("level").get<double>();
        if (j.contains("error_family"))
            c.error_family = parse_error_family(j.at("error_family").get<std::string>());
        if (j.contains("t_df")) c.t_df = j.at("t_df").get<double>();
        if (j.contains("reps")) c.reps = j.at("reps").get<int>();
        if (j.contains("data_seeds")) c.data_seeds = j.at("data_seeds").get<int>();
        if (j.contains("functional_index"))
            c.functional_index = j.at("functional_index").get<int>();
        if (j.contains("workers")) c.workers = j.at("workers").get<int>();
        if (j.contains("output_path"))
            c.output_path = j.at("output_path").get<std::string>();
        if (j.contains("model")) {
            if (!j.at("model").is_object())
                throw ConfigError("model: must be an object");
            c.model = j.at("model");
        }
        if (j.contains("grid_B")) c.grid_B = j.at("grid_B").get<std::vector<int>>();
        if (j.contains("grid_n"))
            c.grid_n = j.at("grid_n").get<std::vector<std::int64_t>>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig ScenarioConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

std::string canonical_payload(const Json& report) {
    Json copy = report;
    copy.erase("execution");
    return copy.dump(2);
}

Json load_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw IoError(std::string("report parse error: ") + e.what());
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw IoError("report: missing schema_version");
    int v = j["schema_version"].get<int>();
    if (v != kReportSchemaVersion)
        throw IoError("report: unknown schema version " + std::to_string(v) +
                      " (supported: " + std::to_string(kReportSchemaVersion) + ")");
    return j;
}

}  // namespace vbag
