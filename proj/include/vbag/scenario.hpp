#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbag/posterior.hpp"
#include "vbag/rng.hpp"

namespace vbag {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class ScenarioKind {
    ToyGaussian,
    ToyGaussianGrid,
    GmmMisspec,
    SparseReg,
    MixtureExample,
    Coverage,
};

enum class MPolicy { Fixed, Eq4, FsOpt, EqualsN };

enum class ErrorFamily { Gaussian, StudentT, Laplace };

std::vector<std::string> scenario_names();
ScenarioKind parse_scenario(const std::string& name);
std::string scenario_name(ScenarioKind k);

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::ToyGaussian;
    std::int64_t n = 500;
    int B = 50;
    MPolicy m_policy = MPolicy::EqualsN;
    std::int64_t m_fixed = 0;        // required for MPolicy::Fixed
    std::uint64_t seed = 0;
    double level = 0.95;
    ErrorFamily error_family = ErrorFamily::Gaussian;
    double t_df = 3.0;
    int reps = 1;                    // coverage replications / grid reps
    int data_seeds = 10;             // sparse-reg median over data seeds
    int functional_index = 0;        // coordinate for size selection
    int workers = 1;
    std::string output_path;
    Json model = Json::object();     // per-model hyperparameter pass-through
    std::vector<int> grid_B = {5, 10, 20, 30, 50};
    std::vector<std::int64_t> grid_n = {50, 100, 200, 300, 500, 1000};

    // Throws ConfigError naming the offending field.
    void validate() const;
    Json to_json() const;
    static ScenarioConfig from_json(const Json& j);
    static ScenarioConfig load_file(const std::string& path);
};

// Deterministic data generation for the configured scenario.
ObservationSet generate_data(const ScenarioConfig& cfg, RngStream& rng);

// Relative squared error ||beta_hat - beta_ols||^2 / ||beta_ols||^2.
double compute_rse(const Vector& beta_hat, const Vector& beta_ols);

enum class RseMethod { Vb, VbBagging };

struct RseResult {
    RseMethod method = RseMethod::Vb;
    double rse = 0.0;
};

struct ScenarioOutput {
    Json report;
    // Flat tables for grid scenarios: filename stem -> CSV text.
    std::vector<std::pair<std::string, std::string>> csv_tables;
};

// Run the scenario and return the report; run_scenario_to_files also writes
// report/CSVs under the configured output path.
ScenarioOutput run_scenario(const ScenarioConfig& cfg);
std::vector<std::string> run_scenario_to_files(const ScenarioConfig& cfg,
                                               const std::string& out_dir);

// The byte-comparable part of a report: everything except the "execution"
// subtree (timings, worker counts, host details).
std::string canonical_payload(const Json& report);

// Parses a report, rejecting unknown schema versions.
Json load_report(const std::string& text);

}  // namespace vbag
