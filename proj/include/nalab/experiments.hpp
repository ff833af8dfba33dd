#pragma once

#include "nalab/checkers.hpp"
#include "nalab/geometry.hpp"
#include "nalab/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nalab {

// Schema violations in configs and command lines (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    SpaceParams space = SpaceParams::canonical();
    nlohmann::json space_json = {{"m", 2}, {"k", 1}};
    int J_max = 80;
    int N_max = 25;
    Normalization normalization = Normalization::peak;
    bool exact_mass = false;
    std::string backend = "radial";
    int tree_k = 2;
    int tree_depth = 8;
    nlohmann::json weight = {{"variant", "Constant"}};
    std::string checker = "msw";
    nlohmann::json checker_params = nlohmann::json::object();
    std::uint64_t seed = 42;
    std::map<std::string, std::vector<double>> axes;
    std::string output_dir;
    std::string output_name;

    KernelOptions kernel_options() const { return {N_max, normalization, exact_mass}; }
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
WeightSpec parse_weight_spec(const nlohmann::json& j);

// Runs one checker as configured. Supremum-type checkers are repeated with
// J_max doubled and judged by drift.
CheckReport run_checker(const ExperimentConfig& config);

struct SweepRow {
    std::vector<double> params; // one per axis, in axis order
    CheckReport report;
};
std::vector<SweepRow> sweep(const ExperimentConfig& config);

struct ExperimentOutcome {
    std::string id;
    bool pass = false;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, CheckReport>> reports; // labelled
    nlohmann::json summary = nlohmann::json::object();
};

// Seeded tree statistics shared by the drivers and the acceptance suite.
// Weak-(1,1) constant (boundary-flagged vertices excluded), maximized over
// `cases` random Dirac sums of `masses` point masses.
CheckReport tree_weak11_family(const TreeSpace& tree, std::uint64_t seed, int cases, int masses);
// Counts the seeded cases (random f and random B) on which the inequality holds.
CheckReport kolmogorov_family(const TreeSpace& tree, double q, std::uint64_t seed, int cases);
CheckReport tree_vector_valued(const TreeSpace& tree, std::uint64_t seed, int functions, double p, double r);

const std::vector<std::string>& experiment_ids();
// Throws ConfigError for unknown ids.
ExperimentOutcome reproduce(const std::string& id, std::uint64_t seed = 42);

// ---- persistence -------------------------------------------------------------

inline constexpr const char* kOutputDirEnv = "NALAB_OUTPUT_DIR";
// Flag value, then the environment variable, then "reports".
std::string resolve_output_dir(const std::string& flag_value);

nlohmann::json outcome_json(const ExperimentOutcome& outcome, const std::string& timestamp);
std::string csv_header(const std::vector<std::string>& param_columns);
std::string csv_row(const std::string& id, const std::vector<std::string>& params, const CheckReport& report);
std::string outcome_csv(const ExperimentOutcome& outcome);
std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows);
std::string current_timestamp();
void write_text(const std::string& dir, const std::string& name, const std::string& text);

} // namespace nalab
