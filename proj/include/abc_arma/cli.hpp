#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "abc_arma/abc.hpp"
#include "abc_arma/mle.hpp"

namespace abc_arma::cli {

enum ExitCode : int { ok = 0, usage_error = 2, empty_posterior_error = 3, numeric_error = 4 };

struct RunConfig {
    std::size_t p = 0;
    std::size_t q = 0;
    PriorSpec prior;
    StageConfigs stages;
    std::uint64_t seed = 0;
    /// Generating model for `simulate` and the truth for `benchmark`.
    std::optional<ArmaParams> model;
    std::size_t n = 1000;
    std::size_t burn_in = kDefaultBurnIn;
    std::string input;
    std::string out_dir;

    /// Copies the run seed into every stage config.
    void sync_seeds();
    void validate() const;
};

RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Seed used for the simulated series of `simulate` and `benchmark`.
std::uint64_t series_seed(std::uint64_t seed);

struct BenchmarkRow {
    std::string parameter;
    double truth = 0.0;
    double mle = 0.0;
    double mle_error = 0.0;
    double abc = 0.0;
    double abc_error = 0.0;
    /// True when truth == 0 and the errors are absolute.
    bool absolute = false;
};

/// |estimate - truth| / |truth|, or the absolute error when truth is zero.
double relative_error(double estimate, double truth);

struct BenchmarkResult {
    Series series;
    MleResult mle;
    EstimationReport abc;
    std::vector<BenchmarkRow> rows;
    std::vector<std::string> warnings;
};

BenchmarkResult run_benchmark(const RunConfig& config, const Execution& exec = {});
std::vector<BenchmarkRow> benchmark_rows(const ArmaParams& truth, const MleResult& mle, const EstimationReport& abc);
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

/// Posterior-size warnings for stages that kept fewer than top_k draws.
std::vector<std::string> posterior_warnings(const EstimationReport& report);

/// Entry point of the abc-arma executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abc_arma::cli
