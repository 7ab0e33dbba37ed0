#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mocasm/dataset.hpp"
#include "mocasm/metrics.hpp"
#include "mocasm/pipeline.hpp"

namespace mocasm::bench {

inline constexpr const char* kReportSchema = "mocasm.bench/1";

enum class RunStatus { Ok, Failed };

struct RunReport {
    std::string algorithm;
    nlohmann::ordered_json config;
    RunStatus status = RunStatus::Ok;
    std::string error;
    int exit_code = 0;  // CLI exit code this run's failure maps to
    std::vector<int> assignments;
    std::optional<metrics::MetricsReport> metrics;
    nlohmann::ordered_json trace;  // per-round summary (MOCA-SM) or iteration info
    double seconds = 0.0;
};

struct ExternalRun {
    std::string name;
    std::filesystem::path assignments;
};

struct BenchConfig {
    std::string dataset_name;
    PipelineConfig moca;
    bool run_moca = true;
    bool run_kmeans = true;
    std::vector<std::uint64_t> kmeans_seeds{1};
    std::size_t kmeans_max_iters = 100;
    std::vector<ExternalRun> external;
};

struct BenchResult {
    std::string dataset_name;
    std::size_t objects = 0;
    std::size_t attributes = 0;
    std::size_t classes = 0;
    bool labelled = false;
    BenchConfig config;
    std::vector<RunReport> runs;

    bool all_ok() const;
};

RunReport run_moca_report(const Dataset& data, const PipelineConfig& config);
RunReport run_kmeans_report(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters,
                            bool normalize);
RunReport run_external_report(const Dataset& data, const ExternalRun& run);

/// Runs every configured algorithm; a throwing algorithm becomes a Failed row.
BenchResult run_benchmark(const Dataset& data, const BenchConfig& config);

/// Fixed key order; durations only when `timings` is set, so default output
/// is byte-identical across runs with the same inputs and seeds.
nlohmann::ordered_json to_json(const RunReport& run, bool timings = false);
nlohmann::ordered_json to_json(const BenchResult& result, bool timings = false);

/// Aligned comparison table: purity, RI, F-measure, ARI, precision, entropy.
std::string to_table(const BenchResult& result);

}  // namespace mocasm::bench
