#include "mocasm/bench/report.hpp"

#include <chrono>
#include <cstdio>
#include <set>

#include "mocasm/bench/csv_io.hpp"
#include "mocasm/bench/kmeans.hpp"
#include "mocasm/error.hpp"

namespace mocasm::bench {
namespace {

using json = nlohmann::ordered_json;

template <typename Fn>
RunReport timed(std::string algorithm, json config, Fn&& body) {
    RunReport run;
    run.algorithm = std::move(algorithm);
    run.config = std::move(config);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(run);
    } catch (const ParameterError& e) {
        run.status = RunStatus::Failed;
        run.error = e.what();
        run.exit_code = 1;
    } catch (const DataError& e) {
        run.status = RunStatus::Failed;
        run.error = e.what();
        run.exit_code = 2;
    } catch (const std::exception& e) {
        run.status = RunStatus::Failed;
        run.error = e.what();
        run.exit_code = 3;
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (run.status == RunStatus::Failed) run.assignments.clear();
    return run;
}

void score(RunReport& run, const Dataset& data) {
    if (data.has_labels()) run.metrics = metrics::evaluate(run.assignments, *data.labels());
}

json metrics_json(const metrics::MetricsReport& r) {
    return json{{"purity", r.purity},
                {"rand_index", r.rand_index},
                {"adjusted_rand_index", r.adjusted_rand_index},
                {"precision", r.precision},
                {"recall", r.recall},
                {"f_measure", r.f_measure},
                {"entropy", r.entropy}};
}

std::size_t cluster_count(const std::vector<int>& assignment) {
    return std::set<int>(assignment.begin(), assignment.end()).size();
}

}  // namespace

bool BenchResult::all_ok() const {
    for (const auto& r : runs)
        if (r.status != RunStatus::Ok) return false;
    return true;
}

RunReport run_moca_report(const Dataset& data, const PipelineConfig& config) {
    json cfg{{"final_clusters", config.final_clusters},
             {"L", config.neighbors ? json(*config.neighbors) : json("auto")},
             {"normalize", config.normalize},
             {"epsilon", config.epsilon},
             {"density", to_string(config.density)},
             {"linkage", to_string(config.linkage)}};
    return timed("moca", std::move(cfg), [&](RunReport& run) {
        const MocaResult res = run_moca(data, config);
        run.assignments = res.assignment;
        json rounds = json::array();
        std::size_t allocations = 0;
        std::size_t dropouts = 0;
        for (const auto& r : res.state.trace) {
            allocations += r.allocations.size();
            dropouts += r.dropouts.size();
            rounds.push_back(json{{"round", r.round},
                                  {"players", r.players},
                                  {"resources", r.resources},
                                  {"moves", r.moves},
                                  {"phi_before", r.phi_before},
                                  {"phi_after", r.phi_after},
                                  {"allocated", r.allocations.size()},
                                  {"dropouts", r.dropouts},
                                  {"waiting", r.waiting.size()}});
        }
        run.trace = json{{"L", res.neighbor_count},
                         {"n0", res.initial_players},
                         {"heads", res.heads},
                         {"elimination_radius", res.elimination_radius},
                         {"rounds", res.state.trace.size()},
                         {"allocations", allocations},
                         {"dropouts", dropouts},
                         {"clusters_before_merge", res.clusters_before_merge},
                         {"merges", res.state.merges.size()},
                         {"warnings", res.state.warnings},
                         {"objectives",
                          {{"r_square", res.objectives.r_square},
                           {"connectivity", res.objectives.connectivity},
                           {"phi", res.objectives.phi}}},
                         {"round_log", std::move(rounds)}};
        score(run, data);
    });
}

RunReport run_kmeans_report(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters,
                            bool normalize) {
    json cfg{{"k", k}, {"seed", seed}, {"max_iters", max_iters}, {"normalize", normalize}};
    return timed("kmeans[seed=" + std::to_string(seed) + "]", std::move(cfg), [&](RunReport& run) {
        const Dataset input = normalize ? min_max_normalize(data) : data;
        const KMeansResult res = kmeans_baseline(input, k, seed, max_iters);
        run.assignments = res.assignment;
        run.trace = json{{"iterations", res.iterations}, {"converged", res.converged}};
        score(run, data);
    });
}

RunReport run_external_report(const Dataset& data, const ExternalRun& ext) {
    json cfg{{"assignments", ext.assignments.filename().string()}};
    return timed(ext.name, std::move(cfg), [&](RunReport& run) {
        run.assignments = read_assignments(ext.assignments);
        if (run.assignments.size() != data.size()) {
            throw DataError("'" + ext.assignments.string() + "' has " + std::to_string(run.assignments.size()) +
                            " rows, dataset has " + std::to_string(data.size()) + " objects");
        }
        run.trace = json::object();
        score(run, data);
    });
}

BenchResult run_benchmark(const Dataset& data, const BenchConfig& config) {
    BenchResult result;
    result.dataset_name = config.dataset_name;
    result.objects = data.size();
    result.attributes = data.dims();
    result.classes = data.class_count();
    result.labelled = data.has_labels();
    result.config = config;
    if (config.run_moca) result.runs.push_back(run_moca_report(data, config.moca));
    if (config.run_kmeans) {
        for (auto seed : config.kmeans_seeds) {
            result.runs.push_back(run_kmeans_report(data, config.moca.final_clusters, seed, config.kmeans_max_iters,
                                                    config.moca.normalize));
        }
    }
    for (const auto& ext : config.external) result.runs.push_back(run_external_report(data, ext));
    return result;
}

json to_json(const RunReport& run, bool timings) {
    json j{{"algorithm", run.algorithm},
           {"status", run.status == RunStatus::Ok ? "ok" : "FAILED"}};
    if (run.status != RunStatus::Ok) j["error"] = run.error;
    j["config"] = run.config;
    if (run.status == RunStatus::Ok) {
        j["clusters"] = cluster_count(run.assignments);
        if (run.metrics) j["metrics"] = metrics_json(*run.metrics);
        j["trace"] = run.trace;
        j["assignments"] = run.assignments;
    }
    if (timings) j["seconds"] = run.seconds;
    return j;
}

json to_json(const BenchResult& result, bool timings) {
    json runs = json::array();
    for (const auto& r : result.runs) runs.push_back(to_json(r, timings));
    return json{{"schema", kReportSchema},
                {"dataset",
                 {{"name", result.dataset_name},
                  {"objects", result.objects},
                  {"attributes", result.attributes},
                  {"classes", result.classes},
                  {"labelled", result.labelled}}},
                {"runs", std::move(runs)}};
}

std::string to_table(const BenchResult& result) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "dataset: %s  (%zu objects, %zu attributes, %zu classes)\n",
                  result.dataset_name.c_str(), result.objects, result.attributes, result.classes);
    out += line;
    std::size_t width = 9;
    for (const auto& r : result.runs) width = std::max(width, r.algorithm.size());
    const int w = static_cast<int>(width);
    if (!result.labelled) {
        std::snprintf(line, sizeof line, "%-*s  %8s  %8s\n", w, "algorithm", "status", "clusters");
        out += line;
        for (const auto& r : result.runs) {
            std::snprintf(line, sizeof line, "%-*s  %8s  %8zu\n", w, r.algorithm.c_str(),
                          r.status == RunStatus::Ok ? "ok" : "FAILED", cluster_count(r.assignments));
            out += line;
        }
        return out;
    }
    std::snprintf(line, sizeof line, "%-*s  %8s  %8s  %8s  %8s  %9s  %8s\n", w, "algorithm", "purity", "RI",
                  "F1", "ARI", "precision", "entropy");
    out += line;
    for (const auto& r : result.runs) {
        if (r.status != RunStatus::Ok || !r.metrics) {
            std::snprintf(line, sizeof line, "%-*s  FAILED: %s\n", w, r.algorithm.c_str(), r.error.c_str());
        } else {
            const auto& m = *r.metrics;
            std::snprintf(line, sizeof line, "%-*s  %8.4f  %8.4f  %8.4f  %8.4f  %9.4f  %8.4f\n", w,
                          r.algorithm.c_str(), m.purity, m.rand_index, m.f_measure, m.adjusted_rand_index,
                          m.precision, m.entropy);
        }
        out += line;
    }
    return out;
}

}  // namespace mocasm::bench
