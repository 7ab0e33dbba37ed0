// mocasm: cluster, benchmark and generate datasets from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mocasm/bench/csv_io.hpp"
#include "mocasm/bench/generators.hpp"
#include "mocasm/bench/kmeans.hpp"
#include "mocasm/bench/report.hpp"
#include "mocasm/error.hpp"
#include "mocasm/pipeline.hpp"

namespace {

using namespace mocasm;

struct DataArgs {
    std::string input;
    std::string preset;
    std::string label_col;
    bool header = false;
    std::uint64_t seed = 1;
};

struct PipelineArgs {
    std::size_t final_clusters = 2;
    std::string neighbors = "auto";
    bool normalize = false;
    std::string density = "working-set";
    std::string linkage = "phi";
};

void add_data_options(CLI::App& cmd, DataArgs& a) {
    cmd.add_option("--input", a.input, "CSV dataset");
    cmd.add_option("--label-col", a.label_col, "label column: 0-based index or header name");
    cmd.add_flag("--header", a.header, "first non-blank line is a header");
}

void add_pipeline_options(CLI::App& cmd, PipelineArgs& a) {
    cmd.add_option("--final-clusters,-f", a.final_clusters, "number of final clusters")->required();
    cmd.add_option("--L", a.neighbors, "neighbor count for connectivity: auto or an integer");
    cmd.add_flag("--normalize", a.normalize, "min-max scale every attribute to [0,1]");
    cmd.add_option("--density", a.density, "head selection density: working-set|global");
    cmd.add_option("--linkage", a.linkage, "merge criterion: phi|single");
}

Dataset load(const DataArgs& a) {
    if (!a.input.empty() && !a.preset.empty()) throw ParameterError("use either --input or --preset, not both");
    if (!a.preset.empty()) return bench::generate_gaussian_blobs(bench::preset_layout(a.preset), a.seed);
    if (a.input.empty()) throw ParameterError("--input is required");
    bench::CsvOptions opts;
    opts.header = a.header;
    opts.label = bench::LabelColumn::parse(a.label_col);
    return bench::parse_csv(a.input, opts);
}

PipelineConfig to_config(const PipelineArgs& a) {
    PipelineConfig c;
    c.final_clusters = a.final_clusters;
    if (a.neighbors != "auto") {
        try {
            std::size_t pos = 0;
            const auto v = std::stoll(a.neighbors, &pos);
            if (pos != a.neighbors.size() || v < 1) throw std::invalid_argument("L");
            c.neighbors = static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
            throw ParameterError("--L must be 'auto' or a positive integer, got '" + a.neighbors + "'");
        }
    }
    c.normalize = a.normalize;
    c.density = parse_density(a.density);
    c.linkage = parse_linkage(a.linkage);
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
}

int exit_code_of(const bench::BenchResult& result) {
    for (const auto& r : result.runs)
        if (r.status != bench::RunStatus::Ok) return r.exit_code;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MOCA-SM game-theoretic clustering and benchmark harness"};
    app.require_subcommand(1);
    std::string simd_level = "auto";
    app.add_option("--simd", simd_level, "kernel level: auto|scalar|avx2|neon");

    DataArgs cdata;
    PipelineArgs cpipe;
    std::string algorithm = "moca";
    std::string output;
    std::string report;
    bool timings = false;
    auto* cluster = app.add_subcommand("cluster", "cluster one dataset with one algorithm");
    add_data_options(*cluster, cdata);
    cluster->add_option("--preset", cdata.preset, "generated dataset: dataset-3-2|spherical-3-4");
    add_pipeline_options(*cluster, cpipe);
    cluster->add_option("--algorithm", algorithm, "moca|kmeans")->check(CLI::IsMember({"moca", "kmeans"}));
    cluster->add_option("--seed", cdata.seed, "seed for k-means and presets");
    cluster->add_option("--output,-o", output, "assignment CSV (default stdout)");
    cluster->add_option("--report", report, "write the JSON run report here");
    cluster->add_flag("--timings", timings, "include wall-clock seconds in the report");

    DataArgs bdata;
    PipelineArgs bpipe;
    std::vector<std::string> algorithms{"moca", "kmeans"};
    std::vector<std::uint64_t> kmeans_seeds;
    std::vector<std::string> external;
    std::string bench_output;
    std::string dataset_name;
    bool bench_timings = false;
    auto* benchcmd = app.add_subcommand("bench", "compare algorithms on one dataset");
    add_data_options(*benchcmd, bdata);
    benchcmd->add_option("--preset", bdata.preset, "generated dataset: dataset-3-2|spherical-3-4");
    add_pipeline_options(*benchcmd, bpipe);
    benchcmd->add_option("--algorithm", algorithms, "algorithms to run (moca, kmeans)")
        ->delimiter(',')
        ->check(CLI::IsMember({"moca", "kmeans"}));
    benchcmd->add_option("--seed", kmeans_seeds, "k-means seed(s); the first also seeds --preset")->delimiter(',');
    benchcmd->add_option("--external", external, "score an assignment CSV: name=path");
    benchcmd->add_option("--name", dataset_name, "dataset name in the report");
    benchcmd->add_option("--output,-o", bench_output, "JSON report path (default: table only)");
    benchcmd->add_flag("--timings", bench_timings, "include wall-clock seconds in the report");

    std::string gen_preset;
    std::vector<std::string> blobs;
    std::uint64_t gen_seed = 1;
    std::string gen_output;
    auto* gen = app.add_subcommand("gen", "write a synthetic Gaussian-blob dataset as CSV");
    gen->add_option("--preset", gen_preset, "dataset-3-2|spherical-3-4");
    gen->add_option("--blob", blobs, "count@x,y,...:spread (repeatable)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--output,-o", gen_output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        simd::set_active(simd::parse_level(simd_level));

        if (*cluster) {
            const Dataset data = load(cdata);
            const PipelineConfig config = to_config(cpipe);
            bench::RunReport run;
            if (algorithm == "moca") {
                run = bench::run_moca_report(data, config);
            } else if (algorithm == "kmeans") {
                run = bench::run_kmeans_report(data, config.final_clusters, cdata.seed, 100, config.normalize);
            } else {
                throw ParameterError("unknown algorithm '" + algorithm + "' (expected moca|kmeans)");
            }
            if (run.status != bench::RunStatus::Ok) {
                std::cerr << "error: " << run.error << '\n';
                return run.exit_code;
            }
            std::ostringstream csv;
            bench::write_assignments(csv, run.assignments);
            write_text(output, csv.str());
            if (!report.empty()) write_text(report, bench::to_json(run, timings).dump(2) + "\n");
            if (run.metrics) {
                const auto& m = *run.metrics;
                std::cerr << run.algorithm << ": purity=" << m.purity << " RI=" << m.rand_index
                          << " ARI=" << m.adjusted_rand_index << " F1=" << m.f_measure << " P=" << m.precision
                          << " R=" << m.recall << " entropy=" << m.entropy << '\n';
            }
            return 0;
        }

        if (*benchcmd) {
            if (!kmeans_seeds.empty()) bdata.seed = kmeans_seeds.front();
            const Dataset data = load(bdata);
            bench::BenchConfig config;
            config.dataset_name = !dataset_name.empty() ? dataset_name
                                  : !bdata.preset.empty() ? bdata.preset
                                                          : std::filesystem::path(bdata.input).stem().string();
            config.moca = to_config(bpipe);
            config.run_moca = false;
            config.run_kmeans = false;
            for (const auto& a : algorithms) {
                if (a == "moca") {
                    config.run_moca = true;
                } else if (a == "kmeans") {
                    config.run_kmeans = true;
                } else {
                    throw ParameterError("unknown algorithm '" + a + "' (expected moca|kmeans)");
                }
            }
            if (!kmeans_seeds.empty()) config.kmeans_seeds = kmeans_seeds;
            for (const auto& e : external) {
                const auto eq = e.find('=');
                if (eq == std::string::npos || eq == 0) throw ParameterError("--external expects name=path");
                config.external.push_back({e.substr(0, eq), e.substr(eq + 1)});
            }
            const auto result = bench::run_benchmark(data, config);
            if (!bench_output.empty()) write_text(bench_output, bench::to_json(result, bench_timings).dump(2) + "\n");
            std::cout << bench::to_table(result);
            return exit_code_of(result);
        }

        if (*gen) {
            std::vector<bench::BlobSpec> layout;
            if (!gen_preset.empty()) layout = bench::preset_layout(gen_preset);
            for (const auto& b : blobs) layout.push_back(bench::parse_blob(b));
            if (layout.empty()) throw ParameterError("gen needs --preset or at least one --blob");
            std::ostringstream csv;
            bench::write_dataset(csv, bench::generate_gaussian_blobs(layout, gen_seed));
            write_text(gen_output, csv.str());
            return 0;
        }
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
