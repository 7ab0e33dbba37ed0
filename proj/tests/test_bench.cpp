#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mocasm/bench/csv_io.hpp"
#include "mocasm/bench/generators.hpp"
#include "mocasm/bench/kmeans.hpp"
#include "mocasm/bench/report.hpp"
#include "mocasm/error.hpp"
#include "mocasm/objectives.hpp"

using namespace mocasm;
using namespace mocasm::bench;

namespace fs = std::filesystem;

namespace {

const fs::path kData{MOCASM_DATA_DIR};

Dataset parse_text(const std::string& text, CsvOptions opts = {}) {
    std::istringstream in(text);
    return parse_csv(in, opts);
}

std::string error_of(const std::string& text, CsvOptions opts = {}) {
    try {
        (void)parse_text(text, opts);
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "mocasm_test_bench";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("parse_csv reads the Iris file") {
    CsvOptions opts;
    opts.label = LabelColumn::at(4);
    opts.header = true;
    const auto iris = parse_csv(kData / "iris.csv", opts);
    CHECK(iris.size() == 150);
    CHECK(iris.dims() == 4);
    CHECK(iris.class_count() == 3);
    CHECK(iris.class_names().size() == 3);

    CsvOptions by_name;
    by_name.label = LabelColumn::named("species");
    const auto named = parse_csv(kData / "iris.csv", by_name);
    CHECK(named.labels() == iris.labels());
    CHECK(std::vector<double>(named.values().begin(), named.values().end()) ==
          std::vector<double>(iris.values().begin(), iris.values().end()));
}

TEST_CASE("parse_csv header handling and labels") {
    const std::string text = "x,y,cls\n1,2,a\n3,4,b\n5,6,a\n";
    CsvOptions opts;
    opts.header = true;
    opts.label = LabelColumn::at(2);
    const auto d = parse_text(text, opts);
    CHECK(d.size() == 3);
    CHECK(d.dims() == 2);
    CHECK(*d.labels() == std::vector<int>{0, 1, 0});
    CHECK(d.class_names() == std::vector<std::string>{"a", "b"});

    // Without the flag the header row is data and fails to parse.
    CsvOptions no_header;
    no_header.label = LabelColumn::at(2);
    CHECK(error_of(text, no_header).find("line 1") != std::string::npos);

    const auto unlabelled = parse_text("1,2\n3,4\n\n5,6\n");
    CHECK(unlabelled.size() == 3);
    CHECK_FALSE(unlabelled.has_labels());

    CHECK(LabelColumn::parse("4").index == std::size_t{4});
    CHECK(LabelColumn::parse("species").name == std::string("species"));
    CHECK_FALSE(LabelColumn::parse("").present());
}

TEST_CASE("parse_csv errors name the line") {
    const std::string ragged = "1,2\n1,2\n1,2\n1,2\n1,2\n1,2\n1,2,3\n";
    CHECK(error_of(ragged).find("line 7") != std::string::npos);
    CHECK(error_of(ragged).find("ragged") != std::string::npos);

    const auto bad = error_of("1,2\n3,x\n");
    CHECK(bad.find("line 2") != std::string::npos);
    CHECK(bad.find("non-numeric") != std::string::npos);

    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK(error_of("\n\n").find("empty") != std::string::npos);

    CsvOptions named;
    named.label = LabelColumn::named("nope");
    CHECK(error_of("a,b\n1,2\n", named).find("not found") != std::string::npos);

    CHECK_THROWS_AS(parse_csv(kData / "does_not_exist.csv"), DataError);
}

TEST_CASE("assignment files round-trip") {
    const std::vector<int> a{2, 0, 1, 1, 0};
    const auto path = scratch("assign.csv");
    write_assignments(path, a);
    CHECK(read_assignments(path) == a);

    std::istringstream shuffled("object_id,cluster_id\n1,7\n0,3\n");
    CHECK(read_assignments(shuffled) == std::vector<int>{3, 7});
    std::istringstream gap("0,1\n2,1\n");
    CHECK_THROWS_AS(read_assignments(gap), DataError);
    std::istringstream dup("0,1\n0,1\n");
    CHECK_THROWS_AS(read_assignments(dup), DataError);
}

TEST_CASE("write_dataset output parses back to the same values") {
    const auto d = generate_gaussian_blobs(dataset_3_2_layout(), 3);
    std::ostringstream out;
    write_dataset(out, d);
    CsvOptions opts;
    opts.label = LabelColumn::named("label");
    const auto back = parse_text(out.str(), opts);
    CHECK(std::vector<double>(back.values().begin(), back.values().end()) ==
          std::vector<double>(d.values().begin(), d.values().end()));
    CHECK(back.labels() == d.labels());
}

TEST_CASE("gaussian blob generator") {
    const auto s34 = generate_gaussian_blobs(spherical_3_4_layout(), 1);
    CHECK(s34.size() == 400);
    CHECK(s34.dims() == 3);
    CHECK(s34.class_count() == 4);

    const auto d32 = generate_gaussian_blobs(dataset_3_2_layout(), 1);
    CHECK(d32.size() == 76);
    CHECK(d32.dims() == 2);
    std::vector<int> sizes(3, 0);
    for (int l : *d32.labels()) ++sizes[static_cast<std::size_t>(l)];
    CHECK(sizes == std::vector<int>{13, 43, 20});

    const auto again = generate_gaussian_blobs(dataset_3_2_layout(), 1);
    CHECK(std::vector<double>(again.values().begin(), again.values().end()) ==
          std::vector<double>(d32.values().begin(), d32.values().end()));
    const auto other = generate_gaussian_blobs(dataset_3_2_layout(), 2);
    CHECK(std::vector<double>(other.values().begin(), other.values().end()) !=
          std::vector<double>(d32.values().begin(), d32.values().end()));

    CHECK_THROWS_AS(generate_gaussian_blobs({}, 1), ParameterError);
    CHECK_THROWS_AS(generate_gaussian_blobs({{5, {0.0}, 0.0}}, 1), ParameterError);
    CHECK_THROWS_AS(generate_gaussian_blobs({{5, {0.0}, 1.0}, {5, {0.0, 1.0}, 1.0}}, 1), ParameterError);
    CHECK_THROWS_AS(preset_layout("spiral"), ParameterError);

    const auto b = parse_blob("13@0,-2.5:0.8");
    CHECK(b.count == 13);
    CHECK(b.center == std::vector<double>{0.0, -2.5});
    CHECK(b.spread == 0.8);
    CHECK_THROWS_AS(parse_blob("13:0.8"), ParameterError);
    CHECK_THROWS_AS(parse_blob("x@0:1"), ParameterError);
}

TEST_CASE("kmeans baseline") {
    SUBCASE("k = 1 lands on the gravity center") {
        const auto d = generate_gaussian_blobs(dataset_3_2_layout(), 4);
        const auto r = kmeans_baseline(d, 1, 9);
        CHECK(r.assignment == std::vector<int>(d.size(), 0));
        const auto g = gravity_center(d);
        for (std::size_t a = 0; a < d.dims(); ++a) CHECK(r.centers[a] == doctest::Approx(g[a]).epsilon(1e-12));
        CHECK(r.converged);
    }
    SUBCASE("separated 1-D blobs are recovered") {
        const Dataset d(6, 1, {0.0, 0.2, 0.1, 9.0, 9.1, 9.3});
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto r = kmeans_baseline(d, 2, seed);
            CHECK(r.assignment[0] == r.assignment[1]);
            CHECK(r.assignment[1] == r.assignment[2]);
            CHECK(r.assignment[3] == r.assignment[4]);
            CHECK(r.assignment[4] == r.assignment[5]);
            CHECK(r.assignment[0] != r.assignment[3]);
        }
    }
    SUBCASE("same seed, same partition") {
        const auto d = generate_gaussian_blobs(spherical_3_4_layout(), 2);
        CHECK(kmeans_baseline(d, 4, 11).assignment == kmeans_baseline(d, 4, 11).assignment);
    }
    SUBCASE("k out of range") {
        const Dataset d(3, 1, {0.0, 1.0, 2.0});
        CHECK_THROWS_AS(kmeans_baseline(d, 0, 1), ParameterError);
        CHECK_THROWS_AS(kmeans_baseline(d, 4, 1), ParameterError);
    }
    SUBCASE("duplicate points force an empty cluster to reseed") {
        const Dataset d(5, 1, {1.0, 1.0, 1.0, 1.0, 8.0});
        const auto r = kmeans_baseline(d, 3, 1);
        CHECK(r.assignment.size() == 5);
        for (int c : r.assignment) CHECK((c >= 0 && c < 3));
    }
}

TEST_CASE("run_benchmark on Iris") {
    CsvOptions opts;
    opts.label = LabelColumn::at(4);
    opts.header = true;
    const auto iris = parse_csv(kData / "iris.csv", opts);
    BenchConfig cfg;
    cfg.dataset_name = "iris";
    cfg.moca.final_clusters = 3;
    const auto res = run_benchmark(iris, cfg);
    REQUIRE(res.runs.size() == 2);
    CHECK(res.all_ok());
    for (const auto& r : res.runs) {
        REQUIRE(r.metrics.has_value());
        CHECK(r.assignments.size() == 150);
    }
    const auto j = to_json(res);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["runs"][0]["metrics"].size() == 7);
    CHECK_FALSE(j["runs"][0].contains("seconds"));
    CHECK(to_json(res, true)["runs"][0].contains("seconds"));

    const auto table = to_table(res);
    for (const char* col : {"purity", "RI", "F1", "ARI", "precision", "entropy", "moca", "kmeans[seed=1]"})
        CHECK(table.find(col) != std::string::npos);

    // Same inputs and seeds: byte-identical report.
    CHECK(to_json(run_benchmark(iris, cfg)).dump(2) == j.dump(2));
}

TEST_CASE("run_benchmark degraded and failure modes") {
    SUBCASE("label-free data keeps assignments and drops metrics") {
        const auto d = generate_gaussian_blobs(dataset_3_2_layout(), 5);
        const Dataset bare(d.size(), d.dims(), std::vector<double>(d.values().begin(), d.values().end()));
        BenchConfig cfg;
        cfg.moca.final_clusters = 3;
        const auto res = run_benchmark(bare, cfg);
        CHECK_FALSE(res.labelled);
        for (const auto& r : res.runs) {
            CHECK_FALSE(r.metrics.has_value());
            CHECK(r.assignments.size() == d.size());
            CHECK_FALSE(to_json(r).contains("metrics"));
            CHECK(to_json(r)["assignments"].size() == d.size());
        }
        CHECK(to_table(res).find("purity") == std::string::npos);
    }
    SUBCASE("a failing algorithm becomes a FAILED row") {
        const auto d = generate_gaussian_blobs(dataset_3_2_layout(), 5);
        const auto path = scratch("short.csv");
        write_assignments(path, {0, 1, 0});
        BenchConfig cfg;
        cfg.moca.final_clusters = 3;
        cfg.moca.neighbors = 500;  // out of range for 76 objects
        cfg.kmeans_seeds = {1, 2};
        cfg.external = {{"short", path}, {"missing", scratch("nope.csv")}};
        const auto res = run_benchmark(d, cfg);
        REQUIRE(res.runs.size() == 5);
        CHECK_FALSE(res.all_ok());
        CHECK(res.runs[0].status == RunStatus::Failed);
        CHECK(res.runs[0].exit_code == 1);
        CHECK(res.runs[1].status == RunStatus::Ok);
        CHECK(res.runs[2].status == RunStatus::Ok);
        CHECK(res.runs[3].status == RunStatus::Failed);
        CHECK(res.runs[3].exit_code == 2);
        CHECK(res.runs[4].exit_code == 2);
        CHECK(to_json(res)["runs"][0]["status"] == "FAILED");
        CHECK(to_table(res).find("FAILED") != std::string::npos);
    }
}
