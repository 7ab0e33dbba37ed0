#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mocasm/error.hpp"
#include "mocasm/incremental.hpp"
#include "mocasm/objectives.hpp"
#include "test_support.hpp"

using namespace mocasm;
using mocasm::test::points;
using mocasm::test::points_1d;

namespace {

Clustering partition_of(std::size_t m, const std::vector<std::vector<ObjectId>>& groups) {
    Clustering c(m);
    for (const auto& g : groups) {
        const auto k = c.add_cluster(g.front());
        for (std::size_t i = 1; i < g.size(); ++i) c.assign(g[i], k);
    }
    return c;
}

// Random clustering over a random subset of objects; heads are random members.
Clustering random_clustering(std::mt19937_64& rng, std::size_t m, bool full) {
    std::vector<ObjectId> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t used = full ? m : 1 + rng() % m;
    const std::size_t k = 1 + rng() % used;
    Clustering c(m);
    for (std::size_t i = 0; i < k; ++i) c.add_cluster(order[i]);
    for (std::size_t i = k; i < used; ++i) c.assign(order[i], rng() % k);
    return c;
}

// Connectivity straight from the formula, with neighbors found by brute-force sort.
double connectivity_oracle(const Clustering& c, const DistanceMatrix& dm, std::size_t L) {
    const std::size_t m = dm.size();
    double total = 0.0;
    for (const auto& cl : c.clusters()) {
        double sum = 0.0;
        for (ObjectId h : cl.members) {
            std::vector<ObjectId> others;
            for (ObjectId o = 0; o < m; ++o)
                if (o != h) others.push_back(o);
            std::stable_sort(others.begin(), others.end(),
                             [&](ObjectId a, ObjectId b) { return dm(h, a) < dm(h, b); });
            std::size_t hits = 0;
            for (std::size_t j = 0; j < L; ++j)
                if (c.cluster_of(others[j]) == c.cluster_of(h)) ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(L);
        }
        total += sum / static_cast<double>(m);
    }
    return total;
}

}  // namespace

TEST_CASE("gravity_center") {
    CHECK(gravity_center(points(2, {1.5, 2.5, 1.5, 2.5})) == std::vector<double>{1.5, 2.5});
    CHECK(gravity_center(points(2, {0, 0, 2, 0, 1, 3})) == std::vector<double>{1.0, 1.0});
    CHECK(gravity_center(points_1d({-4.25, 4.25})) == std::vector<double>{0.0});
}

TEST_CASE("inertia worked examples") {
    SUBCASE("one cluster headed at g has no inter inertia") {
        const auto data = points_1d({0.0, 1.0, 2.0});
        const auto c = partition_of(3, {{1, 0, 2}});
        CHECK(inter_inertia(c, data, gravity_center(data)) == 0.0);
    }
    SUBCASE("two singletons around g") {
        const auto data = points_1d({0.0, 2.0});
        const auto c = partition_of(2, {{0}, {1}});
        CHECK(inter_inertia(c, data, gravity_center(data)) == 1.0);
        CHECK(intra_inertia(c, build_distance_matrix(data)) == 0.0);
        CHECK(r_square(c, data, build_distance_matrix(data)) == 1.0);
    }
    SUBCASE("pair cluster headed at 0") {
        const auto data = points_1d({0.0, 2.0});
        const auto c = partition_of(2, {{0, 1}});
        CHECK(intra_inertia(c, build_distance_matrix(data)) == 2.0);
    }
    SUBCASE("R-square degenerate ends") {
        const auto data = points_1d({-1.0, 0.0, 1.0});
        const auto dm = build_distance_matrix(data);
        CHECK(r_square(partition_of(3, {{1, 0, 2}}), data, dm) == 0.0);
        CHECK(r_square(partition_of(3, {{0}, {1}, {2}}), data, dm) == 1.0);
        // Heads exactly at g with nothing else assigned: 0 by the degenerate rule.
        CHECK(r_square(partition_of(3, {{1}}), data, dm) == 0.0);
    }
}

TEST_CASE("connectivity worked examples") {
    const auto data = test::toy_six();
    const auto dm = build_distance_matrix(data);
    const auto knn2 = knn_table(dm, 2);

    CHECK(cluster_connectivity(std::vector<ObjectId>{0, 1, 2, 3, 4, 5}, knn_table(dm, 5)) == 1.0);
    CHECK(cluster_connectivity(std::vector<ObjectId>{4}, knn2) == 0.0);
    CHECK(cluster_connectivity(std::vector<ObjectId>{0, 1, 2}, knn2) == 1.0);

    const auto whole = partition_of(6, {{0, 1, 2, 3, 4, 5}});
    CHECK(total_connectivity(whole, knn2) == 1.0);
    CHECK(total_connectivity(partition_of(6, {{0}, {1}, {2}, {3}, {4}, {5}}), knn2) == 0.0);

    const auto triples = partition_of(6, {{1, 0, 2}, {4, 3, 5}});
    CHECK(total_connectivity(triples, knn2) == 1.0);
    const double r2 = r_square(triples, data, dm);
    CHECK(r2 > 0.0);
    CHECK(phi(triples, data, dm, knn2) == r2);

    CHECK(phi(partition_of(6, {{0}, {1}, {2}, {3}, {4}, {5}}), data, dm, knn2) == 0.0);
    const auto centered = points_1d({-1.0, 0.0, 1.0});
    const auto cdm = build_distance_matrix(centered);
    CHECK(phi(partition_of(3, {{1, 0, 2}}), centered, cdm, knn_table(cdm, 2)) == 0.0);
}

TEST_CASE("dissimilarity_vector worked examples") {
    CHECK(dissimilarity_vector(build_distance_matrix(points_1d({0.0, 3.0}))) == std::vector<double>{3.0, 3.0});
    CHECK(dissimilarity_vector(build_distance_matrix(points_1d({0.0, 1.0, 3.0}))) ==
          std::vector<double>{2.0, 1.5, 2.5});
}

TEST_CASE("objective properties on random clusterings") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng() % 25;
        const auto data = test::random_dataset(rng, m, 1 + rng() % 4);
        const auto dm = build_distance_matrix(data);
        const std::size_t L = 1 + rng() % (m - 1);
        const auto knn = knn_table(dm, L);
        const auto c = random_clustering(rng, m, trial % 2 == 0);
        c.validate();

        const auto rep = evaluate(c, data, dm, knn);
        for (double v : {rep.r_square, rep.connectivity, rep.phi}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        for (const auto& cl : c.clusters()) {
            const double cc = cluster_connectivity(cl, knn);
            CHECK(cc >= 0.0);
            CHECK(cc <= 1.0);
        }
        CHECK(rep.phi == rep.r_square * rep.connectivity);

        // Size-weighted mean of per-cluster connectivity.
        double weighted = 0.0;
        for (const auto& cl : c.clusters())
            weighted += static_cast<double>(cl.members.size()) * cluster_connectivity(cl, knn);
        CHECK(rep.connectivity == doctest::Approx(weighted / static_cast<double>(m)).epsilon(1e-12));
        CHECK(rep.connectivity == doctest::Approx(connectivity_oracle(c, dm, L)).epsilon(1e-12));

        if (rep.intra_inertia == 0.0 && rep.inter_inertia > 0.0) CHECK(rep.r_square == 1.0);
        if (rep.inter_inertia == 0.0 && rep.intra_inertia > 0.0) CHECK(rep.r_square == 0.0);

        // Reversed cluster order and shuffled member lists.
        Clustering permuted(m);
        auto clusters = c.clusters();
        std::reverse(clusters.begin(), clusters.end());
        for (auto cl : clusters) {
            const auto k = permuted.add_cluster(cl.head);
            std::shuffle(cl.members.begin(), cl.members.end(), rng);
            for (ObjectId o : cl.members)
                if (o != cl.head) permuted.assign(o, k);
        }
        const auto prep = evaluate(permuted, data, dm, knn);
        CHECK(prep.r_square == doctest::Approx(rep.r_square).epsilon(1e-12));
        CHECK(prep.connectivity == doctest::Approx(rep.connectivity).epsilon(1e-12));
        CHECK(prep.phi == doctest::Approx(rep.phi).epsilon(1e-12));
    }
}

TEST_CASE("adding a member whose neighbors are all inside never lowers connectivity") {
    std::mt19937_64 rng(33);
    int exercised = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t m = 4 + rng() % 20;
        const auto data = test::random_dataset(rng, m, 2);
        const auto dm = build_distance_matrix(data);
        const std::size_t L = 1 + rng() % 3;
        const auto knn = knn_table(dm, std::min(L, m - 1));
        const auto c = random_clustering(rng, m, false);
        for (ObjectId e : c.unassigned()) {
            for (ClusterIndex k = 0; k < c.cluster_count(); ++k) {
                const auto near = knn.nearest(e);
                const bool all_inside =
                    std::all_of(near.begin(), near.end(), [&](ObjectId o) { return c.cluster_of(o) == k; });
                if (!all_inside) continue;
                auto members = c.cluster(k).members;
                const double before = cluster_connectivity(members, knn);
                members.push_back(e);
                CHECK(cluster_connectivity(members, knn) >= before);
                ++exercised;
            }
        }
    }
    CHECK(exercised > 20);
}

TEST_CASE("tracker matches full recomputation") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + rng() % 30;
        const auto data = test::random_dataset(rng, m, 1 + rng() % 3);
        const auto dm = build_distance_matrix(data);
        const auto knn = knn_table(dm, 1 + rng() % (m - 1));
        const ObjectiveContext ctx{data, dm, knn, gravity_center(data)};
        auto c = random_clustering(rng, m, false);
        ObjectiveTracker tracker(ctx, c);

        CHECK(tracker.r_square() == doctest::Approx(r_square(c, data, dm)).epsilon(1e-12));
        CHECK(tracker.total_connectivity() == doctest::Approx(total_connectivity(c, knn)).epsilon(1e-12));

        // Play several additions, checking every hypothetical along the way.
        while (c.unassigned_count() > 0) {
            const auto free = c.unassigned();
            for (ObjectId e : free) {
                for (ClusterIndex k = 0; k < c.cluster_count(); ++k) {
                    Clustering trial_c = c;
                    trial_c.assign(e, k);
                    CHECK(tracker.r_square_if_added(k, e) ==
                          doctest::Approx(r_square(trial_c, data, dm)).epsilon(1e-12));
                    CHECK(tracker.total_connectivity_if_added(k, e) ==
                          doctest::Approx(total_connectivity(trial_c, knn)).epsilon(1e-12));
                    CHECK(tracker.cluster_connectivity_if_added(k, e) ==
                          doctest::Approx(cluster_connectivity(trial_c.cluster(k), knn)).epsilon(1e-12));
                    CHECK(tracker.phi_if_added(k, e) ==
                          doctest::Approx(phi(trial_c, data, dm, knn)).epsilon(1e-12));
                }
            }
            const ObjectId e = free[rng() % free.size()];
            const ClusterIndex k = rng() % c.cluster_count();
            c.assign(e, k);
            tracker.add(k, e);
            CHECK(tracker.phi() == doctest::Approx(phi(c, data, dm, knn)).epsilon(1e-12));
            if (rng() % 3 == 0) break;
        }
    }
}

TEST_CASE("clustering bookkeeping") {
    Clustering c(5);
    CHECK(c.unassigned_count() == 5);
    const auto a = c.add_cluster(3);
    const auto b = c.add_cluster(0);
    c.assign(1, a);
    c.assign(4, b);
    CHECK(c.unassigned() == std::vector<ObjectId>{2});
    CHECK_THROWS_AS(c.assign(1, b), ContractViolation);
    CHECK_THROWS_AS(c.assignment(), ContractViolation);
    c.assign(2, b);
    CHECK(c.assignment() == std::vector<int>{1, 0, 1, 0, 1});
    c.merge(a, b, 0);
    CHECK(c.cluster_count() == 1);
    CHECK(c.cluster(0).head == 0);
    CHECK(c.cluster(0).members.size() == 5);
    c.validate();
}
