#include "mocasm/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mocasm/error.hpp"
#include "mocasm/incremental.hpp"

namespace mocasm {

std::size_t choose_L(std::size_t m) {
    if (m < 2) throw ParameterError("choose_L needs at least 2 objects");
    std::size_t L = 28;
    if (m < 150) {
        L = 9;
    } else if (m <= 500) {
        L = 14;
    }
    return std::min(L, m - 1);
}

std::size_t initial_player_count(std::size_t m, std::size_t L) {
    if (L < 1) throw ParameterError("neighbor count L must be >= 1");
    return std::max<std::size_t>(2, m / L);
}

namespace {

// Shared selection loop; `density(working)` returns the score of every object
// (only entries of objects still in the working set are read).
template <typename DensityFn>
std::vector<ObjectId> select_heads(const DistanceMatrix& dm, std::size_t n0, DensityFn&& density) {
    if (n0 < 1) throw ParameterError("initial player count n0 must be >= 1");
    const std::size_t m = dm.size();
    const double radius = dm.dmax() / static_cast<double>(n0);
    std::vector<char> working(m, 1);
    std::size_t remaining = m;
    std::vector<ObjectId> heads;
    while (remaining > 0 && heads.size() < n0) {
        const std::vector<double>& score = density(working, remaining);
        ObjectId best = m;
        for (ObjectId o = 0; o < m; ++o) {
            if (working[o] && (best == m || score[o] < score[best])) best = o;
        }
        heads.push_back(best);
        const auto row = dm.row(best);
        for (ObjectId o = 0; o < m; ++o) {
            if (working[o] && (o == best || row[o] < radius)) {
                working[o] = 0;
                --remaining;
            }
        }
    }
    return heads;
}

}  // namespace

std::vector<ObjectId> identify_players(const DistanceMatrix& dm, std::span<const double> dissimilarity,
                                       std::size_t n0) {
    if (dissimilarity.size() != dm.size()) throw ParameterError("dissimilarity vector must have length m");
    const std::vector<double> score(dissimilarity.begin(), dissimilarity.end());
    return select_heads(dm, n0, [&](const std::vector<char>&, std::size_t) -> const std::vector<double>& {
        return score;
    });
}

std::vector<ObjectId> identify_players(const DistanceMatrix& dm, std::size_t n0, DensityMode mode,
                                       simd::Level level) {
    if (mode == DensityMode::Global) return identify_players(dm, dissimilarity_vector(dm, level), n0);

    const auto& k = simd::kernels(level);
    const std::size_t m = dm.size();
    std::vector<double> score(m);
    return select_heads(dm, n0, [&](const std::vector<char>& working, std::size_t remaining)
                                    -> const std::vector<double>& {
        std::fill(score.begin(), score.end(), 0.0);
        for (ObjectId j = 0; j < m; ++j)
            if (working[j]) k.add_row(dm.row(j).data(), score.data(), m);
        if (remaining > 1) {
            for (double& s : score) s /= static_cast<double>(remaining - 1);
        }
        return score;
    });
}

PipelineState initial_state(std::span<const ObjectId> heads, std::size_t object_count) {
    if (heads.empty()) throw ParameterError("at least one head is required");
    PipelineState state(object_count);
    for (ObjectId h : heads) state.active.push_back(state.clustering.add_cluster(h));
    return state;
}

game::GameSpec build_round_game(const PipelineState& state, const ObjectiveContext& ctx) {
    if (state.active.empty()) throw ContractViolation("build_round_game: no active player");
    std::vector<ObjectId> resources = state.clustering.unassigned();
    if (resources.empty()) throw ContractViolation("build_round_game: no unassigned object");

    const ObjectiveTracker tracker(ctx, state.clustering);
    std::vector<double> costs;
    costs.reserve(state.active.size() * resources.size());
    for (ClusterIndex k : state.active) {
        for (ObjectId e : resources) {
            costs.push_back(-(tracker.cluster_connectivity_if_added(k, e) * tracker.r_square_if_added(k, e)));
        }
    }
    return game::GameSpec({state.active.begin(), state.active.end()}, std::move(resources), std::move(costs));
}

bool accept_if_enhances(PipelineState& state, ClusterIndex player, ObjectId resource,
                        const ObjectiveContext& ctx, double epsilon) {
    auto& clustering = state.clustering;
    if (clustering.is_assigned(resource)) {
        throw ContractViolation("accept_if_enhances: object " + std::to_string(resource) + " is already assigned");
    }
    const double before = phi(clustering, ctx.data, ctx.dm, ctx.knn);
    Clustering candidate = clustering;
    candidate.assign(resource, player);
    const double after = phi(candidate, ctx.data, ctx.dm, ctx.knn);
    if (after > before + epsilon) {
        clustering = std::move(candidate);
        return true;
    }
    std::erase(state.active, player);
    return false;
}

void play_rounds(PipelineState& state, const ObjectiveContext& ctx, double epsilon) {
    const std::size_t m = state.clustering.object_count();
    while (!state.active.empty() && state.clustering.unassigned_count() > 0) {
        ++state.round;
        if (state.round > m) throw InternalError("game rounds exceeded the object count");

        const game::GameSpec g = build_round_game(state, ctx);
        const game::EquilibriumResult eq = game::solve_equilibrium(g);
        if (!game::verify_equilibrium(g, eq.profile).is_equilibrium) {
            throw InternalError("round " + std::to_string(state.round) + ": solver returned a non-equilibrium");
        }

        RoundRecord rec;
        rec.round = state.round;
        rec.players = g.player_count();
        rec.resources = g.resource_count();
        rec.moves = eq.moves;
        rec.equilibrium_verified = true;
        rec.phi_before = phi(state.clustering, ctx.data, ctx.dm, ctx.knn);
        rec.phi_after = rec.phi_before;

        for (game::PlayerIndex p = 0; p < g.player_count(); ++p) {
            const ClusterIndex k = g.player_ids()[p];
            const auto& choice = eq.profile.choice(p);
            if (!choice) {
                rec.waiting.push_back(k);
                continue;
            }
            const ObjectId e = g.resource_ids()[*choice];
            if (accept_if_enhances(state, k, e, ctx, epsilon)) {
                rec.phi_after = phi(state.clustering, ctx.data, ctx.dm, ctx.knn);
                rec.allocations.push_back({k, e, rec.phi_after});
            } else {
                rec.dropouts.push_back(k);
            }
        }
        state.trace.push_back(std::move(rec));
    }
}

namespace {

// Square matrix over the current clusters that supports deleting a row+column.
template <typename T>
class ClusterMatrix {
public:
    explicit ClusterMatrix(std::size_t n, T fill = T{}) : n_(n), v_(n * n, fill) {}
    T& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    T operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    std::size_t size() const { return n_; }
    void erase(std::size_t k) {
        std::vector<T> next;
        next.reserve((n_ - 1) * (n_ - 1));
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (j != k) next.push_back(v_[i * n_ + j]);
        }
        v_ = std::move(next);
        --n_;
    }

private:
    std::size_t n_;
    std::vector<T> v_;
};

struct MergeChoice {
    ClusterIndex first;
    ClusterIndex second;
    ObjectId head;
    double score;
};

// Head of the larger constituent; equal sizes keep the lower index's head.
ObjectId merged_head(const Clustering& c, ClusterIndex i, ClusterIndex j) {
    return c.cluster(i).members.size() >= c.cluster(j).members.size() ? c.cluster(i).head : c.cluster(j).head;
}

void merge_single_linkage(PipelineState& state, const DistanceMatrix& dm, std::size_t f) {
    auto& clustering = state.clustering;
    const std::size_t n = clustering.cluster_count();
    ClusterMatrix<double> link(n, std::numeric_limits<double>::infinity());
    for (ClusterIndex a = 0; a < n; ++a) {
        for (ClusterIndex b = a + 1; b < n; ++b) {
            double best = std::numeric_limits<double>::infinity();
            for (ObjectId x : clustering.cluster(a).members)
                for (ObjectId y : clustering.cluster(b).members) best = std::min(best, dm(x, y));
            link(a, b) = link(b, a) = best;
        }
    }
    while (clustering.cluster_count() > f) {
        const std::size_t k = clustering.cluster_count();
        MergeChoice pick{0, 1, 0, std::numeric_limits<double>::infinity()};
        for (ClusterIndex a = 0; a < k; ++a)
            for (ClusterIndex b = a + 1; b < k; ++b)
                if (link(a, b) < pick.score) pick = {a, b, 0, link(a, b)};
        pick.head = merged_head(clustering, pick.first, pick.second);
        for (ClusterIndex c = 0; c < k; ++c) {
            if (c == pick.first || c == pick.second) continue;
            link(pick.first, c) = link(c, pick.first) = std::min(link(pick.first, c), link(pick.second, c));
        }
        link.erase(pick.second);
        clustering.merge(pick.first, pick.second, pick.head);
        state.merges.push_back({pick.first, pick.second, pick.head, pick.score});
    }
}

// Picks merges by the phi they leave behind. Cross-cluster neighbor links and
// per-cluster squared distances to every live head make each candidate O(1).
void merge_by_phi(PipelineState& state, const ObjectiveContext& ctx, std::size_t f) {
    auto& clustering = state.clustering;
    const std::size_t n = clustering.cluster_count();
    const std::size_t m = clustering.object_count();
    const double link_norm = static_cast<double>(m) * static_cast<double>(ctx.knn.neighbor_count());

    std::vector<double> spread(n);  // d^2(head_k, g)
    for (ClusterIndex k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t a = 0; a < ctx.data.dims(); ++a) {
            const double diff = ctx.data.at(clustering.cluster(k).head, a) - ctx.center[a];
            s += diff * diff;
        }
        spread[k] = s;
    }
    ClusterMatrix<std::size_t> cross(n, 0);  // (a, b): neighbor links from members of a into b
    ClusterMatrix<double> to_head(n, 0.0);   // (a, b): sum over members of a of d^2(w, head_b)
    for (ClusterIndex a = 0; a < n; ++a) {
        for (ObjectId w : clustering.cluster(a).members) {
            for (ObjectId nn : ctx.knn.nearest(w)) {
                if (auto b = clustering.cluster_of(nn)) ++cross(a, *b);
            }
            for (ClusterIndex b = 0; b < n; ++b) {
                const double d = ctx.dm(w, clustering.cluster(b).head);
                to_head(a, b) += d * d;
            }
        }
    }

    while (clustering.cluster_count() > f) {
        const std::size_t k = clustering.cluster_count();
        double inter = 0.0;
        double intra = 0.0;
        std::size_t links = 0;
        for (ClusterIndex c = 0; c < k; ++c) {
            inter += static_cast<double>(clustering.cluster(c).members.size()) * spread[c];
            intra += to_head(c, c);
            links += cross(c, c);
        }

        MergeChoice pick{0, 1, 0, -std::numeric_limits<double>::infinity()};
        for (ClusterIndex a = 0; a < k; ++a) {
            for (ClusterIndex b = a + 1; b < k; ++b) {
                const double sa = static_cast<double>(clustering.cluster(a).members.size());
                const double sb = static_cast<double>(clustering.cluster(b).members.size());
                const bool a_wins = sa >= sb;
                const ClusterIndex winner = a_wins ? a : b;
                const ClusterIndex loser = a_wins ? b : a;
                const double new_inter = inter - sa * spread[a] - sb * spread[b] + (sa + sb) * spread[winner];
                const double new_intra = intra - to_head(loser, loser) + to_head(loser, winner);
                const double total = new_inter + new_intra;
                const double r2 = total > 0.0 ? new_inter / total : 0.0;
                const double conn = static_cast<double>(links + cross(a, b) + cross(b, a)) / link_norm;
                const double score = r2 * conn;
                if (score > pick.score) pick = {a, b, clustering.cluster(winner).head, score};
            }
        }

        const ClusterIndex a = pick.first;
        const ClusterIndex b = pick.second;
        const bool head_from_b = pick.head == clustering.cluster(b).head;
        for (ClusterIndex c = 0; c < k; ++c) {
            cross(a, c) += cross(b, c);
            to_head(a, c) += to_head(b, c);
        }
        for (ClusterIndex c = 0; c < k; ++c) {
            cross(c, a) += cross(c, b);
            if (head_from_b) to_head(c, a) = to_head(c, b);
        }
        if (head_from_b) spread[a] = spread[b];
        spread.erase(spread.begin() + static_cast<std::ptrdiff_t>(b));
        cross.erase(b);
        to_head.erase(b);
        clustering.merge(a, b, pick.head);
        state.merges.push_back({a, b, pick.head, pick.score});
    }
}

}  // namespace

void merge_clusters(PipelineState& state, const ObjectiveContext& ctx, std::size_t f, MergeLinkage linkage) {
    if (f < 1) throw ParameterError("final cluster count f must be >= 1");
    if (state.clustering.cluster_count() < 1) throw ContractViolation("merge_clusters: no clusters");
    if (state.clustering.cluster_count() <= f) return;
    if (linkage == MergeLinkage::Single) {
        merge_single_linkage(state, ctx.dm, f);
    } else {
        merge_by_phi(state, ctx, f);
    }
}

void assign_leftovers(PipelineState& state, const DistanceMatrix& dm) {
    auto& clustering = state.clustering;
    if (clustering.cluster_count() == 0) throw ContractViolation("assign_leftovers: no clusters exist");
    for (ObjectId o : clustering.unassigned()) {
        const auto row = dm.row(o);
        double best = std::numeric_limits<double>::infinity();
        ClusterIndex target = 0;
        for (ObjectId x = 0; x < clustering.object_count(); ++x) {
            const auto c = clustering.cluster_of(x);
            if (!c) continue;
            if (row[x] < best || (row[x] == best && *c < target)) {
                best = row[x];
                target = *c;
            }
        }
        clustering.assign(o, target);
    }
}

MocaResult run_moca(const Dataset& input, const PipelineConfig& config) {
    if (config.final_clusters < 1) throw ParameterError("final cluster count f must be >= 1");
    if (config.final_clusters > input.size()) {
        throw ParameterError("final cluster count f=" + std::to_string(config.final_clusters) +
                             " exceeds the object count " + std::to_string(input.size()));
    }
    const std::size_t m = input.size();
    const Dataset data = config.normalize ? min_max_normalize(input) : input;
    const DistanceMatrix dm = build_distance_matrix(data);

    const std::size_t L = config.neighbors.value_or(choose_L(m));
    const KnnTable knn = knn_table(dm, L);  // validates 1 <= L <= m-1
    const ObjectiveContext ctx{data, dm, knn, gravity_center(data)};

    const std::size_t n0 = initial_player_count(m, L);
    std::vector<ObjectId> heads = identify_players(dm, n0, config.density);

    MocaResult result{{}, initial_state(heads, m), L, n0, heads, dm.dmax() / static_cast<double>(n0), 0, {}};
    PipelineState& state = result.state;
    play_rounds(state, ctx, config.epsilon);

    result.clusters_before_merge = state.clustering.cluster_count();
    if (result.clusters_before_merge < config.final_clusters) {
        state.warnings.push_back("only " + std::to_string(result.clusters_before_merge) +
                                 " initial clusters formed; fewer than the requested " +
                                 std::to_string(config.final_clusters));
    }
    merge_clusters(state, ctx, config.final_clusters, config.linkage);
    assign_leftovers(state, dm);

    state.clustering.validate();
    if (state.clustering.unassigned_count() != 0) throw InternalError("run_moca left objects unassigned");
    result.assignment = state.clustering.assignment();
    result.objectives = evaluate(state.clustering, data, dm, knn);
    return result;
}

std::string_view to_string(DensityMode mode) noexcept {
    return mode == DensityMode::Global ? "global" : "working-set";
}

std::string_view to_string(MergeLinkage linkage) noexcept {
    return linkage == MergeLinkage::Single ? "single" : "phi";
}

DensityMode parse_density(std::string_view text) {
    if (text == "working-set") return DensityMode::WorkingSet;
    if (text == "global") return DensityMode::Global;
    throw ParameterError("unknown density mode '" + std::string(text) + "' (expected working-set|global)");
}

MergeLinkage parse_linkage(std::string_view text) {
    if (text == "phi") return MergeLinkage::Phi;
    if (text == "single") return MergeLinkage::Single;
    throw ParameterError("unknown linkage '" + std::string(text) + "' (expected phi|single)");
}

}  // namespace mocasm
