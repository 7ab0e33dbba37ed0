#pragma once

// MOCA-SM: density-ranked cluster heads play repeated singleton congestion
// games over the unassigned objects, keep an equilibrium allocation only if it
// raises phi = R^2 x connectivity, and the resulting clusters are merged down
// to the requested count before leftovers join their nearest cluster.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mocasm/congestion_game.hpp"
#include "mocasm/dataset.hpp"
#include "mocasm/distance.hpp"
#include "mocasm/objectives.hpp"

namespace mocasm {

/// How head selection ranks density.
enum class DensityMode {
    /// Mean distance to the objects still in the working set, recomputed
    /// after every pick. Default.
    WorkingSet,
    /// Mean distance to all objects, computed once before the loop.
    Global,
};

/// Which pair of clusters merges next.
enum class MergeLinkage {
    /// The pair whose merge leaves the largest phi. Default.
    Phi,
    /// Smallest minimum member-to-member distance.
    Single,
};

struct PipelineConfig {
    std::size_t final_clusters = 2;
    std::optional<std::size_t> neighbors;  // nullopt: choose_L(m)
    bool normalize = false;
    double epsilon = 1e-12;
    DensityMode density = DensityMode::WorkingSet;
    MergeLinkage linkage = MergeLinkage::Phi;
};

struct Allocation {
    ClusterIndex cluster;
    ObjectId object;
    double phi_after;
};

struct RoundRecord {
    std::size_t round = 0;
    std::size_t players = 0;
    std::size_t resources = 0;
    std::size_t moves = 0;
    bool equilibrium_verified = false;
    double phi_before = 0.0;
    double phi_after = 0.0;
    std::vector<Allocation> allocations;
    std::vector<ClusterIndex> dropouts;
    std::vector<ClusterIndex> waiting;  // received NONE: too few resources this round
};

struct MergeRecord {
    ClusterIndex kept;
    ClusterIndex absorbed;
    ObjectId head;
    double score;  // phi after the merge, or the single-linkage distance
};

struct PipelineState {
    explicit PipelineState(std::size_t object_count) : clustering(object_count) {}

    std::size_t round = 0;
    Clustering clustering;
    std::vector<ClusterIndex> active;  // players still in the game, identification order
    std::vector<RoundRecord> trace;
    std::vector<MergeRecord> merges;
    std::vector<std::string> warnings;
};

/// 9 below 150 objects, 14 up to 500, 28 beyond; clamped to m-1.
std::size_t choose_L(std::size_t m);

/// max(2, floor(m / L)).
std::size_t initial_player_count(std::size_t m, std::size_t L);

/// Head selection with a precomputed dissimilarity vector (global density).
/// Picks the least dissimilar object left (ties to the lower id), then drops
/// every object closer than dmax/n0 to it, until n0 heads or no objects remain.
std::vector<ObjectId> identify_players(const DistanceMatrix& dm, std::span<const double> dissimilarity,
                                       std::size_t n0);

/// Same loop with density taken from `mode`.
std::vector<ObjectId> identify_players(const DistanceMatrix& dm, std::size_t n0, DensityMode mode,
                                       simd::Level level = simd::active());

/// One singleton cluster per head; every head is an active player.
PipelineState initial_state(std::span<const ObjectId> heads, std::size_t object_count);

/// Players = active clusters, resources = unassigned objects, cost(k, e) =
/// -(connectivity of C_k + e) x (R^2 with e in C_k), all against the
/// committed clustering.
game::GameSpec build_round_game(const PipelineState& state, const ObjectiveContext& ctx);

/// Commits `resource` to `player` if phi improves by more than epsilon;
/// otherwise removes the player from the game for good.
bool accept_if_enhances(PipelineState& state, ClusterIndex player, ObjectId resource,
                        const ObjectiveContext& ctx, double epsilon = 1e-12);

/// Game rounds until nothing is unassigned or no player is left.
void play_rounds(PipelineState& state, const ObjectiveContext& ctx, double epsilon = 1e-12);

/// Merges until at most f clusters remain.
void merge_clusters(PipelineState& state, const ObjectiveContext& ctx, std::size_t f,
                    MergeLinkage linkage = MergeLinkage::Phi);

/// Each unassigned object, by ascending id, joins the cluster of its nearest
/// assigned object (ties to the lower cluster index).
void assign_leftovers(PipelineState& state, const DistanceMatrix& dm);

struct MocaResult {
    std::vector<int> assignment;  // cluster index per object
    PipelineState state;
    std::size_t neighbor_count = 0;
    std::size_t initial_players = 0;  // n0
    std::vector<ObjectId> heads;
    double elimination_radius = 0.0;
    std::size_t clusters_before_merge = 0;
    ObjectiveReport objectives;  // of the final partition
};

/// Full run: optional normalization, distances, heads, rounds, merging, leftovers.
MocaResult run_moca(const Dataset& data, const PipelineConfig& config);

std::string_view to_string(DensityMode mode) noexcept;
std::string_view to_string(MergeLinkage linkage) noexcept;
DensityMode parse_density(std::string_view text);
MergeLinkage parse_linkage(std::string_view text);

}  // namespace mocasm
