#pragma once

// Singleton congestion game with player-specific costs, restricted to the
// two-valued cost family: a player alone on a resource pays a stored finite
// cost, a shared resource costs +infinity for everyone on it.
//
// Players and resources are addressed by position (0..P-1, 0..R-1). The
// external ids (cluster index, object id) ride along for reporting.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mocasm::game {

using PlayerIndex = std::size_t;
using ResourceIndex = std::size_t;

class GameSpec {
public:
    /// `costs` is row-major players x resources. Throws ParameterError on an
    /// empty player or resource list, a size mismatch, or a non-finite cost.
    GameSpec(std::vector<std::size_t> player_ids, std::vector<std::size_t> resource_ids,
             std::vector<double> costs);

    std::size_t player_count() const noexcept { return players_.size(); }
    std::size_t resource_count() const noexcept { return resources_.size(); }
    const std::vector<std::size_t>& player_ids() const noexcept { return players_; }
    const std::vector<std::size_t>& resource_ids() const noexcept { return resources_; }

    /// Cost at congestion 1.
    double solo_cost(PlayerIndex p, ResourceIndex r) const noexcept { return costs_[p * resources_.size() + r]; }
    std::span<const double> costs() const noexcept { return costs_; }
    double max_cost() const noexcept { return max_cost_; }

private:
    std::vector<std::size_t> players_;
    std::vector<std::size_t> resources_;
    std::vector<double> costs_;
    double max_cost_;
};

/// Resource choice per player (nullopt = NONE) and the matching congestion vector.
class StrategyProfile {
public:
    StrategyProfile(std::size_t players, std::size_t resources);

    const std::optional<ResourceIndex>& choice(PlayerIndex p) const { return choice_.at(p); }
    std::size_t congestion(ResourceIndex r) const { return congestion_.at(r); }
    const std::vector<std::optional<ResourceIndex>>& choices() const noexcept { return choice_; }
    const std::vector<std::size_t>& congestion_vector() const noexcept { return congestion_; }

    /// Reassigns player p, keeping the congestion vector a tally of choices.
    void set_choice(PlayerIndex p, std::optional<ResourceIndex> r);

    std::size_t player_count() const noexcept { return choice_.size(); }
    std::size_t resource_count() const noexcept { return congestion_.size(); }

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

private:
    std::vector<std::optional<ResourceIndex>> choice_;
    std::vector<std::size_t> congestion_;
};

struct EquilibriumResult {
    StrategyProfile profile;
    std::size_t moves = 0;
    /// Potential after each move: sum of realized costs, with every NONE
    /// player charged 1 + the largest stored cost. Strictly decreasing.
    std::vector<double> cost_trace;
};

struct Violation {
    PlayerIndex player;
    ResourceIndex resource;
};

struct VerifyResult {
    bool is_equilibrium = true;
    std::optional<Violation> first_violation;
};

/// Stored cost at congestion 1, +infinity above. Congestion 0 is a contract violation.
double cost_of(const GameSpec& game, PlayerIndex p, ResourceIndex r, std::size_t congestion);

/// Payoff is the negated cost.
inline double payoff_of(const GameSpec& game, PlayerIndex p, ResourceIndex r, std::size_t congestion) {
    return -cost_of(game, p, r, congestion);
}

/// Cheapest option for p among free resources and p's current one, ties to
/// the lower resource index; nullopt when nothing has finite cost.
std::optional<ResourceIndex> best_response(const GameSpec& game, const StrategyProfile& profile,
                                           PlayerIndex p);

/// Inserts players in order, each on its best free resource, then runs
/// round-robin best-response sweeps until a sweep makes no move.
/// Throws InternalError if the move count exceeds players x resources.
EquilibriumResult solve_equilibrium(const GameSpec& game);

/// Exhaustive unilateral-deviation check.
VerifyResult verify_equilibrium(const GameSpec& game, const StrategyProfile& profile);

}  // namespace mocasm::game
