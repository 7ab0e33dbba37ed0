#include "mocasm/congestion_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mocasm/error.hpp"

namespace mocasm::game {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cost p pays right now; NONE counts as +infinity.
double current_cost(const GameSpec& game, const StrategyProfile& profile, PlayerIndex p) {
    const auto& r = profile.choice(p);
    return r ? cost_of(game, p, *r, profile.congestion(*r)) : kInf;
}

// Cost p would pay after moving alone to r (r != p's current choice).
double deviation_cost(const GameSpec& game, const StrategyProfile& profile, PlayerIndex p, ResourceIndex r) {
    return cost_of(game, p, r, profile.congestion(r) + 1);
}

double potential(const GameSpec& game, const StrategyProfile& profile, double penalty) {
    double sum = 0.0;
    for (PlayerIndex p = 0; p < profile.player_count(); ++p) {
        sum += profile.choice(p) ? current_cost(game, profile, p) : penalty;
    }
    return sum;
}

}  // namespace

GameSpec::GameSpec(std::vector<std::size_t> player_ids, std::vector<std::size_t> resource_ids,
                   std::vector<double> costs)
    : players_(std::move(player_ids)), resources_(std::move(resource_ids)), costs_(std::move(costs)),
      max_cost_(-kInf) {
    if (players_.empty()) throw ParameterError("game needs at least one player");
    if (resources_.empty()) throw ParameterError("game needs at least one resource");
    if (costs_.size() != players_.size() * resources_.size()) {
        throw ParameterError("cost table must be players x resources (" + std::to_string(players_.size()) +
                             " x " + std::to_string(resources_.size()) + "), got " +
                             std::to_string(costs_.size()) + " entries");
    }
    for (double c : costs_) {
        if (!std::isfinite(c)) throw ParameterError("stored costs must be finite");
        max_cost_ = std::max(max_cost_, c);
    }
}

StrategyProfile::StrategyProfile(std::size_t players, std::size_t resources)
    : choice_(players), congestion_(resources, 0) {}

void StrategyProfile::set_choice(PlayerIndex p, std::optional<ResourceIndex> r) {
    auto& slot = choice_.at(p);
    if (r && *r >= congestion_.size()) throw ContractViolation("resource index out of range");
    if (slot) --congestion_[*slot];
    slot = r;
    if (slot) ++congestion_[*slot];
}

double cost_of(const GameSpec& game, PlayerIndex p, ResourceIndex r, std::size_t congestion) {
    if (p >= game.player_count() || r >= game.resource_count()) {
        throw ContractViolation("cost_of: player or resource outside the game");
    }
    if (congestion == 0) throw ContractViolation("cost_of: a chosen resource has congestion >= 1");
    return congestion == 1 ? game.solo_cost(p, r) : kInf;
}

std::optional<ResourceIndex> best_response(const GameSpec& game, const StrategyProfile& profile,
                                           PlayerIndex p) {
    const auto& cur = profile.choice(p);
    std::optional<ResourceIndex> best;
    double best_cost = kInf;
    for (ResourceIndex r = 0; r < game.resource_count(); ++r) {
        double c;
        if (cur && *cur == r) {
            c = cost_of(game, p, r, profile.congestion(r));
        } else if (profile.congestion(r) == 0) {
            c = game.solo_cost(p, r);
        } else {
            continue;  // joining an occupied resource costs +infinity
        }
        if (c < best_cost) {
            best_cost = c;
            best = r;
        }
    }
    return best;
}

EquilibriumResult solve_equilibrium(const GameSpec& game) {
    const std::size_t players = game.player_count();
    const std::size_t move_cap = players * game.resource_count();
    const double penalty = game.max_cost() + 1.0;

    EquilibriumResult result{StrategyProfile(players, game.resource_count()), 0, {}};
    auto& profile = result.profile;

    auto record_move = [&] {
        ++result.moves;
        if (result.moves > move_cap) {
            throw InternalError("best-response dynamics exceeded " + std::to_string(move_cap) + " moves");
        }
        result.cost_trace.push_back(potential(game, profile, penalty));
    };

    for (PlayerIndex p = 0; p < players; ++p) {
        if (auto r = best_response(game, profile, p)) {
            profile.set_choice(p, r);
            record_move();
        }
    }

    for (bool moved = true; moved;) {
        moved = false;
        for (PlayerIndex p = 0; p < players; ++p) {
            const auto r = best_response(game, profile, p);
            if (!r || r == profile.choice(p)) continue;
            if (!(deviation_cost(game, profile, p, *r) < current_cost(game, profile, p))) continue;
            profile.set_choice(p, r);
            record_move();
            moved = true;
        }
    }
    return result;
}

VerifyResult verify_equilibrium(const GameSpec& game, const StrategyProfile& profile) {
    if (profile.player_count() != game.player_count() || profile.resource_count() != game.resource_count()) {
        throw ContractViolation("profile does not match the game's dimensions");
    }
    for (PlayerIndex p = 0; p < game.player_count(); ++p) {
        const double now = current_cost(game, profile, p);
        for (ResourceIndex r = 0; r < game.resource_count(); ++r) {
            if (profile.choice(p) == r) continue;
            if (deviation_cost(game, profile, p, r) < now) return {false, Violation{p, r}};
        }
    }
    return {};
}

}  // namespace mocasm::game
