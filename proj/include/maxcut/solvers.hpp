#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxcut/cut_state.hpp"
#include "maxcut/error.hpp"
#include "maxcut/random.hpp"

namespace maxcut {

enum class SolverKind { FORWARD_GREEDY, REVERSIBLE_GREEDY, TABU, EO };

enum class InitMode { EMPTY, RANDOM };

inline constexpr std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::FORWARD_GREEDY: return "fg";
    case SolverKind::REVERSIBLE_GREEDY: return "rg";
    case SolverKind::TABU: return "ts";
    case SolverKind::EO: return "eo";
  }
  return "?";
}

inline std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  for (auto k : {SolverKind::FORWARD_GREEDY, SolverKind::REVERSIBLE_GREEDY, SolverKind::TABU, SolverKind::EO}) {
    if (solver_name(k) == name) return k;
  }
  return std::nullopt;
}

struct SolverConfig {
  SolverKind kind = SolverKind::TABU;
  std::int64_t tenure = 20;               // tabu tenure; 0 disables the tabu list
  double tau = 1.4;                       // EO power-law exponent
  std::optional<std::int64_t> max_steps;  // defaults to 2n
  std::uint64_t seed = 0;
  InitMode init = InitMode::RANDOM;
  bool record_trajectory = false;

  std::int64_t steps_for(std::size_t n) const { return max_steps.value_or(2 * static_cast<std::int64_t>(n)); }
};

struct TrajectoryPoint {
  std::int64_t step;
  std::int64_t best;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct SolveOutcome {
  std::int64_t best_value = 0;
  Assignment best_side;
  std::int64_t steps_taken = 0;
  std::vector<TrajectoryPoint> trajectory;

  friend bool operator==(const SolveOutcome&, const SolveOutcome&) = default;
};

inline void validate(const SolverConfig& config) {
  if (config.tenure < 0) throw InvalidInput("tabu tenure must be >= 0");
  if (!(config.tau > 1.0) || !std::isfinite(config.tau)) throw InvalidInput("EO tau must be finite and > 1");
  if (config.max_steps && *config.max_steps < 0) throw InvalidInput("max_steps must be >= 0");
}

/// Initial assignment: all zeros, or independent fair bits from the config seed.
inline Assignment initial_assignment(std::size_t n, InitMode mode, std::uint64_t seed) {
  Assignment side(n, 0);
  if (mode == InitMode::RANDOM) {
    Rng rng = make_rng(seed, 0);
    for (auto& s : side) s = static_cast<std::uint8_t>(rng() >> 63);
  }
  return side;
}

/// Best-ever bookkeeping shared by the solvers.
class BestTracker {
public:
  BestTracker(const CutState& state, bool record) : record_(record) {
    outcome_.best_value = state.cut_value;
    outcome_.best_side = state.side;
    if (record_) outcome_.trajectory.push_back({0, state.cut_value});
  }

  void observe(const CutState& state) {
    if (state.cut_value > outcome_.best_value) {
      outcome_.best_value = state.cut_value;
      outcome_.best_side = state.side;
    }
    if (record_) outcome_.trajectory.push_back({state.step, outcome_.best_value});
  }

  std::int64_t best() const noexcept { return outcome_.best_value; }

  SolveOutcome finish(std::int64_t steps) && {
    outcome_.steps_taken = steps;
    return std::move(outcome_);
  }

private:
  bool record_;
  SolveOutcome outcome_;
};

namespace detail {
inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();
}

/// Starts from S = {} and adds the outside vertex of largest positive gain
/// until none remains. Vertices never leave S.
inline SolveOutcome forward_greedy(const Graph& graph, const SolverConfig& config = {}) {
  CutState state = init_state(graph, Assignment(graph.size(), 0));
  BestTracker best(state, config.record_trajectory);
  std::int64_t steps = 0;
  for (;;) {
    Vertex chosen = detail::kNoVertex;
    for (Vertex v = 0; v < graph.size(); ++v) {
      if (state.side[v] == 0 && state.gain[v] > 0 && (chosen == detail::kNoVertex || state.gain[v] > state.gain[chosen])) {
        chosen = v;
      }
    }
    if (chosen == detail::kNoVertex) break;
    flip(state, graph, chosen);
    ++steps;
    best.observe(state);
  }
  return std::move(best).finish(steps);
}

/// Flips the max-gain vertex while that gain is non-negative, for at most
/// max_steps flips. Ties go to the lowest vertex id.
inline SolveOutcome reversible_greedy(const Graph& graph, const SolverConfig& config) {
  validate(config);
  CutState state = init_state(graph, initial_assignment(graph.size(), config.init, config.seed));
  BestTracker best(state, config.record_trajectory);
  const std::int64_t budget = config.steps_for(graph.size());
  std::int64_t steps = 0;
  while (steps < budget && graph.size() > 0) {
    const auto top = std::max_element(state.gain.begin(), state.gain.end());
    if (*top < 0) break;
    flip(state, graph, static_cast<Vertex>(top - state.gain.begin()));
    ++steps;
    best.observe(state);
  }
  return std::move(best).finish(steps);
}

/**
 * Vanilla tabu search over single-vertex flips.
 *
 * Each step flips the vertex with the largest resulting cut among vertices
 * that are not tabu or that would beat the best value seen so far
 * (aspiration). The flipped vertex becomes tabu with counter `tenure`, after
 * which every counter is decremented and expired entries leave the list; a
 * vertex therefore stays tabu for tenure - 1 subsequent steps. When every
 * vertex is tabu and none aspirates, the one expiring soonest is flipped.
 */
class TabuSearch {
public:
  TabuSearch(const Graph& graph, Assignment start, std::int64_t tenure, bool record = false)
      : graph_(&graph), state_(init_state(graph, std::move(start))), best_(state_, record), tenure_(tenure),
        remaining_(graph.size(), 0) {}

  /// Performs one move and returns the flipped vertex.
  Vertex step() {
    const Vertex move = choose_move();
    flip(state_, *graph_, move);
    if (tenure_ > 0) remaining_[move] = tenure_;
    best_.observe(state_);
    for (auto& r : remaining_) {
      if (r > 0) --r;
    }
    return move;
  }

  const CutState& state() const noexcept { return state_; }
  std::int64_t best_value() const noexcept { return best_.best(); }
  bool is_tabu(Vertex v) const noexcept { return remaining_[v] > 0; }

  SolveOutcome finish() && { return std::move(best_).finish(state_.step); }

private:
  Vertex choose_move() const {
    Vertex chosen = detail::kNoVertex;
    std::int64_t chosen_value = std::numeric_limits<std::int64_t>::min();
    for (Vertex v = 0; v < state_.size(); ++v) {
      const std::int64_t value = state_.cut_value + state_.gain[v];
      const bool admissible = remaining_[v] == 0 || value > best_.best();
      if (admissible && value > chosen_value) {
        chosen = v;
        chosen_value = value;
      }
    }
    if (chosen != detail::kNoVertex) return chosen;
    return static_cast<Vertex>(std::min_element(remaining_.begin(), remaining_.end()) - remaining_.begin());
  }

  const Graph* graph_;
  CutState state_;
  BestTracker best_;
  std::int64_t tenure_;
  std::vector<std::int64_t> remaining_;
};

inline SolveOutcome tabu_search(const Graph& graph, const SolverConfig& config) {
  validate(config);
  TabuSearch search(graph, initial_assignment(graph.size(), config.init, config.seed), config.tenure,
                    config.record_trajectory);
  const std::int64_t budget = graph.size() == 0 ? 0 : config.steps_for(graph.size());
  for (std::int64_t i = 0; i < budget; ++i) search.step();
  return std::move(search).finish();
}

/// Samples a 0-based rank k-1 with probability proportional to k^-tau, k = 1..n.
class PowerLawRankSampler {
public:
  PowerLawRankSampler(std::size_t n, double tau) : cdf_(n) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      total += std::pow(static_cast<double>(k + 1), -tau);
      cdf_[k] = total;
    }
    for (auto& c : cdf_) c /= total;
  }

  double probability(std::size_t rank) const {
    return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1];
  }

  std::size_t size() const noexcept { return cdf_.size(); }

  std::size_t operator()(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

private:
  std::vector<double> cdf_;
};

/**
 * Extremal optimization: rank vertices by descending gain (ties by id), draw
 * a rank from the power law and flip that vertex, regardless of its gain.
 */
class ExtremalOptimization {
public:
  ExtremalOptimization(const Graph& graph, Assignment start, double tau, std::uint64_t seed, bool record = false)
      : graph_(&graph), state_(init_state(graph, std::move(start))), best_(state_, record),
        sampler_(graph.size(), tau), rng_(make_rng(seed, 1)), order_(graph.size()) {}

  /// Performs one move; returns the 0-based rank that was drawn.
  std::size_t step() {
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](Vertex a, Vertex b) { return state_.gain[a] > state_.gain[b]; });
    const std::size_t rank = sampler_(rng_);
    flip(state_, *graph_, order_[rank]);
    best_.observe(state_);
    return rank;
  }

  const CutState& state() const noexcept { return state_; }

  SolveOutcome finish() && { return std::move(best_).finish(state_.step); }

private:
  const Graph* graph_;
  CutState state_;
  BestTracker best_;
  PowerLawRankSampler sampler_;
  Rng rng_;
  std::vector<Vertex> order_;
};

inline SolveOutcome extremal_optimization(const Graph& graph, const SolverConfig& config) {
  validate(config);
  ExtremalOptimization search(graph, initial_assignment(graph.size(), config.init, config.seed), config.tau,
                              config.seed, config.record_trajectory);
  const std::int64_t budget = graph.size() == 0 ? 0 : config.steps_for(graph.size());
  for (std::int64_t i = 0; i < budget; ++i) search.step();
  return std::move(search).finish();
}

inline SolveOutcome solve(const Graph& graph, const SolverConfig& config) {
  switch (config.kind) {
    case SolverKind::FORWARD_GREEDY: return forward_greedy(graph, config);
    case SolverKind::REVERSIBLE_GREEDY: return reversible_greedy(graph, config);
    case SolverKind::TABU: return tabu_search(graph, config);
    case SolverKind::EO: return extremal_optimization(graph, config);
  }
  throw InvalidInput("unknown solver kind");
}

}  // namespace maxcut
