#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxcut/error.hpp"
#include "maxcut/graph.hpp"

namespace maxcut {

namespace detail {
inline void check_assignment(const Graph& graph, const Assignment& side) {
  if (side.size() != graph.size()) {
    throw InvalidInput("assignment length " + std::to_string(side.size()) + " != vertex count " +
                       std::to_string(graph.size()));
  }
}
}  // namespace detail

/// f(S): total weight of edges whose endpoints lie on opposite sides.
inline std::int64_t cut_value(const Graph& graph, const Assignment& side) {
  detail::check_assignment(graph, side);
  std::int64_t total = 0;
  for (const auto& e : graph.edges()) {
    if (side[e.u] != side[e.v]) total += e.w;
  }
  return total;
}

/// Change in f(S) if v alone is flipped, computed from scratch in O(deg v).
inline std::int64_t flip_gain(const Graph& graph, const Assignment& side, Vertex v) {
  std::int64_t gain = 0;
  for (const auto& nb : graph.neighbors(v)) {
    gain += side[nb.vertex] == side[v] ? nb.weight : -nb.weight;
  }
  return gain;
}

/**
 * Mutable spin assignment with the cached objective and per-vertex flip gains.
 *
 * The cached values always equal their from-scratch recomputation; flip()
 * keeps them consistent in O(deg v) integer updates. `step` counts flips and
 * `last_flip_step[v]` is the step at which v was last flipped (-1 if never).
 */
struct CutState {
  Assignment side;
  std::int64_t cut_value = 0;
  std::vector<std::int64_t> gain;
  std::vector<std::int64_t> last_flip_step;
  std::int64_t step = 0;

  std::size_t size() const noexcept { return side.size(); }
};

inline CutState init_state(const Graph& graph, Assignment side) {
  detail::check_assignment(graph, side);
  CutState state;
  state.cut_value = cut_value(graph, side);
  state.gain.resize(graph.size());
  for (Vertex v = 0; v < graph.size(); ++v) state.gain[v] = flip_gain(graph, side, v);
  state.last_flip_step.assign(graph.size(), -1);
  state.side = std::move(side);
  return state;
}

inline void flip(CutState& state, const Graph& graph, Vertex v) {
  if (v >= state.size()) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(state.size()));
  }
  const auto old_side = state.side[v];
  for (const auto& nb : graph.neighbors(v)) {
    // Edge (v,u) switches between cut and uncut, so u's gain for it changes sign.
    if (state.side[nb.vertex] == old_side) {
      state.gain[nb.vertex] -= 2 * nb.weight;
    } else {
      state.gain[nb.vertex] += 2 * nb.weight;
    }
  }
  state.cut_value += state.gain[v];
  state.gain[v] = -state.gain[v];
  state.side[v] = static_cast<std::uint8_t>(1 - old_side);
  state.last_flip_step[v] = state.step;
  ++state.step;
}

}  // namespace maxcut
