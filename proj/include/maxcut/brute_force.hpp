#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include "maxcut/cut_state.hpp"

namespace maxcut {

inline constexpr std::size_t kBruteForceMaxVertices = 24;

struct ExactCut {
  std::int64_t value = 0;
  Assignment side;
};

/// Exact maximum cut by Gray-code enumeration of the 2^(n-1) assignments with
/// vertex 0 fixed in S; each successor differs by one incremental flip.
inline ExactCut brute_force_optimum(const Graph& graph) {
  const std::size_t n = graph.size();
  if (n > kBruteForceMaxVertices) {
    throw CapacityError("brute force supports n <= " + std::to_string(kBruteForceMaxVertices) +
                        ", got " + std::to_string(n));
  }
  if (n == 0) return {};

  Assignment start(n, 0);
  start[0] = 1;
  CutState state = init_state(graph, start);
  ExactCut best{state.cut_value, state.side};

  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    // Gray code i and i-1 differ in the bit at the position of i's lowest set bit.
    const auto bit = static_cast<Vertex>(std::countr_zero(i));
    flip(state, graph, bit + 1);
    if (state.cut_value > best.value) {
      best.value = state.cut_value;
      best.side = state.side;
    }
  }
  return best;
}

}  // namespace maxcut
