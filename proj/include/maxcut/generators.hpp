#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxcut/error.hpp"
#include "maxcut/graph.hpp"
#include "maxcut/random.hpp"

namespace maxcut {

enum class Family {
  ER,
  BA,
  HK,
  WS,
  GSET_ER,
  GSET_SKEW,
  GSET_TOROIDAL,
  SK_SPIN_GLASS,
  PHASE_TRANSITION,
  PHYSICS_REGULAR,
};

enum class WeightScheme {
  UNWEIGHTED_01,  // every structural edge has weight 1
  SIGNED_0PM1,    // uniform draw from {-1, 0, +1}; zero draws become non-edges
  SIGNED_PM1,     // uniform draw from {-1, +1}
};

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::ER: return "er";
    case Family::BA: return "ba";
    case Family::HK: return "hk";
    case Family::WS: return "ws";
    case Family::GSET_ER: return "gset-er";
    case Family::GSET_SKEW: return "gset-skew";
    case Family::GSET_TOROIDAL: return "gset-toroidal";
    case Family::SK_SPIN_GLASS: return "sk";
    case Family::PHASE_TRANSITION: return "phase-transition";
    case Family::PHYSICS_REGULAR: return "physics";
  }
  return "?";
}

inline constexpr Family kAllFamilies[] = {
    Family::ER,        Family::BA,           Family::HK,
    Family::WS,        Family::GSET_ER,      Family::GSET_SKEW,
    Family::GSET_TOROIDAL, Family::SK_SPIN_GLASS, Family::PHASE_TRANSITION,
    Family::PHYSICS_REGULAR,
};

inline std::optional<Family> parse_family(std::string_view name) {
  for (auto f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

inline constexpr std::string_view weight_scheme_name(WeightScheme w) {
  switch (w) {
    case WeightScheme::UNWEIGHTED_01: return "unweighted";
    case WeightScheme::SIGNED_0PM1: return "signed";
    case WeightScheme::SIGNED_PM1: return "pm1";
  }
  return "?";
}

inline std::optional<WeightScheme> parse_weight_scheme(std::string_view name) {
  for (auto w : {WeightScheme::UNWEIGHTED_01, WeightScheme::SIGNED_0PM1, WeightScheme::SIGNED_PM1}) {
    if (weight_scheme_name(w) == name) return w;
  }
  return std::nullopt;
}

/**
 * Parameters of a random instance distribution.
 *
 * `n` is the fixed vertex count. When `n_max > 0` the size is instead drawn
 * uniformly from [n_min, n_max] using the seed. Family parameters live in
 * `params` under the keys p, m, k, d and degree.
 */
struct DistributionSpec {
  Family family = Family::ER;
  std::size_t n = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::map<std::string, double> params;
  WeightScheme weights = WeightScheme::SIGNED_0PM1;
  std::uint64_t seed = 0;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  bool ranged() const noexcept { return n_max > 0; }
};

/// Instance settings used for the benchmark distributions.
inline DistributionSpec default_spec(Family family) {
  DistributionSpec s;
  s.family = family;
  switch (family) {
    case Family::ER:
      s.n = 200;
      s.params = {{"p", 0.15}};
      s.weights = WeightScheme::SIGNED_0PM1;
      break;
    case Family::BA:
      s.n = 800;
      s.params = {{"m", 4}};
      s.weights = WeightScheme::SIGNED_0PM1;
      break;
    case Family::HK:
      s.n = 800;
      s.params = {{"m", 4}, {"p", 0.10}};
      s.weights = WeightScheme::SIGNED_0PM1;
      break;
    case Family::WS:
      s.n = 800;
      s.params = {{"k", 4}, {"p", 0.15}};
      s.weights = WeightScheme::SIGNED_0PM1;
      break;
    case Family::GSET_ER:
      s.n = 800;
      s.params = {{"p", 0.06}};
      s.weights = WeightScheme::UNWEIGHTED_01;
      break;
    case Family::GSET_SKEW:
      s.n = 800;
      s.params = {{"d", 0.99}};
      s.weights = WeightScheme::UNWEIGHTED_01;
      break;
    case Family::GSET_TOROIDAL:
      s.n = 800;
      s.weights = WeightScheme::SIGNED_PM1;
      break;
    case Family::SK_SPIN_GLASS:
      s.n_min = 70;
      s.n_max = 100;
      s.weights = WeightScheme::SIGNED_PM1;
      break;
    case Family::PHASE_TRANSITION:
      s.n_min = 100;
      s.n_max = 200;
      s.params = {{"p", 0.5}};
      s.weights = WeightScheme::UNWEIGHTED_01;
      break;
    case Family::PHYSICS_REGULAR:
      s.n = 125;
      s.params = {{"degree", 6}};
      s.weights = WeightScheme::SIGNED_0PM1;
      break;
  }
  return s;
}

namespace detail {

enum Stream : std::uint64_t { kStructure = 1, kWeights = 2, kSize = 3 };

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

inline void check_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0, std::string(name) + " must lie in [0,1]");
}

inline std::size_t integer_param(const DistributionSpec& spec, const std::string& key, double fallback) {
  const double value = spec.param(key, fallback);
  require(value >= 0 && std::floor(value) == value, key + " must be a non-negative integer");
  return static_cast<std::size_t>(value);
}

inline EdgeList erdos_renyi(std::size_t n, double p, Rng& rng) {
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (bernoulli(rng, p)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

/// Draws `count` distinct entries of `pool` (which may repeat values) by rejection.
inline std::vector<Vertex> distinct_sample(const std::vector<Vertex>& pool, std::size_t count, Rng& rng) {
  std::vector<Vertex> picked;
  while (picked.size() < count) {
    const Vertex x = pool[uniform_below(rng, pool.size())];
    if (std::find(picked.begin(), picked.end(), x) == picked.end()) picked.push_back(x);
  }
  return picked;
}

// Preferential attachment starting from m isolated vertices; the first arrival
// links to all of them and later arrivals sample from the endpoint multiset.
inline EdgeList barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
  EdgeList edges;
  std::vector<Vertex> endpoints;
  std::vector<Vertex> targets(m);
  for (Vertex i = 0; i < m; ++i) targets[i] = i;
  for (Vertex source = m; source < n; ++source) {
    for (Vertex t : targets) edges.emplace_back(t, source);
    endpoints.insert(endpoints.end(), targets.begin(), targets.end());
    endpoints.insert(endpoints.end(), m, source);
    if (source + 1 < n) targets = distinct_sample(endpoints, m, rng);
  }
  return edges;
}

// Preferential attachment with a triad-closure step: after linking to u, each
// further link goes to a random neighbour of u with probability p.
inline EdgeList holme_kim(std::size_t n, std::size_t m, double p, Rng& rng) {
  EdgeList edges;
  std::vector<std::vector<Vertex>> adjacency(n);
  std::vector<char> linked(n, 0);
  std::vector<Vertex> endpoints;
  for (Vertex i = 0; i < m; ++i) endpoints.push_back(i);

  for (Vertex source = m; source < n; ++source) {
    std::vector<Vertex> linked_now;
    auto link = [&](Vertex t) {
      edges.emplace_back(t, source);
      adjacency[t].push_back(source);
      adjacency[source].push_back(t);
      linked[t] = 1;
      linked_now.push_back(t);
      endpoints.push_back(t);
    };
    std::vector<Vertex> candidates = distinct_sample(endpoints, m, rng);
    auto next_attachment = [&]() -> Vertex {
      while (!candidates.empty()) {
        const Vertex t = candidates.back();
        candidates.pop_back();
        if (!linked[t]) return t;
      }
      for (;;) {
        const Vertex t = endpoints[uniform_below(rng, endpoints.size())];
        if (!linked[t] && t != source) return t;
      }
    };

    Vertex target = next_attachment();
    link(target);
    while (linked_now.size() < m) {
      if (bernoulli(rng, p)) {
        std::vector<Vertex> open;
        for (Vertex x : adjacency[target]) {
          if (x != source && !linked[x]) open.push_back(x);
        }
        if (!open.empty()) {
          link(open[uniform_below(rng, open.size())]);
          continue;
        }
      }
      target = next_attachment();
      link(target);
    }
    for (Vertex t : linked_now) linked[t] = 0;
    endpoints.insert(endpoints.end(), m, source);
  }
  return edges;
}

inline EdgeList watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
  std::vector<std::set<Vertex>> adjacency(n);
  auto add = [&](Vertex a, Vertex b) {
    adjacency[a].insert(b);
    adjacency[b].insert(a);
  };
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (Vertex u = 0; u < n; ++u) add(u, (u + j) % n);
  }
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (Vertex u = 0; u < n; ++u) {
      if (!bernoulli(rng, p)) continue;
      const Vertex v = (u + j) % n;
      if (adjacency[u].size() >= n - 1) continue;
      Vertex w = uniform_below(rng, n);
      while (w == u || adjacency[u].count(w)) w = uniform_below(rng, n);
      adjacency[u].erase(v);
      adjacency[v].erase(u);
      add(u, w);
    }
  }
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : adjacency[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

inline EdgeList skew(std::size_t n, double density, Rng& rng) {
  const double scale = static_cast<double>(n) / 8.0;
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (bernoulli(rng, density * std::exp(-static_cast<double>(v - u) / scale))) edges.emplace_back(u, v);
    }
  }
  return edges;
}

/// Rows of the torus: the divisor of n nearest to sqrt(n), smaller on ties.
inline std::size_t torus_rows(std::size_t n) {
  const double root = std::sqrt(static_cast<double>(n));
  std::size_t best = 1;
  for (std::size_t a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    if (std::abs(static_cast<double>(a) - root) < std::abs(static_cast<double>(best) - root)) best = a;
  }
  return best;
}

inline EdgeList toroidal(std::size_t n) {
  const std::size_t rows = torus_rows(n);
  const std::size_t cols = n / rows;
  require(rows >= 3 && cols >= 3, "toroidal grid needs both sides >= 3, n=" + std::to_string(n) + " gives " +
                                      std::to_string(rows) + "x" + std::to_string(cols));
  EdgeList edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex here = r * cols + c;
      edges.emplace_back(here, r * cols + (c + 1) % cols);
      edges.emplace_back(here, ((r + 1) % rows) * cols + c);
    }
  }
  return edges;
}

inline EdgeList complete(std::size_t n) {
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

// Configuration model: stubs are shuffled and paired; clashing pairs are set
// aside and re-paired in the next round. Restarts when no valid pair remains.
inline EdgeList random_regular(std::size_t n, std::size_t degree, Rng& rng) {
  using Pair = std::pair<Vertex, Vertex>;
  for (;;) {
    std::set<Pair> edges;
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), degree, v);
    bool failed = false;
    while (!stubs.empty()) {
      shuffle(std::span<Vertex>(stubs), rng);
      std::map<Vertex, std::size_t> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        auto a = stubs[i];
        auto b = stubs[i + 1];
        if (a > b) std::swap(a, b);
        if (a != b && !edges.count({a, b})) {
          edges.insert({a, b});
        } else {
          ++leftover[a];
          ++leftover[b];
        }
      }
      bool suitable = leftover.empty();
      for (auto a = leftover.begin(); !suitable && a != leftover.end(); ++a) {
        for (auto b = std::next(a); b != leftover.end(); ++b) {
          if (!edges.count({a->first, b->first})) {
            suitable = true;
            break;
          }
        }
      }
      if (!suitable) {
        failed = true;
        break;
      }
      stubs.clear();
      for (auto [v, count] : leftover) stubs.insert(stubs.end(), count, v);
    }
    if (!failed) return {edges.begin(), edges.end()};
  }
}

inline std::vector<Edge> apply_weights(EdgeList structure, WeightScheme scheme, Rng& rng) {
  std::sort(structure.begin(), structure.end(), [](const auto& a, const auto& b) {
    return std::minmax(a.first, a.second) < std::minmax(b.first, b.second);
  });
  std::vector<Edge> edges;
  edges.reserve(structure.size());
  for (auto [u, v] : structure) {
    Weight w = 1;
    switch (scheme) {
      case WeightScheme::UNWEIGHTED_01: break;
      case WeightScheme::SIGNED_0PM1: w = static_cast<Weight>(uniform_below(rng, 3)) - 1; break;
      case WeightScheme::SIGNED_PM1: w = 2 * static_cast<Weight>(uniform_below(rng, 2)) - 1; break;
    }
    if (w != 0) edges.push_back({u, v, w});
  }
  return edges;
}

}  // namespace detail

/// Vertex count of the distribution (drawn from the seed for ranged sizes).
inline std::size_t resolve_size(const DistributionSpec& spec) {
  if (!spec.ranged()) return spec.n;
  detail::require(spec.n_min <= spec.n_max, "n_min must not exceed n_max");
  Rng rng = make_rng(spec.seed, detail::kSize);
  return static_cast<std::size_t>(
      uniform_int(rng, static_cast<std::int64_t>(spec.n_min), static_cast<std::int64_t>(spec.n_max)));
}

inline std::string instance_name(const DistributionSpec& spec, std::size_t n) {
  return std::string(family_name(spec.family)) + "-" + std::to_string(n) + "-s" + std::to_string(spec.seed);
}

/// Draws one graph from the distribution. Structure and weights use separate
/// random streams, so the topology does not depend on the weight scheme.
inline Graph generate(const DistributionSpec& spec) {
  using namespace detail;
  if (spec.ranged()) require(spec.n_min >= 2, "n_min must be >= 2");
  const std::size_t n = resolve_size(spec);
  require(n >= 2, "n must be >= 2");

  Rng structure_rng = make_rng(spec.seed, kStructure);
  EdgeList structure;
  switch (spec.family) {
    case Family::ER:
    case Family::GSET_ER:
    case Family::PHASE_TRANSITION: {
      const double p = spec.param("p", spec.family == Family::GSET_ER ? 0.06
                                       : spec.family == Family::ER ? 0.15 : 0.5);
      check_probability(p, "p");
      structure = erdos_renyi(n, p, structure_rng);
      break;
    }
    case Family::BA: {
      const auto m = integer_param(spec, "m", 4);
      require(m >= 1 && m < n, "BA requires 1 <= m < n");
      structure = barabasi_albert(n, m, structure_rng);
      break;
    }
    case Family::HK: {
      const auto m = integer_param(spec, "m", 4);
      const double p = spec.param("p", 0.10);
      require(m >= 1 && m < n, "HK requires 1 <= m < n");
      check_probability(p, "p");
      structure = holme_kim(n, m, p, structure_rng);
      break;
    }
    case Family::WS: {
      const auto k = integer_param(spec, "k", 4);
      const double p = spec.param("p", 0.15);
      require(k % 2 == 0 && k < n, "WS requires even k < n");
      check_probability(p, "p");
      structure = watts_strogatz(n, k, p, structure_rng);
      break;
    }
    case Family::GSET_SKEW: {
      const double d = spec.param("d", 0.99);
      check_probability(d, "d");
      structure = skew(n, d, structure_rng);
      break;
    }
    case Family::GSET_TOROIDAL:
      structure = toroidal(n);
      break;
    case Family::SK_SPIN_GLASS:
      structure = complete(n);
      break;
    case Family::PHYSICS_REGULAR: {
      const auto degree = integer_param(spec, "degree", 6);
      require(degree < n && (n * degree) % 2 == 0, "regular graph requires degree < n and n*degree even");
      structure = random_regular(n, degree, structure_rng);
      break;
    }
  }
  Rng weight_rng = make_rng(spec.seed, kWeights);
  return Graph(n, apply_weights(std::move(structure), spec.weights, weight_rng), instance_name(spec, n));
}

/// `count` graphs; graph i is generated with seed base_seed + i.
inline std::vector<Graph> generate_batch(DistributionSpec spec, std::size_t count, std::uint64_t base_seed) {
  detail::require(count >= 1, "count must be >= 1");
  std::vector<Graph> graphs;
  graphs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    spec.seed = base_seed + i;
    graphs.push_back(generate(spec));
  }
  return graphs;
}

}  // namespace maxcut
