#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "maxcut/error.hpp"
#include "maxcut/graph.hpp"
#include "maxcut/softtabu.hpp"
#include "maxcut/solvers.hpp"

namespace maxcut {

/// A solver as the harness sees it: a classical heuristic or a SoftTabu policy.
struct SolverEntry {
  std::string label;
  SolverKind kind = SolverKind::TABU;
  std::int64_t tenure = 20;
  double tau = 1.4;
  std::optional<softtabu::LinearPolicy> policy;

  static SolverEntry classical(SolverKind kind, std::int64_t tenure = 20, double tau = 1.4) {
    return {std::string(solver_name(kind)), kind, tenure, tau, std::nullopt};
  }

  static SolverEntry soft_tabu(softtabu::LinearPolicy policy) {
    return {"softtabu", SolverKind::TABU, 0, 1.4, policy};
  }

  bool deterministic() const noexcept { return !policy && kind == SolverKind::FORWARD_GREEDY; }
};

struct ProtocolOverride {
  std::optional<std::int64_t> episodes;
  std::optional<double> steps_factor;
};

struct ProtocolConfig {
  std::int64_t episodes = 50;
  double steps_factor = 2.0;
  std::map<std::string, ProtocolOverride> per_solver_overrides;  // keyed by solver label
  std::optional<double> time_limit_seconds;
  std::uint64_t base_seed = 0;
  unsigned threads = 1;

  void check() const {
    if (episodes < 1) throw InvalidInput("episodes must be >= 1");
    if (!(steps_factor > 0.0)) throw InvalidInput("steps_factor must be > 0");
  }
};

struct ProtocolOutcome {
  SolveOutcome best;
  std::int64_t episodes_completed = 0;
  std::int64_t steps_per_episode = 0;
  bool timed_out = false;
};

/**
 * Runs one solver on one graph under the evaluation protocol: deterministic
 * solvers run once, the others run `episodes` times with seeds base_seed + i
 * and steps_factor * n steps per episode. Returns the best episode.
 */
inline ProtocolOutcome run_protocol(const SolverEntry& solver, const Graph& graph, const ProtocolConfig& protocol) {
  protocol.check();
  std::int64_t episodes = protocol.episodes;
  double factor = protocol.steps_factor;
  if (auto it = protocol.per_solver_overrides.find(solver.label); it != protocol.per_solver_overrides.end()) {
    episodes = it->second.episodes.value_or(episodes);
    factor = it->second.steps_factor.value_or(factor);
  }
  if (solver.deterministic()) episodes = 1;

  ProtocolOutcome result;
  result.steps_per_episode = std::llround(factor * static_cast<double>(graph.size()));
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t e = 0; e < episodes; ++e) {
    if (e > 0 && protocol.time_limit_seconds) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > *protocol.time_limit_seconds) {
        result.timed_out = true;
        break;
      }
    }
    const std::uint64_t seed = protocol.base_seed + static_cast<std::uint64_t>(e);
    SolveOutcome outcome;
    if (solver.policy) {
      outcome = softtabu::softtabu_solve(*solver.policy, graph, 1, result.steps_per_episode, seed);
    } else {
      SolverConfig config;
      config.kind = solver.kind;
      config.tenure = solver.tenure;
      config.tau = solver.tau;
      config.seed = seed;
      config.max_steps = result.steps_per_episode;
      config.init = solver.kind == SolverKind::FORWARD_GREEDY ? InitMode::EMPTY : InitMode::RANDOM;
      outcome = solve(graph, config);
    }
    if (e == 0 || outcome.best_value > result.best.best_value) result.best = std::move(outcome);
    ++result.episodes_completed;
  }
  return result;
}

/// value / best_known, or nothing when the denominator is not positive.
inline std::optional<double> approx_ratio(std::int64_t value, std::int64_t best_known) {
  if (best_known <= 0) return std::nullopt;
  return static_cast<double>(value) / static_cast<double>(best_known);
}

/// Denominator provenance, highest precedence first.
enum class Provenance { EXTERNAL, BRUTE_FORCE, BEST_FOUND };

inline constexpr std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::EXTERNAL: return "EXTERNAL";
    case Provenance::BRUTE_FORCE: return "BRUTE_FORCE";
    case Provenance::BEST_FOUND: return "BEST_FOUND";
  }
  return "?";
}

inline std::optional<Provenance> parse_provenance(std::string_view s) {
  for (auto p : {Provenance::EXTERNAL, Provenance::BRUTE_FORCE, Provenance::BEST_FOUND}) {
    if (provenance_name(p) == s) return p;
  }
  return std::nullopt;
}

struct KnownValue {
  std::int64_t value = 0;
  Provenance provenance = Provenance::BEST_FOUND;

  friend bool operator==(const KnownValue&, const KnownValue&) = default;
};

/**
 * Best known cut values by instance name.
 *
 * An entry is only replaced by one of higher precedence
 * (EXTERNAL > BRUTE_FORCE > BEST_FOUND); equal provenance keeps the larger
 * value. Offering is therefore idempotent and order-independent.
 */
class BestKnownRegistry {
public:
  void offer(const std::string& instance, std::int64_t value, Provenance provenance) {
    auto [it, inserted] = entries_.try_emplace(instance, KnownValue{value, provenance});
    if (inserted) return;
    KnownValue& current = it->second;
    if (provenance < current.provenance) {
      current = {value, provenance};
    } else if (provenance == current.provenance) {
      current.value = std::max(current.value, value);
    }
  }

  void merge(const BestKnownRegistry& other) {
    for (const auto& [name, known] : other.entries_) offer(name, known.value, known.provenance);
  }

  std::optional<KnownValue> find(const std::string& instance) const {
    auto it = entries_.find(instance);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, KnownValue>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const BestKnownRegistry&, const BestKnownRegistry&) = default;

private:
  std::map<std::string, KnownValue> entries_;
};

/// A benchmark instance with the distribution label it is aggregated under.
struct Instance {
  Graph graph;
  std::string distribution;
};

struct RunRecord {
  std::string instance;
  std::string distribution;
  std::string solver;
  std::int64_t best_value = 0;
  std::int64_t best_known = 0;
  Provenance provenance = Provenance::BEST_FOUND;
  std::optional<double> ratio;  // empty when the instance is excluded (best_known <= 0)
  std::int64_t episodes = 0;
  std::int64_t steps = 0;
  double wall_clock_seconds = 0.0;
  bool timed_out = false;
};

struct SummaryRow {
  std::string solver;
  std::string distribution;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // population standard deviation across instances
  std::vector<double> ratios;
  std::size_t excluded = 0;
  std::int64_t episodes = 0;
  double wall_clock_seconds = 0.0;
};

struct BenchmarkReport {
  std::vector<RunRecord> records;  // instance-major, solvers in the given order
  std::vector<SummaryRow> summary;

  const SummaryRow* find(std::string_view solver, std::string_view distribution) const {
    for (const auto& row : summary) {
      if (row.solver == solver && row.distribution == distribution) return &row;
    }
    return nullptr;
  }
};

inline std::pair<double, double> mean_and_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

/// Aggregates records per (solver, distribution) in order of first appearance.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  for (const auto& r : records) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const SummaryRow& s) { return s.solver == r.solver && s.distribution == r.distribution; });
    if (it == rows.end()) {
      SummaryRow row;
      row.solver = r.solver;
      row.distribution = r.distribution;
      rows.push_back(std::move(row));
      it = rows.end() - 1;
    }
    if (r.ratio) {
      it->ratios.push_back(*r.ratio);
    } else {
      ++it->excluded;
    }
    it->episodes += r.episodes;
    it->wall_clock_seconds += r.wall_clock_seconds;
  }
  for (auto& row : rows) std::tie(row.mean_ratio, row.std_ratio) = mean_and_std(row.ratios);
  return rows;
}

/**
 * Runs every solver on every instance and normalises by the best known value.
 *
 * EXTERNAL and BRUTE_FORCE registry entries are used as given. Otherwise the
 * denominator is the best value any solver reached on that instance in this
 * run (or a larger BEST_FOUND registry value). Jobs may run on several
 * threads; results are stored by (instance, solver) index so the report does
 * not depend on scheduling.
 */
inline BenchmarkReport benchmark(const std::vector<SolverEntry>& solvers, const std::vector<Instance>& instances,
                                 const ProtocolConfig& protocol, const BestKnownRegistry& registry = {}) {
  if (instances.empty()) throw InvalidInput("benchmark needs at least one instance");
  if (solvers.empty()) throw InvalidInput("benchmark needs at least one solver");
  protocol.check();

  const std::size_t jobs = instances.size() * solvers.size();
  std::vector<ProtocolOutcome> outcomes(jobs);
  std::vector<double> seconds(jobs, 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const auto start = std::chrono::steady_clock::now();
      outcomes[j] = run_protocol(solvers[j % solvers.size()], instances[j / solvers.size()].graph, protocol);
      seconds[j] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(protocol.threads, static_cast<unsigned>(jobs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BenchmarkReport report;
  report.records.reserve(jobs);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& name = instances[i].graph.name();
    std::int64_t found = outcomes[i * solvers.size()].best.best_value;
    for (std::size_t s = 1; s < solvers.size(); ++s) found = std::max(found, outcomes[i * solvers.size() + s].best.best_value);

    KnownValue denominator{found, Provenance::BEST_FOUND};
    if (auto known = registry.find(name)) {
      denominator = known->provenance == Provenance::BEST_FOUND
                        ? KnownValue{std::max(found, known->value), Provenance::BEST_FOUND}
                        : *known;
    }
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      const auto& out = outcomes[i * solvers.size() + s];
      RunRecord r;
      r.instance = name;
      r.distribution = instances[i].distribution;
      r.solver = solvers[s].label;
      r.best_value = out.best.best_value;
      r.best_known = denominator.value;
      r.provenance = denominator.provenance;
      r.ratio = approx_ratio(r.best_value, r.best_known);
      r.episodes = out.episodes_completed;
      r.steps = out.steps_per_episode;
      r.wall_clock_seconds = seconds[i * solvers.size() + s];
      r.timed_out = out.timed_out;
      report.records.push_back(std::move(r));
    }
  }
  report.summary = summarize(report.records);
  return report;
}

/// Folds the best value observed per instance into `base` as BEST_FOUND entries.
inline BestKnownRegistry tune_registry_from_runs(const BenchmarkReport& report, BestKnownRegistry base = {}) {
  for (const auto& r : report.records) base.offer(r.instance, r.best_value, Provenance::BEST_FOUND);
  return base;
}

}  // namespace maxcut
