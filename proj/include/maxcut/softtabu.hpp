#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "maxcut/cut_state.hpp"
#include "maxcut/error.hpp"
#include "maxcut/generators.hpp"
#include "maxcut/random.hpp"
#include "maxcut/solvers.hpp"

namespace maxcut::softtabu {

/// The two tabu-related observations of one vertex.
struct Features {
  double gain = 0.0;  // marginal gain over the episode's initial max |gain|
  double time = 1.0;  // steps since last flip over the episode length, capped at 1

  friend bool operator==(const Features&, const Features&) = default;
};

/// Per-episode normalisation constants.
struct FeatureScale {
  double gain_scale = 1.0;
  std::int64_t horizon = 1;

  static FeatureScale for_episode(const CutState& initial, std::int64_t steps_per_episode) {
    std::int64_t max_abs = 0;
    for (auto g : initial.gain) max_abs = std::max(max_abs, g < 0 ? -g : g);
    return {static_cast<double>(std::max<std::int64_t>(1, max_abs)), std::max<std::int64_t>(1, steps_per_episode)};
  }

  Features at(const CutState& state, Vertex v) const {
    Features f;
    f.gain = static_cast<double>(state.gain[v]) / gain_scale;
    if (state.last_flip_step[v] >= 0) {
      const auto since = static_cast<double>(state.step - state.last_flip_step[v]);
      f.time = std::min(1.0, since / static_cast<double>(horizon));
    }
    return f;
  }
};

inline std::vector<Features> features(const CutState& state, const FeatureScale& scale) {
  std::vector<Features> out(state.size());
  for (Vertex v = 0; v < state.size(); ++v) out[v] = scale.at(state, v);
  return out;
}

struct LinearPolicy {
  std::array<double, 2> weights{0.0, 0.0};
  double bias = 0.0;

  double q(const Features& x) const noexcept { return weights[0] * x.gain + weights[1] * x.time + bias; }

  bool finite() const noexcept {
    return std::isfinite(weights[0]) && std::isfinite(weights[1]) && std::isfinite(bias);
  }

  friend bool operator==(const LinearPolicy&, const LinearPolicy&) = default;
};

inline std::vector<double> q_values(const LinearPolicy& policy, std::span<const Features> xs) {
  std::vector<double> q(xs.size());
  std::transform(xs.begin(), xs.end(), q.begin(), [&](const Features& x) { return policy.q(x); });
  return q;
}

/// Index of the largest Q value; ties go to the lowest vertex id.
inline Vertex greedy_action(const LinearPolicy& policy, std::span<const Features> xs) {
  Vertex best = 0;
  double best_q = -INFINITY;
  for (Vertex v = 0; v < xs.size(); ++v) {
    const double q = policy.q(xs[v]);
    if (q > best_q) {
      best = v;
      best_q = q;
    }
  }
  return best;
}

/// Epsilon-greedy choice over the vertices of a non-empty state.
inline Vertex select_action(const LinearPolicy& policy, std::span<const Features> xs, double epsilon, Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) throw InvalidInput("epsilon must lie in [0,1]");
  if (epsilon > 0.0 && uniform01(rng) < epsilon) return static_cast<Vertex>(uniform_below(rng, xs.size()));
  return greedy_action(policy, xs);
}

inline double local_optimum_bonus(std::size_t n) { return 1.0 / (10.0 * static_cast<double>(n)); }

/// Improvement of the best value scaled by n, plus a small bonus for reaching
/// a not-yet-seen local optimum without improving the best.
inline double reward(std::int64_t prev_best, std::int64_t new_best, bool is_new_local_optimum, std::size_t n) {
  double r = static_cast<double>(new_best - prev_best) / static_cast<double>(n);
  if (is_new_local_optimum && new_best == prev_best) r += local_optimum_bonus(n);
  return r;
}

/// Episode-scoped memory of visited local optima (every gain < 0).
class LocalOptimumMemory {
public:
  /// True iff `state` is a local optimum that has not been recorded before.
  bool visit(const CutState& state) {
    if (std::any_of(state.gain.begin(), state.gain.end(), [](auto g) { return g >= 0; })) return false;
    const std::string_view key(reinterpret_cast<const char*>(state.side.data()), state.side.size());
    return seen_.insert(std::hash<std::string_view>{}(key)).second;
  }

  void clear() { seen_.clear(); }

private:
  std::unordered_set<std::size_t> seen_;
};

struct Transition {
  Features action;
  double reward = 0.0;
  std::vector<Features> next;
  bool terminal = false;
};

inline double td_target(const LinearPolicy& policy, const Transition& t, double discount) {
  if (t.terminal || t.next.empty()) return t.reward;
  double best = -INFINITY;
  for (const auto& x : t.next) best = std::max(best, policy.q(x));
  return t.reward + discount * best;
}

/// Semi-gradient Q-learning step on a batch: theta += alpha * mean((y - Q) * (x, 1)).
inline void td_update(LinearPolicy& policy, std::span<const Transition* const> batch, double alpha, double discount) {
  if (batch.empty()) return;
  std::array<double, 3> step{0.0, 0.0, 0.0};
  for (const Transition* t : batch) {
    const double error = td_target(policy, *t, discount) - policy.q(t->action);
    step[0] += error * t->action.gain;
    step[1] += error * t->action.time;
    step[2] += error;
  }
  const double scale = alpha / static_cast<double>(batch.size());
  policy.weights[0] += scale * step[0];
  policy.weights[1] += scale * step[1];
  policy.bias += scale * step[2];
}

/// Greedy rollouts from random assignments; episode e starts from seed + e.
inline SolveOutcome softtabu_solve(const LinearPolicy& policy, const Graph& graph, std::int64_t episodes,
                                   std::int64_t steps, std::uint64_t seed, bool record_trajectory = false) {
  if (episodes < 1) throw InvalidInput("episodes must be >= 1");
  SolveOutcome overall;
  bool have = false;
  for (std::int64_t e = 0; e < episodes; ++e) {
    CutState state = init_state(graph, initial_assignment(graph.size(), InitMode::RANDOM, seed + e));
    const FeatureScale scale = FeatureScale::for_episode(state, steps);
    BestTracker best(state, record_trajectory);
    std::vector<Features> xs = features(state, scale);
    const std::int64_t budget = graph.size() == 0 ? 0 : steps;
    for (std::int64_t s = 0; s < budget; ++s) {
      flip(state, graph, greedy_action(policy, xs));
      best.observe(state);
      for (Vertex v = 0; v < xs.size(); ++v) xs[v] = scale.at(state, v);
    }
    SolveOutcome outcome = std::move(best).finish(state.step);
    if (!have || outcome.best_value > overall.best_value) {
      overall = std::move(outcome);
      have = true;
    }
  }
  return overall;
}

struct TrainConfig {
  std::int64_t episodes = 500;           // one freshly generated graph per episode
  std::int64_t steps_per_episode = 0;    // 0: 2n of each graph
  double learning_rate = 1e-3;
  double discount = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::int64_t epsilon_decay_steps = 0;  // 0: half of the total training steps (estimated)
  std::size_t replay_capacity = 5000;
  std::size_t batch_size = 64;
  std::size_t validation_graphs = 50;
  std::int64_t validation_episodes = 5;
  std::int64_t validate_every = 25;      // training episodes between validations
  std::int64_t reference_tenure = 20;    // tabu reference used to normalise validation values
  std::uint64_t seed = 0;
  LinearPolicy initial{};

  void check() const {
    if (episodes < 0) throw InvalidInput("episodes must be >= 0");
    if (!(learning_rate >= 0.0)) throw InvalidInput("learning rate must be >= 0");
    if (discount < 0.0 || discount > 1.0) throw InvalidInput("discount must lie in [0,1]");
    for (double eps : {epsilon_start, epsilon_end}) {
      if (eps < 0.0 || eps > 1.0) throw InvalidInput("epsilon must lie in [0,1]");
    }
    if (batch_size == 0 || replay_capacity < batch_size) throw InvalidInput("replay must hold at least one batch");
    if (validation_graphs == 0 || validation_episodes < 1) throw InvalidInput("validation set must be non-empty");
    if (validate_every < 1) throw InvalidInput("validate_every must be >= 1");
  }
};

struct TrainReport {
  LinearPolicy policy;                     // parameters with the best validation score
  double best_validation_ratio = 0.0;
  std::vector<double> validation_history;  // one entry per validation round
  std::int64_t transitions = 0;
};

namespace detail {

inline std::int64_t steps_for(const TrainConfig& config, std::size_t n) {
  return config.steps_per_episode > 0 ? config.steps_per_episode : 2 * static_cast<std::int64_t>(n);
}

class ValidationSet {
public:
  ValidationSet(const DistributionSpec& distribution, const TrainConfig& config)
      : config_(&config),
        graphs_(generate_batch(distribution, config.validation_graphs, derive_seed(config.seed, 0x7a11d))) {
    for (const auto& g : graphs_) {
      std::int64_t best = 0;
      for (std::int64_t e = 0; e < config.validation_episodes; ++e) {
        SolverConfig ts;
        ts.kind = SolverKind::TABU;
        ts.tenure = config.reference_tenure;
        ts.seed = e;
        ts.max_steps = steps_for(config, g.size());
        best = std::max(best, tabu_search(g, ts).best_value);
      }
      reference_.push_back(best);
    }
  }

  /// Mean over graphs of value / max(value, reference).
  double score(const LinearPolicy& policy) const {
    double total = 0.0;
    for (std::size_t i = 0; i < graphs_.size(); ++i) {
      const auto& g = graphs_[i];
      const auto value =
          softtabu_solve(policy, g, config_->validation_episodes, steps_for(*config_, g.size()), 0).best_value;
      const auto denom = std::max(value, reference_[i]);
      total += denom > 0 ? static_cast<double>(value) / static_cast<double>(denom) : 1.0;
    }
    return total / static_cast<double>(graphs_.size());
  }

private:
  const TrainConfig* config_;
  std::vector<Graph> graphs_;
  std::vector<std::int64_t> reference_;
};

}  // namespace detail

/**
 * One-step Q-learning with uniform experience replay and no target network.
 *
 * Each training episode runs on a freshly drawn graph from `distribution`
 * starting at a random assignment. The returned policy is the snapshot with
 * the best validation score (the initial policy included).
 */
inline TrainReport train(const DistributionSpec& distribution, const TrainConfig& config) {
  config.check();
  TrainReport report;
  LinearPolicy policy = config.initial;
  detail::ValidationSet validation(distribution, config);

  report.policy = policy;
  report.best_validation_ratio = validation.score(policy);
  report.validation_history.push_back(report.best_validation_ratio);

  const std::size_t nominal_n =
      distribution.ranged() ? (distribution.n_min + distribution.n_max) / 2 : distribution.n;
  const std::int64_t decay_steps = config.epsilon_decay_steps > 0
                                       ? config.epsilon_decay_steps
                                       : std::max<std::int64_t>(1, config.episodes * detail::steps_for(config, nominal_n) / 2);

  Rng rng = make_rng(config.seed, 0x5eed);
  std::deque<Transition> replay;
  std::vector<const Transition*> batch(config.batch_size);
  std::int64_t global_step = 0;

  for (std::int64_t episode = 0; episode < config.episodes; ++episode) {
    DistributionSpec spec = distribution;
    spec.seed = derive_seed(config.seed, 0x7a1) + static_cast<std::uint64_t>(episode);
    const Graph graph = generate(spec);
    const std::size_t n = graph.size();
    const std::int64_t steps = detail::steps_for(config, n);

    CutState state = init_state(graph, initial_assignment(n, InitMode::RANDOM, rng()));
    const FeatureScale scale = FeatureScale::for_episode(state, steps);
    LocalOptimumMemory optima;
    optima.visit(state);
    std::int64_t best = state.cut_value;
    std::vector<Features> xs = features(state, scale);

    for (std::int64_t s = 0; s < steps; ++s, ++global_step) {
      const double progress = std::min(1.0, static_cast<double>(global_step) / static_cast<double>(decay_steps));
      const double epsilon = config.epsilon_start + (config.epsilon_end - config.epsilon_start) * progress;
      const Vertex action = select_action(policy, xs, epsilon, rng);

      Transition t;
      t.action = xs[action];
      flip(state, graph, action);
      const std::int64_t new_best = std::max(best, state.cut_value);
      t.reward = reward(best, new_best, optima.visit(state), n);
      best = new_best;
      xs = features(state, scale);
      t.terminal = s + 1 == steps;
      t.next = xs;

      replay.push_back(std::move(t));
      if (replay.size() > config.replay_capacity) replay.pop_front();
      ++report.transitions;

      if (replay.size() >= config.batch_size && config.learning_rate > 0.0) {
        for (auto& slot : batch) slot = &replay[uniform_below(rng, replay.size())];
        td_update(policy, batch, config.learning_rate, config.discount);
        if (!policy.finite()) throw TrainingFailure(global_step, "non-finite policy parameters");
      }
    }

    const bool last = episode + 1 == config.episodes;
    if ((episode + 1) % config.validate_every == 0 || last) {
      const double score = validation.score(policy);
      report.validation_history.push_back(score);
      if (score > report.best_validation_ratio) {
        report.best_validation_ratio = score;
        report.policy = policy;
      }
    }
  }
  return report;
}

}  // namespace maxcut::softtabu
