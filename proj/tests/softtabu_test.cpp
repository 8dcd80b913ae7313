#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "maxcut/brute_force.hpp"
#include "maxcut/softtabu.hpp"
#include "test_support.hpp"

namespace maxcut::softtabu {
namespace {

TEST(Features, EmptyGraphAtStepZero) {
  const Graph g(4, {});
  const auto state = init_state(g, Assignment(4, 0));
  for (const auto& x : features(state, FeatureScale::for_episode(state, 8))) {
    EXPECT_EQ(x.gain, 0.0);
    EXPECT_EQ(x.time, 1.0);
  }
}

TEST(Features, GainIsScaledByInitialMaximum) {
  const Graph g(2, {{0, 1, 5}});
  const auto state = init_state(g, {0, 0});
  const auto xs = features(state, FeatureScale::for_episode(state, 4));
  EXPECT_EQ(xs[0].gain, 1.0);
  EXPECT_EQ(xs[1].gain, 1.0);
}

TEST(Features, TimeSinceFlip) {
  const Graph g(3, {{0, 1, 2}, {1, 2, 1}});
  auto state = init_state(g, Assignment(3, 0));
  const auto scale = FeatureScale::for_episode(state, 6);
  flip(state, g, 1);
  const auto xs = features(state, scale);
  EXPECT_DOUBLE_EQ(xs[1].time, 1.0 / 6.0);
  EXPECT_EQ(xs[0].time, 1.0);
  EXPECT_DOUBLE_EQ(xs[1].gain, -3.0 / 3.0);
  for (int i = 0; i < 10; ++i) flip(state, g, 0);
  EXPECT_EQ(scale.at(state, 1).time, 1.0);
}

TEST(QValues, Examples) {
  LinearPolicy constant{{0.0, 0.0}, 2.5};
  const std::vector<Features> xs{{0.5, 1.0}, {-0.2, 1.0}};
  EXPECT_EQ(q_values(constant, xs), (std::vector<double>{2.5, 2.5}));
  LinearPolicy gain_only{{1.0, 0.0}, 0.0};
  const auto q = q_values(gain_only, xs);
  EXPECT_DOUBLE_EQ(q[0], 0.5);
  EXPECT_DOUBLE_EQ(q[1], -0.2);
}

TEST(QValues, ArgmaxInvariantUnderBiasShift) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Features> xs(20);
    for (auto& x : xs) x = {uniform01(rng) * 2 - 1, uniform01(rng)};
    LinearPolicy p{{uniform01(rng) - 0.5, uniform01(rng) - 0.5}, 0.0};
    const auto a = greedy_action(p, xs);
    p.bias += 17.0;
    EXPECT_EQ(greedy_action(p, xs), a);
  }
}

TEST(SelectAction, FullExplorationIsUniform) {
  const std::vector<Features> xs(10);
  Rng rng = make_rng(5);
  std::vector<double> counts(10, 0);
  for (int i = 0; i < 10000; ++i) counts[select_action(LinearPolicy{}, xs, 1.0, rng)] += 1;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi2, boost::math::quantile(boost::math::chi_squared(9.0), 0.99));
}

TEST(SelectAction, GreedyChoices) {
  Rng rng = make_rng(5);
  const std::vector<Features> xs{{0.1, 1.0}, {0.9, 1.0}, {0.3, 1.0}};
  EXPECT_EQ(select_action(LinearPolicy{{1.0, 0.0}, 0.0}, xs, 0.0, rng), 1u);
  EXPECT_EQ(select_action(LinearPolicy{}, xs, 0.0, rng), 0u);
  EXPECT_THROW(select_action(LinearPolicy{}, xs, 1.5, rng), InvalidInput);
}

TEST(Reward, Examples) {
  EXPECT_DOUBLE_EQ(reward(10, 14, false, 4), 1.0);
  EXPECT_EQ(reward(10, 10, false, 4), 0.0);
  EXPECT_DOUBLE_EQ(reward(10, 10, true, 10), 0.01);
  EXPECT_DOUBLE_EQ(reward(10, 12, true, 10), 0.2);
}

TEST(LocalOptimumMemory, RecordsEachOptimumOnce) {
  const Graph g(2, {{0, 1, 5}});
  LocalOptimumMemory memory;
  EXPECT_FALSE(memory.visit(init_state(g, {0, 0})));
  EXPECT_TRUE(memory.visit(init_state(g, {1, 0})));
  EXPECT_FALSE(memory.visit(init_state(g, {1, 0})));
  EXPECT_TRUE(memory.visit(init_state(g, {0, 1})));
  memory.clear();
  EXPECT_TRUE(memory.visit(init_state(g, {1, 0})));
}

TEST(TdUpdate, SingleTransitionArithmetic) {
  LinearPolicy p;
  Transition t{{1.0, 0.0}, 1.0, {}, true};
  const Transition* batch[] = {&t};
  td_update(p, batch, 0.1, 0.0);
  EXPECT_DOUBLE_EQ(p.weights[0], 0.1);
  EXPECT_DOUBLE_EQ(p.weights[1], 0.0);
  EXPECT_DOUBLE_EQ(p.bias, 0.1);
}

TEST(TdUpdate, ZeroLearningRateLeavesPolicy) {
  LinearPolicy p{{0.3, -0.2}, 0.1};
  const LinearPolicy before = p;
  Transition t{{1.0, 0.5}, 2.0, {{0.1, 0.2}}, false};
  const Transition* batch[] = {&t};
  td_update(p, batch, 0.0, 0.9);
  EXPECT_EQ(p, before);
}

TEST(TdUpdate, MovesPredictionTowardsTarget) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    LinearPolicy p{{uniform01(rng) - 0.5, uniform01(rng) - 0.5}, uniform01(rng) - 0.5};
    Transition t{{uniform01(rng) * 2 - 1, uniform01(rng)}, uniform01(rng), {{uniform01(rng), uniform01(rng)}}, false};
    const double y = td_target(p, t, 0.9);
    const double before = std::abs(y - p.q(t.action));
    const Transition* batch[] = {&t};
    td_update(p, batch, 0.05, 0.9);
    EXPECT_LT(std::abs(y - p.q(t.action)), before + 1e-15);
  }
}

TEST(TdUpdate, IsTheSemiGradientOfTheSquaredError) {
  Rng rng = make_rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearPolicy p{{uniform01(rng) - 0.5, uniform01(rng) - 0.5}, uniform01(rng) - 0.5};
    Transition t{{uniform01(rng) * 2 - 1, uniform01(rng)}, uniform01(rng), {{uniform01(rng), uniform01(rng)}}, false};
    const double y = td_target(p, t, 0.95);
    auto loss = [&](const LinearPolicy& q) { return 0.5 * (y - q.q(t.action)) * (y - q.q(t.action)); };

    const double h = 1e-6;
    std::array<double, 3> numeric{};
    for (int i = 0; i < 3; ++i) {
      LinearPolicy plus = p, minus = p;
      double& a = i < 2 ? plus.weights[i] : plus.bias;
      double& b = i < 2 ? minus.weights[i] : minus.bias;
      a += h;
      b -= h;
      numeric[i] = (loss(plus) - loss(minus)) / (2 * h);
    }
    LinearPolicy updated = p;
    const double alpha = 0.01;
    const Transition* batch[] = {&t};
    td_update(updated, batch, alpha, 0.95);
    const std::array<double, 3> step{updated.weights[0] - p.weights[0], updated.weights[1] - p.weights[1],
                                     updated.bias - p.bias};
    for (int i = 0; i < 3; ++i) {
      const double expected = -alpha * numeric[i];
      EXPECT_NEAR(step[i], expected, 1e-6 * std::max(1e-3, std::abs(expected)));
    }
  }
}

TEST(SoftTabuSolve, ZeroStepsReturnsInitialValue) {
  const Graph g = testing::random_graph(20, 0.3, 2);
  const auto out = softtabu_solve(LinearPolicy{}, g, 1, 0, 7);
  EXPECT_EQ(out.best_value, cut_value(g, initial_assignment(20, InitMode::RANDOM, 7)));
}

TEST(SoftTabuSolve, ZeroPolicyNeverLosesTheStart) {
  const Graph g = testing::random_graph(20, 0.3, 2);
  const auto out = softtabu_solve(LinearPolicy{}, g, 1, 40, 7, true);
  EXPECT_GE(out.best_value, cut_value(g, initial_assignment(20, InitMode::RANDOM, 7)));
  for (std::size_t i = 1; i < out.trajectory.size(); ++i) EXPECT_GE(out.trajectory[i].best, out.trajectory[i - 1].best);
  EXPECT_EQ(cut_value(g, out.best_side), out.best_value);
}

TEST(SoftTabuSolve, DeterministicForFixedSeed) {
  const Graph g = testing::random_graph(30, 0.3, 4);
  const LinearPolicy p{{1.0, 0.8}, 0.0};
  EXPECT_EQ(softtabu_solve(p, g, 5, 60, 3, true), softtabu_solve(p, g, 5, 60, 3, true));
  EXPECT_THROW(softtabu_solve(p, g, 0, 60, 3), InvalidInput);
}

DistributionSpec small_er(std::size_t n) {
  DistributionSpec s = default_spec(Family::ER);
  s.n = n;
  s.params = {{"p", 0.5}};
  return s;
}

TEST(Train, ZeroLearningRateReturnsInitialPolicy) {
  TrainConfig cfg;
  cfg.episodes = 10;
  cfg.learning_rate = 0.0;
  cfg.validation_graphs = 3;
  cfg.batch_size = 8;
  cfg.initial = LinearPolicy{{0.25, -0.5}, 0.125};
  const auto report = train(small_er(12), cfg);
  EXPECT_EQ(report.policy, cfg.initial);
}

TEST(Train, DivergenceIsReported) {
  TrainConfig cfg;
  cfg.episodes = 50;
  cfg.learning_rate = 1e6;
  cfg.discount = 1.0;
  cfg.validation_graphs = 2;
  cfg.batch_size = 4;
  EXPECT_THROW(train(small_er(12), cfg), TrainingFailure);
}

TEST(Train, TrainedPolicySolvesSmallInstancesExactly) {
  TrainConfig cfg;
  cfg.episodes = 200;
  cfg.validation_graphs = 10;
  cfg.seed = 1;
  const auto report = train(small_er(14), cfg);
  ASSERT_TRUE(report.policy.finite());

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_graph(10 + seed % 5, 0.5, 900 + seed);
    hits += softtabu_solve(report.policy, g, 50, 2 * std::int64_t(g.size()), 0).best_value ==
            brute_force_optimum(g).value;
  }
  EXPECT_GE(hits, 27);
}

}  // namespace
}  // namespace maxcut::softtabu
