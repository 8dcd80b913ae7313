// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "maxcut/cli.hpp"
#include "maxcut/maxcut.hpp"
#include "test_support.hpp"

namespace {

using namespace maxcut;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Verdict()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s  %-26s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !v.pass;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<Graph> oracle_instances() {
  DistributionSpec s = default_spec(Family::ER);
  s.n = 0;
  s.n_min = 12;
  s.n_max = 16;
  s.params = {{"p", 0.5}};
  s.weights = WeightScheme::SIGNED_0PM1;
  return generate_batch(s, 100, 20240);
}

int count_optimal(const std::vector<Graph>& graphs, const SolverEntry& solver) {
  ProtocolConfig protocol;  // 50 episodes x 2n steps
  int hits = 0;
  for (const auto& g : graphs) hits += run_protocol(solver, g, protocol).best.best_value == brute_force_optimum(g).value;
  return hits;
}

std::vector<Instance> instances_of(const DistributionSpec& spec, std::size_t count, std::uint64_t seed,
                                   const std::string& label) {
  std::vector<Instance> out;
  for (auto& g : generate_batch(spec, count, seed)) out.push_back({std::move(g), label});
  return out;
}

Verdict ordering() {
  DistributionSpec ba = default_spec(Family::BA);
  ba.n = 200;
  DistributionSpec er = default_spec(Family::ER);
  std::string detail;
  bool pass = true;
  for (const auto& [spec, label] : {std::pair{ba, "BA-200"}, std::pair{er, "ER-200"}}) {
    const auto params = default_params(spec.family, spec.weights, spec.n);
    const std::vector<SolverEntry> solvers{SolverEntry::classical(SolverKind::FORWARD_GREEDY),
                                           SolverEntry::classical(SolverKind::REVERSIBLE_GREEDY),
                                           SolverEntry::classical(SolverKind::TABU, params.tenure),
                                           SolverEntry::classical(SolverKind::EO, params.tenure, params.tau)};
    const auto report = benchmark(solvers, instances_of(spec, 20, 7000, label), ProtocolConfig{});
    const double fg = report.find("fg", label)->mean_ratio;
    const double rg = report.find("rg", label)->mean_ratio;
    const double ts = report.find("ts", label)->mean_ratio;
    const double eo = report.find("eo", label)->mean_ratio;
    pass = pass && rg - fg >= 0.01 && ts - rg >= 0.01 && ts >= 0.98;
    detail += fmt("%s fg=%.4f rg=%.4f ts=%.4f eo=%.4f; ", label, fg, rg, ts, eo);
  }
  return {pass, detail};
}

Verdict sk_saturation() {
  const auto params = default_params(Family::SK_SPIN_GLASS, WeightScheme::SIGNED_PM1);
  const std::vector<SolverEntry> solvers{SolverEntry::classical(SolverKind::FORWARD_GREEDY),
                                         SolverEntry::classical(SolverKind::REVERSIBLE_GREEDY),
                                         SolverEntry::classical(SolverKind::TABU, params.tenure),
                                         SolverEntry::classical(SolverKind::EO, params.tenure, params.tau)};
  const auto report =
      benchmark(solvers, instances_of(default_spec(Family::SK_SPIN_GLASS), 20, 8000, "SK"), ProtocolConfig{});
  const double rg = report.find("rg", "SK")->mean_ratio;
  const double ts = report.find("ts", "SK")->mean_ratio;
  return {rg >= 0.98 && ts >= 0.995, fmt("rg=%.4f (>=0.98) ts=%.4f (>=0.995)", rg, ts)};
}

Verdict softtabu_ablation() {
  DistributionSpec train_dist = default_spec(Family::ER);
  train_dist.n = 40;
  softtabu::TrainConfig cfg;
  cfg.episodes = 500;
  cfg.seed = 11;
  const auto trained = softtabu::train(train_dist, cfg);

  DistributionSpec test_dist = default_spec(Family::ER);
  test_dist.n = 60;
  const auto report = benchmark({SolverEntry::classical(SolverKind::TABU, 20), SolverEntry::soft_tabu(trained.policy)},
                                instances_of(test_dist, 50, 9000, "ER-60"), ProtocolConfig{});
  const double ts = report.find("ts", "ER-60")->mean_ratio;
  const double soft = report.find("softtabu", "ER-60")->mean_ratio;
  return {soft >= ts - 0.02,
          fmt("softtabu=%.4f ts=%.4f gap=%.4f (<=0.02) policy w=(%.3f, %.3f) b=%.3f", soft, ts, ts - soft,
              trained.policy.weights[0], trained.policy.weights[1], trained.policy.bias)};
}

Verdict incremental_exactness() {
  Rng rng = make_rng(31);
  std::int64_t flips = 0, mismatches = 0;
  for (std::uint64_t gi = 0; gi < 50; ++gi) {
    const Graph g = testing::random_graph(20 + gi % 60, 0.2, 500 + gi, -3, 3);
    CutState state = init_state(g, initial_assignment(g.size(), InitMode::RANDOM, gi));
    for (int i = 0; i < 2000; ++i, ++flips) {
      flip(state, g, uniform_below(rng, g.size()));
      if (state.cut_value != cut_value(g, state.side)) ++mismatches;
      for (Vertex v = 0; v < g.size(); ++v) mismatches += state.gain[v] != flip_gain(g, state.side, v);
    }
  }
  return {flips == 100000 && mismatches == 0, fmt("%lld flips, %lld mismatches", (long long)flips, (long long)mismatches)};
}

Verdict generator_statistics() {
  std::string detail;
  bool pass = true;

  DistributionSpec er = default_spec(Family::ER);
  er.weights = WeightScheme::UNWEIGHTED_01;
  double sum = 0, sq = 0;
  for (const auto& g : generate_batch(er, 200, 100)) {
    sum += double(g.edge_count());
    sq += double(g.edge_count()) * double(g.edge_count());
  }
  const double mean = sum / 200.0;
  const double se = std::sqrt((sq - 200.0 * mean * mean) / 199.0) / std::sqrt(200.0);
  const bool er_ok = std::abs(mean - 2985.0) <= 3.0 * se;
  pass = pass && er_ok;
  detail += fmt("ER mean=%.1f se=%.2f; ", mean, se);

  DistributionSpec ws = default_spec(Family::WS);
  ws.n = 10;
  ws.params = {{"k", 4}, {"p", 0}};
  ws.weights = WeightScheme::UNWEIGHTED_01;
  std::vector<Edge> ring;
  for (Vertex v = 0; v < 10; ++v) {
    for (Vertex d = 1; d <= 2; ++d) ring.push_back({v, (v + d) % 10, 1});
  }
  const bool ws_ok = generate(ws) == Graph(10, ring);
  pass = pass && ws_ok;
  detail += fmt("WS ring %s; ", ws_ok ? "exact" : "differs");

  bool ba_ok = true;
  for (auto [n, m] : {std::pair<std::size_t, double>{200, 4}, {800, 4}, {50, 2}}) {
    DistributionSpec ba = default_spec(Family::BA);
    ba.n = n;
    ba.params = {{"m", m}};
    ba.weights = WeightScheme::UNWEIGHTED_01;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ba.seed = seed;
      ba_ok = ba_ok && generate(ba).edge_count() == (n - std::size_t(m)) * std::size_t(m);
    }
  }
  pass = pass && ba_ok;
  detail += fmt("BA edges %s; ", ba_ok ? "(n-m)m" : "wrong");

  std::map<std::size_t, std::size_t> histogram;
  const Graph torus = generate(default_spec(Family::GSET_TOROIDAL));
  for (Vertex v = 0; v < torus.size(); ++v) ++histogram[torus.degree(v)];
  const bool torus_ok = histogram == std::map<std::size_t, std::size_t>{{4, torus.size()}};
  pass = pass && torus_ok;
  detail += fmt("torus degrees %s", torus_ok ? "all 4" : "mixed");
  return {pass, detail};
}

Verdict eo_sampling() {
  std::string detail;
  bool pass = true;
  const std::size_t n = 50;
  for (double tau : {1.1, 1.4, 1.9}) {
    PowerLawRankSampler sampler(n, tau);
    double z = 0;
    for (std::size_t k = 1; k <= n; ++k) z += std::pow(double(k), -tau);
    Rng rng = make_rng(1234);
    std::vector<double> counts(n, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) counts[sampler(rng)] += 1;
    double chi2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double expected = draws * std::pow(double(k + 1), -tau) / z;
      chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
    }
    const double critical = boost::math::quantile(boost::math::chi_squared(double(n - 1)), 0.99);
    pass = pass && chi2 < critical;
    detail += fmt("tau=%.1f chi2=%.1f<%.1f; ", tau, chi2, critical);
  }

  const Graph g = testing::random_graph(60, 0.2, 77);
  ExtremalOptimization search(g, initial_assignment(60, InitMode::RANDOM, 3), 10.0, 3);
  int argmax = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto& gain = search.state().gain;
    const auto top = static_cast<Vertex>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    const auto before = search.state().side[top];
    search.step();
    argmax += before != search.state().side[top];
  }
  pass = pass && argmax >= 99000;
  detail += fmt("tau=10 argmax %.2f%%", 100.0 * argmax / draws);
  return {pass, detail};
}

Verdict protocol_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "maxcut_acceptance_determinism";
  fs::remove_all(dir);
  std::ostringstream sink;
  auto run = [&](std::vector<std::string> args) { return cli::cli_main(args, sink, sink); };
  if (run({"generate", "--family", "ba", "--n", "60", "--seed", "5", "--count", "4", "--out", (dir / "ba").string()}) != 0 ||
      run({"generate", "--family", "sk", "--seed", "5", "--count", "2", "--out", (dir / "sk").string()}) != 0) {
    return {false, "generate failed: " + sink.str()};
  }
  std::vector<std::string> docs;
  for (const char* threads : {"1", "2"}) {
    const auto out = (dir / (std::string("r") + threads + ".json")).string();
    if (run({"benchmark", "--solvers", "fg,rg,ts,eo", "--instances", (dir / "*/*.gset").string(), "--episodes", "10",
             "--seed", "42", "--threads", threads, "--out", out}) != 0) {
      return {false, "benchmark failed: " + sink.str()};
    }
    auto j = nlohmann::json::parse(cli::read_file(out));
    j["metadata"].erase("timestamp");
    for (auto& r : j["records"]) r.erase("wall_clock_seconds");
    for (auto& s : j["summary"]) s.erase("wall_clock_seconds");
    docs.push_back(j.dump(2));
  }
  fs::remove_all(dir);
  return {docs[0] == docs[1], fmt("%zu bytes compared", docs[0].size())};
}

Verdict gset_io() {
  int round_trips = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = testing::random_graph(2 + seed % 50, 0.25, seed, -4, 4);
    round_trips += parse_gset(serialize_gset(g)) == g;
  }
  const std::pair<const char*, std::size_t> malformed[] = {
      {"2 2\n1 2 1\n1 2 1\n", 3}, {"3 1\n1 2 0.5\n", 2}, {"3 2\n1 2 1\n2 3\n", 3},
      {"3 1\n1 9 1\n", 2},        {"x 1\n1 2 1\n", 1},   {"3 1\n3 3 1\n", 2},
  };
  int located = 0;
  for (const auto& [text, line] : malformed) {
    try {
      parse_gset(text);
    } catch (const ParseError& e) {
      located += e.line() == line;
    }
  }
  bool structural = false;
  try {
    parse_gset("3 2\n1 2 1\n");
  } catch (const StructuralError&) {
    structural = true;
  }
  return {round_trips == 100 && located == 6 && structural,
          fmt("%d/100 round trips, %d/6 errors at the right line, m mismatch %s", round_trips, located,
              structural ? "detected" : "missed")};
}

Verdict tuning_grids() {
  const auto tenures = default_tenure_grid().points().size();
  const auto taus = default_tau_grid().points().size();
  struct Row {
    Family family;
    WeightScheme weights;
    std::optional<std::size_t> n;
    std::int64_t tenure;
    double tau;
  };
  const auto U = WeightScheme::UNWEIGHTED_01, W = WeightScheme::SIGNED_0PM1;
  const Row table[] = {
      {Family::GSET_ER, U, {}, 80, 1.4},        {Family::GSET_SKEW, U, {}, 90, 1.4},
      {Family::BA, U, {}, 110, 1.3},            {Family::WS, U, {}, 140, 1.4},
      {Family::HK, U, {}, 100, 1.4},            {Family::PHASE_TRANSITION, U, {}, 20, 1.8},
      {Family::GSET_ER, W, {}, 30, 1.7},        {Family::GSET_SKEW, W, {}, 90, 1.4},
      {Family::GSET_TOROIDAL, W, {}, 100, 1.4}, {Family::BA, W, 800, 120, 1.2},
      {Family::WS, W, {}, 110, 1.3},            {Family::HK, W, {}, 110, 1.2},
      {Family::ER, W, 200, 10, 1.9},            {Family::BA, W, 200, 20, 1.6},
      {Family::SK_SPIN_GLASS, W, {}, 20, 1.8},  {Family::PHYSICS_REGULAR, W, {}, 20, 1.4},
  };
  int rows = 0;
  for (const auto& r : table) {
    const auto p = default_params(r.family, r.weights, r.n);
    rows += p.tenure == r.tenure && p.tau == r.tau;
  }
  return {tenures == 14 && taus == 9 && rows == 16,
          fmt("tenure grid %zu points, tau grid %zu points, %d/16 table rows", tenures, taus, rows)};
}

}  // namespace

int main() {
  const auto instances = oracle_instances();
  criterion("oracle-optimality-tabu", [&] {
    const int hits = count_optimal(instances, SolverEntry::classical(SolverKind::TABU, 20));
    return Verdict{hits >= 95, fmt("%d/100 optimal (>=95)", hits)};
  });
  criterion("oracle-optimality-eo", [&] {
    const int hits = count_optimal(instances, SolverEntry::classical(SolverKind::EO, 20, 1.4));
    return Verdict{hits >= 90, fmt("%d/100 optimal (>=90)", hits)};
  });
  criterion("ordering-trend", ordering);
  criterion("sk-near-saturation", sk_saturation);
  criterion("softtabu-ablation", softtabu_ablation);
  criterion("incremental-gain-exactness", incremental_exactness);
  criterion("generator-statistics", generator_statistics);
  criterion("eo-sampling-law", eo_sampling);
  criterion("protocol-determinism", protocol_determinism);
  criterion("gset-io", gset_io);
  criterion("tuning-grids", tuning_grids);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
