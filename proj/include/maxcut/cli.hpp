#pragma once

#include <glob.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "maxcut/brute_force.hpp"
#include "maxcut/generators.hpp"
#include "maxcut/gset.hpp"
#include "maxcut/harness.hpp"
#include "maxcut/results.hpp"
#include "maxcut/softtabu.hpp"
#include "maxcut/solvers.hpp"
#include "maxcut/tuning.hpp"

namespace maxcut::cli {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << contents;
}

inline Graph load_instance(const fs::path& path) { return parse_gset(read_file(path), path.stem().string()); }

inline std::vector<fs::path> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<fs::path> paths;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
    if (rc != 0 && rc != GLOB_NOMATCH) throw InvalidInput("glob failed for '" + pattern + "'");
  }
  if (paths.empty()) throw InvalidInput("no instance files matched");
  return paths;
}

/// Instances labelled by the directory they live in.
inline std::vector<Instance> load_instances(const std::vector<std::string>& patterns) {
  std::vector<Instance> instances;
  for (const auto& path : expand_globs(patterns)) {
    auto dist = path.parent_path().filename().string();
    instances.push_back({load_instance(path), dist.empty() ? "default" : dist});
  }
  return instances;
}

/// "p=0.15,m=4" -> {p: 0.15, m: 4}
inline std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("parameter '" + item + "' must be key=value");
    try {
      std::size_t used = 0;
      const double value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
      params[item.substr(0, eq)] = value;
    } catch (const std::logic_error&) {
      throw InvalidInput("parameter '" + item + "' has a non-numeric value");
    }
  }
  return params;
}

/// Solver tokens: fg, rg, ts, eo, softtabu, optionally "ts:30" / "eo:1.6".
inline SolverEntry parse_solver(const std::string& token, std::int64_t tenure, double tau,
                                const std::optional<softtabu::LinearPolicy>& policy) {
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  if (name == "softtabu") {
    if (!policy) throw InvalidInput("solver softtabu needs --policy");
    return SolverEntry::soft_tabu(*policy);
  }
  const auto kind = parse_solver_kind(name);
  if (!kind) throw InvalidInput("unknown solver '" + name + "'");
  SolverEntry entry = SolverEntry::classical(*kind, tenure, tau);
  if (colon != std::string::npos) {
    const std::string arg = token.substr(colon + 1);
    if (*kind == SolverKind::TABU) {
      entry.tenure = std::stoll(arg);
    } else if (*kind == SolverKind::EO) {
      entry.tau = std::stod(arg);
    } else {
      throw InvalidInput("solver '" + name + "' takes no parameter");
    }
    entry.label = token;
  }
  return entry;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct DistributionOptions {
  std::string family;
  std::size_t n = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::string params;
  std::string weights;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "er|ba|hk|ws|gset-er|gset-skew|gset-toroidal|sk|phase-transition|physics")
        ->required();
    cmd->add_option("--n", n, "vertex count (family default when omitted)");
    cmd->add_option("--n-min", n_min, "lower bound for ranged sizes");
    cmd->add_option("--n-max", n_max, "upper bound for ranged sizes");
    cmd->add_option("--params", params, "family parameters, e.g. p=0.15,m=4");
    cmd->add_option("--weights", weights, "unweighted|signed|pm1 (family default when omitted)");
    cmd->add_option("--seed", seed, "base seed");
  }

  DistributionSpec spec() const {
    const auto f = parse_family(family);
    if (!f) throw InvalidInput("unknown family '" + family + "'");
    DistributionSpec s = default_spec(*f);
    if (n > 0) {
      s.n = n;
      s.n_min = s.n_max = 0;
    }
    if (n_max > 0) {
      s.n_min = n_min;
      s.n_max = n_max;
    }
    for (const auto& [k, v] : parse_params(params)) s.params[k] = v;
    if (!weights.empty()) {
      const auto w = parse_weight_scheme(weights);
      if (!w) throw InvalidInput("unknown weight scheme '" + weights + "'");
      s.weights = *w;
    }
    s.seed = seed;
    return s;
  }
};

/// Entry point of the `maxcut` tool. Exit codes: 0 success, 1 failure, 2 usage error.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"MaxCut heuristics and benchmark harness"};
  app.require_subcommand(1);

  // generate
  DistributionOptions gen_dist;
  std::size_t gen_count = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "write random instances as Gset files");
  gen_dist.attach(gen);
  gen->add_option("--count", gen_count, "number of graphs (seeds seed..seed+count-1)");
  gen->add_option("--out", gen_out, "output directory")->required();

  // solve
  std::string solve_solver, solve_instance, solve_policy, solve_assignment_out;
  std::int64_t solve_episodes = 50;
  double solve_steps_factor = 2.0;
  std::uint64_t solve_seed = 0;
  std::int64_t solve_tenure = 20;
  double solve_tau = 1.4;
  auto* solve_cmd = app.add_subcommand("solve", "run one solver under the evaluation protocol");
  solve_cmd->add_option("--solver", solve_solver, "fg|rg|ts|eo|softtabu")->required();
  solve_cmd->add_option("--instance", solve_instance, "Gset file")->required();
  solve_cmd->add_option("--episodes", solve_episodes, "randomly initialised episodes");
  solve_cmd->add_option("--steps-factor", solve_steps_factor, "steps per episode as a multiple of n");
  solve_cmd->add_option("--seed", solve_seed, "base seed");
  solve_cmd->add_option("--tenure", solve_tenure, "tabu tenure");
  solve_cmd->add_option("--tau", solve_tau, "EO exponent");
  solve_cmd->add_option("--policy", solve_policy, "SoftTabu policy JSON");
  solve_cmd->add_option("--assignment-out", solve_assignment_out, "write the best assignment here");

  // benchmark
  std::string bench_solvers = "fg,rg,ts,eo", bench_registry, bench_out, bench_policy, bench_registry_out,
              bench_timestamp;
  std::vector<std::string> bench_instances;
  std::int64_t bench_episodes = 50, bench_tenure = 20;
  double bench_steps_factor = 2.0, bench_tau = 1.4, bench_time_limit = 0.0;
  std::uint64_t bench_seed = 0;
  unsigned bench_threads = 1;
  auto* bench = app.add_subcommand("benchmark", "run solvers over instances and write results.json");
  bench->add_option("--solvers", bench_solvers, "comma-separated: fg,rg,ts[:tenure],eo[:tau],softtabu");
  bench->add_option("--instances", bench_instances, "instance file globs")->required();
  bench->add_option("--registry", bench_registry, "best-known TSV registry");
  bench->add_option("--episodes", bench_episodes, "episodes per stochastic solver");
  bench->add_option("--steps-factor", bench_steps_factor, "steps per episode as a multiple of n");
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--tenure", bench_tenure, "default tabu tenure");
  bench->add_option("--tau", bench_tau, "default EO exponent");
  bench->add_option("--policy", bench_policy, "SoftTabu policy JSON");
  bench->add_option("--threads", bench_threads, "worker threads");
  bench->add_option("--time-limit", bench_time_limit, "per-run wall-clock limit in seconds (0: none)");
  bench->add_option("--timestamp", bench_timestamp, "timestamp recorded in metadata (default: now)");
  bench->add_option("--out", bench_out, "results.json path")->required();
  bench->add_option("--registry-out", bench_registry_out, "write the updated registry here");

  // tune
  std::string tune_solver, tune_grid, tune_registry, tune_out;
  std::vector<std::string> tune_validation;
  std::int64_t tune_episodes = 50;
  double tune_steps_factor = 2.0;
  std::uint64_t tune_seed = 0;
  auto* tune = app.add_subcommand("tune", "grid-search tabu tenure or EO tau");
  tune->add_option("--solver", tune_solver, "ts|eo")->required();
  tune->add_option("--grid", tune_grid, "start:stop:step (default 20:150:10 for ts, 1.1:1.9:0.1 for eo)");
  tune->add_option("--validation", tune_validation, "validation instance globs")->required();
  tune->add_option("--registry", tune_registry, "best-known TSV registry");
  tune->add_option("--episodes", tune_episodes, "episodes per grid point");
  tune->add_option("--steps-factor", tune_steps_factor, "steps per episode as a multiple of n");
  tune->add_option("--seed", tune_seed, "base seed");
  tune->add_option("--out", tune_out, "CSV output (default stdout)");

  // train-softtabu
  DistributionOptions train_dist;
  softtabu::TrainConfig train_cfg;
  std::string train_out;
  auto* train_cmd = app.add_subcommand("train-softtabu", "train a SoftTabu linear policy");
  train_dist.attach(train_cmd);
  train_cmd->add_option("--episodes", train_cfg.episodes, "training episodes (one graph each)");
  train_cmd->add_option("--steps", train_cfg.steps_per_episode, "steps per episode (0: 2n)");
  train_cmd->add_option("--lr", train_cfg.learning_rate, "learning rate");
  train_cmd->add_option("--discount", train_cfg.discount, "RL discount");
  train_cmd->add_option("--batch", train_cfg.batch_size, "replay batch size");
  train_cmd->add_option("--replay", train_cfg.replay_capacity, "replay capacity");
  train_cmd->add_option("--validation-graphs", train_cfg.validation_graphs, "held-out validation graphs");
  train_cmd->add_option("--out", train_out, "policy JSON path")->required();

  // oracle
  std::string oracle_instance;
  auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration (n <= 24)");
  oracle->add_option("--instance", oracle_instance, "Gset file")->required();

  // report
  std::string report_results, report_format = "md";
  auto* report_cmd = app.add_subcommand("report", "summarise results.json as a table");
  report_cmd->add_option("--results", report_results, "results.json")->required();
  report_cmd->add_option("--format", report_format, "csv|md")->check(CLI::IsMember({"csv", "md"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (gen->parsed()) {
      DistributionSpec spec = gen_dist.spec();
      for (const auto& g : generate_batch(spec, gen_count, spec.seed)) {
        const fs::path path = fs::path(gen_out) / (g.name() + ".gset");
        write_file(path, serialize_gset(g));
        out << path.string() << "\n";
      }
    } else if (solve_cmd->parsed()) {
      const Graph graph = load_instance(solve_instance);
      std::optional<softtabu::LinearPolicy> policy;
      if (!solve_policy.empty()) policy = policy_from_json(nlohmann::json::parse(read_file(solve_policy)));
      const SolverEntry solver = parse_solver(solve_solver, solve_tenure, solve_tau, policy);
      ProtocolConfig protocol;
      protocol.episodes = solve_episodes;
      protocol.steps_factor = solve_steps_factor;
      protocol.base_seed = solve_seed;
      const auto result = run_protocol(solver, graph, protocol);
      out << result.best.best_value << "\n" << format_assignment(result.best.best_side);
      if (!solve_assignment_out.empty()) write_file(solve_assignment_out, format_assignment(result.best.best_side));
    } else if (bench->parsed()) {
      std::optional<softtabu::LinearPolicy> policy;
      if (!bench_policy.empty()) policy = policy_from_json(nlohmann::json::parse(read_file(bench_policy)));
      std::vector<SolverEntry> solvers;
      std::stringstream ss(bench_solvers);
      for (std::string tok; std::getline(ss, tok, ',');) {
        if (!tok.empty()) solvers.push_back(parse_solver(tok, bench_tenure, bench_tau, policy));
      }
      ProtocolConfig protocol;
      protocol.episodes = bench_episodes;
      protocol.steps_factor = bench_steps_factor;
      protocol.base_seed = bench_seed;
      protocol.threads = bench_threads;
      if (bench_time_limit > 0) protocol.time_limit_seconds = bench_time_limit;
      const BestKnownRegistry registry =
          bench_registry.empty() ? BestKnownRegistry{} : parse_registry(read_file(bench_registry));
      const auto instances = load_instances(bench_instances);
      const auto report = benchmark(solvers, instances, protocol, registry);

      RunMetadata meta{bench_seed, bench_timestamp.empty() ? utc_timestamp() : bench_timestamp, bench_episodes,
                       bench_steps_factor, solvers};
      write_file(bench_out, results_to_json(meta, report).dump(2) + "\n");
      if (!bench_registry_out.empty()) {
        write_file(bench_registry_out, serialize_registry(tune_registry_from_runs(report, registry)));
      }
      out << render_report(results_from_json(results_to_json(meta, report)), ReportFormat::MARKDOWN);
    } else if (tune->parsed()) {
      const auto kind = parse_solver_kind(tune_solver);
      if (!kind || (*kind != SolverKind::TABU && *kind != SolverKind::EO)) throw InvalidInput("tune supports ts and eo");
      GridSpec grid = *kind == SolverKind::TABU ? default_tenure_grid() : default_tau_grid();
      if (!tune_grid.empty()) {
        double a = 0, b = 0, c = 0;
        char x = 0, y = 0;
        std::istringstream gs(tune_grid);
        if (!(gs >> a >> x >> b >> y >> c) || x != ':' || y != ':' || !gs.eof()) {
          throw InvalidInput("grid must be start:stop:step");
        }
        grid.start = a;
        grid.stop = b;
        grid.step = c;
      }
      ProtocolConfig protocol;
      protocol.episodes = tune_episodes;
      protocol.steps_factor = tune_steps_factor;
      protocol.base_seed = tune_seed;
      const BestKnownRegistry registry =
          tune_registry.empty() ? BestKnownRegistry{} : parse_registry(read_file(tune_registry));
      const auto result = grid_search(*kind, grid, load_instances(tune_validation), protocol, registry);
      const auto csv = tuning_csv(result);
      if (tune_out.empty()) {
        out << csv;
      } else {
        write_file(tune_out, csv);
      }
      err << "best_param " << result.best_param << "\n";
    } else if (train_cmd->parsed()) {
      const DistributionSpec spec = train_dist.spec();
      train_cfg.seed = spec.seed;
      const auto report = softtabu::train(spec, train_cfg);
      const nlohmann::json meta = {
          {"family", std::string(family_name(spec.family))},
          {"weights", std::string(weight_scheme_name(spec.weights))},
          {"seed", spec.seed},
          {"episodes", train_cfg.episodes},
          {"learning_rate", train_cfg.learning_rate},
          {"discount", train_cfg.discount},
          {"best_validation_ratio", report.best_validation_ratio},
      };
      write_file(train_out, policy_to_json(report.policy, meta).dump(2) + "\n");
      out << "best_validation_ratio " << report.best_validation_ratio << "\n";
    } else if (oracle->parsed()) {
      const auto exact = brute_force_optimum(load_instance(oracle_instance));
      out << exact.value << "\n" << format_assignment(exact.side);
    } else if (report_cmd->parsed()) {
      const auto doc = results_from_json(nlohmann::json::parse(read_file(report_results)));
      out << render_report(doc, report_format == "csv" ? ReportFormat::CSV : ReportFormat::MARKDOWN);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace maxcut::cli
