#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxcut/error.hpp"
#include "maxcut/generators.hpp"
#include "maxcut/harness.hpp"

namespace maxcut {

enum class TunedParameter { TENURE, TAU };

struct GridSpec {
  TunedParameter parameter = TunedParameter::TENURE;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  void check() const {
    if (!(step > 0.0)) throw InvalidInput("grid step must be > 0");
    if (start > stop) throw InvalidInput("grid start must not exceed stop");
  }

  /// start, start + step, ... up to stop inclusive; floor((stop - start) / step) + 1 points.
  std::vector<double> points() const {
    check();
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
    }
    return out;
  }
};

/// Tabu tenure grid 20..150 step 10.
inline GridSpec default_tenure_grid() { return {TunedParameter::TENURE, 20, 150, 10}; }
/// EO tau grid 1.1..1.9 step 0.1.
inline GridSpec default_tau_grid() { return {TunedParameter::TAU, 1.1, 1.9, 0.1}; }

struct GridRow {
  double param = 0.0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;
};

struct GridResult {
  double best_param = 0.0;
  std::vector<GridRow> table;
};

/**
 * Evaluates every grid point with the full protocol on the validation set.
 * All points share one benchmark so BEST_FOUND denominators are the best
 * value over the whole grid. Ties in mean ratio go to the smaller parameter.
 */
inline GridResult grid_search(SolverKind kind, const GridSpec& grid, const std::vector<Instance>& validation,
                              const ProtocolConfig& protocol, const BestKnownRegistry& registry = {}) {
  if (validation.empty()) throw InvalidInput("validation set must be non-empty");
  const bool tenure = grid.parameter == TunedParameter::TENURE;
  if ((tenure && kind != SolverKind::TABU) || (!tenure && kind != SolverKind::EO)) {
    throw InvalidInput("tenure grids tune tabu search and tau grids tune EO");
  }
  const auto points = grid.points();

  std::vector<SolverEntry> entries;
  for (double p : points) {
    SolverEntry e = tenure ? SolverEntry::classical(kind, std::llround(p)) : SolverEntry::classical(kind, 20, p);
    e.label = std::string(solver_name(kind)) + "@" + std::to_string(entries.size());
    entries.push_back(std::move(e));
  }
  std::vector<Instance> pooled = validation;
  for (auto& inst : pooled) inst.distribution = "validation";

  const BenchmarkReport report = benchmark(entries, pooled, protocol, registry);
  GridResult result;
  double best_mean = -INFINITY;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SummaryRow* row = report.find(entries[i].label, "validation");
    GridRow g{points[i], row->mean_ratio, row->std_ratio};
    if (g.mean_ratio > best_mean) {
      best_mean = g.mean_ratio;
      result.best_param = g.param;
    }
    result.table.push_back(g);
  }
  return result;
}

inline std::string tuning_csv(const GridResult& result) {
  std::string out = "param,mean_ratio,std_ratio\n";
  char line[128];
  for (const auto& row : result.table) {
    std::snprintf(line, sizeof line, "%.10g,%.17g,%.17g\n", row.param, row.mean_ratio, row.std_ratio);
    out += line;
  }
  return out;
}

struct DefaultParams {
  std::int64_t tenure;
  double tau;
};

/// One row of the published parameter table.
struct PublishedParams {
  std::string_view graph;
  std::string_view nodes;
  Family family;
  bool weighted;
  std::optional<std::size_t> n;  // set when rows of one family differ by size
  DefaultParams params;
};

inline constexpr PublishedParams kPublishedParams[] = {
    {"GSet (ER)", "800", Family::GSET_ER, false, std::nullopt, {80, 1.4}},
    {"GSet (Skew)", "800", Family::GSET_SKEW, false, std::nullopt, {90, 1.4}},
    {"BA", "800", Family::BA, false, std::nullopt, {110, 1.3}},
    {"WS", "800", Family::WS, false, std::nullopt, {140, 1.4}},
    {"HK", "800", Family::HK, false, std::nullopt, {100, 1.4}},
    {"Phase Transition", "100-200", Family::PHASE_TRANSITION, false, std::nullopt, {20, 1.8}},
    {"GSet (ER)", "800", Family::GSET_ER, true, std::nullopt, {30, 1.7}},
    {"GSet (Skew)", "800", Family::GSET_SKEW, true, std::nullopt, {90, 1.4}},
    {"GSet (Toroidal)", "800", Family::GSET_TOROIDAL, true, std::nullopt, {100, 1.4}},
    {"BA", "800", Family::BA, true, std::nullopt, {120, 1.2}},
    {"WS", "800", Family::WS, true, std::nullopt, {110, 1.3}},
    {"HK", "800", Family::HK, true, std::nullopt, {110, 1.2}},
    {"ER (weighted)", "200", Family::ER, true, std::nullopt, {10, 1.9}},
    {"BA (weighted)", "200", Family::BA, true, 200, {20, 1.6}},
    {"SK spin-glass", "70-100", Family::SK_SPIN_GLASS, true, std::nullopt, {20, 1.8}},
    {"Physics (Regular)", "125", Family::PHYSICS_REGULAR, true, std::nullopt, {20, 1.4}},
};

/**
 * Published (tenure, tau) for a family and weight scheme. `n` selects between
 * rows of the same family that differ only by instance size (weighted BA:
 * 200 vs 800 vertices); without it the size-independent row is used.
 */
inline DefaultParams default_params(Family family, WeightScheme weights, std::optional<std::size_t> n = std::nullopt) {
  const bool weighted = weights != WeightScheme::UNWEIGHTED_01;
  const PublishedParams* fallback = nullptr;
  for (const auto& row : kPublishedParams) {
    if (row.family != family || row.weighted != weighted) continue;
    if (row.n) {
      if (n && *n == *row.n) return row.params;
    } else {
      fallback = &row;
    }
  }
  if (fallback) return fallback->params;
  throw NoDefault("no published parameters for " + std::string(family_name(family)) + " (" +
                  std::string(weight_scheme_name(weights)) + "); tune them with a grid search");
}

}  // namespace maxcut
