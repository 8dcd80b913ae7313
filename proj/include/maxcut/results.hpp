#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxcut/error.hpp"
#include "maxcut/gset.hpp"
#include "maxcut/harness.hpp"

namespace maxcut {

inline constexpr int kResultsSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Registry: "instance_name<TAB>value<TAB>provenance" per line.

inline BestKnownRegistry parse_registry(std::string_view text) {
  BestKnownRegistry registry;
  detail::LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t at = reader.number();
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string_view::npos; start = tab + 1) {
      fields.push_back(line.substr(start, tab - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 3 || fields[0].empty()) throw ParseError(at, "registry line must be 'name<TAB>value<TAB>provenance'");
    const auto value = detail::parse_integer(fields[1], at, "best known value");
    const auto provenance = parse_provenance(fields[2]);
    if (!provenance) throw ParseError(at, "unknown provenance '" + std::string(fields[2]) + "'");
    registry.offer(std::string(fields[0]), value, *provenance);
  }
  return registry;
}

inline std::string serialize_registry(const BestKnownRegistry& registry) {
  std::string out;
  for (const auto& [name, known] : registry.entries()) {
    out += name + "\t" + std::to_string(known.value) + "\t" + std::string(provenance_name(known.provenance)) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// results.json

struct RunMetadata {
  std::uint64_t base_seed = 0;
  std::string timestamp;
  std::int64_t episodes = 0;
  double steps_factor = 0.0;
  std::vector<SolverEntry> solvers;
};

struct ResultsDocument {
  int schema_version = kResultsSchemaVersion;
  RunMetadata metadata;
  std::vector<RunRecord> records;
};

inline nlohmann::json solver_to_json(const SolverEntry& s) {
  nlohmann::json j = {{"label", s.label}};
  if (s.policy) {
    j["kind"] = "softtabu";
    j["policy"] = {{"weights", {s.policy->weights[0], s.policy->weights[1]}}, {"bias", s.policy->bias}};
  } else {
    j["kind"] = std::string(solver_name(s.kind));
    if (s.kind == SolverKind::TABU) j["tenure"] = s.tenure;
    if (s.kind == SolverKind::EO) j["tau"] = s.tau;
  }
  return j;
}

inline SolverEntry solver_from_json(const nlohmann::json& j) {
  SolverEntry s;
  s.label = j.at("label").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "softtabu") {
    softtabu::LinearPolicy p;
    p.weights = {j.at("policy").at("weights").at(0).get<double>(), j.at("policy").at("weights").at(1).get<double>()};
    p.bias = j.at("policy").at("bias").get<double>();
    s.policy = p;
    s.tenure = 0;
    return s;
  }
  const auto parsed = parse_solver_kind(kind);
  if (!parsed) throw InvalidInput("unknown solver kind '" + kind + "' in results");
  s.kind = *parsed;
  s.tenure = j.value("tenure", std::int64_t{20});
  s.tau = j.value("tau", 1.4);
  return s;
}

inline nlohmann::json results_to_json(const RunMetadata& metadata, const BenchmarkReport& report) {
  nlohmann::json solvers = nlohmann::json::array();
  for (const auto& s : metadata.solvers) solvers.push_back(solver_to_json(s));

  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({
        {"instance", r.instance},
        {"distribution", r.distribution},
        {"solver", r.solver},
        {"best_value", r.best_value},
        {"best_known", r.best_known},
        {"best_known_provenance", std::string(provenance_name(r.provenance))},
        {"ratio", r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr)},
        {"excluded", !r.ratio.has_value()},
        {"episodes", r.episodes},
        {"steps", r.steps},
        {"wall_clock_seconds", r.wall_clock_seconds},
        {"timed_out", r.timed_out},
    });
  }

  nlohmann::json summary = nlohmann::json::array();
  for (const auto& row : report.summary) {
    summary.push_back({
        {"solver", row.solver},
        {"distribution", row.distribution},
        {"mean_ratio", row.mean_ratio},
        {"std_ratio", row.std_ratio},
        {"instances", row.ratios.size()},
        {"excluded", row.excluded},
        {"episodes", row.episodes},
        {"wall_clock_seconds", row.wall_clock_seconds},
    });
  }

  return {
      {"schema_version", kResultsSchemaVersion},
      {"metadata",
       {{"base_seed", metadata.base_seed},
        {"timestamp", metadata.timestamp},
        {"episodes", metadata.episodes},
        {"steps_factor", metadata.steps_factor},
        {"solvers", solvers}}},
      {"records", records},
      {"summary", summary},
  };
}

inline ResultsDocument results_from_json(const nlohmann::json& j) {
  ResultsDocument doc;
  if (!j.is_object() || !j.contains("schema_version")) throw InvalidInput("results document lacks schema_version");
  doc.schema_version = j.at("schema_version").get<int>();
  if (doc.schema_version != kResultsSchemaVersion) {
    throw InvalidInput("unsupported results schema_version " + std::to_string(doc.schema_version));
  }
  const auto& meta = j.at("metadata");
  doc.metadata.base_seed = meta.at("base_seed").get<std::uint64_t>();
  doc.metadata.timestamp = meta.at("timestamp").get<std::string>();
  doc.metadata.episodes = meta.at("episodes").get<std::int64_t>();
  doc.metadata.steps_factor = meta.at("steps_factor").get<double>();
  for (const auto& s : meta.at("solvers")) doc.metadata.solvers.push_back(solver_from_json(s));

  for (const auto& r : j.at("records")) {
    RunRecord rec;
    rec.instance = r.at("instance").get<std::string>();
    rec.distribution = r.at("distribution").get<std::string>();
    rec.solver = r.at("solver").get<std::string>();
    rec.best_value = r.at("best_value").get<std::int64_t>();
    rec.best_known = r.at("best_known").get<std::int64_t>();
    const auto prov = parse_provenance(r.at("best_known_provenance").get<std::string>());
    if (!prov) throw InvalidInput("unknown provenance in results record");
    rec.provenance = *prov;
    if (!r.at("ratio").is_null()) rec.ratio = r.at("ratio").get<double>();
    rec.episodes = r.at("episodes").get<std::int64_t>();
    rec.steps = r.at("steps").get<std::int64_t>();
    rec.wall_clock_seconds = r.at("wall_clock_seconds").get<double>();
    rec.timed_out = r.at("timed_out").get<bool>();
    doc.records.push_back(std::move(rec));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Report tables: distributions as rows, solvers as columns.

enum class ReportFormat { CSV, MARKDOWN };

inline std::string render_report(const ResultsDocument& doc, ReportFormat format) {
  const auto rows = summarize(doc.records);
  std::vector<std::string> solvers;
  std::vector<std::string> distributions;
  for (const auto& r : doc.records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) solvers.push_back(r.solver);
    if (std::find(distributions.begin(), distributions.end(), r.distribution) == distributions.end()) {
      distributions.push_back(r.distribution);
    }
  }
  auto lookup = [&](const std::string& solver, const std::string& dist) -> const SummaryRow* {
    for (const auto& row : rows) {
      if (row.solver == solver && row.distribution == dist) return &row;
    }
    return nullptr;
  };

  std::string out;
  char cell[96];
  if (format == ReportFormat::CSV) {
    out = "distribution,solver,mean_ratio,std_ratio,instances,excluded\n";
    for (const auto& dist : distributions) {
      for (const auto& solver : solvers) {
        const SummaryRow* row = lookup(solver, dist);
        if (!row) continue;
        std::snprintf(cell, sizeof cell, ",%.6f,%.6f,%zu,%zu\n", row->mean_ratio, row->std_ratio, row->ratios.size(),
                      row->excluded);
        out += dist + "," + solver + cell;
      }
    }
    return out;
  }

  out = "| Graph |";
  for (const auto& s : solvers) out += " " + s + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < solvers.size(); ++i) out += "---|";
  out += "\n";
  for (const auto& dist : distributions) {
    out += "| " + dist + " |";
    for (const auto& solver : solvers) {
      const SummaryRow* row = lookup(solver, dist);
      if (!row || row->ratios.empty()) {
        out += " --- |";
        continue;
      }
      std::snprintf(cell, sizeof cell, " %.3f ± %.3f |", row->mean_ratio, row->std_ratio);
      out += cell;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SoftTabu policy checkpoint.

inline constexpr int kPolicyFormatVersion = 1;

inline nlohmann::json policy_to_json(const softtabu::LinearPolicy& policy, const nlohmann::json& train_metadata = {}) {
  return {
      {"format", "softtabu-policy"},
      {"version", kPolicyFormatVersion},
      {"weights", {policy.weights[0], policy.weights[1]}},
      {"bias", policy.bias},
      {"normalization", {{"gain", "initial_max_abs_gain"}, {"time", "steps_per_episode"}}},
      {"train", train_metadata.is_null() ? nlohmann::json::object() : train_metadata},
  };
}

inline softtabu::LinearPolicy policy_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != "softtabu-policy") throw InvalidInput("not a softtabu policy file");
  if (j.value("version", 0) != kPolicyFormatVersion) throw InvalidInput("unsupported policy version");
  softtabu::LinearPolicy p;
  p.weights = {j.at("weights").at(0).get<double>(), j.at("weights").at(1).get<double>()};
  p.bias = j.at("bias").get<double>();
  if (!p.finite()) throw InvalidInput("policy parameters must be finite");
  return p;
}

}  // namespace maxcut
