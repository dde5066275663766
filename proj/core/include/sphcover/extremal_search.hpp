#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphcover/exact_engine.hpp"

namespace sphcover {

/// Annealing over hemisphere pole configurations, looking for antipodal n-fold
/// covers of S^d whose maximum multiplicity stays below d+n.
struct SearchConfig {
  int d = 2;
  int n = 2;
  int N = 8;
  int iterations = 200;
  int restarts = 4;
  std::uint64_t seed = 1;
  /// Step at iteration t is 2^-k times the pole's largest coordinate, with k
  /// moving linearly from first_step_exp to last_step_exp.
  int first_step_exp = 1;
  int last_step_exp = 8;
  double initial_temperature = 1.0;

  void validate() const;
};

struct TraceRow {
  int restart = 0;
  int iteration = 0;
  int objective = 0;  // current state's exact max
  int best = 0;
  bool proposal_feasible = false;
  bool accepted = false;
};

enum class SearchVerdict { SupportsConjecture, CounterexampleCandidate };
std::string_view to_string(SearchVerdict v);

struct SearchResult {
  SearchConfig config;
  std::vector<Direction> best_poles;
  MultiplicityReport best_report;  // SPHERE
  int best_restart = 0;
  std::vector<TraceRow> trace;
  SearchVerdict verdict = SearchVerdict::SupportsConjecture;
  std::optional<MultiplicityReport> reverification;
  std::uint64_t evaluations = 0;
  std::uint64_t rejected_infeasible = 0;
  /// Feasible states with max below ceil(d/2)+n. Any entry is an engine bug.
  std::uint64_t floor_violations = 0;
  std::uint64_t lp_calls = 0;
};

SearchResult search(const SearchConfig& config);

nlohmann::json to_json(const SearchResult& result);
std::string trace_csv(const SearchResult& result);

}  // namespace sphcover
