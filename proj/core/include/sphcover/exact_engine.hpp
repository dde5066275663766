#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphcover/cover.hpp"
#include "sphcover/geometry.hpp"

namespace sphcover {

/// Position of a point relative to N central hyperplanes: +1, 0 or -1 per pole.
struct SignVector {
  std::vector<int> signs;

  std::size_t size() const { return signs.size(); }
  int positives() const;
  std::string str() const;  // e.g. "+-0+"
  static SignVector parse(std::string_view text);
};

/// Exact point realizing a sign pattern; achieved_margin is
/// min_i sigma_i <q_i, x> / max_j |x_j| over the strict rows (0 if none).
struct LpWitness {
  Direction x;
  Rat achieved_margin;
};

/// Decides whether some x != 0 has sign(<poles[i], x>) = signs[i] for every
/// i < signs.size() and satisfies the region constraint on its last
/// coordinate. `signs` may be shorter than `poles` (prefix queries).
std::optional<LpWitness> feasible(std::span<const Direction> poles, std::span<const int> signs, Region region,
                                  std::size_t* lp_calls = nullptr);
std::optional<LpWitness> feasible(const SignVector& signs, Region region, std::span<const Direction> poles);

/// True when x realizes the signs and the region, checked by substitution.
bool realizes(std::span<const Direction> poles, std::span<const int> signs, Region region, const Direction& x);

struct MultiplicityReport {
  Region region = Region::Sphere;
  int min_mult = 0;
  int max_mult = 0;
  Direction min_witness{1};
  Direction max_witness{1};
  std::uint64_t cells_explored = 0;
  std::uint64_t lp_calls = 0;
};

struct ExtremaOptions {
  std::size_t cap = 14;
  int seed_samples = 64;
  std::uint64_t seed = 0x5eed;
  /// Branch-and-bound on the positive count. Infeasible-prefix pruning is
  /// always on; disabling this only makes the search slower.
  bool bound_pruning = true;
};

struct CapExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact min and max of #{i : <q_i, x> > 0} over the region, by depth-first
/// enumeration of realizable sign vectors with LP-decided prefixes.
MultiplicityReport multiplicity_extrema(const Cover& cover, Region region, const ExtremaOptions& options = {});
MultiplicityReport multiplicity_extrema(std::span<const Direction> poles, Region region,
                                        const ExtremaOptions& options = {});

struct ClaimVerdict {
  std::string name;
  Region region = Region::Sphere;
  int required = 0;
  int observed = 0;
  bool pass = false;
  std::string reason;
  std::optional<Direction> witness;
};

struct ClaimsReport {
  std::vector<ClaimVerdict> verdicts;
  std::vector<MultiplicityReport> reports;
  bool all_pass() const;
};

/// Checks the cover against `claims` (not the cover's own stored claims, so
/// callers can test alternatives).
ClaimsReport verify_claims(const Cover& cover, const Claims& claims, const ExtremaOptions& options = {});

nlohmann::json to_json(const MultiplicityReport& report);
nlohmann::json to_json(const ClaimsReport& report);
nlohmann::json direction_json(const Direction& x);

}  // namespace sphcover
