#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "sphcover/cover.hpp"
#include "sphcover/geometry.hpp"

namespace sphcover {

/// Input does not meet the chain search's hypotheses (a set holds antipodal
/// points, or some sampled point is uncovered).
struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The chain search exhausted every chain on an input that passed the
/// precondition checks. This cannot happen for a valid input.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

/// A cover together with a linear order on its sets. `order[r]` is the base
/// index of the set of rank r.
struct OrderedCover {
  const Cover* base = nullptr;
  std::vector<int> order;

  static OrderedCover construction_order(const Cover& cover);
  void validate() const;
};

/// Nonempty intersection of base sets. `tuple` lists base indices by
/// increasing rank; `poles` are the open half-spaces cutting it out.
struct LiftedSet {
  std::vector<int> tuple;
  std::vector<Direction> poles;
  Direction witness{1};
};

/// Open convex form of each base set: hemisphere poles, or half-planes for
/// arcs of S^1. Throws RegimeMismatch for sets without such a form and
/// PreconditionViolation for arcs longer than a half-turn.
std::vector<std::vector<Direction>> convex_form(const Cover& cover);

/// All n-subsets with nonempty open intersection, lexicographic in rank.
std::vector<LiftedSet> lift_cover(const OrderedCover& oc, int n, std::size_t* lp_calls = nullptr);

struct KyFanCertificate {
  std::vector<int> chain;                 // indices into the lifted list
  std::vector<std::vector<int>> tuples;   // base tuples of the chain members
  Direction witness{1};
  Direction deep_x{1};
  std::vector<int> deep_sets;             // base indices, sorted
  int count = 0;
  bool consecutive_distinct = false;      // first tuple entries, neighbours
  bool pairwise_distinct = false;         // first tuple entries, all pairs
  std::uint64_t lp_calls = 0;
};

struct ChainOptions {
  int coverage_samples = 4096;
  std::uint64_t seed = 0xc0fe;
};

/// Lexicographically first chain S_1 < ... < S_{d+2} with
/// S_1 ∩ -S_2 ∩ S_3 ∩ ... nonempty.
KyFanCertificate find_chain(std::span<const LiftedSet> sets, int d, const ChainOptions& options = {});

/// Chain on the n-fold lift of a hemisphere (or S^1 arc) cover, reduced to a
/// point lying in many base sets. The cover's n-foldness is checked exactly.
KyFanCertificate deep_point(const Cover& cover, int n, const ChainOptions& options = {});

/// Re-checks alternation of the chain and every deep-point membership exactly.
bool verify_certificate(const Cover& cover, std::span<const LiftedSet> lifted, const KyFanCertificate& cert);

nlohmann::json to_json(const KyFanCertificate& cert);

}  // namespace sphcover
