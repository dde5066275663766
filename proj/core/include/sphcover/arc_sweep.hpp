#pragma once

#include <vector>

#include "sphcover/cover.hpp"
#include "sphcover/exact_engine.hpp"

namespace sphcover {

/// A set of an S^1 cover that contains some x together with -x.
struct ArcAntipodalViolation {
  int set = 0;
  Direction x{1, 0};
};

/// Exact multiplicity profile of a cover of S^1. Every endpoint, its antipode
/// and the two equator points are swept in angular order; the profile holds
/// each of those points plus one interior point of every gap between them.
struct ArcProfile {
  std::vector<Direction> points;
  std::vector<int> counts;
  std::vector<ArcAntipodalViolation> antipodal;

  MultiplicityReport report(Region region) const;
};

/// Accepts hemispheres, arcs and the northern-hemisphere predicate.
ArcProfile arc_profile(const Cover& cover);
MultiplicityReport arc_sweep(const Cover& cover, Region region);

/// Claims check for S^1 covers from one sweep; antipodal-freeness is decided
/// by the sweep rather than assumed.
ClaimsReport verify_claims_sweep(const Cover& cover, const Claims& claims);

/// Exact membership of a direction of R^2 in one set of an S^1 cover.
bool arc_contains(const CoverSet& set, const Direction& x);

/// Poles of open half-planes whose intersection is the given set, for sets
/// no longer than a half-turn. Throws std::invalid_argument otherwise.
std::vector<Direction> arc_half_planes(const CoverSet& set);

}  // namespace sphcover
