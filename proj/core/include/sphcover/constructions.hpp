#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphcover/belt_geometry.hpp"
#include "sphcover/cover.hpp"

namespace sphcover {

/// d+2n points (-1)^i (1, t_i, ..., t_i^d), i = 1..d+2n, on the moment curve.
struct GaleConfig {
  int d = 0;
  int n = 0;
  std::vector<Rat> t_values;
  std::vector<Direction> points;
};

GaleConfig gale_points(int d, int n, std::optional<std::vector<Rat>> t_values = std::nullopt);

/// Open hemispheres centered at the Gale points; claimed n-fold.
Cover gale_cover(int d, int n, std::optional<std::vector<Rat>> t_values = std::nullopt);

/// Gale m-fold cover mapped so its first pole points due south, with that
/// hemisphere removed: d+2m-1 sets, claimed n-fold with the closed northern
/// hemisphere m-fold.
Cover bar_cover(int d, int n, int m);

/// Gale n-fold cover plus m-n open northern hemispheres: d+n+m sets.
Cover nm_cover_upper(int d, int n, int m);

/// Three 65-degree half-width arcs at 90/210/330 degrees plus m-1 open
/// northern semicircles: 2+m sets on S^1.
Cover circle_cover(int m);

/// The d+2 set belt cover of S^d (d >= 2), claimed (1, floor(d/2)+1).
Cover belt_cover(int d, const BeltParams& params);

/// Minimal angle between a D' stratum and the antipode of another stratum.
double strata_antipodal_gap(const BeltGeometry& geometry);

struct PreconditionReport {
  std::uint64_t samples = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t antipodal_violations = 0;  // some F_i or D holds u and -u
  std::uint64_t uncovered = 0;             // u in no F_i and not in D
  int max_facet_count = 0;                 // most F_i containing one sample
  int facet_limit = 0;                     // ceil(d/2)
  bool ok() const { return antipodal_violations == 0 && uncovered == 0 && max_facet_count <= facet_limit; }
};

/// Samples the equator S^{d-1} (uniformly and in tubes around the D' strata)
/// and checks the conditions the belt cover relies on.
PreconditionReport check_belt_preconditions(const BeltGeometry& geometry, std::uint64_t samples = 20000,
                                            std::uint64_t seed = 0xbe17);

struct AutoParams {
  BeltParams params;
  double gap = 0;  // strata_antipodal_gap
  int rounds = 0;  // retry rounds used (0 = first try passed)
  PreconditionReport checks;
};

struct NoParametersFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// eps2 = gap/4, eps1 = eps2/10, delta' = (0.25, 0.5), then verify the
/// preconditions, shrinking eps1 (later eps2) for up to 8 rounds.
AutoParams belt_auto_params(int d, std::uint64_t check_samples = 20000);

}  // namespace sphcover
