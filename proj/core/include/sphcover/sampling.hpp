#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "sphcover/belt_geometry.hpp"
#include "sphcover/cover.hpp"

namespace sphcover {

/// Uniform point on the unit sphere of R^dim (normalized Gaussian).
Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int dim);

/// Random unit vector in the cone spanned by `vertices` (exponential weights).
Eigen::VectorXd random_cone_point(std::mt19937_64& rng, const std::vector<Eigen::VectorXd>& vertices);

/// Rotates unit y by a geodesic angle in [0, radius) toward a random tangent.
Eigen::VectorXd perturb_geodesic(std::mt19937_64& rng, const Eigen::VectorXd& y, double radius);

/// Per-sample generator seed: a splitmix64 mix of (seed, index), so a sample
/// does not depend on which thread or in what order it is drawn.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

enum class StratumKind {
  Uniform,  // uniform on S^d
  Belt,     // uniform conditioned on |x_{d+1}| < param
  Tube,     // within geodesic distance param of a D' stratum (belt covers)
  Equator,  // uniform on the equator, x_{d+1} = 0 exactly
};

struct Stratum {
  StratumKind kind = StratumKind::Uniform;
  double param = 0;
  double fraction = 1;
};

struct SamplePlan {
  std::uint64_t seed = 1;
  std::uint64_t total = 10000;
  std::vector<Stratum> strata{Stratum{}};
  bool includes_antipodes = true;

  void validate() const;
  /// Stratum of sample k; strata occupy contiguous index ranges.
  std::size_t stratum_of(std::uint64_t k) const;
};

/// Default plan for a cover: uniform only for hemisphere/arc covers; uniform,
/// belt band (2 delta2), D' tubes (2 eps2) and equator for belt covers.
SamplePlan default_plan(const Cover& cover, std::uint64_t total, std::uint64_t seed);

/// Sample k of the plan on S^d. `geometry` is required for Tube strata.
Eigen::VectorXd sample_point(int d, const SamplePlan& plan, std::uint64_t k, const BeltGeometry* geometry = nullptr);

/// Materializes the first `count` samples (count <= plan.total).
std::vector<Eigen::VectorXd> sample_sphere(int d, const SamplePlan& plan, std::uint64_t count,
                                           const BeltGeometry* geometry = nullptr);

struct Requirements {
  int sphere_fold = 1;
  std::optional<int> north_fold;
  bool north_closed = false;
  /// Bound on how many facet sets F_i meet at an equatorial point (belt covers).
  std::optional<int> equator_facet_limit;
  bool check_antipodal = true;

  static Requirements from_claims(const Cover& cover);
};

struct Violation {
  std::string kind;  // "sphere-fold", "north-fold", "antipodal", "equator-facets", "implication"
  std::uint64_t index = 0;
  bool antipode = false;  // the violating point is -x_k
  int set_index = -1;
  int observed = 0;
  std::vector<double> point;
};

struct RegionStats {
  std::uint64_t samples = 0;
  int min_mult = 0;
  int max_mult = 0;
  std::uint64_t min_index = 0;
  std::uint64_t max_index = 0;
  std::vector<double> min_point;
  std::vector<double> max_point;

  void add(int count, std::uint64_t index, const Eigen::VectorXd& x);
  void merge(const RegionStats& other);
};

struct SamplingReport {
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::uint64_t evaluated = 0;  // points evaluated, antipodes included
  std::uint64_t boundary_ambiguous = 0;
  RegionStats sphere;
  RegionStats open_north;
  RegionStats closed_north;
  RegionStats equator;
  RegionStats open_south;
  int equator_facet_max = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first few, in sample order
  Requirements requirements;

  bool pass() const { return violation_count == 0; }
  double ambiguous_fraction() const;
};

/// Evaluates every requirement at every sample (and its antipode when the
/// plan asks for it). Samples with an undecided membership are counted as
/// boundary-ambiguous and excluded. A PASS only means no violation was found.
SamplingReport verify_sampled(const Cover& cover, const SamplePlan& plan, const Requirements& requirements,
                              unsigned threads = 0);

/// Re-evaluates a reported violation from scratch; true if it still holds.
bool violation_reproduces(const Cover& cover, const SamplePlan& plan, const Requirements& requirements,
                          const Violation& v);

nlohmann::json to_json(const SamplingReport& report);

}  // namespace sphcover
