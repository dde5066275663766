#pragma once

#include <Eigen/Dense>

#include <vector>

#include "sphcover/geometry.hpp"

namespace sphcover {

/// Regular d-simplex centered at the origin with its d+1 vertices on S^{d-1}.
struct SimplexFrame {
  int d = 0;
  std::vector<Eigen::VectorXd> vertices;
};

SimplexFrame simplex_frame(int d);

struct FacetMultiplicity {
  int count = 0;
  std::vector<int> argmin;  // 0-based vertex indices
};

/// Multiplicity of the closed facet-projection cover of S^{d-1} at u. The ray
/// through u leaves the simplex through the facet opposite the vertex with the
/// smallest inner product, so membership in facet i means i attains the min.
FacetMultiplicity facet_multiplicity(const SimplexFrame& frame, const Eigen::VectorXd& u, double tol);

/// Parameters of the belt construction. Radii are geodesic (radians); the
/// delta' values are slopes x_{d+1} / |pi(x)|.
struct BeltParams {
  double eps1 = 0;
  double eps2 = 0;
  double delta1p = 0.25;
  double delta2p = 0.5;
  double tau = kDefaultTau;

  void validate() const;
  bool operator==(const BeltParams&) const = default;
};

/// Belt height on the sphere for a slope delta': sin(atan(delta')).
double belt_height(double slope);

/// Membership machinery for the d+2 open sets C_1..C_{d+2} of the belt cover
/// of S^d. Sets 0..d are the facet extensions, set d+1 the cap extension.
class BeltGeometry {
 public:
  BeltGeometry(int d, BeltParams params);
  /// Skips the parameter invariants; only for deliberately broken covers in
  /// mutation tests.
  struct Unchecked {};
  BeltGeometry(int d, BeltParams params, Unchecked);

  int d() const { return frame_.d; }
  int set_count() const { return frame_.d + 2; }
  const BeltParams& params() const { return params_; }
  const SimplexFrame& frame() const { return frame_; }

  /// Vertex index sets spanning the D' strata (faces lying in at least
  /// ceil(d/2)+1 facets); only the minimal such faces are listed.
  const std::vector<std::vector<int>>& strata() const { return strata_; }

  /// Distances on the equator S^{d-1} from a unit vector u.
  struct Profile {
    std::vector<double> facet_dist;  // dist(u, F_i'), i = 0..d
    double stratum_dist = 0;         // dist(u, D')
  };
  Profile profile(const Eigen::VectorXd& u) const;

  Tri facet_set(const Profile& p, int i) const;          // F_i
  Tri facet_set_closure(const Profile& p, int i) const;  // closure of F_i
  Tri cap_set(const Profile& p) const;                   // D
  Tri cap_set_closure(const Profile& p) const;

  /// Number of F_i containing u; `ambiguous` counts undecided memberships.
  struct FacetCount {
    int definite = 0;
    int ambiguous = 0;
  };
  FacetCount facet_count(const Profile& p) const;

  /// Memberships of a point x of S^d (length d+1) in C_1..C_{d+2}.
  std::vector<Tri> memberships(const Eigen::VectorXd& x) const;

 private:
  double cone_max_dot(const std::vector<double>& best, unsigned mask) const;
  std::vector<double> subset_best(const Eigen::VectorXd& dots) const;

  SimplexFrame frame_;
  BeltParams params_;
  std::vector<std::vector<int>> strata_;
  std::vector<unsigned> strata_masks_;
  // Inverse Gram matrices per vertex subset (indexed by bitmask), for the
  // subsets that are linearly independent (size 2..d).
  std::vector<Eigen::MatrixXd> inverse_gram_;
};

}  // namespace sphcover
