#include "sphcover/belt_geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sphcover {

SimplexFrame simplex_frame(int d) {
  if (d < 1) throw std::invalid_argument("simplex_frame: d must be >= 1");
  // Helmert basis of the complement of (1,...,1) in R^{d+1}:
  // h_k = (1,...,1, -k, 0,...,0) / sqrt(k(k+1)), k = 1..d. Vertex i gets
  // coordinates <e_i - centroid, h_k> = h_k[i].
  SimplexFrame frame;
  frame.d = d;
  for (int i = 0; i <= d; ++i) {
    Eigen::VectorXd v(d);
    for (int k = 1; k <= d; ++k) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
      double entry = 0.0;
      if (i < k) entry = scale;
      else if (i == k) entry = -k * scale;
      v[k - 1] = entry;
    }
    frame.vertices.push_back(v.normalized());
  }
  return frame;
}

FacetMultiplicity facet_multiplicity(const SimplexFrame& frame, const Eigen::VectorXd& u, double tol) {
  if (u.size() != frame.d) throw DimensionMismatch("facet_multiplicity: point dimension mismatch");
  std::vector<double> dots;
  dots.reserve(frame.vertices.size());
  for (const auto& v : frame.vertices) dots.push_back(u.dot(v));
  const double lo = *std::min_element(dots.begin(), dots.end());
  FacetMultiplicity out;
  for (std::size_t j = 0; j < dots.size(); ++j) {
    if (dots[j] <= lo + tol) out.argmin.push_back(static_cast<int>(j));
  }
  out.count = static_cast<int>(out.argmin.size());
  return out;
}

void BeltParams::validate() const {
  if (!(eps1 > 0) || !(eps2 > eps1)) throw std::invalid_argument("belt params: need 0 < eps1 < eps2");
  if (!(delta1p > 0) || !(delta2p > delta1p) || !(delta2p < 1)) {
    throw std::invalid_argument("belt params: need 0 < delta1' < delta2' < 1");
  }
  if (!(tau > 0)) throw std::invalid_argument("belt params: tau must be positive");
}

double belt_height(double slope) { return std::sin(std::atan(slope)); }

BeltGeometry::BeltGeometry(int d, BeltParams params) : BeltGeometry(d, params, Unchecked{}) { params_.validate(); }

BeltGeometry::BeltGeometry(int d, BeltParams params, Unchecked) : frame_(simplex_frame(d)), params_(params) {
  if (d < 2) throw std::invalid_argument("belt cover needs d >= 2, got " + std::to_string(d));
  const int verts = d + 1;
  const int facets_needed = (d + 1) / 2 + 1;  // ceil(d/2) + 1
  const unsigned full = (1u << verts) - 1;
  // A face conv{v_j : j not in J} lies in exactly the facets indexed by J.
  for (unsigned jmask = 0; jmask <= full; ++jmask) {
    if (std::popcount(jmask) != facets_needed) continue;
    const unsigned face = full & ~jmask;
    std::vector<int> members;
    for (int j = 0; j < verts; ++j) {
      if (face & (1u << j)) members.push_back(j);
    }
    strata_.push_back(std::move(members));
    strata_masks_.push_back(face);
  }
  inverse_gram_.assign(full + 1, Eigen::MatrixXd());
  for (unsigned mask = 1; mask < full; ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    Eigen::MatrixXd gram(k, k);
    std::vector<int> idx;
    for (int j = 0; j < verts; ++j) {
      if (mask & (1u << j)) idx.push_back(j);
    }
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) gram(a, b) = frame_.vertices[idx[a]].dot(frame_.vertices[idx[b]]);
    }
    inverse_gram_[mask] = gram.inverse();
  }
}

std::vector<double> BeltGeometry::subset_best(const Eigen::VectorXd& dots) const {
  // best[mask] = max <u, y> over unit y in cone{v_j : j in mask}; built from
  // per-face projection candidates and a subset-max sweep.
  const int verts = d() + 1;
  const unsigned full = (1u << verts) - 1;
  std::vector<double> best(full + 1, -std::numeric_limits<double>::infinity());
  Eigen::VectorXd rhs;
  for (unsigned mask = 1; mask < full; ++mask) {
    const int k = std::popcount(mask);
    double value = -std::numeric_limits<double>::infinity();
    if (k == 1) {
      value = dots[std::countr_zero(mask)];
    } else {
      rhs.resize(k);
      int c = 0;
      for (int j = 0; j < verts; ++j) {
        if (mask & (1u << j)) rhs[c++] = dots[j];
      }
      const Eigen::VectorXd coef = inverse_gram_[mask] * rhs;
      if ((coef.array() >= 0.0).all()) {
        const double norm_sq = coef.dot(rhs);
        if (norm_sq > 0.0) value = std::sqrt(norm_sq);
      }
    }
    for (int j = 0; j < verts; ++j) {
      if (mask & (1u << j)) value = std::max(value, best[mask & ~(1u << j)]);
    }
    best[mask] = value;
  }
  return best;
}

double BeltGeometry::cone_max_dot(const std::vector<double>& best, unsigned mask) const {
  return std::clamp(best[mask], -1.0, 1.0);
}

BeltGeometry::Profile BeltGeometry::profile(const Eigen::VectorXd& u) const {
  const int verts = d() + 1;
  Eigen::VectorXd dots(verts);
  for (int j = 0; j < verts; ++j) dots[j] = u.dot(frame_.vertices[j]);
  const double lo = dots.minCoeff();
  const auto best = subset_best(dots);
  const unsigned full = (1u << verts) - 1;

  Profile p;
  p.facet_dist.resize(static_cast<std::size_t>(verts));
  for (int i = 0; i < verts; ++i) {
    // Inside the projected facet exactly when i attains the minimum.
    p.facet_dist[i] = dots[i] <= lo ? 0.0 : std::acos(cone_max_dot(best, full & ~(1u << i)));
  }
  double top = -1.0;
  for (unsigned m : strata_masks_) top = std::max(top, cone_max_dot(best, m));
  p.stratum_dist = std::acos(top);
  return p;
}

Tri BeltGeometry::facet_set(const Profile& p, int i) const {
  const auto& q = params_;
  return tri_and(tri_less(p.facet_dist[i], q.eps1, q.tau), tri_less(q.eps2 - q.eps1, p.stratum_dist, q.tau));
}

Tri BeltGeometry::facet_set_closure(const Profile& p, int i) const {
  // Open and closed versions agree outside the tau band, which is ambiguous.
  return facet_set(p, i);
}

Tri BeltGeometry::cap_set(const Profile& p) const { return tri_less(p.stratum_dist, params_.eps2, params_.tau); }

Tri BeltGeometry::cap_set_closure(const Profile& p) const { return cap_set(p); }

BeltGeometry::FacetCount BeltGeometry::facet_count(const Profile& p) const {
  FacetCount c;
  for (int i = 0; i <= d(); ++i) {
    const Tri t = facet_set(p, i);
    if (t == Tri::True) ++c.definite;
    else if (t == Tri::Ambiguous) ++c.ambiguous;
  }
  return c;
}

std::vector<Tri> BeltGeometry::memberships(const Eigen::VectorXd& x) const {
  const int dd = d();
  if (x.size() != dd + 1) throw DimensionMismatch("belt cover: point dimension mismatch");
  const auto& q = params_;
  const double h = x[dd];
  const Eigen::VectorXd p = x.head(dd);
  const double r = p.norm();
  std::vector<Tri> out(static_cast<std::size_t>(dd + 2));

  if (r <= q.tau) {
    for (int i = 0; i <= dd; ++i) out[i] = tri_of(h > 0);
    out[dd + 1] = tri_of(h < 0);
    return out;
  }
  const Eigen::VectorXd u = p / r;
  const double slope = h / r;
  const Profile here = profile(u);
  const Profile there = profile(-u);

  const Tri north = tri_of(h > 0);
  const Tri south = tri_of(h < 0);
  // Belt windows at x and, for the excluded closures, at -x (slope -> -slope).
  const Tri facet_band = tri_and(tri_less(-q.delta2p, slope, q.tau), tri_less(slope, q.delta2p, q.tau));
  const Tri cap_band = tri_and(tri_less(-q.delta2p, slope, q.tau), tri_less(slope, q.delta1p, q.tau));
  const Tri cap_band_anti = tri_and(tri_less(-q.delta2p, -slope, q.tau), tri_less(-slope, q.delta1p, q.tau));

  for (int i = 0; i <= dd; ++i) {
    const Tri belt_here = tri_and(facet_set(here, i), facet_band);
    const Tri belt_anti = tri_and(facet_set_closure(there, i), facet_band);  // facet window is symmetric
    out[i] = tri_and(tri_or(north, belt_here), tri_not(belt_anti));
  }
  const Tri cap_here = tri_and(cap_set(here), cap_band);
  const Tri cap_anti = tri_and(cap_set_closure(there), cap_band_anti);
  out[dd + 1] = tri_and(tri_or(south, cap_here), tri_not(cap_anti));
  return out;
}

}  // namespace sphcover
