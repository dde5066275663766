#include "sphcover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sphcover {

Direction::Direction(std::vector<Rat> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Direction needs at least one coordinate");
  for (auto& c : coords_) c.canonicalize();
  const bool all_zero = std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c == 0; });
  if (all_zero) throw std::invalid_argument("Direction must be a nonzero vector");
}

Direction::Direction(std::initializer_list<long> coords)
    : Direction(std::vector<Rat>(coords.begin(), coords.end())) {}

Direction Direction::basis(std::size_t ambient, std::size_t axis) {
  std::vector<Rat> c(ambient, Rat(0));
  c.at(axis) = 1;
  return Direction(std::move(c));
}

Direction Direction::operator-() const {
  std::vector<Rat> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return Direction(std::move(c));
}

Direction Direction::scaled(const Rat& positive_factor) const {
  if (positive_factor <= 0) throw std::invalid_argument("Direction scaling factor must be positive");
  std::vector<Rat> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * positive_factor;
  return Direction(std::move(c));
}

bool Direction::sphere_equal(const Direction& other) const {
  if (other.ambient_dim() != ambient_dim()) return false;
  // Find the ratio on the first nonzero coordinate, then check all of them.
  Rat ratio;
  bool have_ratio = false;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const bool za = coords_[i] == 0;
    const bool zb = other.coords_[i] == 0;
    if (za != zb) return false;
    if (za) continue;
    if (!have_ratio) {
      ratio = other.coords_[i] / coords_[i];
      if (ratio <= 0) return false;
      have_ratio = true;
    } else if (coords_[i] * ratio != other.coords_[i]) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd Direction::to_unit_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coords_.size()));
  for (std::size_t i = 0; i < coords_.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords_[i].get_d();
  const double n = v.norm();
  if (n > 0 && std::isfinite(n)) return v / n;
  // Huge or tiny representatives: rescale exactly by the largest magnitude first.
  Rat big = 0;
  for (const auto& c : coords_) big = std::max(big, Rat(abs(c)));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = Rat(coords_[i] / big).get_d();
  }
  return v.normalized();
}

Rat dot_exact(const Direction& a, const Direction& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("dot_exact: dimensions " + std::to_string(a.ambient_dim()) + " and " +
                            std::to_string(b.ambient_dim()));
  }
  Rat s = 0;
  for (std::size_t i = 0; i < a.ambient_dim(); ++i) s += a[i] * b[i];
  return s;
}

ApproxPoint::ApproxPoint(Eigen::VectorXd coords, double tol) : coords_(std::move(coords)), tol_(tol) {
  if (coords_.size() == 0) throw std::invalid_argument("ApproxPoint needs at least one coordinate");
  if (std::abs(coords_.norm() - 1.0) > tol_) {
    throw std::invalid_argument("ApproxPoint is not on the unit sphere within tolerance");
  }
}

ApproxPoint ApproxPoint::normalized(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  return ApproxPoint(v / n);
}

ApproxPoint ApproxPoint::operator-() const { return ApproxPoint(-coords_, tol_); }

double geodesic_distance(const ApproxPoint& u, const ApproxPoint& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("geodesic_distance: dimension mismatch");
  return std::acos(std::clamp(u.coords().dot(v.coords()), -1.0, 1.0));
}

ConeDistance::ConeDistance(std::vector<Eigen::VectorXd> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("cone_angle: empty generator list");
  const auto dim = generators_.front().size();
  for (auto& g : generators_) {
    if (g.size() != dim) throw DimensionMismatch("cone_angle: generator dimension mismatch");
    const double n = g.norm();
    if (!(n > 0)) throw std::invalid_argument("cone_angle: zero generator");
    g /= n;
  }
  const int k = static_cast<int>(generators_.size());
  if (k > 20) throw std::invalid_argument("cone_angle: too many generators for face enumeration");
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Face face;
    for (int j = 0; j < k; ++j) {
      if (mask & (1u << j)) face.members.push_back(j);
    }
    // Singletons are covered by the vertex candidates.
    if (face.members.size() < 2) continue;
    face.basis.resize(dim, static_cast<Eigen::Index>(face.members.size()));
    for (std::size_t c = 0; c < face.members.size(); ++c) {
      face.basis.col(static_cast<Eigen::Index>(c)) = generators_[static_cast<std::size_t>(face.members[c])];
    }
    const Eigen::MatrixXd gram = face.basis.transpose() * face.basis;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (lu.rank() < gram.rows()) continue;  // dependent generators: covered by smaller faces
    face.solver = lu.inverse();
    faces_.push_back(std::move(face));
  }
}

double ConeDistance::angle(const Eigen::VectorXd& u) const {
  if (u.size() != generators_.front().size()) throw DimensionMismatch("cone_angle: point dimension mismatch");
  // atan2 forms stay accurate near 0, where acos of a dot product loses half
  // the digits.
  const double un = u.norm();
  double best = std::numbers::pi;
  for (const auto& g : generators_) best = std::min(best, 2.0 * std::atan2((u - un * g).norm(), (u + un * g).norm()));
  for (const auto& face : faces_) {
    const Eigen::VectorXd coef = face.solver * (face.basis.transpose() * u);
    if ((coef.array() < 0.0).any()) continue;
    const Eigen::VectorXd p = face.basis * coef;
    const double pn = p.norm();
    if (!(pn > 0.0)) continue;
    best = std::min(best, std::atan2((u - p).norm(), pn));
  }
  return best;
}

double cone_angle(const ApproxPoint& u, std::span<const ApproxPoint> generators) {
  if (generators.empty()) throw std::invalid_argument("cone_angle: empty generator list");
  std::vector<Eigen::VectorXd> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(g.coords());
  return ConeDistance(std::move(gens)).angle(u.coords());
}

}  // namespace sphcover
