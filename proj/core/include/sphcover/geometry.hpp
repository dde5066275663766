#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "sphcover/rational.hpp"

namespace sphcover {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Default sign-decision tolerance of the binary64 regime.
inline constexpr double kDefaultTau = 1e-9;

/// A point of S^D (or a hemisphere pole) represented by any nonzero rational
/// vector in the same open ray. Every exact predicate in the library is
/// homogeneous of degree 0, so the representative never matters.
class Direction {
 public:
  explicit Direction(std::vector<Rat> coords);
  Direction(std::initializer_list<long> coords);

  static Direction basis(std::size_t ambient, std::size_t axis);

  std::size_t ambient_dim() const { return coords_.size(); }
  std::span<const Rat> coords() const { return coords_; }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  const Rat& last() const { return coords_.back(); }

  Direction operator-() const;
  Direction scaled(const Rat& positive_factor) const;

  /// Same ray: one representative is a positive multiple of the other.
  bool sphere_equal(const Direction& other) const;
  bool operator==(const Direction& other) const = default;

  /// Unit binary64 image of the ray.
  Eigen::VectorXd to_unit_vector() const;

 private:
  std::vector<Rat> coords_;
};

Rat dot_exact(const Direction& a, const Direction& b);

/// Unit vector in binary64 with the tolerance it was validated against.
class ApproxPoint {
 public:
  explicit ApproxPoint(Eigen::VectorXd coords, double tol = 1e-12);

  /// Normalizes `v` (which must be nonzero) and wraps it.
  static ApproxPoint normalized(const Eigen::VectorXd& v);

  std::size_t ambient_dim() const { return static_cast<std::size_t>(coords_.size()); }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }
  double tol() const { return tol_; }

  /// Bitwise negation of the stored coordinates.
  ApproxPoint operator-() const;

 private:
  Eigen::VectorXd coords_;
  double tol_;
};

/// arccos of the clamped dot product, in [0, pi].
double geodesic_distance(const ApproxPoint& u, const ApproxPoint& v);

/// Angle between u and the radial projection of cone(generators) onto the
/// sphere: arccos(max{<u, y> : y in cone, |y| = 1}).
double cone_angle(const ApproxPoint& u, std::span<const ApproxPoint> generators);

/// cone_angle with the per-face least-squares factorizations cached, for
/// repeated queries against one cone. Faces are all nonempty subsets of the
/// generators (at most 2^k - 1 of them).
class ConeDistance {
 public:
  explicit ConeDistance(std::vector<Eigen::VectorXd> generators);

  double angle(const Eigen::VectorXd& u) const;
  std::size_t generator_count() const { return generators_.size(); }

 private:
  struct Face {
    std::vector<int> members;
    Eigen::MatrixXd basis;   // dim x |members|
    Eigen::MatrixXd solver;  // (B^T B)^{-1}, empty when the face is degenerate
  };
  std::vector<Eigen::VectorXd> generators_;
  std::vector<Face> faces_;
};

/// Three-valued outcome of a comparison carried out in binary64.
enum class Tri { False, True, Ambiguous };

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Ambiguous;
}
inline Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Ambiguous;
}
inline Tri tri_not(Tri a) {
  if (a == Tri::Ambiguous) return a;
  return a == Tri::True ? Tri::False : Tri::True;
}
inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

/// value < threshold, with values within tau of the threshold ambiguous.
inline Tri tri_less(double value, double threshold, double tau) {
  if (value < threshold - tau) return Tri::True;
  if (value > threshold + tau) return Tri::False;
  return Tri::Ambiguous;
}

}  // namespace sphcover
