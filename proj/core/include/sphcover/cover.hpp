#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sphcover/belt_geometry.hpp"
#include "sphcover/geometry.hpp"

namespace sphcover {

struct RegimeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Region { Sphere, OpenNorth, ClosedNorth, Equator, OpenSouth };

std::string_view to_string(Region region);
Region parse_region(std::string_view name);

bool in_region(Region region, const Direction& x);
/// The last coordinate is compared exactly; it is data, not a computed value.
bool in_region(Region region, const ApproxPoint& x);

/// Open hemisphere {x : <pole, x> > 0}.
struct Hemisphere {
  Direction pole;

  bool contains(const Direction& x) const { return sign(dot_exact(pole, x)) > 0; }
};

/// Open arc of S^1, angles in degrees measured from (1, 0) toward (0, 1).
struct ArcSet {
  double center_deg = 0;
  double half_width_deg = 0;
};

/// Open northern hemisphere {x_{d+1} > 0} as a predicate set.
struct NorthernHemisphereSet {};

/// One of the d+2 sets of the belt cover; index d+1 is the cap extension.
struct BeltSet {
  std::shared_ptr<const BeltGeometry> geometry;
  int index = 0;
};

using CoverSet = std::variant<Hemisphere, ArcSet, NorthernHemisphereSet, BeltSet>;

enum class PredicateKind { FacetExtension, CapExtension, NorthernHemisphere, Arc };
std::string_view to_string(PredicateKind kind);

/// Kind of a non-hemisphere set; std::nullopt for hemispheres.
std::optional<PredicateKind> predicate_kind(const CoverSet& set);

/// Advisory fold claims; the engines never trust them.
struct Claims {
  int n = 1;
  std::optional<int> m;
  bool north_closed = false;

  bool operator==(const Claims&) const = default;
};

/// Memberships of one binary64 point: definite count plus undecided sets.
struct PointEvaluation {
  std::vector<Tri> members;
  int count = 0;
  int ambiguous = 0;
};

class Cover {
 public:
  Cover(int dim, std::vector<CoverSet> sets, Claims claims, nlohmann::json provenance = nlohmann::json::object());

  int dim() const { return dim_; }
  std::size_t size() const { return sets_.size(); }
  const std::vector<CoverSet>& sets() const { return sets_; }
  const Claims& claims() const { return claims_; }
  const nlohmann::json& provenance() const { return provenance_; }

  bool is_hemisphere_cover() const;
  /// Poles of a hemisphere cover, in set order. Throws RegimeMismatch otherwise.
  std::vector<Direction> poles() const;

  /// Exact multiplicity; hemisphere covers only.
  int multiplicity_at(const Direction& x) const;
  /// Binary64 multiplicity with the tau ambiguity band.
  PointEvaluation evaluate(const ApproxPoint& x, double tau = kDefaultTau) const;

  Cover with_claims(Claims claims) const;

 private:
  int dim_;
  std::vector<CoverSet> sets_;
  Claims claims_;
  nlohmann::json provenance_;
  std::vector<Eigen::VectorXd> unit_poles_;  // per set; empty for predicate sets
};

/// Restriction of a hemisphere cover of S^d to the equator S^{d-1}. Poles whose
/// first d coordinates vanish are dropped.
Cover restrict_to_equator(const Cover& cover);

/// Appends `count` copies of the open hemisphere with the given pole.
Cover add_hemispheres(const Cover& cover, int count, const Direction& pole, Claims new_claims);

nlohmann::json to_json(const Cover& cover);
Cover cover_from_json(const nlohmann::json& doc);

}  // namespace sphcover
