#include "sphcover/cover.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sphcover {

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Sphere: return "SPHERE";
    case Region::OpenNorth: return "OPEN_NORTH";
    case Region::ClosedNorth: return "CLOSED_NORTH";
    case Region::Equator: return "EQUATOR";
    case Region::OpenSouth: return "OPEN_SOUTH";
  }
  return "?";
}

Region parse_region(std::string_view name) {
  for (Region r : {Region::Sphere, Region::OpenNorth, Region::ClosedNorth, Region::Equator, Region::OpenSouth}) {
    if (name == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown region '" + std::string(name) + "'");
}

namespace {

bool region_holds(Region region, int last_sign) {
  switch (region) {
    case Region::Sphere: return true;
    case Region::OpenNorth: return last_sign > 0;
    case Region::ClosedNorth: return last_sign >= 0;
    case Region::Equator: return last_sign == 0;
    case Region::OpenSouth: return last_sign < 0;
  }
  return false;
}

}  // namespace

bool in_region(Region region, const Direction& x) { return region_holds(region, sign(x.last())); }

bool in_region(Region region, const ApproxPoint& x) {
  const double h = x[x.ambient_dim() - 1];
  return region_holds(region, (h > 0) - (h < 0));
}

std::string_view to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::FacetExtension: return "facet-extension";
    case PredicateKind::CapExtension: return "cap-extension";
    case PredicateKind::NorthernHemisphere: return "northern-hemisphere";
    case PredicateKind::Arc: return "arc";
  }
  return "?";
}

std::optional<PredicateKind> predicate_kind(const CoverSet& set) {
  if (std::holds_alternative<ArcSet>(set)) return PredicateKind::Arc;
  if (std::holds_alternative<NorthernHemisphereSet>(set)) return PredicateKind::NorthernHemisphere;
  if (const auto* belt = std::get_if<BeltSet>(&set)) {
    return belt->index == belt->geometry->d() + 1 ? PredicateKind::CapExtension : PredicateKind::FacetExtension;
  }
  return std::nullopt;
}

Cover::Cover(int dim, std::vector<CoverSet> sets, Claims claims, nlohmann::json provenance)
    : dim_(dim), sets_(std::move(sets)), claims_(claims), provenance_(std::move(provenance)) {
  if (dim_ < 1) throw std::invalid_argument("cover dimension must be >= 1");
  if (sets_.empty()) throw std::invalid_argument("cover must contain at least one set");
  if (claims_.n < 0) throw std::invalid_argument("claimed fold n must be nonnegative");
  if (claims_.m && *claims_.m <= claims_.n) {
    throw std::invalid_argument("claims need m > n (got n=" + std::to_string(claims_.n) +
                                ", m=" + std::to_string(*claims_.m) + ")");
  }
  const auto ambient = static_cast<std::size_t>(dim_ + 1);
  unit_poles_.resize(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const auto& s = sets_[i];
    if (const auto* h = std::get_if<Hemisphere>(&s)) {
      if (h->pole.ambient_dim() != ambient) throw DimensionMismatch("hemisphere pole has wrong dimension");
      unit_poles_[i] = h->pole.to_unit_vector();
    } else if (std::holds_alternative<ArcSet>(s)) {
      if (dim_ != 1) throw std::invalid_argument("arc sets live on S^1 only");
      const auto& a = std::get<ArcSet>(s);
      if (!(a.half_width_deg > 0) || !(a.half_width_deg < 180)) {
        throw std::invalid_argument("arc half-width must lie in (0, 180) degrees");
      }
    } else if (const auto* b = std::get_if<BeltSet>(&s)) {
      if (!b->geometry) throw std::invalid_argument("belt set without geometry");
      if (b->geometry->d() != dim_) throw DimensionMismatch("belt set built for another dimension");
      if (b->index < 0 || b->index >= b->geometry->set_count()) throw std::invalid_argument("belt set index out of range");
    }
  }
}

bool Cover::is_hemisphere_cover() const {
  for (const auto& s : sets_) {
    if (!std::holds_alternative<Hemisphere>(s)) return false;
  }
  return true;
}

std::vector<Direction> Cover::poles() const {
  std::vector<Direction> out;
  out.reserve(sets_.size());
  for (const auto& s : sets_) {
    const auto* h = std::get_if<Hemisphere>(&s);
    if (!h) throw RegimeMismatch("exact analysis needs a hemisphere cover; this cover has predicate sets");
    out.push_back(h->pole);
  }
  return out;
}

int Cover::multiplicity_at(const Direction& x) const {
  if (x.ambient_dim() != static_cast<std::size_t>(dim_ + 1)) throw DimensionMismatch("point has wrong dimension");
  int count = 0;
  for (const auto& s : sets_) {
    const auto* h = std::get_if<Hemisphere>(&s);
    if (!h) throw RegimeMismatch("exact points need a hemisphere cover; evaluate predicate covers on ApproxPoint");
    count += h->contains(x) ? 1 : 0;
  }
  return count;
}

PointEvaluation Cover::evaluate(const ApproxPoint& x, double tau) const {
  if (x.ambient_dim() != static_cast<std::size_t>(dim_ + 1)) throw DimensionMismatch("point has wrong dimension");
  const Eigen::VectorXd& v = x.coords();
  const double h = v[dim_];
  PointEvaluation out;
  out.members.resize(sets_.size(), Tri::False);

  // Belt sets share one evaluation per geometry.
  const BeltGeometry* cached_geometry = nullptr;
  std::vector<Tri> cached;

  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const auto& s = sets_[i];
    Tri t = Tri::False;
    if (std::holds_alternative<Hemisphere>(s)) {
      const double dot = unit_poles_[i].dot(v);
      t = tri_less(0.0, dot, tau);
    } else if (const auto* a = std::get_if<ArcSet>(&s)) {
      constexpr double kDeg = std::numbers::pi / 180.0;
      const double theta = std::atan2(v[1], v[0]);
      double diff = std::remainder(theta - a->center_deg * kDeg, 2.0 * std::numbers::pi);
      t = tri_less(std::abs(diff), a->half_width_deg * kDeg, tau);
    } else if (std::holds_alternative<NorthernHemisphereSet>(s)) {
      t = tri_of(h > 0);
    } else {
      const auto& b = std::get<BeltSet>(s);
      if (b.geometry.get() != cached_geometry) {
        cached_geometry = b.geometry.get();
        cached = cached_geometry->memberships(v);
      }
      t = cached[static_cast<std::size_t>(b.index)];
    }
    out.members[i] = t;
    if (t == Tri::True) ++out.count;
    else if (t == Tri::Ambiguous) ++out.ambiguous;
  }
  return out;
}

Cover Cover::with_claims(Claims claims) const { return Cover(dim_, sets_, claims, provenance_); }

Cover restrict_to_equator(const Cover& cover) {
  // The restricted cover must itself have dim >= 1.
  if (cover.dim() < 2) throw std::invalid_argument("restrict_to_equator needs dim >= 2");
  const auto poles = cover.poles();  // rejects predicate covers
  const auto d = static_cast<std::size_t>(cover.dim());
  std::vector<CoverSet> sets;
  nlohmann::json kept = nlohmann::json::array();
  for (std::size_t i = 0; i < poles.size(); ++i) {
    std::vector<Rat> head(poles[i].coords().begin(), poles[i].coords().begin() + static_cast<std::ptrdiff_t>(d));
    bool zero = true;
    for (const auto& c : head) zero = zero && c == 0;
    if (zero) continue;
    sets.push_back(Hemisphere{Direction(std::move(head))});
    kept.push_back(i);
  }
  if (sets.empty()) throw std::invalid_argument("no hemisphere of the cover meets the equator");
  const auto& c = cover.claims();
  Claims eq;
  eq.n = (c.m && c.north_closed) ? *c.m : c.n;
  nlohmann::json prov = {{"construction", "restrict_to_equator"}, {"source", cover.provenance()}, {"kept_sets", kept}};
  return Cover(cover.dim() - 1, std::move(sets), eq, std::move(prov));
}

Cover add_hemispheres(const Cover& cover, int count, const Direction& pole, Claims new_claims) {
  if (count < 0) throw std::invalid_argument("add_hemispheres: count must be >= 0");
  std::vector<CoverSet> sets = cover.sets();
  for (int k = 0; k < count; ++k) sets.push_back(Hemisphere{pole});
  nlohmann::json prov = cover.provenance();
  if (count > 0) {
    if (!prov.is_object()) prov = nlohmann::json::object();
    prov["added_hemispheres"].push_back({{"count", count}, {"pole", [&] {
                                           nlohmann::json a = nlohmann::json::array();
                                           for (const auto& c : pole.coords()) a.push_back(to_string(c));
                                           return a;
                                         }()}});
  }
  return Cover(cover.dim(), std::move(sets), new_claims, std::move(prov));
}

}  // namespace sphcover
