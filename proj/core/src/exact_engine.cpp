#include "sphcover/exact_engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sphcover/lp.hpp"

namespace sphcover {

int SignVector::positives() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), 1));
}

std::string SignVector::str() const {
  std::string s;
  for (int v : signs) s.push_back(v > 0 ? '+' : (v < 0 ? '-' : '0'));
  return s;
}

SignVector SignVector::parse(std::string_view text) {
  SignVector out;
  for (char c : text) {
    if (c == '+') out.signs.push_back(1);
    else if (c == '-') out.signs.push_back(-1);
    else if (c == '0') out.signs.push_back(0);
    else throw std::invalid_argument("sign vector characters must be '+', '-' or '0'");
  }
  return out;
}

namespace {

bool region_is_strict(Region r) { return r == Region::OpenNorth || r == Region::OpenSouth; }

Rat margin_of(std::span<const Direction> poles, std::span<const int> signs, Region region, const Direction& x) {
  Rat top = 0;
  for (const auto& c : x.coords()) top = std::max(top, Rat(abs(c)));
  bool any = false;
  Rat lo;
  auto take = [&](const Rat& v) {
    if (!any || v < lo) lo = v;
    any = true;
  };
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 0) take(signs[i] * dot_exact(poles[i], x));
  }
  if (region == Region::OpenNorth) take(x.last());
  if (region == Region::OpenSouth) take(-x.last());
  return any ? Rat(lo / top) : Rat(0);
}

}  // namespace

bool realizes(std::span<const Direction> poles, std::span<const int> signs, Region region, const Direction& x) {
  if (signs.size() > poles.size()) return false;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (sign(dot_exact(poles[i], x)) != signs[i]) return false;
  }
  return in_region(region, x);
}

std::optional<LpWitness> feasible(std::span<const Direction> poles, std::span<const int> signs, Region region,
                                  std::size_t* lp_calls) {
  if (poles.empty()) throw std::invalid_argument("feasible: need at least one pole to fix the dimension");
  if (signs.size() > poles.size()) throw std::invalid_argument("feasible: more signs than poles");
  const std::size_t dim = poles.front().ambient_dim();
  for (const auto& p : poles) {
    if (p.ambient_dim() != dim) throw DimensionMismatch("feasible: poles of different dimensions");
  }
  for (int s : signs) {
    if (s < -1 || s > 1) throw std::invalid_argument("feasible: signs must be -1, 0 or +1");
  }

  bool any_strict = region_is_strict(region);
  for (int s : signs) any_strict = any_strict || s != 0;

  std::vector<Rat> last_axis(dim, Rat(0));
  last_axis.back() = 1;

  if (!any_strict) {
    // Homogeneous equalities only: a nonzero null vector decides it. For the
    // closed northern region, x or -x has x_{d+1} >= 0.
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < signs.size(); ++i) rows.emplace_back(poles[i].coords().begin(), poles[i].coords().end());
    if (region == Region::Equator) rows.push_back(last_axis);
    auto nv = exact_null_vector(std::move(rows), dim);
    if (nv.empty()) return std::nullopt;
    if (region == Region::ClosedNorth && nv.back() < 0) {
      for (auto& v : nv) v = -v;
    }
    return LpWitness{Direction(std::move(nv)), Rat(0)};
  }

  // Strict rows are scaled to >= 1; by homogeneity this loses nothing.
  LinearProgram lp(dim);
  lp.set_all_free();
  for (std::size_t i = 0; i < signs.size(); ++i) {
    std::vector<Rat> row(poles[i].coords().begin(), poles[i].coords().end());
    if (signs[i] == 0) {
      lp.add_constraint({std::move(row), Relation::Equal, Rat(0)});
    } else {
      if (signs[i] < 0) {
        for (auto& v : row) v = -v;
      }
      lp.add_constraint({std::move(row), Relation::GreaterEqual, Rat(1)});
    }
  }
  switch (region) {
    case Region::Sphere: break;
    case Region::OpenNorth: lp.add_constraint({last_axis, Relation::GreaterEqual, Rat(1)}); break;
    case Region::OpenSouth: lp.add_constraint({last_axis, Relation::LessEqual, Rat(-1)}); break;
    case Region::ClosedNorth: lp.add_constraint({last_axis, Relation::GreaterEqual, Rat(0)}); break;
    case Region::Equator: lp.add_constraint({last_axis, Relation::Equal, Rat(0)}); break;
  }
  if (lp_calls) ++*lp_calls;
  auto sol = lp.solve();
  if (sol.status == LpStatus::Infeasible) return std::nullopt;
  Direction x(std::move(sol.x));
  Rat margin = margin_of(poles, signs, region, x);
  return LpWitness{std::move(x), std::move(margin)};
}

std::optional<LpWitness> feasible(const SignVector& signs, Region region, std::span<const Direction> poles) {
  if (signs.size() != poles.size()) throw DimensionMismatch("feasible: sign vector length differs from pole count");
  return feasible(poles, signs.signs, region);
}

namespace {

// Nonzero x with <q_i, x> > 0 where signs[i] = +1 and <= 0 where signs[i] = -1,
// inside the region. Without a strict row the origin would qualify, so one
// coordinate at a time is pinned away from zero.
std::optional<Direction> feasible_nonpositive(std::span<const Direction> poles, std::span<const int> signs, Region region,
                                              std::size_t* lp_calls) {
  const std::size_t dim = poles.front().ambient_dim();
  std::vector<Rat> last_axis(dim, Rat(0));
  last_axis.back() = 1;
  auto base = [&] {
    LinearProgram lp(dim);
    lp.set_all_free();
    for (std::size_t i = 0; i < signs.size(); ++i) {
      std::vector<Rat> row(poles[i].coords().begin(), poles[i].coords().end());
      if (signs[i] > 0) lp.add_constraint({std::move(row), Relation::GreaterEqual, Rat(1)});
      else lp.add_constraint({std::move(row), Relation::LessEqual, Rat(0)});
    }
    switch (region) {
      case Region::Sphere: break;
      case Region::OpenNorth: lp.add_constraint({last_axis, Relation::GreaterEqual, Rat(1)}); break;
      case Region::OpenSouth: lp.add_constraint({last_axis, Relation::LessEqual, Rat(-1)}); break;
      case Region::ClosedNorth: lp.add_constraint({last_axis, Relation::GreaterEqual, Rat(0)}); break;
      case Region::Equator: lp.add_constraint({last_axis, Relation::Equal, Rat(0)}); break;
    }
    return lp;
  };
  auto solve = [&](LinearProgram& lp) -> std::optional<Direction> {
    if (lp_calls) ++*lp_calls;
    auto sol = lp.solve();
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    return Direction(std::move(sol.x));
  };
  const bool strict = region_is_strict(region) || std::any_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
  if (strict) {
    auto lp = base();
    return solve(lp);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    for (int side : {1, -1}) {
      std::vector<Rat> e(dim, Rat(0));
      e[j] = side;
      auto lp = base();
      lp.add_constraint({std::move(e), Relation::GreaterEqual, Rat(1)});
      if (auto x = solve(lp)) return x;
    }
  }
  return std::nullopt;
}

Direction random_region_point(std::mt19937_64& rng, std::size_t dim, Region region) {
  std::uniform_int_distribution<long> coord(-9, 9);
  for (;;) {
    std::vector<Rat> c(dim);
    for (auto& v : c) v = coord(rng);
    Rat& last = c.back();
    switch (region) {
      case Region::Sphere: break;
      case Region::OpenNorth: last = abs(last) + 1; break;
      case Region::OpenSouth: last = -(abs(last) + 1); break;
      case Region::ClosedNorth: last = abs(last); break;
      case Region::Equator: last = 0; break;
    }
    if (std::any_of(c.begin(), c.end(), [](const Rat& v) { return v != 0; })) return Direction(std::move(c));
  }
}

class ExtremaSearch {
 public:
  ExtremaSearch(std::span<const Direction> poles, Region region, const ExtremaOptions& options)
      : poles_(poles), region_(region), options_(options), signs_(poles.size(), 0) {}

  void seed_incumbents(MultiplicityReport& report) {
    const std::size_t dim = poles_.front().ambient_dim();
    std::mt19937_64 rng(options_.seed);
    std::vector<Direction> candidates;
    for (const auto& p : poles_) {
      candidates.push_back(p);
      candidates.push_back(-p);
    }
    for (int s = 0; s < options_.seed_samples; ++s) candidates.push_back(random_region_point(rng, dim, region_));
    bool have = false;
    for (const auto& x : candidates) {
      if (!in_region(region_, x)) continue;
      const int c = count(x);
      if (!have || c < report.min_mult) {
        report.min_mult = c;
        report.min_witness = x;
      }
      if (!have || c > report.max_mult) {
        report.max_mult = c;
        report.max_witness = x;
      }
      have = true;
    }
    if (!have) {
      // Every region contains a basis direction or its negative.
      const auto x = random_region_point(rng, dim, region_);
      report.min_mult = report.max_mult = count(x);
      report.min_witness = report.max_witness = x;
    }
  }

  void run_min(MultiplicityReport& report, const Direction& root) {
    report_ = &report;
    descend_min(0, 0, root);
  }

  void run_max(MultiplicityReport& report, const Direction& root) {
    report_ = &report;
    descend_max(0, 0, root);
  }

 private:
  int count(const Direction& x) const {
    int c = 0;
    for (const auto& p : poles_) c += sign(dot_exact(p, x)) > 0 ? 1 : 0;
    return c;
  }

  // Witness for the prefix signs_[0..k) plus `s` at position k, reusing the
  // parent's witness when it already has that sign.
  std::optional<Direction> child_witness(std::size_t k, int s, const Direction& parent) {
    signs_[k] = s;
    if (sign(dot_exact(poles_[k], parent)) == s) return parent;
    std::size_t calls = 0;
    auto w = feasible(poles_, std::span<const int>(signs_.data(), k + 1), region_, &calls);
    report_->lp_calls += calls;
    if (!w) return std::nullopt;
    return std::move(w->x);
  }

  // Min search branches on "+" versus "<= 0": the count of a point only
  // depends on which rows are strictly positive, so this reaches every
  // positive set that any face (zeros included) realizes.
  void descend_min(std::size_t k, int positives, const Direction& witness) {
    ++report_->cells_explored;
    if (k == poles_.size()) {
      if (positives < report_->min_mult) {
        report_->min_mult = positives;
        report_->min_witness = witness;
      }
      return;
    }
    for (int s : {-1, 1}) {
      const int next = positives + (s > 0 ? 1 : 0);
      if (options_.bound_pruning && next >= report_->min_mult) continue;
      if (auto w = relaxed_witness(k, s, witness)) descend_min(k + 1, next, *w);
    }
    signs_[k] = 0;
  }

  std::optional<Direction> relaxed_witness(std::size_t k, int s, const Direction& parent) {
    signs_[k] = s;
    const int here = sign(dot_exact(poles_[k], parent));
    if (s > 0 ? here > 0 : here <= 0) return parent;
    std::size_t calls = 0;
    auto w = feasible_nonpositive(poles_, std::span<const int>(signs_.data(), k + 1), region_, &calls);
    report_->lp_calls += calls;
    return w;
  }

  void descend_max(std::size_t k, int positives, const Direction& witness) {
    ++report_->cells_explored;
    if (k == poles_.size()) {
      if (positives > report_->max_mult) {
        report_->max_mult = positives;
        report_->max_witness = witness;
      }
      return;
    }
    const int remaining = static_cast<int>(poles_.size() - k - 1);
    // Zero signs never raise the maximum: nudging a face point into an
    // adjacent open cell keeps every strict sign.
    for (int s : {1, -1}) {
      const int next = positives + (s > 0 ? 1 : 0);
      if (options_.bound_pruning && next + remaining <= report_->max_mult) continue;
      if (auto w = child_witness(k, s, witness)) descend_max(k + 1, next, *w);
    }
    signs_[k] = 0;
  }

  std::span<const Direction> poles_;
  Region region_;
  ExtremaOptions options_;
  std::vector<int> signs_;
  MultiplicityReport* report_ = nullptr;
};

}  // namespace

MultiplicityReport multiplicity_extrema(std::span<const Direction> poles, Region region, const ExtremaOptions& options) {
  if (poles.empty()) throw std::invalid_argument("multiplicity_extrema: empty cover");
  if (poles.size() > options.cap) {
    throw CapExceeded("multiplicity_extrema: " + std::to_string(poles.size()) + " sets exceed the exact cap of " +
                      std::to_string(options.cap) + "; use the sampling engine");
  }
  if (region == Region::Equator && poles.front().ambient_dim() < 2) {
    throw std::invalid_argument("multiplicity_extrema: the equator of S^0 is empty");
  }
  MultiplicityReport report;
  report.region = region;
  ExtremaSearch search(poles, region, options);
  search.seed_incumbents(report);

  std::size_t calls = 0;
  auto root = feasible(poles, std::span<const int>(), region, &calls);
  report.lp_calls += calls;
  if (!root) throw std::logic_error("multiplicity_extrema: region has no points");
  search.run_min(report, root->x);
  search.run_max(report, root->x);
  return report;
}

MultiplicityReport multiplicity_extrema(const Cover& cover, Region region, const ExtremaOptions& options) {
  const auto poles = cover.poles();
  return multiplicity_extrema(std::span<const Direction>(poles), region, options);
}

bool ClaimsReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const ClaimVerdict& v) { return v.pass; });
}

ClaimsReport verify_claims(const Cover& cover, const Claims& claims, const ExtremaOptions& options) {
  ClaimsReport out;
  const auto poles = cover.poles();

  ClaimVerdict antipodal;
  antipodal.name = "antipodal-free";
  antipodal.pass = true;
  antipodal.reason = "structural: an open hemisphere never contains both x and -x";
  out.verdicts.push_back(antipodal);

  auto sphere = multiplicity_extrema(std::span<const Direction>(poles), Region::Sphere, options);
  ClaimVerdict fold;
  fold.name = "sphere-fold";
  fold.region = Region::Sphere;
  fold.required = claims.n;
  fold.observed = sphere.min_mult;
  fold.pass = sphere.min_mult >= claims.n;
  fold.reason = "exact minimum over the sphere";
  fold.witness = sphere.min_witness;
  out.verdicts.push_back(fold);
  out.reports.push_back(std::move(sphere));

  if (claims.m) {
    const Region r = claims.north_closed ? Region::ClosedNorth : Region::OpenNorth;
    auto north = multiplicity_extrema(std::span<const Direction>(poles), r, options);
    ClaimVerdict nv;
    nv.name = claims.north_closed ? "closed-north-fold" : "open-north-fold";
    nv.region = r;
    nv.required = *claims.m;
    nv.observed = north.min_mult;
    nv.pass = north.min_mult >= *claims.m;
    nv.reason = "exact minimum over " + std::string(to_string(r));
    nv.witness = north.min_witness;
    out.verdicts.push_back(nv);
    out.reports.push_back(std::move(north));
  }
  return out;
}

nlohmann::json direction_json(const Direction& x) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : x.coords()) a.push_back(to_string(c));
  return a;
}

nlohmann::json to_json(const MultiplicityReport& r) {
  return {{"region", to_string(r.region)},
          {"min", r.min_mult},
          {"max", r.max_mult},
          {"min_witness", direction_json(r.min_witness)},
          {"max_witness", direction_json(r.max_witness)},
          {"cells_explored", r.cells_explored},
          {"lp_calls", r.lp_calls},
          {"exact", true}};
}

nlohmann::json to_json(const ClaimsReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::json j = {{"claim", v.name},
                        {"region", to_string(v.region)},
                        {"required", v.required},
                        {"observed", v.observed},
                        {"verdict", v.pass ? "PASS" : "FAIL"},
                        {"reason", v.reason}};
    if (v.witness) j["witness"] = direction_json(*v.witness);
    verdicts.push_back(std::move(j));
  }
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : report.reports) reports.push_back(to_json(r));
  return {{"exact", true}, {"all_pass", report.all_pass()}, {"verdicts", verdicts}, {"reports", reports}};
}

}  // namespace sphcover
