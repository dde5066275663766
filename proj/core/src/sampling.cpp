#include "sphcover/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sphcover {

Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    const double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

Eigen::VectorXd random_cone_point(std::mt19937_64& rng, const std::vector<Eigen::VectorXd>& vertices) {
  std::exponential_distribution<double> weight(1.0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(vertices.front().size());
  for (const auto& v : vertices) y += weight(rng) * v;
  return y.normalized();
}

Eigen::VectorXd perturb_geodesic(std::mt19937_64& rng, const Eigen::VectorXd& y, double radius) {
  Eigen::VectorXd t = random_unit_vector(rng, static_cast<int>(y.size()));
  t -= t.dot(y) * y;
  const double tn = t.norm();
  if (tn < 1e-12) return y;
  t /= tn;
  std::uniform_real_distribution<double> angle(0.0, radius);
  const double a = angle(rng);
  return (std::cos(a) * y + std::sin(a) * t).normalized();
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void SamplePlan::validate() const {
  if (total < 1) throw std::invalid_argument("sample plan: total must be >= 1");
  if (strata.empty()) throw std::invalid_argument("sample plan: no strata");
  double sum = 0;
  for (const auto& s : strata) {
    if (s.fraction < 0) throw std::invalid_argument("sample plan: negative stratum fraction");
    sum += s.fraction;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("sample plan: stratum fractions must sum to 1");
}

std::size_t SamplePlan::stratum_of(std::uint64_t k) const {
  double acc = 0;
  for (std::size_t s = 0; s + 1 < strata.size(); ++s) {
    acc += strata[s].fraction;
    if (static_cast<double>(k) < std::round(acc * static_cast<double>(total))) return s;
  }
  return strata.size() - 1;
}

namespace {

const BeltGeometry* belt_geometry_of(const Cover& cover) {
  for (const auto& s : cover.sets()) {
    if (const auto* b = std::get_if<BeltSet>(&s)) return b->geometry.get();
  }
  return nullptr;
}

}  // namespace

SamplePlan default_plan(const Cover& cover, std::uint64_t total, std::uint64_t seed) {
  SamplePlan plan;
  plan.seed = seed;
  plan.total = total;
  plan.includes_antipodes = true;
  if (const auto* g = belt_geometry_of(cover)) {
    plan.strata = {Stratum{StratumKind::Uniform, 0, 0.4},
                   Stratum{StratumKind::Belt, 2.0 * belt_height(g->params().delta2p), 0.3},
                   Stratum{StratumKind::Tube, 2.0 * g->params().eps2, 0.2},
                   Stratum{StratumKind::Equator, 0, 0.1}};
  } else {
    plan.strata = {Stratum{StratumKind::Uniform, 0, 0.9}, Stratum{StratumKind::Equator, 0, 0.1}};
  }
  return plan;
}

Eigen::VectorXd sample_point(int d, const SamplePlan& plan, std::uint64_t k, const BeltGeometry* geometry) {
  std::mt19937_64 rng(sample_seed(plan.seed, k));
  const Stratum& s = plan.strata[plan.stratum_of(k)];
  switch (s.kind) {
    case StratumKind::Uniform: return random_unit_vector(rng, d + 1);
    case StratumKind::Belt: {
      std::uniform_real_distribution<double> height(-s.param, s.param);
      const double h = std::clamp(height(rng), -1.0, 1.0);
      Eigen::VectorXd x(d + 1);
      x.head(d) = std::sqrt(1.0 - h * h) * random_unit_vector(rng, d);
      x[d] = h;
      return x.normalized();
    }
    case StratumKind::Tube: {
      if (!geometry) throw std::invalid_argument("tube stratum needs a belt geometry");
      const auto& strata = geometry->strata();
      std::uniform_int_distribution<std::size_t> pick(0, strata.size() - 1);
      std::vector<Eigen::VectorXd> pts;
      for (int j : strata[pick(rng)]) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d + 1);
        v.head(d) = geometry->frame().vertices[static_cast<std::size_t>(j)];
        pts.push_back(std::move(v));
      }
      return perturb_geodesic(rng, random_cone_point(rng, pts), s.param);
    }
    case StratumKind::Equator: {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(d + 1);
      x.head(d) = random_unit_vector(rng, d);
      return x;
    }
  }
  throw std::logic_error("unknown stratum");
}

std::vector<Eigen::VectorXd> sample_sphere(int d, const SamplePlan& plan, std::uint64_t count,
                                           const BeltGeometry* geometry) {
  plan.validate();
  if (count > plan.total) throw std::invalid_argument("sample_sphere: count exceeds plan total");
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(sample_point(d, plan, k, geometry));
  return out;
}

Requirements Requirements::from_claims(const Cover& cover) {
  Requirements r;
  r.sphere_fold = cover.claims().n;
  r.north_fold = cover.claims().m;
  r.north_closed = cover.claims().north_closed;
  if (const auto* g = belt_geometry_of(cover)) r.equator_facet_limit = (g->d() + 1) / 2;
  return r;
}

void RegionStats::add(int count, std::uint64_t index, const Eigen::VectorXd& x) {
  if (samples == 0 || count < min_mult) {
    min_mult = count;
    min_index = index;
    min_point.assign(x.data(), x.data() + x.size());
  }
  if (samples == 0 || count > max_mult) {
    max_mult = count;
    max_index = index;
    max_point.assign(x.data(), x.data() + x.size());
  }
  ++samples;
}

void RegionStats::merge(const RegionStats& o) {
  if (o.samples == 0) return;
  if (samples == 0) {
    *this = o;
    return;
  }
  if (o.min_mult < min_mult || (o.min_mult == min_mult && o.min_index < min_index)) {
    min_mult = o.min_mult;
    min_index = o.min_index;
    min_point = o.min_point;
  }
  if (o.max_mult > max_mult || (o.max_mult == max_mult && o.max_index < max_index)) {
    max_mult = o.max_mult;
    max_index = o.max_index;
    max_point = o.max_point;
  }
  samples += o.samples;
}

double SamplingReport::ambiguous_fraction() const {
  return total == 0 ? 0.0 : static_cast<double>(boundary_ambiguous) / static_cast<double>(total);
}

namespace {

constexpr std::size_t kKeptViolations = 50;

struct Checker {
  const Cover& cover;
  const SamplePlan& plan;
  const Requirements& req;
  const BeltGeometry* geometry;
  int d;

  // Facet-set count at the equatorial projection of x, or nullopt when x is
  // polar. Second value: whether any membership was undecided.
  std::optional<BeltGeometry::FacetCount> facet_count(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd p = x.head(d);
    const double r = p.norm();
    if (r <= geometry->params().tau) return std::nullopt;
    return geometry->facet_count(geometry->profile(p / r));
  }

  Violation make(const char* kind, std::uint64_t k, bool anti, int set, int observed, const Eigen::VectorXd& x) const {
    Violation v;
    v.kind = kind;
    v.index = k;
    v.antipode = anti;
    v.set_index = set;
    v.observed = observed;
    v.point.assign(x.data(), x.data() + x.size());
    return v;
  }

  // Returns false if the sample was boundary-ambiguous.
  bool run(std::uint64_t k, SamplingReport& rep, std::vector<Violation>& found) const {
    const Eigen::VectorXd x = sample_point(d, plan, k, geometry);
    const ApproxPoint px(x, 1e-9);
    const double tau = geometry ? geometry->params().tau : kDefaultTau;
    const auto ex = cover.evaluate(px, tau);
    std::optional<PointEvaluation> en;
    const Eigen::VectorXd xn = -x;
    if (plan.includes_antipodes) en = cover.evaluate(ApproxPoint(xn, 1e-9), tau);
    if (ex.ambiguous > 0 || (en && en->ambiguous > 0)) return false;

    std::optional<BeltGeometry::FacetCount> fc, fc_anti;
    if (geometry && req.equator_facet_limit) {
      fc = facet_count(x);
      if (fc && fc->ambiguous > 0) return false;
      if (fc) {
        const Eigen::VectorXd p = -x.head(d);
        fc_anti = geometry->facet_count(geometry->profile(p / p.norm()));
        if (fc_anti->ambiguous > 0) return false;
      }
    }

    auto account = [&](const Eigen::VectorXd& pt, const PointEvaluation& e, bool anti) {
      ++rep.evaluated;
      const double h = pt[d];
      rep.sphere.add(e.count, k, pt);
      if (h > 0) rep.open_north.add(e.count, k, pt);
      if (h >= 0) rep.closed_north.add(e.count, k, pt);
      if (h == 0) rep.equator.add(e.count, k, pt);
      if (h < 0) rep.open_south.add(e.count, k, pt);
      if (e.count < req.sphere_fold) found.push_back(make("sphere-fold", k, anti, -1, e.count, pt));
      if (req.north_fold && (h > 0 || (req.north_closed && h == 0)) && e.count < *req.north_fold) {
        found.push_back(make("north-fold", k, anti, -1, e.count, pt));
      }
    };
    account(x, ex, false);
    if (en) account(xn, *en, true);

    if (req.check_antipodal && en) {
      for (std::size_t i = 0; i < ex.members.size(); ++i) {
        if (ex.members[i] == Tri::True && en->members[i] == Tri::True) {
          found.push_back(make("antipodal", k, false, static_cast<int>(i), 2, x));
        }
      }
    }

    if (fc) {
      const int limit = *req.equator_facet_limit;
      rep.equator_facet_max = std::max({rep.equator_facet_max, fc->definite, fc_anti->definite});
      if (fc->definite > limit) found.push_back(make("equator-facets", k, false, -1, fc->definite, x));
      if (fc_anti->definite > limit) found.push_back(make("equator-facets", k, true, -1, fc_anti->definite, xn));
      // Pointwise form of the northern-fold argument: at a northern point only
      // facet sets whose antipodal belt reaches back can drop out.
      auto implication = [&](const Eigen::VectorXd& pt, const PointEvaluation& e, int anti_facets, bool anti) {
        if (!(pt[d] > 0) || anti_facets > limit) return;
        int facet_members = 0;
        for (int i = 0; i <= d; ++i) facet_members += e.members[static_cast<std::size_t>(i)] == Tri::True ? 1 : 0;
        if (facet_members < (d + 1) - limit) found.push_back(make("implication", k, anti, -1, facet_members, pt));
      };
      implication(x, ex, fc_anti->definite, false);
      if (en) implication(xn, *en, fc->definite, true);
    }
    return true;
  }
};

void merge_into(SamplingReport& acc, const SamplingReport& part) {
  acc.evaluated += part.evaluated;
  acc.boundary_ambiguous += part.boundary_ambiguous;
  acc.sphere.merge(part.sphere);
  acc.open_north.merge(part.open_north);
  acc.closed_north.merge(part.closed_north);
  acc.equator.merge(part.equator);
  acc.open_south.merge(part.open_south);
  acc.equator_facet_max = std::max(acc.equator_facet_max, part.equator_facet_max);
  acc.violation_count += part.violation_count;
  acc.violations.insert(acc.violations.end(), part.violations.begin(), part.violations.end());
  std::stable_sort(acc.violations.begin(), acc.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.index < b.index; });
  if (acc.violations.size() > kKeptViolations) acc.violations.resize(kKeptViolations);
}

}  // namespace

SamplingReport verify_sampled(const Cover& cover, const SamplePlan& plan, const Requirements& requirements,
                              unsigned threads) {
  plan.validate();
  const BeltGeometry* geometry = belt_geometry_of(cover);
  for (const auto& s : plan.strata) {
    if (s.kind == StratumKind::Tube && !geometry && s.fraction > 0) {
      throw RegimeMismatch("tube strata need a belt cover");
    }
  }
  const Checker checker{cover, plan, requirements, geometry, cover.dim()};

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, plan.total));
  std::vector<SamplingReport> parts(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t lo = plan.total * t / threads;
    const std::uint64_t hi = plan.total * (t + 1) / threads;
    SamplingReport& rep = parts[t];
    std::vector<Violation> found;
    for (std::uint64_t k = lo; k < hi; ++k) {
      found.clear();
      if (!checker.run(k, rep, found)) {
        ++rep.boundary_ambiguous;
        continue;
      }
      rep.violation_count += found.size();
      for (auto& v : found) {
        if (rep.violations.size() < kKeptViolations) rep.violations.push_back(std::move(v));
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  SamplingReport out;
  out.seed = plan.seed;
  out.total = plan.total;
  out.requirements = requirements;
  for (const auto& p : parts) merge_into(out, p);
  return out;
}

bool violation_reproduces(const Cover& cover, const SamplePlan& plan, const Requirements& requirements,
                          const Violation& v) {
  const BeltGeometry* geometry = belt_geometry_of(cover);
  const Checker checker{cover, plan, requirements, geometry, cover.dim()};
  SamplingReport scratch;
  std::vector<Violation> found;
  if (!checker.run(v.index, scratch, found)) return false;
  return std::any_of(found.begin(), found.end(), [&](const Violation& f) {
    return f.kind == v.kind && f.antipode == v.antipode && f.set_index == v.set_index && f.point == v.point;
  });
}

namespace {

nlohmann::json stats_json(const RegionStats& s) {
  if (s.samples == 0) return {{"samples", 0}};
  return {{"samples", s.samples},
          {"min", s.min_mult},
          {"max", s.max_mult},
          {"min_witness", s.min_point},
          {"max_witness", s.max_point},
          {"min_index", s.min_index},
          {"max_index", s.max_index}};
}

}  // namespace

nlohmann::json to_json(const SamplingReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", v.kind},
                          {"index", v.index},
                          {"antipode", v.antipode},
                          {"set", v.set_index},
                          {"observed", v.observed},
                          {"point", v.point}});
  }
  nlohmann::json req = {{"sphere_fold", r.requirements.sphere_fold},
                        {"north_fold", r.requirements.north_fold ? nlohmann::json(*r.requirements.north_fold) : nlohmann::json(nullptr)},
                        {"north_closed", r.requirements.north_closed},
                        {"equator_facet_limit", r.requirements.equator_facet_limit
                                                    ? nlohmann::json(*r.requirements.equator_facet_limit)
                                                    : nlohmann::json(nullptr)},
                        {"check_antipodal", r.requirements.check_antipodal}};
  return {{"exact", false},
          {"verdict", r.pass() ? "PASS" : "FAIL"},
          {"note", "falsification only: a PASS means no violation among the samples, not a proof"},
          {"seed", r.seed},
          {"M", r.total},
          {"evaluated", r.evaluated},
          {"boundary_ambiguous", r.boundary_ambiguous},
          {"ambiguous_fraction", r.ambiguous_fraction()},
          {"requirements", req},
          {"regions",
           {{"SPHERE", stats_json(r.sphere)},
            {"OPEN_NORTH", stats_json(r.open_north)},
            {"CLOSED_NORTH", stats_json(r.closed_north)},
            {"EQUATOR", stats_json(r.equator)},
            {"OPEN_SOUTH", stats_json(r.open_south)}}},
          {"equator_facet_max", r.equator_facet_max},
          {"violation_count", r.violation_count},
          {"violations", violations}};
}

}  // namespace sphcover
