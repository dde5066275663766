#include <cmath>
#include <memory>

#include "doctest.h"
#include "sphcover/constructions.hpp"
#include "sphcover/sampling.hpp"

using namespace sphcover;

TEST_CASE("sample seeds and points are deterministic") {
  CHECK(sample_seed(1, 0) == sample_seed(1, 0));
  CHECK(sample_seed(1, 0) != sample_seed(1, 1));
  CHECK(sample_seed(1, 5) != sample_seed(2, 5));
  SamplePlan plan;
  plan.seed = 42;
  plan.total = 100;
  const auto a = sample_sphere(3, plan, 100), b = sample_sphere(3, plan, 100);
  CHECK(a == b);
  for (const auto& x : a) CHECK(x.norm() == doctest::Approx(1.0));
  // Sample k does not depend on what was drawn before it.
  CHECK(sample_point(3, plan, 57) == a[57]);
}

TEST_CASE("uniform samples are centred") {
  SamplePlan plan;
  plan.seed = 9;
  plan.total = 40000;
  double sum = 0, sum_sq = 0;
  for (const auto& x : sample_sphere(2, plan, plan.total)) {
    sum += x[2];
    sum_sq += x[2] * x[2];
  }
  CHECK(std::abs(sum / plan.total) < 0.02);
  // Height on S^2 is uniform on [-1, 1], with second moment 1/3.
  CHECK(sum_sq / plan.total == doctest::Approx(1.0 / 3).epsilon(0.03));
}

TEST_CASE("plan strata") {
  SamplePlan plan;
  plan.total = 10;
  plan.strata = {Stratum{StratumKind::Uniform, 0, 0.5}, Stratum{StratumKind::Equator, 0, 0.5}};
  CHECK_NOTHROW(plan.validate());
  CHECK(plan.stratum_of(0) == 0);
  CHECK(plan.stratum_of(9) == 1);
  for (std::uint64_t k = 5; k < 10; ++k) CHECK(sample_point(2, plan, k)[2] == 0.0);
  plan.strata[1].fraction = 0.6;
  CHECK_THROWS(plan.validate());
}

TEST_CASE("belt and tube strata stay in their bands") {
  const auto ap = belt_auto_params(3, 4000);
  const Cover c = belt_cover(3, ap.params);
  const auto plan = default_plan(c, 4000, 3);
  const auto& belt = std::get<BeltSet>(c.sets()[0]);
  const double band = 2 * belt_height(ap.params.delta2p);
  for (std::uint64_t k = 0; k < plan.total; ++k) {
    const auto x = sample_point(3, plan, k, belt.geometry.get());
    CHECK(x.norm() == doctest::Approx(1.0));
    const auto& s = plan.strata[plan.stratum_of(k)];
    if (s.kind == StratumKind::Belt) CHECK(std::abs(x[3]) < band);
    if (s.kind == StratumKind::Equator) CHECK(x[3] == 0.0);
    if (s.kind == StratumKind::Tube) {
      const Eigen::VectorXd u = x.head(3);
      CHECK(belt.geometry->profile(u.normalized()).stratum_dist < 2 * ap.params.eps2 + 1e-9);
    }
  }
}

TEST_CASE("sampled verification is independent of the thread count") {
  const Cover c = belt_cover(2, belt_auto_params(2, 4000).params);
  const auto plan = default_plan(c, 20000, 77);
  const auto req = Requirements::from_claims(c);
  const auto one = verify_sampled(c, plan, req, 1), four = verify_sampled(c, plan, req, 4);
  CHECK(one.pass());
  CHECK(to_json(one) == to_json(four));
  CHECK(one.open_north.min_mult == 2);
  CHECK(one.sphere.min_mult == 1);
  CHECK(one.equator_facet_max <= 1);
  CHECK(one.evaluated == 2 * plan.total);
}

TEST_CASE("a belt cover with eps1 = eps2 breaks the facet limit") {
  const auto good = belt_auto_params(2, 4000).params;
  BeltParams bad = good;
  bad.eps1 = bad.eps2;
  auto g = std::make_shared<const BeltGeometry>(2, bad, BeltGeometry::Unchecked{});
  std::vector<CoverSet> sets;
  for (int i = 0; i < g->set_count(); ++i) sets.push_back(BeltSet{g, i});
  const Cover c(2, sets, Claims{1, 2, false});
  const auto plan = default_plan(c, 20000, 5);
  const auto req = Requirements::from_claims(c);
  const auto rep = verify_sampled(c, plan, req, 2);
  CHECK_FALSE(rep.pass());
  bool facets = false;
  for (const auto& v : rep.violations) facets = facets || v.kind == "equator-facets";
  CHECK(facets);
  REQUIRE_FALSE(rep.violations.empty());
  for (const auto& v : rep.violations) CHECK(violation_reproduces(c, plan, req, v));
  CHECK(to_json(rep)["verdict"] == "FAIL");
}

TEST_CASE("sampled min of a Gale cover") {
  const Cover c = gale_cover(2, 1);
  SamplePlan plan = default_plan(c, 20000, 11);
  auto req = Requirements::from_claims(c);
  const auto rep = verify_sampled(c, plan, req);
  CHECK(rep.pass());
  CHECK(rep.sphere.min_mult == 1);
  CHECK(rep.sphere.max_mult == 3);
  req.sphere_fold = 2;
  const auto fail = verify_sampled(c, plan, req);
  CHECK_FALSE(fail.pass());
  REQUIRE_FALSE(fail.violations.empty());
  CHECK(fail.violations.front().kind == "sphere-fold");
  CHECK(violation_reproduces(c, plan, req, fail.violations.front()));
}
