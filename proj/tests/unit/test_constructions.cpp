#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sphcover/bounds.hpp"
#include "sphcover/constructions.hpp"
#include "sphcover/exact_engine.hpp"

using namespace sphcover;
constexpr double kPi = std::numbers::pi;

TEST_CASE("Gale points on the moment curve with alternating signs") {
  const auto g = gale_points(1, 1, std::vector<Rat>{1, 2, 3});
  REQUIRE(g.points.size() == 3);
  CHECK(g.points[0] == Direction{-1, -1});
  CHECK(g.points[1] == Direction{1, 2});
  CHECK(g.points[2] == Direction{-1, -3});

  const auto h = gale_points(2, 1);
  CHECK(h.points.size() == 4);
  CHECK(h.points[3] == Direction{1, 4, 16});
  CHECK_THROWS(gale_points(1, 1, std::vector<Rat>{1, 2}));
  CHECK_THROWS(gale_points(1, 1, std::vector<Rat>{1, 3, 2}));
  CHECK_THROWS(gale_points(0, 1));
}

TEST_CASE("construction sizes and claims") {
  CHECK(gale_cover(3, 2).size() == 7);
  const Cover bar = bar_cover(2, 1, 2);
  CHECK(bar.size() == 2 + 2 * 2 - 1);
  CHECK(bar.claims() == Claims{1, 2, true});
  const Cover nm = nm_cover_upper(2, 1, 3);
  CHECK(nm.size() == 2 + 1 + 3);
  CHECK(nm.claims() == Claims{1, 3, false});
  CHECK(circle_cover(1).size() == 3);
  CHECK(circle_cover(4).size() == 6);
  CHECK_THROWS(bar_cover(2, 2, 2));
  CHECK_THROWS(nm_cover_upper(2, 2, 1));
}

TEST_CASE("bar cover: the removed hemisphere points due south") {
  // The closed northern hemisphere gets multiplicity m from the remaining sets.
  const Cover bar = bar_cover(1, 1, 2);
  CHECK(bar.multiplicity_at(Direction{0, 1}) >= 2);
  CHECK(bar.multiplicity_at(Direction{1, 0}) >= 2);
  CHECK(bar.multiplicity_at(Direction{-1, 0}) >= 2);
}

TEST_CASE("simplex frame: unit vertices with pairwise dot -1/d") {
  for (int d = 1; d <= 6; ++d) {
    const auto f = simplex_frame(d);
    REQUIRE(f.vertices.size() == static_cast<std::size_t>(d + 1));
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < f.vertices.size(); ++i) {
      sum += f.vertices[i];
      CHECK(f.vertices[i].norm() == doctest::Approx(1.0));
      for (std::size_t j = i + 1; j < f.vertices.size(); ++j) {
        CHECK(f.vertices[i].dot(f.vertices[j]) == doctest::Approx(-1.0 / d));
      }
    }
    CHECK(sum.norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("facet multiplicity") {
  const auto f = simplex_frame(2);
  const auto one = facet_multiplicity(f, (f.vertices[0] + f.vertices[1]).normalized(), 1e-9);
  CHECK(one.count == 1);
  CHECK(one.argmin == std::vector<int>{2});
  const auto two = facet_multiplicity(f, f.vertices[2], 1e-9);
  CHECK(two.count == 2);
  CHECK(two.argmin == std::vector<int>{0, 1});
  CHECK_THROWS_AS(facet_multiplicity(f, Eigen::Vector3d(1, 0, 0), 1e-9), DimensionMismatch);
}

TEST_CASE("belt cover poles") {
  for (int d = 2; d <= 4; ++d) {
    const auto ap = belt_auto_params(d, 4000);
    const Cover c = belt_cover(d, ap.params);
    CHECK(c.size() == static_cast<std::size_t>(d + 2));
    CHECK(c.claims() == Claims{1, d / 2 + 1, false});
    Eigen::VectorXd north = Eigen::VectorXd::Zero(d + 1);
    north[d] = 1;
    CHECK(c.evaluate(ApproxPoint(north)).count == d + 1);
    CHECK(c.evaluate(ApproxPoint(-north)).count == 1);
  }
  CHECK_THROWS(belt_cover(1, BeltParams{0.1, 0.2}));
  CHECK_THROWS(belt_cover(2, BeltParams{0.2, 0.1}));
  CHECK_THROWS(belt_cover(2, BeltParams{0.1, 0.2, 0.5, 0.4}));
}

TEST_CASE("belt auto parameters in the plane") {
  // Triangle vertices sit 120 degrees apart, so a vertex is 60 degrees from
  // the antipode of its neighbour.
  const auto ap = belt_auto_params(2);
  CHECK(ap.gap == doctest::Approx(kPi / 3).epsilon(1e-6));
  CHECK(ap.params.eps2 == doctest::Approx(kPi / 12).epsilon(1e-6));
  CHECK(ap.params.eps1 < ap.params.eps2);
  CHECK(ap.checks.ok());
  CHECK(belt_height(0.5) == doctest::Approx(0.5 / std::sqrt(1.25)));
}

TEST_CASE("bounds table") {
  const auto a = bounds_table(2, 1, 5);
  REQUIRE(a.f_exact);
  CHECK(*a.f_exact == 7);
  const auto b = bounds_table(3, 2, 4);
  CHECK(b.fbar_exact == 10);
  CHECK(b.f_lower == 7);
  CHECK(b.f_upper == 9);
  CHECK_FALSE(b.f_exact);
  const auto q = bounds_table(4, 1, std::nullopt);
  REQUIRE(q.Q_exact);
  CHECK(*q.Q_exact == 4);
  CHECK(bounds_table(2, 1, 2).f_exact == 4);
  CHECK(bounds_table(1, 1, 4).f_exact == 6);
  CHECK_THROWS(bounds_table(2, 2, 2));
  CHECK_THROWS(bounds_table(0, 1, std::nullopt));
}
