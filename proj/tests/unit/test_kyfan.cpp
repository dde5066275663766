#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "sphcover/constructions.hpp"
#include "sphcover/kyfan.hpp"

using namespace sphcover;

namespace {

Cover three_hemispheres() {
  return Cover(1,
               {Hemisphere{testing::angle_direction(90)}, Hemisphere{testing::angle_direction(210)},
                Hemisphere{testing::angle_direction(330)}},
               Claims{});
}

}  // namespace

TEST_CASE("alternating chain of three half-circles") {
  const Cover c = three_hemispheres();
  const auto oc = OrderedCover::construction_order(c);
  const auto lifted = lift_cover(oc, 1);
  REQUIRE(lifted.size() == 3);
  const auto cert = find_chain(lifted, 1);
  CHECK(cert.chain == std::vector<int>{0, 1, 2});
  // H(90) and -H(210) and H(330) meet in the open arc (0, 60) degrees.
  const double deg = std::atan2(cert.witness[1].get_d(), cert.witness[0].get_d()) * 180 / std::numbers::pi;
  CHECK(deg > 0);
  CHECK(deg < 60);
  CHECK(verify_certificate(c, lifted, cert));
}

TEST_CASE("pair lift of a planar Gale cover") {
  const Cover c = gale_cover(1, 2);
  const auto lifted = lift_cover(OrderedCover::construction_order(c), 2);
  // Two open half-planes meet unless their poles are opposite.
  const auto poles = c.poles();
  std::size_t expected = 0;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j) expected += !poles[i].sphere_equal(-poles[j]);
  CHECK(lifted.size() == expected);
  CHECK(lifted.size() == 10);
  for (const auto& s : lifted) {
    CHECK(s.tuple.size() == 2);
    CHECK(s.tuple[0] < s.tuple[1]);
    for (int i : s.tuple) CHECK(sign(dot_exact(poles[static_cast<std::size_t>(i)], s.witness)) > 0);
  }
}

TEST_CASE("opposite hemispheres never share a lifted set") {
  const Cover c(1, {Hemisphere{Direction{1, 0}}, Hemisphere{Direction{-1, 0}}, Hemisphere{Direction{0, 1}}}, Claims{});
  const auto lifted = lift_cover(OrderedCover::construction_order(c), 2);
  for (const auto& s : lifted) CHECK_FALSE((s.tuple[0] == 0 && s.tuple[1] == 1));
  CHECK(lifted.size() == 2);
}

TEST_CASE("preconditions") {
  const Cover long_arc(1, {ArcSet{0, 91}, ArcSet{180, 60}, ArcSet{120, 60}, ArcSet{240, 60}}, Claims{});
  CHECK_THROWS_AS(convex_form(long_arc), PreconditionViolation);
  CHECK_THROWS_AS(deep_point(long_arc, 1), PreconditionViolation);
  // Not a cover: the southern half is empty.
  const Cover gap(1, {Hemisphere{Direction{0, 1}}, Hemisphere{Direction{1, 1}}}, Claims{});
  CHECK_THROWS_AS(deep_point(gap, 1), PreconditionViolation);
  // Claiming 2-fold for a 1-fold cover.
  CHECK_THROWS_AS(deep_point(gale_cover(2, 1), 2), PreconditionViolation);
  OrderedCover bad{nullptr, {}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("deep points of Gale covers") {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 2; ++n) {
      const Cover c = gale_cover(d, n);
      const auto cert = deep_point(c, n);
      CHECK(cert.count >= (d + 1) / 2 + n);
      CHECK(cert.count <= d + n);
      CHECK(static_cast<int>(cert.deep_sets.size()) == cert.count);
      CHECK(c.multiplicity_at(cert.deep_x) >= cert.count);
      for (int i : cert.deep_sets) CHECK(std::get<Hemisphere>(c.sets()[static_cast<std::size_t>(i)]).contains(cert.deep_x));
      CHECK(cert.chain.size() == static_cast<std::size_t>(d + 2));
      const auto j = to_json(cert);
      CHECK(j["count"] == cert.count);
    }
  }
}

TEST_CASE("circle cover with arcs") {
  const auto cert = deep_point(circle_cover(1), 1);
  CHECK(cert.count == 2);
}
