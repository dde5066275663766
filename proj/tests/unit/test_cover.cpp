#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sphcover/constructions.hpp"
#include "sphcover/cover.hpp"

using namespace sphcover;

namespace {

Cover hemis(int dim, std::vector<Direction> poles, Claims claims = {}) {
  std::vector<CoverSet> sets;
  for (auto& p : poles) sets.push_back(Hemisphere{std::move(p)});
  return Cover(dim, std::move(sets), claims);
}

}  // namespace

TEST_CASE("multiplicity_at counts open hemispheres exactly") {
  const Cover c = hemis(1, {Direction{1, 0}, Direction{0, 1}, Direction{-1, 1}});
  CHECK(c.multiplicity_at(Direction{1, 1}) == 2);
  CHECK(c.multiplicity_at(Direction{1, 0}) == 1);   // on the boundary of the third
  CHECK(c.multiplicity_at(Direction{-1, 2}) == 2);
  CHECK(c.multiplicity_at(Direction{0, -1}) == 0);
  CHECK(c.multiplicity_at(Direction{3, 3}) == c.multiplicity_at(Direction{1, 1}));
  CHECK_THROWS_AS(c.multiplicity_at(Direction{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("binary64 evaluation agrees with exact counts away from boundaries") {
  std::mt19937_64 rng(5);
  const Cover c = gale_cover(2, 2);
  for (int k = 0; k < 300; ++k) {
    const auto x = testing::random_direction(rng, 3, 50);
    const auto e = c.evaluate(ApproxPoint::normalized(x.to_unit_vector()));
    if (e.ambiguous == 0) CHECK(e.count == c.multiplicity_at(x));
  }
}

TEST_CASE("regions compare the last coordinate exactly") {
  CHECK(in_region(Region::OpenNorth, Direction{0, 1}));
  CHECK_FALSE(in_region(Region::OpenNorth, Direction{1, 0}));
  CHECK(in_region(Region::ClosedNorth, Direction{1, 0}));
  CHECK(in_region(Region::Equator, Direction{1, 0}));
  CHECK(in_region(Region::OpenSouth, Direction{1, -1}));
  CHECK(parse_region("CLOSED_NORTH") == Region::ClosedNorth);
  CHECK_THROWS(parse_region("north"));
}

TEST_CASE("restrict_to_equator drops the last coordinate and vertical poles") {
  const Cover c = hemis(2, {Direction{1, 0, 5}, Direction{0, 0, 1}, Direction{-1, 2, -3}}, Claims{1, 2, true});
  const Cover r = restrict_to_equator(c);
  CHECK(r.dim() == 1);
  REQUIRE(r.size() == 2);
  CHECK(r.poles()[0] == Direction{1, 0});
  CHECK(r.poles()[1] == Direction{-1, 2});
  // A closed northern m-fold claim passes m to the equator.
  CHECK(r.claims().n == 2);
  CHECK_THROWS(restrict_to_equator(hemis(1, {Direction{1, 0}})));
}

TEST_CASE("restriction commutes with multiplicity on equator points") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Direction> poles;
    for (int i = 0; i < 6; ++i) poles.push_back(testing::random_direction(rng, 4, 6));
    const Cover c = hemis(3, poles);
    Cover r = c;
    try {
      r = restrict_to_equator(c);
    } catch (const std::invalid_argument&) {
      continue;
    }
    for (int k = 0; k < 50; ++k) {
      const auto y = testing::random_direction(rng, 3);
      std::vector<Rat> lifted(y.coords().begin(), y.coords().end());
      lifted.emplace_back(0);
      CHECK(c.multiplicity_at(Direction(lifted)) == r.multiplicity_at(y));
    }
  }
}

TEST_CASE("add_hemispheres appends copies") {
  const Cover g = gale_cover(1, 1);
  const Cover five = add_hemispheres(g, 2, Direction{0, 1}, Claims{1, 3, false});
  CHECK(five.size() == 5);
  const Cover nine = add_hemispheres(gale_cover(2, 2), 3, Direction{0, 0, 1}, Claims{2, 5, false});
  CHECK(nine.size() == 9);
  CHECK(nine.multiplicity_at(Direction{0, 0, 1}) == gale_cover(2, 2).multiplicity_at(Direction{0, 0, 1}) + 3);
  CHECK_THROWS(add_hemispheres(g, -1, Direction{0, 1}, Claims{}));
}

TEST_CASE("cover invariants") {
  CHECK_THROWS(hemis(1, {}));
  CHECK_THROWS_AS(hemis(1, {Direction{1, 0, 0}}), DimensionMismatch);
  CHECK_THROWS(hemis(1, {Direction{1, 0}}, Claims{2, 2, false}));
  CHECK_THROWS(hemis(1, {Direction{1, 0}}, Claims{2, 1, false}));
  CHECK_THROWS(Cover(2, {ArcSet{0, 30}}, Claims{}));
  CHECK_THROWS(Cover(1, {ArcSet{0, 180}}, Claims{}));
  CHECK_THROWS_AS(circle_cover(2).poles(), RegimeMismatch);
  CHECK_THROWS_AS(circle_cover(2).multiplicity_at(Direction{1, 0}), RegimeMismatch);
}

TEST_CASE("JSON round trip") {
  for (const Cover& c : {gale_cover(2, 1), bar_cover(2, 1, 2), nm_cover_upper(1, 1, 3), circle_cover(3)}) {
    const auto doc = to_json(c);
    const Cover back = cover_from_json(doc);
    CHECK(to_json(back) == doc);
    CHECK(back.claims() == c.claims());
  }
  const auto doc = to_json(gale_cover(1, 1));
  CHECK(doc["kind"] == "hemispheres");
  CHECK(doc["sets"][0]["pole"][0] == "-1/1");
}

TEST_CASE("malformed cover documents are rejected") {
  auto doc = to_json(gale_cover(1, 1));
  auto zero = doc;
  zero["sets"][0]["pole"] = {"0/1", "0/1"};
  CHECK_THROWS(cover_from_json(zero));
  auto unreduced = doc;
  unreduced["sets"][0]["pole"][0] = "2/4";
  CHECK_THROWS(cover_from_json(unreduced));
  auto bad_claims = doc;
  bad_claims["claims"]["m"] = 1;
  CHECK_THROWS(cover_from_json(bad_claims));
  auto bad_kind = doc;
  bad_kind["kind"] = "predicate";
  CHECK_THROWS(cover_from_json(bad_kind));
  auto missing = doc;
  missing.erase("dim");
  CHECK_THROWS(cover_from_json(missing));
}
