#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sphcover/geometry.hpp"

using namespace sphcover;
constexpr double kPi = std::numbers::pi;

TEST_CASE("rationals print as p/q and parse only in reduced form") {
  CHECK(to_string(Rat(3)) == "3/1");
  CHECK(to_string(Rat(-3, 2)) == "-3/2");
  CHECK(parse_rat("-3/2") == Rat(-3, 2));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("0/1") == 0);
  CHECK_THROWS_AS(parse_rat("2/4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("0/5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK(rat_from_double(0.375) == Rat(3, 8));
}

TEST_CASE("dot_exact") {
  CHECK(dot_exact(Direction{1, 0}, Direction{0, 1}) == 0);
  CHECK(dot_exact(Direction{1, 2}, Direction{2, -1}) == 0);
  CHECK(dot_exact(Direction{1, 1}, Direction{1, 1}) == 2);
  CHECK_THROWS_AS(dot_exact(Direction{1, 1}, Direction{1, 1, 1}), DimensionMismatch);
}

TEST_CASE("directions are nonzero and compare up to positive scaling") {
  CHECK_THROWS_AS(Direction({0, 0, 0}), std::invalid_argument);
  CHECK(Direction{1, 2}.sphere_equal(Direction{3, 6}));
  CHECK_FALSE(Direction{1, 2}.sphere_equal(Direction{-1, -2}));
  CHECK_FALSE(Direction{1, 2}.sphere_equal(Direction{1, 3}));
  // Non-canonical input is normalized on construction.
  Rat loose(6, 4);
  const Direction d(std::vector<Rat>{loose, Rat(1)});
  CHECK(to_string(d[0]) == "3/2");
}

TEST_CASE("dot_exact sign is invariant under positive scaling") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> s(1, 50);
  for (int k = 0; k < 500; ++k) {
    const auto a = testing::random_direction(rng, 4), b = testing::random_direction(rng, 4);
    const Rat fa(s(rng), s(rng)), fb(s(rng), s(rng));
    CHECK(sign(dot_exact(a.scaled(fa), b.scaled(fb))) == sign(dot_exact(a, b)));
  }
}

TEST_CASE("ApproxPoint validates its norm") {
  CHECK_NOTHROW(ApproxPoint(Eigen::Vector3d(0, 0, 1)));
  CHECK_THROWS(ApproxPoint(Eigen::Vector3d(0, 0, 1.001)));
  const auto p = ApproxPoint::normalized(Eigen::Vector3d(3, 0, 4));
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK((-p)[2] == -p[2]);
}

TEST_CASE("geodesic_distance") {
  const ApproxPoint u(Eigen::Vector3d(1, 0, 0)), v(Eigen::Vector3d(0, 1, 0));
  CHECK(geodesic_distance(u, u) == doctest::Approx(0.0));
  CHECK(geodesic_distance(u, -u) == doctest::Approx(kPi));
  CHECK(geodesic_distance(u, v) == doctest::Approx(kPi / 2));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  auto rnd = [&] { return ApproxPoint::normalized(Eigen::Vector3d(g(rng), g(rng), g(rng))); };
  for (int k = 0; k < 1000; ++k) {
    const auto a = rnd(), b = rnd(), c = rnd();
    CHECK(geodesic_distance(a, b) == geodesic_distance(b, a));
    CHECK(geodesic_distance(a, c) <= geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-9);
  }
}

TEST_CASE("cone_angle examples") {
  const ApproxPoint v(Eigen::Vector3d(0, 0, 1));
  std::vector<ApproxPoint> one{v};
  CHECK(cone_angle(v, one) == doctest::Approx(0.0));
  CHECK(cone_angle(-v, one) == doctest::Approx(kPi));
  CHECK(cone_angle(ApproxPoint(Eigen::Vector3d(1, 0, 0)), one) == doctest::Approx(kPi / 2));
  CHECK_THROWS(cone_angle(v, std::vector<ApproxPoint>{}));
  // Point above the positive quadrant of the xy-plane projects into it.
  std::vector<ApproxPoint> quad{ApproxPoint(Eigen::Vector3d(1, 0, 0)), ApproxPoint(Eigen::Vector3d(0, 1, 0))};
  CHECK(cone_angle(ApproxPoint::normalized(Eigen::Vector3d(1, 1, 1)), quad) ==
        doctest::Approx(std::acos(std::sqrt(2.0 / 3.0))));
}

TEST_CASE("cone_angle against brute-force maximization over nonnegative combinations") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  std::exponential_distribution<double> w(1.0);
  std::uniform_int_distribution<int> dims(2, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = dims(rng);
    std::uniform_int_distribution<int> count(1, std::min(4, dim));
    const int k = count(rng);
    std::vector<ApproxPoint> gens;
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v(dim);
      for (int j = 0; j < dim; ++j) v[j] = g(rng);
      gens.push_back(ApproxPoint::normalized(v));
    }
    Eigen::VectorXd uu(dim);
    for (int j = 0; j < dim; ++j) uu[j] = g(rng);
    const auto u = ApproxPoint::normalized(uu);

    // Oracle: random nonnegative combinations, then local coordinate search
    // on the weights.
    double best = -1;
    std::vector<double> bw(static_cast<std::size_t>(k), 0);
    auto value = [&](const std::vector<double>& wt) {
      Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < k; ++i) y += wt[static_cast<std::size_t>(i)] * gens[static_cast<std::size_t>(i)].coords();
      const double n = y.norm();
      return n < 1e-300 ? -2.0 : u.coords().dot(y) / n;
    };
    for (int s = 0; s < 20000; ++s) {
      std::vector<double> wt(static_cast<std::size_t>(k));
      for (auto& x : wt) x = (s % 3 == 0) ? (w(rng) < 0.5 ? 0.0 : w(rng)) : w(rng);
      const double v = value(wt);
      if (v > best) best = v, bw = wt;
    }
    for (double step = 0.5; step > 1e-10; step *= 0.7) {
      for (bool improved = true; improved;) {
        improved = false;
        for (int i = 0; i < k; ++i) {
          for (double dir : {1.0, -1.0}) {
            auto wt = bw;
            wt[static_cast<std::size_t>(i)] = std::max(0.0, wt[static_cast<std::size_t>(i)] + dir * step);
            const double v = value(wt);
            if (v > best + 1e-15) best = v, bw = wt, improved = true;
          }
        }
      }
    }
    const double oracle = std::acos(std::clamp(best, -1.0, 1.0));
    const double got = cone_angle(u, gens);
    CHECK(got == doctest::Approx(oracle).epsilon(0).scale(1).epsilon(1e-6));
    for (const auto& v : gens) CHECK(got <= geodesic_distance(u, v) + 1e-12);
  }
}

TEST_CASE("Tri helpers") {
  CHECK(tri_less(0.5, 1.0, 1e-9) == Tri::True);
  CHECK(tri_less(1.5, 1.0, 1e-9) == Tri::False);
  CHECK(tri_less(1.0, 1.0, 1e-9) == Tri::Ambiguous);
  CHECK(tri_and(Tri::True, Tri::Ambiguous) == Tri::Ambiguous);
  CHECK(tri_and(Tri::False, Tri::Ambiguous) == Tri::False);
  CHECK(tri_or(Tri::True, Tri::Ambiguous) == Tri::True);
  CHECK(tri_not(Tri::Ambiguous) == Tri::Ambiguous);
}
