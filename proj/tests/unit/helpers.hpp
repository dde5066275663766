#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sphcover/geometry.hpp"

namespace testing {

// Random nonzero integer direction with coordinates in [-r, r].
inline sphcover::Direction random_direction(std::mt19937_64& rng, std::size_t dim, long r = 20) {
  std::uniform_int_distribution<long> c(-r, r);
  for (;;) {
    std::vector<sphcover::Rat> v(dim);
    bool zero = true;
    for (auto& x : v) {
      x = c(rng);
      zero = zero && x == 0;
    }
    if (!zero) return sphcover::Direction(std::move(v));
  }
}

// Direction at `deg` degrees on S^1 rounded to a denominator of 10^6.
inline sphcover::Direction angle_direction(double deg) {
  const double a = deg * 3.14159265358979323846 / 180.0;
  sphcover::Rat x(std::lround(std::cos(a) * 1e6), 1000000), y(std::lround(std::sin(a) * 1e6), 1000000);
  x.canonicalize();
  y.canonicalize();
  return sphcover::Direction(std::vector<sphcover::Rat>{x, y});
}

}  // namespace testing
