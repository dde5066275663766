#include "sphcover/bounds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sphcover {

namespace {

int ceil_half(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }
int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

BoundsTable bounds_table(int d, int n, std::optional<int> m) {
  if (d < 1) throw std::invalid_argument("bounds: d must be >= 1");
  if (n < 1) throw std::invalid_argument("bounds: n must be >= 1");
  if (m && *m <= n) {
    throw std::invalid_argument("bounds: need m > n (got n=" + std::to_string(n) + ", m=" + std::to_string(*m) + ")");
  }
  BoundsTable t;
  t.d = d;
  t.n = n;
  t.m = m;

  t.Q_lower = ceil_half(d) + n;
  t.Q_upper = d + n;
  if (n == 1) t.Q_exact = floor_half(d) + 2;

  if (m) {
    const int mm = *m;
    t.f_lower = std::max(ceil_half(d - 1) + n + mm, d + 2 * n);
    t.f_upper = d + n + mm;
    t.fbar_exact = d + 2 * mm - 1;
    if (n == 1 && d >= 2) {
      t.f_exact = mm <= floor_half(d) + 1 ? d + 2 : floor_half(d - 1) + 2 + mm;
    } else if (n == 1 && d == 1) {
      t.f_exact = 2 + mm;
    }
  }
  return t;
}

nlohmann::json to_json(const BoundsTable& t) {
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j = {{"d", t.d},
                      {"n", t.n},
                      {"m", opt(t.m)},
                      {"Q_lower", t.Q_lower},
                      {"Q_upper", t.Q_upper},
                      {"Q_exact", opt(t.Q_exact)}};
  if (t.m) {
    j["f_lower"] = t.f_lower;
    j["f_upper"] = t.f_upper;
    j["f_exact"] = opt(t.f_exact);
    j["fbar_exact"] = t.fbar_exact;
  }
  return j;
}

}  // namespace sphcover
