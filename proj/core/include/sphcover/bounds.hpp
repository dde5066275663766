#pragma once

#include <optional>

#include "json.hpp"

namespace sphcover {

/// Known bounds on f(d,n,m) (open northern hemisphere m-fold), fbar(d,n,m)
/// (closed northern hemisphere) and Q(d,n) (deepest point of an antipodal
/// n-fold cover).
struct BoundsTable {
  int d = 0;
  int n = 0;
  std::optional<int> m;

  int f_lower = 0;
  int f_upper = 0;
  std::optional<int> f_exact;
  int fbar_exact = 0;

  int Q_lower = 0;
  int Q_upper = 0;
  std::optional<int> Q_exact;
};

BoundsTable bounds_table(int d, int n, std::optional<int> m);

nlohmann::json to_json(const BoundsTable& table);

}  // namespace sphcover
