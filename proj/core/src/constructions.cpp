#include "sphcover/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "sphcover/sampling.hpp"

namespace sphcover {

namespace {

nlohmann::json rats_json(const std::vector<Rat>& values) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : values) a.push_back(to_string(v));
  return a;
}

// Positive rational square root when one exists.
std::optional<Rat> exact_sqrt(const Rat& value) {
  if (value < 0) return std::nullopt;
  mpz_class num = value.get_num(), den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rat(rn, rd);
}

}  // namespace

GaleConfig gale_points(int d, int n, std::optional<std::vector<Rat>> t_values) {
  if (d < 1) throw std::invalid_argument("gale_points: d must be >= 1");
  if (n < 1) throw std::invalid_argument("gale_points: n must be >= 1");
  const int count = d + 2 * n;
  GaleConfig g;
  g.d = d;
  g.n = n;
  if (t_values) {
    if (static_cast<int>(t_values->size()) != count) {
      throw std::invalid_argument("gale_points: need exactly d+2n = " + std::to_string(count) + " t-values");
    }
    g.t_values = std::move(*t_values);
    for (std::size_t i = 1; i < g.t_values.size(); ++i) {
      if (!(g.t_values[i - 1] < g.t_values[i])) {
        throw std::invalid_argument("gale_points: t-values must be distinct and strictly increasing");
      }
    }
  } else {
    for (int i = 1; i <= count; ++i) g.t_values.emplace_back(i);
  }
  for (int i = 1; i <= count; ++i) {
    const Rat& t = g.t_values[static_cast<std::size_t>(i - 1)];
    std::vector<Rat> c(static_cast<std::size_t>(d + 1));
    Rat power = 1;
    for (int k = 0; k <= d; ++k) {
      c[static_cast<std::size_t>(k)] = (i % 2 == 1) ? Rat(-power) : power;
      power *= t;
    }
    g.points.emplace_back(std::move(c));
  }
  return g;
}

Cover gale_cover(int d, int n, std::optional<std::vector<Rat>> t_values) {
  auto g = gale_points(d, n, std::move(t_values));
  std::vector<CoverSet> sets;
  for (auto& p : g.points) sets.push_back(Hemisphere{std::move(p)});
  nlohmann::json prov = {{"construction", "gale"}, {"d", d}, {"n", n}, {"t_values", rats_json(g.t_values)}};
  return Cover(d, std::move(sets), Claims{n, std::nullopt, false}, std::move(prov));
}

Cover bar_cover(int d, int n, int m) {
  if (n < 1 || m <= n) throw std::invalid_argument("bar_cover: need m > n >= 1");
  const auto g = gale_points(d, m);
  const Direction& q1 = g.points.front();
  const std::size_t dim = static_cast<std::size_t>(d + 1);

  // Map A = I - (q1 + c e) w^T / <w, q1> with w = q1 + c e sends q1 to -c e.
  // With c = |q1| this is the Householder reflection; otherwise c is a close
  // rational stand-in and A is an invertible map, which keeps every sign
  // vector (poles p -> A p, points x -> A^{-T} x).
  const Rat norm_sq = dot_exact(q1, q1);
  Rat c;
  bool reflection = false;
  if (auto root = exact_sqrt(norm_sq)) {
    c = *root;
    reflection = true;
  } else {
    c = Rat(static_cast<long>(std::llround(std::sqrt(norm_sq.get_d()) * 1024.0)), 1024);
    c.canonicalize();
  }
  if (q1.last() + c == 0) c += Rat(1, 1024);
  std::vector<Rat> w(q1.coords().begin(), q1.coords().end());
  w.back() += c;
  const Direction w_dir(w);
  const Rat denom = dot_exact(w_dir, q1);
  if (denom == 0) throw std::logic_error("bar_cover: degenerate map");

  std::vector<CoverSet> sets;
  for (std::size_t i = 1; i < g.points.size(); ++i) {
    const Direction& p = g.points[i];
    const Rat f = dot_exact(w_dir, p) / denom;
    std::vector<Rat> img(p.coords().begin(), p.coords().end());
    for (std::size_t k = 0; k < dim; ++k) img[k] -= f * w[k];
    sets.push_back(Hemisphere{Direction(std::move(img))});
  }
  nlohmann::json prov = {{"construction", "bar"},
                         {"d", d},
                         {"n", n},
                         {"m", m},
                         {"t_values", rats_json(g.t_values)},
                         {"map", reflection ? "householder" : "rational-householder-like"},
                         {"map_scale", to_string(c)}};
  return Cover(d, std::move(sets), Claims{n, m, true}, std::move(prov));
}

Cover nm_cover_upper(int d, int n, int m) {
  if (n < 1 || m <= n) throw std::invalid_argument("nm_cover_upper: need m > n >= 1");
  Cover base = gale_cover(d, n);
  Cover out = add_hemispheres(base, m - n, Direction::basis(static_cast<std::size_t>(d + 1), static_cast<std::size_t>(d)),
                              Claims{n, m, false});
  nlohmann::json prov = out.provenance();
  prov["construction"] = "nm_upper";
  prov["m"] = m;
  return Cover(d, out.sets(), out.claims(), std::move(prov));
}

Cover circle_cover(int m) {
  if (m < 1) throw std::invalid_argument("circle_cover: m must be >= 1");
  std::vector<CoverSet> sets = {ArcSet{90, 65}, ArcSet{210, 65}, ArcSet{330, 65}};
  for (int k = 1; k < m; ++k) sets.push_back(NorthernHemisphereSet{});
  Claims claims{1, m >= 2 ? std::optional<int>(m) : std::nullopt, false};
  nlohmann::json prov = {{"construction", "circle"}, {"m", m}};
  return Cover(1, std::move(sets), claims, std::move(prov));
}

Cover belt_cover(int d, const BeltParams& params) {
  auto g = std::make_shared<const BeltGeometry>(d, params);
  std::vector<CoverSet> sets;
  for (int i = 0; i < g->set_count(); ++i) sets.push_back(BeltSet{g, i});
  nlohmann::json prov = {{"construction", "belt"},
                         {"d", d},
                         {"eps1", params.eps1},
                         {"eps2", params.eps2},
                         {"delta1p", params.delta1p},
                         {"delta2p", params.delta2p},
                         {"delta1", belt_height(params.delta1p)},
                         {"delta2", belt_height(params.delta2p)},
                         {"tau", params.tau}};
  return Cover(d, std::move(sets), Claims{1, d / 2 + 1, false}, std::move(prov));
}

namespace {

// Calls f on every weight vector of k nonnegative entries summing to `total`.
template <class F>
void for_each_composition(int k, int total, std::vector<int>& w, int pos, F&& f) {
  if (pos == k - 1) {
    w[static_cast<std::size_t>(pos)] = total;
    f(w);
    return;
  }
  for (int a = 0; a <= total; ++a) {
    w[static_cast<std::size_t>(pos)] = a;
    for_each_composition(k, total - a, w, pos + 1, f);
  }
}

double face_distance_to_antipodal_cone(const std::vector<Eigen::VectorXd>& face, const ConeDistance& anti_cone) {
  const int k = static_cast<int>(face.size());
  auto eval = [&](const std::vector<double>& weights) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(face.front().size());
    for (int j = 0; j < k; ++j) y += weights[static_cast<std::size_t>(j)] * face[static_cast<std::size_t>(j)];
    // Angle from y to -cone(J') equals the angle from -y to cone(J').
    return anti_cone.angle(-y.normalized());
  };
  if (k == 1) return eval({1.0});

  const int resolution = k == 2 ? 400 : 40;
  std::vector<double> best_w(static_cast<std::size_t>(k), 1.0 / k);
  double best = eval(best_w);
  std::vector<int> w(static_cast<std::size_t>(k));
  for_each_composition(k, resolution, w, 0, [&](const std::vector<int>& c) {
    std::vector<double> x(c.begin(), c.end());
    for (auto& v : x) v /= resolution;
    const double val = eval(x);
    if (val < best) {
      best = val;
      best_w = x;
    }
  });
  // Pattern search around the best grid point, clamped to the simplex.
  double step = 1.0 / resolution;
  while (step > 1e-12) {
    bool improved = false;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        auto x = best_w;
        const double move = std::min(step, x[static_cast<std::size_t>(b)]);
        if (move <= 0) continue;
        x[static_cast<std::size_t>(a)] += move;
        x[static_cast<std::size_t>(b)] -= move;
        const double val = eval(x);
        if (val < best) {
          best = val;
          best_w = x;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  return best;
}

}  // namespace

double strata_antipodal_gap(const BeltGeometry& geometry) {
  const auto& verts = geometry.frame().vertices;
  double gap = std::numbers::pi;
  for (const auto& face : geometry.strata()) {
    std::vector<Eigen::VectorXd> face_pts;
    for (int j : face) face_pts.push_back(verts[static_cast<std::size_t>(j)]);
    for (const auto& other : geometry.strata()) {
      std::vector<Eigen::VectorXd> gens;
      for (int j : other) gens.push_back(verts[static_cast<std::size_t>(j)]);
      const ConeDistance cone(std::move(gens));
      gap = std::min(gap, face_distance_to_antipodal_cone(face_pts, cone));
    }
  }
  return gap;
}

PreconditionReport check_belt_preconditions(const BeltGeometry& geometry, std::uint64_t samples, std::uint64_t seed) {
  const int d = geometry.d();
  const auto& verts = geometry.frame().vertices;
  PreconditionReport rep;
  rep.facet_limit = (d + 1) / 2;
  for (std::uint64_t k = 0; k < samples; ++k) {
    std::mt19937_64 rng(sample_seed(seed, k));
    Eigen::VectorXd u;
    if (k % 2 == 0) {
      u = random_unit_vector(rng, d);
    } else {
      const auto& face = geometry.strata()[static_cast<std::size_t>(k / 2) % geometry.strata().size()];
      std::vector<Eigen::VectorXd> pts;
      for (int j : face) pts.push_back(verts[static_cast<std::size_t>(j)]);
      u = perturb_geodesic(rng, random_cone_point(rng, pts), 2.0 * geometry.params().eps2);
    }
    ++rep.samples;
    const auto here = geometry.profile(u);
    const auto there = geometry.profile(-u);
    bool ambiguous = false;
    bool covered = false;
    int facets = 0;
    for (int i = 0; i <= d; ++i) {
      const Tri a = geometry.facet_set(here, i);
      const Tri b = geometry.facet_set(there, i);
      if (a == Tri::Ambiguous || b == Tri::Ambiguous) ambiguous = true;
      if (a == Tri::True && b == Tri::True) ++rep.antipodal_violations;
      if (a == Tri::True) {
        ++facets;
        covered = true;
      }
    }
    const Tri ca = geometry.cap_set(here);
    const Tri cb = geometry.cap_set(there);
    if (ca == Tri::Ambiguous || cb == Tri::Ambiguous) ambiguous = true;
    if (ca == Tri::True && cb == Tri::True) ++rep.antipodal_violations;
    if (ca == Tri::True) covered = true;
    if (ambiguous) {
      ++rep.ambiguous;
      continue;
    }
    if (!covered) ++rep.uncovered;
    rep.max_facet_count = std::max(rep.max_facet_count, facets);
  }
  return rep;
}

AutoParams belt_auto_params(int d, std::uint64_t check_samples) {
  if (d < 2) throw std::invalid_argument("belt_auto_params: d must be >= 2");
  AutoParams out;
  {
    const BeltGeometry probe(d, BeltParams{1e-3, 2e-3, 0.25, 0.5, kDefaultTau});
    out.gap = strata_antipodal_gap(probe);
  }
  BeltParams p;
  p.eps2 = out.gap / 4.0;
  p.eps1 = p.eps2 / 10.0;
  p.delta1p = 0.25;
  p.delta2p = 0.5;
  for (int round = 0; round <= 8; ++round) {
    const BeltGeometry g(d, p);
    auto checks = check_belt_preconditions(g, check_samples);
    if (checks.ok()) {
      out.params = p;
      out.rounds = round;
      out.checks = checks;
      return out;
    }
    if (round < 4) {
      p.eps1 /= 2.0;
    } else {
      p.eps2 /= 2.0;
      p.eps1 = p.eps2 / 10.0 / 16.0;
    }
  }
  throw NoParametersFound("belt_auto_params: no parameters passed the precondition checks for d=" + std::to_string(d));
}

}  // namespace sphcover
