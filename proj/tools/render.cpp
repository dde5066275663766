#include "render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace sphcover::cli {

namespace {

constexpr int kAzimuth = 720;
constexpr int kPolar = 360;
constexpr double kPi = std::numbers::pi;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string set_label(const Cover& cover, std::size_t i) {
  const auto kind = predicate_kind(cover.sets()[i]);
  return "C" + std::to_string(i + 1) + " " + (kind ? std::string(to_string(*kind)) : std::string("hemisphere"));
}

// Half-open runs [begin, end) of true cells on a cyclic row.
std::vector<std::pair<int, int>> cyclic_runs(const std::vector<bool>& row) {
  const int n = static_cast<int>(row.size());
  std::vector<std::pair<int, int>> runs;
  int start = -1;
  for (int j = 0; j < n; ++j) {
    if (row[j] && start < 0) start = j;
    if (!row[j] && start >= 0) {
      runs.emplace_back(start, j);
      start = -1;
    }
  }
  if (start >= 0) runs.emplace_back(start, n);
  if (runs.size() > 1 && runs.front().first == 0 && runs.back().second == n) {
    runs.front().first = runs.back().first - n;
    runs.pop_back();
  }
  return runs;
}

struct Canvas {
  std::ostringstream body;
  int width, height;
  double cx, cy;

  double px(double r, double a) const { return cx + r * std::cos(a); }
  double py(double r, double a) const { return cy - r * std::sin(a); }

  // Annular sector between radii r0 < r1 over angles a0 < a1 (counterclockwise).
  void sector(double r0, double r1, double a0, double a1, const char* color, double opacity) {
    if (a1 - a0 >= 2 * kPi - 1e-12) {
      body << "<path fill-rule=\"evenodd\" fill=\"" << color << "\" fill-opacity=\"" << num(opacity) << "\" d=\"M "
           << num(cx + r1) << ' ' << num(cy) << " A " << num(r1) << ' ' << num(r1) << " 0 1 0 " << num(cx - r1) << ' '
           << num(cy) << " A " << num(r1) << ' ' << num(r1) << " 0 1 0 " << num(cx + r1) << ' ' << num(cy);
      if (r0 > 0) {
        body << " M " << num(cx + r0) << ' ' << num(cy) << " A " << num(r0) << ' ' << num(r0) << " 0 1 0 "
             << num(cx - r0) << ' ' << num(cy) << " A " << num(r0) << ' ' << num(r0) << " 0 1 0 " << num(cx + r0)
             << ' ' << num(cy);
      }
      body << " Z\"/>\n";
      return;
    }
    const int large = a1 - a0 > kPi ? 1 : 0;
    body << "<path fill=\"" << color << "\" fill-opacity=\"" << num(opacity) << "\" d=\"M " << num(px(r1, a0)) << ' '
         << num(py(r1, a0)) << " A " << num(r1) << ' ' << num(r1) << " 0 " << large << " 0 " << num(px(r1, a1)) << ' '
         << num(py(r1, a1)) << " L " << num(px(r0, a1)) << ' ' << num(py(r0, a1));
    if (r0 > 0) {
      body << " A " << num(r0) << ' ' << num(r0) << " 0 " << large << " 1 " << num(px(r0, a0)) << ' '
           << num(py(r0, a0));
    }
    body << " Z\"/>\n";
  }

  std::string finish(const std::string& title, const std::string& desc) const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<title>" << title << "</title>\n<desc>" << desc << "</desc>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

void legend(Canvas& c, const Cover& cover, double x, double y) {
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const double yy = y + 18.0 * static_cast<double>(i);
    c.body << "<rect x=\"" << num(x) << "\" y=\"" << num(yy) << "\" width=\"12\" height=\"12\" fill=\""
           << kPalette[i % std::size(kPalette)] << "\"/>\n"
           << "<text x=\"" << num(x + 18) << "\" y=\"" << num(yy + 10) << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << set_label(cover, i) << "</text>\n";
  }
}

// One ring per set around a circle of directions point(theta).
template <class PointAt>
std::string rings(const Cover& cover, PointAt point, const std::string& title) {
  const double inner = 120, width = 14, gap = 4;
  const double outer = inner + (width + gap) * static_cast<double>(cover.size());
  Canvas c{{}, static_cast<int>(2 * outer + 260), static_cast<int>(std::max(2 * outer + 40, 40 + 18.0 * cover.size())),
           outer + 20, outer + 20};
  std::vector<std::vector<bool>> member(cover.size(), std::vector<bool>(kAzimuth));
  std::uint64_t ambiguous = 0;
  for (int j = 0; j < kAzimuth; ++j) {
    const double a = (j + 0.5) * 2 * kPi / kAzimuth;
    const auto e = cover.evaluate(ApproxPoint::normalized(point(a)));
    for (std::size_t i = 0; i < cover.size(); ++i) member[i][static_cast<std::size_t>(j)] = e.members[i] == Tri::True;
    ambiguous += static_cast<std::uint64_t>(e.ambiguous);
  }
  c.body << "<circle cx=\"" << num(c.cx) << "\" cy=\"" << num(c.cy) << "\" r=\"" << num(inner - 6)
         << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const double r0 = inner + (width + gap) * static_cast<double>(i);
    for (auto [b, e] : cyclic_runs(member[i])) {
      c.sector(r0, r0 + width, b * 2 * kPi / kAzimuth, e * 2 * kPi / kAzimuth, kPalette[i % std::size(kPalette)], 0.8);
    }
  }
  legend(c, cover, 2 * outer + 60, 30);
  return c.finish(title, "ring per set; angle measured counterclockwise from the first axis; " +
                             std::to_string(ambiguous) + " undecided memberships drawn empty");
}

std::string disk(const Cover& cover, bool north) {
  // One orthographic panel per set, seen from outside the sphere (so the
  // southern view is mirrored).
  const double R = 150, pad = 20;
  const int cols = static_cast<int>(std::min<std::size_t>(cover.size(), 3));
  const int rows = static_cast<int>((cover.size() + static_cast<std::size_t>(cols) - 1) / static_cast<std::size_t>(cols));
  Canvas c{{}, static_cast<int>(cols * (2 * R + pad) + pad), static_cast<int>(rows * (2 * R + pad + 20) + pad), 0, 0};
  const double sign = north ? 1.0 : -1.0;
  std::vector<std::vector<std::vector<bool>>> member(
      cover.size(), std::vector<std::vector<bool>>(kPolar, std::vector<bool>(kAzimuth)));
  std::uint64_t ambiguous = 0;
  Eigen::VectorXd x(3);
  for (int i = 0; i < kPolar; ++i) {
    const double phi = (i + 0.5) * (kPi / 2) / kPolar;
    for (int j = 0; j < kAzimuth; ++j) {
      const double a = (j + 0.5) * 2 * kPi / kAzimuth;
      x << std::sin(phi) * std::cos(a) * sign, std::sin(phi) * std::sin(a), sign * std::cos(phi);
      const auto e = cover.evaluate(ApproxPoint::normalized(x));
      for (std::size_t s = 0; s < cover.size(); ++s) {
        member[s][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e.members[s] == Tri::True;
      }
      ambiguous += static_cast<std::uint64_t>(e.ambiguous);
    }
  }
  for (std::size_t s = 0; s < cover.size(); ++s) {
    const int col = static_cast<int>(s) % cols, row = static_cast<int>(s) / cols;
    c.cx = pad + R + col * (2 * R + pad);
    c.cy = pad + 20 + R + row * (2 * R + pad + 20);
    c.body << "<g id=\"set" << s + 1 << "\">\n";
    c.body << "<text x=\"" << num(c.cx - R) << "\" y=\"" << num(c.cy - R - 6)
           << "\" font-family=\"sans-serif\" font-size=\"13\">" << set_label(cover, s) << "</text>\n";
    // Consecutive rings with the same runs are drawn as one band.
    int i = 0;
    while (i < kPolar) {
      const auto runs = cyclic_runs(member[s][static_cast<std::size_t>(i)]);
      int k = i + 1;
      while (k < kPolar && cyclic_runs(member[s][static_cast<std::size_t>(k)]) == runs) ++k;
      const double r0 = R * std::sin(i * (kPi / 2) / kPolar);
      const double r1 = R * std::sin(k * (kPi / 2) / kPolar);
      for (auto [b, e] : runs) {
        c.sector(r0, r1, b * 2 * kPi / kAzimuth, e * 2 * kPi / kAzimuth, kPalette[s % std::size(kPalette)], 0.75);
      }
      i = k;
    }
    c.body << "<circle cx=\"" << num(c.cx) << "\" cy=\"" << num(c.cy) << "\" r=\"" << num(R)
           << "\" fill=\"none\" stroke=\"black\"/>\n</g>\n";
  }
  return c.finish(north ? "northern hemisphere" : "southern hemisphere",
                  "orthographic view from outside, one panel per set; " + std::to_string(ambiguous) +
                      " undecided memberships drawn empty");
}

}  // namespace

View parse_view(std::string_view name) {
  if (name == "equator") return View::Equator;
  if (name == "north") return View::North;
  if (name == "south") return View::South;
  throw std::invalid_argument("unknown view '" + std::string(name) + "' (equator, north, south)");
}

std::string render_svg(const Cover& cover, View view) {
  if (cover.dim() == 1) {
    return rings(cover, [](double a) { return Eigen::Vector2d(std::cos(a), std::sin(a)).eval(); }, "cover of the circle");
  }
  if (cover.dim() == 2) {
    if (view == View::Equator) {
      return rings(cover, [](double a) { return Eigen::Vector3d(std::cos(a), std::sin(a), 0.0).eval(); },
                   "restriction to the equator");
    }
    return disk(cover, view == View::North);
  }
  throw RegimeMismatch("render supports covers of S^1 and S^2 only");
}

}  // namespace sphcover::cli
