#include "orbitforge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace orbitforge::cli {

std::vector<CurvePoint> bounding_curve(const std::vector<Int>& ks, int digits, bool odd_b) {
  if (digits <= 0) throw std::domain_error("digits must be positive");
  std::vector<CurvePoint> out;
  out.reserve(ks.size());
  for (const auto& k : ks) {
    if (k < 0) throw std::domain_error("bounding curves need k >= 0, got " + to_string(k));
    CurvePoint p;
    BoundsProfile bp;
    if (odd_b) {
      p.param = Rat{k} - Rat{1, 4};
      bp = bounds_profile(TranslationFamily{p.param}, digits);
      if (auto r = perfect_square_root(k)) {
        p.marked = true;
        p.j = *r;
        p.kind = "fixed";
      } else if (auto r1 = perfect_square_root(Int{k - 1})) {
        p.marked = true;
        p.j = *r1;
        p.kind = "two_cycle";
      }
    } else {
      p.param = Rat{k};
      bp = bounds_profile(PowerFamily{2, k}, digits);
      if (auto s = solve_pronic(k)) {
        p.marked = true;
        p.j = s->j;
        p.kind = s->kind == PronicKind::pronic ? "fixed" : "two_cycle";
      }
    }
    p.beta = bp.beta_approx;
    p.gamma = bp.gamma_approx;
    DecimalApprox bm1 = bp.beta_approx;
    bm1.lower -= 1;
    bm1.value = to_decimal(bm1.lower, digits);
    p.beta_minus_one = bm1;
    p.band = bp.interval_points;
    out.push_back(std::move(p));
  }
  return out;
}

std::string curves_csv(const std::vector<CurvePoint>& pts) {
  std::ostringstream o;
  o << "param,beta,gamma,beta_minus_one,marked,j,kind,band_points\n";
  for (const auto& p : pts) {
    o << to_string(p.param) << ',' << (p.beta ? p.beta->value : "") << ',' << (p.gamma ? p.gamma->value : "") << ','
      << (p.beta_minus_one ? p.beta_minus_one->value : "") << ',' << (p.marked ? "1" : "0") << ','
      << (p.j ? to_string(*p.j) : "") << ',' << p.kind << ',' << p.band.size() << '\n';
  }
  return o.str();
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string curves_svg(const std::vector<CurvePoint>& pts, bool odd_b) {
  constexpr double width = 720, height = 420, left = 56, right = 20, top = 30, bottom = 44;
  if (pts.empty()) throw std::domain_error("no curve points to plot");

  const double x_min = pts.front().param.get_d();
  const double x_max = std::max(pts.back().param.get_d(), x_min + 1);
  double y_max = 1;
  for (const auto& p : pts)
    if (p.beta) y_max = std::max(y_max, p.beta->upper().get_d());
  y_max = std::ceil(y_max);

  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (width - left - right); };
  auto sy = [&](double y) { return height - bottom - y / y_max * (height - top - bottom); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
    << (odd_b ? "B_q, C_q and B_q - 1 at q = k - 1/4" : "beta_k, gamma_k and beta_k - 1") << "</text>\n";

  // Axes and integer gridlines on the value axis.
  o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(width - right) << "\" y2=\""
    << fmt(sy(0)) << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(left) << "\" y2=\"" << fmt(top)
    << "\" stroke=\"black\"/>\n";
  const int y_step = std::max(1, static_cast<int>(y_max) / 10);
  for (int y = 0; y <= static_cast<int>(y_max); y += y_step) {
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(sy(y)) << "\" x2=\"" << fmt(width - right) << "\" y2=\""
      << fmt(sy(y)) << "\" stroke=\"#dddddd\"/>\n";
    o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(sy(y) + 4) << "\" text-anchor=\"end\">" << y << "</text>\n";
  }
  const std::size_t x_step = std::max<std::size_t>(1, pts.size() / 12);
  for (std::size_t i = 0; i < pts.size(); i += x_step) {
    const double x = pts[i].param.get_d();
    o << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(sy(0) + 16) << "\" text-anchor=\"middle\">"
      << to_string(pts[i].param) << "</text>\n";
  }

  auto polyline = [&](auto pick, const char* colour, const char* dash) {
    std::string path;
    for (const auto& p : pts) {
      const auto& v = pick(p);
      if (!v) continue;
      path += fmt(sx(p.param.get_d())) + "," + fmt(sy(v->lower.get_d())) + " ";
    }
    if (path.empty()) return;
    path.pop_back();
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << dash << " points=\"" << path
      << "\"/>\n";
  };
  polyline([](const CurvePoint& p) -> const auto& { return p.beta; }, "#1f4e9c", "");
  polyline([](const CurvePoint& p) -> const auto& { return p.gamma; }, "#2f8f3a", "");
  polyline([](const CurvePoint& p) -> const auto& { return p.beta_minus_one; }, "#555555",
           " stroke-dasharray=\"5,4\"");

  for (const auto& p : pts) {
    if (!p.marked) continue;
    const double x = sx(p.param.get_d());
    for (const auto& b : p.band)
      o << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(sy(b.get_d())) << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    const double label_y = p.beta ? sy(p.beta->upper().get_d()) - 8 : top;
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(label_y) << "\" text-anchor=\"middle\" font-size=\"14\">"
      << (p.j ? to_string(*p.j) : "") << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace orbitforge::cli
