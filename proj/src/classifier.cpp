#include "orbitforge/classifier.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace orbitforge {

Cycle Cycle::canonical(std::vector<Int> points) {
  if (points.empty()) throw std::invalid_argument("empty cycle");
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("cycle points must be distinct");
  std::rotate(points.begin(), std::min_element(points.begin(), points.end()), points.end());
  Cycle c;
  c.points_ = std::move(points);
  return c;
}

bool verifies(const IntegerMap& f, const Cycle& c) {
  const auto& p = c.points();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (eval(f, p[i]) != p[(i + 1) % p.size()]) return false;
  return !p.empty();
}

std::string_view to_string(Behavior b) {
  switch (b) {
    case Behavior::diverges_to_plus_inf: return "diverges_to_plus_inf";
    case Behavior::diverges_to_minus_inf: return "diverges_to_minus_inf";
    case Behavior::diverges_sign_split: return "diverges_sign_split";
    case Behavior::all_seeds_fixed: return "all_seeds_fixed";
  }
  return "?";
}

std::optional<Behavior> behavior_from_string(std::string_view s) {
  for (auto b : {Behavior::diverges_to_plus_inf, Behavior::diverges_to_minus_inf, Behavior::diverges_sign_split,
                 Behavior::all_seeds_fixed})
    if (to_string(b) == s) return b;
  return std::nullopt;
}

std::string_view to_string(PronicKind k) { return k == PronicKind::pronic ? "pronic" : "pronic_plus_one"; }

void OrbitClassification::normalize() {
  auto tidy = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  tidy(fixed_points);
  tidy(two_cycles);
  tidy(higher_cycles);
}

namespace {

// Smallest t >= 2 with g(t) == target for strictly increasing g, if any.
std::optional<Int> solve_increasing(const std::function<Int(const Int&)>& g, const Int& target) {
  Int lo = 2;
  if (g(lo) > target) return std::nullopt;
  Int hi = 4;
  while (g(hi) < target) hi *= 2;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (g(mid) < target)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (g(lo) == target) return lo;
  return std::nullopt;
}

void require_verified(const IntegerMap& f, const OrbitClassification& c) {
  for (const auto& p : c.fixed_points)
    if (eval(f, p) != p) throw std::logic_error("fixed point " + to_string(p) + " fails substitution");
  for (const auto& cyc : c.two_cycles)
    if (cyc.period() != 2 || !verifies(f, cyc)) throw std::logic_error("2-cycle fails substitution");
  for (const auto& cyc : c.higher_cycles)
    if (!verifies(f, cyc)) throw std::logic_error("cycle fails substitution");
}

}  // namespace

std::vector<Int> integer_fixed_points_power(const PowerMap& f) {
  std::vector<Int> out;
  if (f.m == 1) return out;
  const auto m = static_cast<unsigned long>(f.m);
  auto h = [&](const Int& j) { return Int{ipow(j, m) - j}; };

  for (int j = -1; j <= 1; ++j)
    if (h(Int{j}) == f.k) out.emplace_back(j);

  // j^m - j is strictly increasing for j >= 2.
  if (auto t = solve_increasing(h, f.k)) out.push_back(*t);

  // j = -t with t >= 2: even m gives t^m + t, odd m gives -(t^m - t).
  if (f.m % 2 == 0) {
    if (auto t = solve_increasing([&](const Int& t) { return Int{ipow(t, m) + t}; }, f.k)) out.push_back(-*t);
  } else {
    if (auto t = solve_increasing(h, Int{-f.k})) out.push_back(-*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PronicSolution> solve_pronic(const Int& k) {
  if (k < 0) return std::nullopt;
  auto root_of = [](const Int& n) { return Int{(isqrt(Int{4 * n + 1}) - 1) / 2}; };
  Int j = root_of(k);
  if (j * (j + 1) == k) return PronicSolution{j, PronicKind::pronic};
  if (k >= 1) {
    Int i = root_of(Int{k - 1});
    if (i * (i + 1) + 1 == k) return PronicSolution{i, PronicKind::pronic_plus_one};
  }
  return std::nullopt;
}

OrbitClassification classify_power(const PowerMap& f) {
  if (f.m < 1) throw std::domain_error("power map degree must be >= 1");
  OrbitClassification out;

  if (f.m == 1) {
    if (f.k == 0) {
      out.behavior = Behavior::all_seeds_fixed;
      out.witness = Witness{"m = 1, k = 0: every seed is fixed", std::nullopt};
    } else {
      out.behavior = f.k > 0 ? Behavior::diverges_to_minus_inf : Behavior::diverges_to_plus_inf;
    }
    return out;
  }

  if (f.m == 2) {
    out.behavior = Behavior::diverges_to_plus_inf;
    if (auto p = solve_pronic(f.k)) {
      const Int& j = p->j;
      if (p->kind == PronicKind::pronic) {
        out.fixed_points = {j + 1, -j};
        out.witness = Witness{"k = j(j+1)", j};
      } else {
        out.two_cycles.push_back(Cycle::canonical({j, -(j + 1)}));
        out.witness = Witness{"k = j(j+1) + 1", j};
      }
    }
  } else {
    out.fixed_points = integer_fixed_points_power(f);
    if (f.m % 2 == 1) {
      out.behavior = Behavior::diverges_sign_split;
    } else {
      out.behavior = Behavior::diverges_to_plus_inf;
      // The one non-trivial integer cycle for even m >= 4.
      if (f.k == 1) {
        out.two_cycles.push_back(Cycle::canonical({-1, 0}));
        out.witness = Witness{"k = 1, even m: -1 -> 0 -> -1", std::nullopt};
      }
    }
    if (!out.witness && out.fixed_points.size() == 1) out.witness = Witness{"k = j^m - j", out.fixed_points.front()};
    if (!out.witness && !out.fixed_points.empty()) out.witness = Witness{"k = j^m - j", std::nullopt};
  }

  out.normalize();
  require_verified(f, out);
  return out;
}

namespace {

// Lattice points n + offset (n >= 0) lying between two roots, both inclusive.
std::vector<Rat> band_points(const RootSpec& lower_root, const RootSpec& upper_root, const Rat& offset) {
  std::vector<Rat> out;
  auto at = [&](const Int& n) -> Rat { return Rat{n} + offset; };
  if (compare_to_root(at(0), upper_root) == Side::above) return out;

  Int top_lo = 0, top_hi = 1;
  while (compare_to_root(at(top_hi), upper_root) != Side::above) top_hi *= 2;
  while (top_hi - top_lo > 1) {
    Int mid = (top_lo + top_hi) / 2;
    (compare_to_root(at(mid), upper_root) == Side::above ? top_hi : top_lo) = mid;
  }
  const Int top = top_lo;

  if (compare_to_root(at(top), lower_root) == Side::below) return out;
  Int lo = 0, hi = top;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (compare_to_root(at(mid), lower_root) == Side::below)
      lo = mid + 1;
    else
      hi = mid;
  }
  for (Int n = lo; n <= top; ++n) out.push_back(at(n));
  return out;
}

std::vector<Int> integral_only(const std::vector<Rat>& pts) {
  std::vector<Int> out;
  for (const auto& p : pts)
    if (is_integral(p)) out.push_back(p.get_num());
  return out;
}

}  // namespace

Int beta_floor(long m, const Int& k) {
  if (k < 1) throw std::domain_error("beta_floor needs k >= 1");
  Int lo = 1, hi = k + 1;  // beta > 1 and (k+1)^m - (k+1) - k > 0
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    (compare_to_beta(mid, m, k) == Side::above ? hi : lo) = mid;
  }
  return lo;
}

std::vector<Int> interval_integers(long m, const Int& k) {
  if (m < 2 || m % 2 != 0) throw std::domain_error("interval_integers needs even m >= 2");
  if (k < 2) throw std::domain_error("interval_integers needs k >= 2 so that gamma is real");
  return integral_only(band_points(RootSpec::gamma(m, k), RootSpec::beta(m, k), Rat{0}));
}

namespace {

// u + v sqrt(d) with rational u, v and a fixed positive integer d.
struct Surd {
  Rat u;
  Rat v;
};

Surd operator-(const Surd& x, const Surd& y) { return {x.u - y.u, x.v - y.v}; }

Surd mul(const Surd& x, const Surd& y, const Int& d) {
  return {x.u * y.u + x.v * y.v * Rat{d}, x.u * y.v + x.v * y.u};
}

int sign(const Surd& x, const Int& d) {
  int su = sgn(x.u), sv = sgn(x.v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return su == 0 ? sv : su;
  // Opposite signs: compare u^2 with v^2 d.
  int cmp_sq = sgn(Rat{x.u * x.u - x.v * x.v * Rat{d}});
  return su > 0 ? cmp_sq : -cmp_sq;
}

}  // namespace

GapCheckReport beta_gamma_gap_checks(const Int& k_max) {
  GapCheckReport rep;
  rep.checked = 0;
  const Rat half{1, 2};
  for (Int k = 2; k <= k_max; ++k) {
    const Int d = 4 * k + 1;
    const Surd beta{half, half};
    const Surd kk{Rat{k}, 0};
    const Surd gamma_sq = kk - beta;  // gamma^2 = k - beta
    const Surd two{2, 0}, one{1, 0};

    auto fail = [&](std::string why) {
      rep.pass = false;
      rep.first_violation = k;
      rep.detail = "k = " + to_string(k) + ": " + std::move(why);
    };

    if (sign(gamma_sq, d) < 0) {
      fail("gamma is not real");
      break;
    }
    // gamma >= beta - 2: trivially when beta <= 2, otherwise compare squares.
    const Surd bm2 = beta - two;
    if (sign(bm2, d) > 0 && sign(gamma_sq - mul(bm2, bm2, d), d) < 0) {
      fail("gamma < beta - 2");
      break;
    }
    // gamma < beta - 1: needs beta > 1 and gamma^2 < (beta - 1)^2.
    const Surd bm1 = beta - one;
    if (sign(bm1, d) <= 0 || sign(mul(bm1, bm1, d) - gamma_sq, d) <= 0) {
      fail("gamma >= beta - 1");
      break;
    }
    ++rep.checked;
  }
  if (rep.pass) rep.detail = "beta - 2 <= gamma < beta - 1 for k in [2, " + to_string(k_max) + "]";
  return rep;
}

GapEnclosure gap_enclosure(const Int& k, int digits) {
  auto b = approx_root(RootSpec::beta(2, k), digits);
  auto g = approx_root(RootSpec::gamma(2, k), digits);
  return GapEnclosure{k, b.lower - g.upper(), b.upper() - g.lower};
}

OrbitClassification classify_quad(const QuadMap& f) {
  if (f.a == 0) throw std::domain_error("quadratic map needs a != 0");
  OrbitClassification out;
  out.behavior = f.a > 0 ? Behavior::diverges_to_plus_inf : Behavior::diverges_to_minus_inf;

  const Rat a{f.a}, b{f.b};
  const Rat two_a = 2 * a;
  const IntegerMap map = f;

  auto add_fixed = [&](const Rat& s) {
    if (is_integral(s) && eval(f, s) == s) out.fixed_points.push_back(s.get_num());
  };
  auto add_two_cycle = [&](const Rat& s1, const Rat& s2) {
    if (!is_integral(s1) || !is_integral(s2) || s1 == s2) return;
    if (eval(f, s1) == s2 && eval(f, s2) == s1) out.two_cycles.push_back(Cycle::canonical({s1.get_num(), s2.get_num()}));
  };

  if (f.b % 2 == 0) {
    const Int q = f.b * (f.b - 2) / 4 - f.a * f.c;
    if (auto p = solve_pronic(q)) {
      const Rat j{p->j};
      if (p->kind == PronicKind::pronic) {
        add_fixed(j / a - (b - 2) / two_a);
        add_fixed(-j / a - b / two_a);
        out.witness = Witness{"b even, b(b-2)/4 - ac = j(j+1)", p->j};
      } else {
        add_two_cycle(j / a - b / two_a, -j / a - (b + 2) / two_a);
        out.witness = Witness{"b even, b(b-2)/4 - ac = j(j+1) + 1", p->j};
      }
    }
  } else {
    const Int half_b = (f.b - 1) / 2;
    const Int v = half_b * half_b - f.a * f.c;
    if (auto r = perfect_square_root(v)) {
      const Rat j{*r};
      add_fixed(j / a - (b - 1) / two_a);
      add_fixed(-j / a - (b - 1) / two_a);
      out.witness = Witness{"b odd, ((b-1)/2)^2 - ac = j^2", *r};
    }
    if (auto r = perfect_square_root(Int{v - 1})) {
      // j = 0 collapses the pair onto a fixed point, already covered above.
      const Rat j{*r};
      const auto before = out.two_cycles.size();
      add_two_cycle(-j / a - (b + 1) / two_a, j / a - (b + 1) / two_a);
      if (!out.witness || out.two_cycles.size() > before)
        out.witness = Witness{"b odd, ((b-1)/2)^2 - ac = j^2 + 1", *r};
    }
  }

  out.normalize();
  require_verified(map, out);
  return out;
}

OrbitClassification classify(const IntegerMap& f) {
  return std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, PowerMap>)
          return classify_power(g);
        else
          return classify_quad(g);
      },
      f);
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& x) {
  auto n = perfect_square_root(x.get_num());
  auto d = perfect_square_root(x.get_den());
  if (!n || !d) return std::nullopt;
  return make_rat(*n, *d);
}

// Fixed points and 2-cycle of x^2 - q from the discriminants 1 + 4q and 4q - 3.
void fill_rational_orbits(BoundsProfile& bp, const Rat& q) {
  const Rat half{1, 2};
  if (auto s = rational_sqrt(1 + 4 * q)) bp.fixed_point_pair = std::pair{half - *s / 2, half + *s / 2};
  if (auto s = rational_sqrt(4 * q - 3); s && *s != 0) bp.two_cycle = std::pair{-half - *s / 2, -half + *s / 2};
}

}  // namespace

BoundsProfile bounds_profile(const PowerFamily& fam, int digits) {
  const auto beta = RootSpec::beta(fam.m, fam.k);
  if (!root_exists(beta))
    throw std::domain_error("x^" + std::to_string(fam.m) + " - " + to_string(fam.k) + " has no positive fixed point");
  BoundsProfile bp;
  bp.family = fam;
  bp.beta_approx = approx_root(beta, digits);
  bp.beta_floor = floor(bp.beta_approx.lower);
  const auto gamma = RootSpec::gamma(fam.m, fam.k);
  if (root_exists(gamma)) {
    bp.gamma_approx = approx_root(gamma, digits);
    bp.interval_points = band_points(gamma, beta, Rat{0});
    bp.interval_integers = integral_only(bp.interval_points);
  }
  if (fam.m == 2) fill_rational_orbits(bp, Rat{fam.k});
  return bp;
}

BoundsProfile bounds_profile(const TranslationFamily& fam, int digits) {
  const auto bq = RootSpec::b_q(fam.q);
  if (!root_exists(bq)) throw std::domain_error("x^2 - " + to_string(fam.q) + " has complex fixed points (q < -1/4)");
  BoundsProfile bp;
  bp.family = fam;
  bp.beta_approx = approx_root(bq, digits);
  bp.beta_floor = floor(bp.beta_approx.lower);
  const auto cq = RootSpec::c_q(fam.q);
  if (root_exists(cq)) {
    bp.gamma_approx = approx_root(cq, digits);
    const Rat four_q = 4 * fam.q;
    const bool half_lattice = is_integral(four_q) && mpz_fdiv_ui(four_q.get_num_mpz_t(), 4) == 3;
    bp.interval_points = band_points(cq, bq, half_lattice ? Rat{1, 2} : Rat{0});
    bp.interval_integers = integral_only(band_points(cq, bq, Rat{0}));
  }
  fill_rational_orbits(bp, fam.q);
  return bp;
}

}  // namespace orbitforge
