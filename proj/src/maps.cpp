#include "orbitforge/maps.hpp"

#include <stdexcept>
#include <utility>

namespace orbitforge {

PowerMap::PowerMap(long degree, Int shift) : m(degree), k(std::move(shift)) {
  if (m < 1) throw std::domain_error("power map degree must be >= 1");
}

QuadMap::QuadMap(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  if (a == 0) throw std::domain_error("quadratic map needs a != 0");
}

RationalPoly::RationalPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::domain_error("polynomial needs at least one coefficient");
  for (auto& c : coeffs_) c.canonicalize();
  if (coeffs_.back() == 0) throw std::domain_error("leading coefficient must be nonzero");
}

Int eval(const PowerMap& f, const Int& x) { return ipow(x, static_cast<unsigned long>(f.m)) - f.k; }

Rat eval(const PowerMap& f, const Rat& x) { return rpow(x, static_cast<unsigned long>(f.m)) - Rat{f.k}; }

Int eval(const QuadMap& f, const Int& x) { return f.a * x * x + f.b * x + f.c; }

Rat eval(const QuadMap& f, const Rat& x) { return Rat{f.a} * x * x + Rat{f.b} * x + Rat{f.c}; }

Rat eval(const RationalPoly& p, const Rat& x) {
  Rat acc = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Int eval(const IntegerMap& f, const Int& x) {
  return std::visit([&](const auto& g) { return eval(g, x); }, f);
}

std::string describe(const PowerMap& f) {
  std::string s = f.m == 1 ? "x" : "x^" + std::to_string(f.m);
  if (f.k > 0) s += " - " + to_string(f.k);
  if (f.k < 0) s += " + " + to_string(Int{-f.k});
  return s;
}

std::string describe(const QuadMap& f) {
  std::string s = f.a == 1 ? "" : f.a == -1 ? "-" : to_string(f.a) + " ";
  s += "x^2";
  auto term = [&s](const Int& v, const char* var) {
    if (v == 0) return;
    s += v < 0 ? " - " : " + ";
    const Int mag = abs(v);
    if (*var == '\0' || mag != 1) s += to_string(mag) + (*var ? " " : "");
    s += var;
  };
  term(f.b, "x");
  term(f.c, "");
  return s;
}

std::string describe(const IntegerMap& f) {
  return std::visit([](const auto& g) { return describe(g); }, f);
}

Conjugacy conjugacy_of_quad(const QuadMap& f) {
  Conjugacy c;
  c.scale = Rat{f.a};
  c.offset = make_rat(f.b, 2);
  c.q = make_rat(f.b * (f.b - 2), 4) - Rat{f.a * f.c};
  return c;
}

Rat push_forward(const Conjugacy& c, const Rat& s) { return c.scale * s + c.offset; }

Rat pull_back(const Conjugacy& c, const Rat& r) { return r / c.scale - c.offset / c.scale; }

Rat eval_translation(const Rat& q, const Rat& r) { return r * r - q; }

std::optional<AffineConjugacy> general_conjugacy(const Rat& a1, const Rat& b1, const Rat& c1, const Rat& a2,
                                                 const Rat& b2, const Rat& c2) {
  if (a1 == 0 || a2 == 0) throw std::domain_error("general_conjugacy needs nonzero leading coefficients");
  if (a1 * (b1 + c1) != a2 * (b2 + c2)) return std::nullopt;
  return AffineConjugacy{a1 / a2, (a1 * b1 - a2 * b2) / a2};
}

LatticeCert lattice_check(const RationalPoly& p) {
  if (p.degree() < 2) throw std::domain_error("lattice_check needs degree >= 2");
  LatticeCert cert;
  for (long i = 2; i <= p.degree(); ++i) {
    const Int& d = p[static_cast<std::size_t>(i)].get_den();
    mpz_lcm(cert.l.get_mpz_t(), cert.l.get_mpz_t(), d.get_mpz_t());
  }
  if (!is_integral(p[1])) {
    cert.reason = "linear coefficient " + to_string(p[1]) + " is not an integer";
    return cert;
  }
  Rat scaled = p[0] / Rat{cert.l};
  if (!is_integral(scaled)) {
    cert.reason = "a0/l = " + to_string(scaled) + " is not an integer";
    return cert;
  }
  cert.holds = true;
  cert.reason = "a1 = " + to_string(p[1]) + " and a0/l = " + to_string(scaled) + " are integers";
  return cert;
}

}  // namespace orbitforge
