#pragma once

// The iterated map families and the conjugacy that carries a general integer
// quadratic onto the translation x^2 - q.

#include "orbitforge/numeric.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orbitforge {

/// f(x) = x^m - k, m >= 1.
struct PowerMap {
  long m = 2;
  Int k;

  PowerMap() = default;
  PowerMap(long degree, Int shift);

  friend bool operator==(const PowerMap&, const PowerMap&) = default;
};

/// Q(x) = a x^2 + b x + c, a != 0.
struct QuadMap {
  Int a{1};
  Int b;
  Int c;

  QuadMap() = default;
  QuadMap(Int a_, Int b_, Int c_);

  friend bool operator==(const QuadMap&, const QuadMap&) = default;
};

/// a_0 + a_1 x + ... + a_m x^m with rational coefficients, a_m != 0.
class RationalPoly {
 public:
  explicit RationalPoly(std::vector<Rat> coeffs);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  std::vector<Rat> coeffs_;
};

/// Integer-to-integer maps the oracle and modular scanner can iterate.
using IntegerMap = std::variant<PowerMap, QuadMap>;

Int eval(const PowerMap& f, const Int& x);
Rat eval(const PowerMap& f, const Rat& x);
Int eval(const QuadMap& f, const Int& x);
Rat eval(const QuadMap& f, const Rat& x);
Rat eval(const RationalPoly& p, const Rat& x);
Int eval(const IntegerMap& f, const Int& x);

/// "x^2 - 7", "-2 x^2 + 2 x + 1" style description used in reports.
std::string describe(const PowerMap& f);
std::string describe(const QuadMap& f);
std::string describe(const IntegerMap& f);

/// Affine change of coordinates r = scale * s + offset taking Q to x^2 - q.
struct Conjugacy {
  Rat scale;
  Rat offset;
  Rat q;
};

/// scale = a, offset = b/2, q = b(b-2)/4 - ac.
Conjugacy conjugacy_of_quad(const QuadMap& f);

Rat push_forward(const Conjugacy& c, const Rat& s);
Rat pull_back(const Conjugacy& c, const Rat& r);

/// Evaluates the translation x^2 - q.
Rat eval_translation(const Rat& q, const Rat& r);

/// h(x) = alpha x + beta with h o f1 = f2 o h.
struct AffineConjugacy {
  Rat alpha;
  Rat beta;
};

/// Conjugacy between f_i(x) = a_i (x + b_i)^2 + c_i. Present exactly when
/// a1 (b1 + c1) == a2 (b2 + c2). Throws std::domain_error if a1 or a2 is zero.
std::optional<AffineConjugacy> general_conjugacy(const Rat& a1, const Rat& b1, const Rat& c1, const Rat& a2,
                                                 const Rat& b2, const Rat& c2);

/// Result of testing whether a rational polynomial maps l*Z into itself.
struct LatticeCert {
  Int l{1};
  bool holds = false;
  std::string reason;
};

/// l = lcm of the denominators of a_2..a_m; holds iff a_1 and a_0 / l are
/// integers. Throws std::domain_error for degree < 2.
LatticeCert lattice_check(const RationalPoly& p);

}  // namespace orbitforge
