#include "orbitforge/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace orbitforge {

std::string_view to_string(Side s) {
  switch (s) {
    case Side::below: return "below";
    case Side::equal: return "equal";
    case Side::above: return "above";
  }
  return "?";
}

std::string_view to_string(RootKind k) {
  switch (k) {
    case RootKind::beta: return "beta";
    case RootKind::gamma: return "gamma";
    case RootKind::b_q: return "B_q";
    case RootKind::c_q: return "C_q";
  }
  return "?";
}

Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt: negative argument " + n.get_str());
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int iroot(const Int& n, long m) {
  if (m < 1) throw std::domain_error("iroot: degree must be >= 1");
  if (sgn(n) < 0) throw std::domain_error("iroot: negative argument " + n.get_str());
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

std::optional<Int> perfect_square_root(const Int& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  return isqrt(n);
}

Int ipow(const Int& n, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& x, unsigned long e) {
  Rat r{ipow(x.get_num(), e), ipow(x.get_den(), e)};
  return r;  // already canonical: gcd(num^e, den^e) = 1
}

Int floor(const Rat& x) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Int ceil(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

bool is_integral(const Rat& x) { return x.get_den() == 1; }

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r{num, den};
  r.canonicalize();
  return r;
}

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Int parse_int(std::string_view text) {
  if (!is_decimal_integer(text)) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  if (text.front() == '+') text.remove_prefix(1);
  return Int{std::string(text), 10};
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat{parse_int(text)};
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_decimal_integer(num) || den.empty() || !std::all_of(den.begin(), den.end(), [](unsigned char c) {
        return std::isdigit(c);
      }))
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  Int d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rat(parse_int(num), d);
}

std::string to_string(const Int& x) { return x.get_str(10); }

std::string to_string(const Rat& x) { return x.get_str(10); }

// ---------------------------------------------------------------------------

namespace {

Side from_sign(int s) { return s < 0 ? Side::below : (s == 0 ? Side::equal : Side::above); }

Side flip(Side s) {
  switch (s) {
    case Side::below: return Side::above;
    case Side::above: return Side::below;
    default: return Side::equal;
  }
}

// x^m - x - k is negative on (0, beta) and positive beyond it when k >= 0.
Side beta_side(const Rat& x, long m, const Int& k) {
  if (sgn(x) <= 0) return Side::below;
  Rat g = rpow(x, static_cast<unsigned long>(m)) - x - Rat{k};
  return from_sign(sgn(g));
}

Side bq_side(const Rat& x, const Rat& q) {
  static const Rat half{1, 2};
  if (x < half) return Side::below;
  return from_sign(sgn(x * x - x - q));
}

void require_degree(long m) {
  if (m < 2) throw std::domain_error("root predicates need degree m >= 2");
}

}  // namespace

RootSpec RootSpec::beta(long m, const Int& k) { return RootSpec{RootKind::beta, m, k, Rat{}}; }
RootSpec RootSpec::gamma(long m, const Int& k) { return RootSpec{RootKind::gamma, m, k, Rat{}}; }
RootSpec RootSpec::b_q(const Rat& q) { return RootSpec{RootKind::b_q, 2, Int{}, q}; }
RootSpec RootSpec::c_q(const Rat& q) { return RootSpec{RootKind::c_q, 2, Int{}, q}; }

bool root_exists(const RootSpec& r) {
  switch (r.kind) {
    case RootKind::beta:
      return r.m >= 2 && sgn(r.k) >= 0;
    case RootKind::gamma:
      return r.m >= 2 && sgn(r.k) >= 1 && beta_side(Rat{r.k}, r.m, r.k) != Side::below;
    case RootKind::b_q:
      return sgn(1 + 4 * r.q) >= 0;
    case RootKind::c_q:
      return sgn(1 + 4 * r.q) >= 0 && bq_side(r.q, r.q) != Side::below;
  }
  return false;
}

Side compare_to_root(const Rat& x, const RootSpec& r) {
  if (!root_exists(r)) throw std::domain_error(std::string("root ") + std::string(to_string(r.kind)) + " is not real");
  switch (r.kind) {
    case RootKind::beta:
      return beta_side(x, r.m, r.k);
    case RootKind::gamma: {
      // x >= gamma  <=>  x^m >= k - beta  <=>  beta >= k - x^m
      if (sgn(x) < 0) throw std::domain_error("gamma predicate needs x >= 0");
      Rat t = Rat{r.k} - rpow(x, static_cast<unsigned long>(r.m));
      if (sgn(t) <= 0) return Side::above;
      return flip(beta_side(t, r.m, r.k));
    }
    case RootKind::b_q:
      return bq_side(x, r.q);
    case RootKind::c_q: {
      if (sgn(x) < 0) throw std::domain_error("C_q predicate needs x >= 0");
      return flip(bq_side(r.q - x * x, r.q));
    }
  }
  throw std::logic_error("unreachable root kind");
}

Side compare_to_beta(const Int& x, long m, const Int& k) {
  require_degree(m);
  if (sgn(k) < 1) throw std::domain_error("compare_to_beta needs k >= 1");
  if (sgn(x) < 1) throw std::domain_error("compare_to_beta needs x >= 1");
  return beta_side(Rat{x}, m, k);
}

Side compare_to_gamma(const Int& x, long m, const Int& k) {
  require_degree(m);
  if (sgn(k) < 1) throw std::domain_error("compare_to_gamma needs k >= 1");
  if (sgn(x) < 0) throw std::domain_error("compare_to_gamma needs x >= 0");
  return compare_to_root(Rat{x}, RootSpec::gamma(m, k));
}

std::string to_decimal(const Rat& x, int digits) {
  if (digits < 0) throw std::domain_error("digits must be >= 0");
  Int scale = ipow(Int{10}, static_cast<unsigned long>(digits));
  Rat mag = abs(x);
  Int scaled;
  mpz_tdiv_q(scaled.get_mpz_t(), Int{mag.get_num() * scale}.get_mpz_t(), mag.get_den_mpz_t());
  std::string s = scaled.get_str(10);
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  std::string out = sgn(x) < 0 && scaled != 0 ? "-" : "";
  out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
  return out;
}

DecimalApprox approx_root(const RootSpec& root, int digits) {
  if (digits < 0) throw std::domain_error("digits must be >= 0");
  if (!root_exists(root)) throw std::domain_error(std::string("root ") + std::string(to_string(root.kind)) + " is not real");

  const Int scale = ipow(Int{10}, static_cast<unsigned long>(digits));
  auto side_at = [&](const Int& n) { return compare_to_root(make_rat(n, scale), root); };

  // Every supported root lies in [0, |param| + 2).
  Int cap = (root.kind == RootKind::beta || root.kind == RootKind::gamma) ? Int{abs(root.k)} : ceil(abs(root.q));
  Int lo = 0;
  Int hi = (cap + 2) * scale;
  if (side_at(lo) == Side::above || side_at(hi) != Side::above)
    throw std::logic_error("approx_root: bracket invariant violated");
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (side_at(mid) == Side::above)
      hi = mid;
    else
      lo = mid;
  }

  DecimalApprox out;
  out.digits = digits;
  out.lower = make_rat(lo, scale);
  out.error_bound = side_at(lo) == Side::equal ? Rat{0} : make_rat(1, scale);
  out.value = to_decimal(out.lower, digits);
  return out;
}

}  // namespace orbitforge
