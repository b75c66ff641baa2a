#pragma once

// Exact integer and rational kernel.
//
// Every classification decision in orbitforge is made with the types and
// predicates in this header. Int and Rat are GMP values, so arithmetic never
// rounds or overflows. The only irrational quantities that appear are the
// roots
//
//     beta   : positive root of x^m - x - k              (k >= 0)
//     gamma  : (k - beta)^(1/m)                          (k >= beta)
//     B_q    : (1 + sqrt(1 + 4q)) / 2                    (q >= -1/4)
//     C_q    : sqrt(q - B_q)                             (q >= B_q)
//
// and they are never materialised as floating point. Callers ask on which
// side of the root a rational point lies, and the answer is decided by the
// sign of a polynomial evaluated exactly.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace orbitforge {

using Int = mpz_class;
using Rat = mpq_class;

/// Position of a point relative to a real root.
enum class Side { below, equal, above };

std::string_view to_string(Side s);

// ---------------------------------------------------------------------------
// Integer helpers

/// floor(sqrt(n)); throws std::domain_error for n < 0.
Int isqrt(const Int& n);

/// floor(n^(1/m)); throws std::domain_error for n < 0 or m < 1.
Int iroot(const Int& n, long m);

/// r >= 0 with r*r == n, or nullopt.
std::optional<Int> perfect_square_root(const Int& n);

/// n^e for e >= 0.
Int ipow(const Int& n, unsigned long e);
Rat rpow(const Rat& x, unsigned long e);

/// Floor and ceiling of a rational.
Int floor(const Rat& x);
Int ceil(const Rat& x);

bool is_integral(const Rat& x);

/// Builds num/den in canonical form; throws std::domain_error when den == 0.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p", "-p", "p/q" or "-p/q". Throws std::invalid_argument.
Rat parse_rat(std::string_view text);
Int parse_int(std::string_view text);

/// Full decimal rendering ("-3", "7/4"). Never scientific notation.
std::string to_string(const Int& x);
std::string to_string(const Rat& x);

// ---------------------------------------------------------------------------
// Exact root predicates

/// Orders integer x >= 1 against beta = positive root of x^m - x - k.
/// Requires m >= 2 and k >= 1; throws std::domain_error otherwise.
Side compare_to_beta(const Int& x, long m, const Int& k);

/// Orders integer x >= 0 against gamma = (k - beta)^(1/m).
/// Requires m >= 2, k >= 1 and k >= beta (gamma real).
Side compare_to_gamma(const Int& x, long m, const Int& k);

/// The four supported root families.
enum class RootKind { beta, gamma, b_q, c_q };

std::string_view to_string(RootKind k);

/// Identifies one concrete root: (m, k) for beta/gamma, q for B_q/C_q.
struct RootSpec {
  RootKind kind = RootKind::beta;
  long m = 2;
  Int k;
  Rat q;

  static RootSpec beta(long m, const Int& k);
  static RootSpec gamma(long m, const Int& k);
  static RootSpec b_q(const Rat& q);
  static RootSpec c_q(const Rat& q);
};

/// True when the requested root is a real number.
bool root_exists(const RootSpec& root);

/// Orders a rational point against the root. Throws std::domain_error when
/// the root is not real or x lies outside the region where the predicate is
/// defined (x < 0 for gamma and C_q).
Side compare_to_root(const Rat& x, const RootSpec& root);

/// Certified decimal approximation of a root.
struct DecimalApprox {
  std::string value;  ///< truncated decimal with exactly `digits` fractional digits
  int digits = 0;
  Rat lower;          ///< value as an exact rational; lower <= root
  Rat error_bound;    ///< root - lower <= error_bound <= 10^-digits; 0 when exact

  /// lower + error_bound, an upper bracket for the root.
  Rat upper() const { return lower + error_bound; }
};

/// Truncates root * 10^digits by integer bisection on the defining polynomial.
/// Throws std::domain_error if the root is not real or digits < 0.
DecimalApprox approx_root(const RootSpec& root, int digits);

/// Renders an exact rational as a decimal truncated toward zero.
std::string to_decimal(const Rat& x, int digits);

}  // namespace orbitforge
