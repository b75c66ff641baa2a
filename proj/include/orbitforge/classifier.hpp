#pragma once

// Closed-form classification of the periodic integer orbits of x^m - k and
// a x^2 + b x + c, together with the interval facts those answers rest on.
//
// Every answer is re-verified by substitution before it is returned. The
// oracle module checks completeness independently.

#include "orbitforge/maps.hpp"
#include "orbitforge/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace orbitforge {

/// A periodic orbit in canonical rotation (smallest point first).
class Cycle {
 public:
  Cycle() = default;
  /// Rotates `points` so the minimum comes first. Throws std::invalid_argument
  /// if empty or if points repeat.
  static Cycle canonical(std::vector<Int> points);

  std::size_t period() const { return points_.size(); }
  const std::vector<Int>& points() const { return points_; }

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend bool operator<(const Cycle& a, const Cycle& b) { return a.points_ < b.points_; }

 private:
  std::vector<Int> points_;
};

/// True when f maps points[i] to points[i+1 mod p].
bool verifies(const IntegerMap& f, const Cycle& c);

/// What happens to seeds that are not periodic.
enum class Behavior { diverges_to_plus_inf, diverges_to_minus_inf, diverges_sign_split, all_seeds_fixed };

std::string_view to_string(Behavior b);
std::optional<Behavior> behavior_from_string(std::string_view s);

/// The parameter condition that produced the answer, e.g. "k = j(j+1)", j = 2.
struct Witness {
  std::string condition;
  std::optional<Int> j;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct OrbitClassification {
  std::vector<Int> fixed_points;
  std::vector<Cycle> two_cycles;
  std::vector<Cycle> higher_cycles;
  /// Absent for oracle-produced classifications.
  std::optional<Behavior> behavior;
  std::optional<Witness> witness;

  bool has_cycles() const { return !fixed_points.empty() || !two_cycles.empty() || !higher_cycles.empty(); }
  /// Sorts and deduplicates all three lists.
  void normalize();
  /// Structural equality of the three cycle lists only.
  bool same_cycles(const OrbitClassification& o) const {
    return fixed_points == o.fixed_points && two_cycles == o.two_cycles && higher_cycles == o.higher_cycles;
  }
};

/// All integers j with j^m - j == k. Empty for m == 1.
std::vector<Int> integer_fixed_points_power(const PowerMap& f);

/// Complete periodic-orbit answer for x^m - k.
OrbitClassification classify_power(const PowerMap& f);

enum class PronicKind { pronic, pronic_plus_one };

std::string_view to_string(PronicKind k);

struct PronicSolution {
  Int j;
  PronicKind kind;

  friend bool operator==(const PronicSolution&, const PronicSolution&) = default;
};

/// The unique j >= 0 with k = j(j+1) or k = j(j+1) + 1.
std::optional<PronicSolution> solve_pronic(const Int& k);

/// Integers n >= 0 with gamma <= n <= beta for x^m - k. Requires m even and
/// k >= 2; throws std::domain_error otherwise.
std::vector<Int> interval_integers(long m, const Int& k);

/// floor(beta) for x^m - k with k >= 1, by bisection on compare_to_beta.
Int beta_floor(long m, const Int& k);

struct GapCheckReport {
  bool pass = true;
  Int checked;                       ///< number of k values examined
  std::optional<Int> first_violation;
  std::string detail;
};

/// For x^2 - k and every k in [2, k_max], checks beta - 2 <= gamma < beta - 1
/// exactly, with beta and gamma^2 handled as elements of Q(sqrt(1 + 4k)).
GapCheckReport beta_gamma_gap_checks(const Int& k_max);

/// Certified enclosure of beta - gamma for x^2 - k.
struct GapEnclosure {
  Int k;
  Rat lower;
  Rat upper;
};

GapEnclosure gap_enclosure(const Int& k, int digits);

/// Complete periodic-orbit answer for a x^2 + b x + c.
OrbitClassification classify_quad(const QuadMap& f);

OrbitClassification classify(const IntegerMap& f);

/// Which family a bounds profile describes.
struct PowerFamily {
  long m = 2;
  Int k;
};
struct TranslationFamily {
  Rat q;
};

struct BoundsProfile {
  std::variant<PowerFamily, TranslationFamily> family;
  Int beta_floor;
  /// Integers n >= 0 in [gamma, beta] (resp. [C_q, B_q]).
  std::vector<Int> interval_integers;
  /// Orbit-lattice points in [C_q, B_q]: integers when 4q is divisible by 4,
  /// half-integers when 4q = 3 mod 4. Equals interval_integers for powers.
  std::vector<Rat> interval_points;
  DecimalApprox beta_approx;
  std::optional<DecimalApprox> gamma_approx;
  /// (alpha, beta) or (A_q, B_q) when both fixed points are rational.
  std::optional<std::pair<Rat, Rat>> fixed_point_pair;
  /// The rational 2-cycle of x^2 - k (resp. x^2 - q), smaller point first,
  /// when 4q - 3 is the square of a nonzero rational.
  std::optional<std::pair<Rat, Rat>> two_cycle;
};

/// Throws std::domain_error when beta (resp. B_q) is not real.
BoundsProfile bounds_profile(const PowerFamily& family, int digits = 6);
BoundsProfile bounds_profile(const TranslationFamily& family, int digits = 6);

}  // namespace orbitforge
