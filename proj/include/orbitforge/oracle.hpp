#pragma once

// Brute-force ground truth. Every integer seed inside a certified escape
// bound is iterated exactly until it repeats a value or leaves the bound, and
// every cycle met on the way is recorded, whatever its period.

#include "orbitforge/classifier.hpp"
#include "orbitforge/maps.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orbitforge {

enum class BoundReason { lemma1_beta_floor, conjugacy_pullback, odd_m_monotone, empty_no_real_fixed_point };

std::string_view to_string(BoundReason r);

/// Every periodic integer point x of the map satisfies |x| <= bound, and an
/// integer orbit that leaves [-bound, bound] never comes back.
struct EscapeBound {
  Int bound;
  BoundReason justification = BoundReason::lemma1_beta_floor;
};

EscapeBound escape_bound(const PowerMap& f);
EscapeBound escape_bound(const QuadMap& f);
EscapeBound escape_bound(const IntegerMap& f);

struct EntersCycle {
  Cycle cycle;
  std::size_t tail_length = 0;
};
struct Escapes {
  std::size_t step = 0;
  std::string certificate;
};
struct Truncated {
  std::size_t cap = 0;
};

using TraceOutcome = std::variant<EntersCycle, Escapes, Truncated>;

struct OrbitTrace {
  Int seed;
  /// points[0] = seed, points[i+1] = f(points[i]). For EntersCycle the last
  /// point is the first repeated value; for Escapes it is the escaping value.
  std::vector<Int> points;
  TraceOutcome outcome;
};

/// Iterates at most `cap` steps. Throws std::domain_error when cap < 1.
OrbitTrace iterate_with_escape(const IntegerMap& f, const Int& seed, std::size_t cap);
OrbitTrace iterate_with_escape(const IntegerMap& f, const EscapeBound& bound, const Int& seed, std::size_t cap);

/// Every cycle reachable from seeds in [-bound, bound], split by period.
/// The result has no behavior tag.
OrbitClassification oracle_cycles(const IntegerMap& f);

struct CrossCheckReport {
  bool agree = false;
  /// The oracle found a cycle of period >= 3.
  bool anomaly = false;
  std::string diff;
  OrbitClassification classifier;
  OrbitClassification oracle;
};

/// Compares classify(f) with oracle_cycles(f).
CrossCheckReport cross_check(const IntegerMap& f);

}  // namespace orbitforge
