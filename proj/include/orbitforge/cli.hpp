#pragma once

// Command-line surface: classify, orbit, oracle, bounds, modscan,
// latticecheck and conjugate.

#include "orbitforge/classifier.hpp"
#include "orbitforge/maps.hpp"
#include "orbitforge/oracle.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitforge::cli {

enum ExitCode : int { exit_ok = 0, exit_disagreement = 1, exit_usage = 2, exit_io = 3 };

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo..hi" (inclusive) and comma lists of either, e.g. "4,6,8" or "-10..5,9".
/// Throws std::invalid_argument on malformed or empty ranges.
std::vector<Int> parse_grid(std::string_view spec);

/// Default worker count: ORBITFORGE_WORKERS if set, else the hardware count.
unsigned default_workers();

using Json = nlohmann::ordered_json;

Json map_to_json(const IntegerMap& f);
IntegerMap map_from_json(const Json& j);

/// {"map", "fixed_points", "two_cycles", "higher_cycles", "verdict", "witness"}
/// with every integer as a decimal string.
Json classification_to_json(const IntegerMap& f, const OrbitClassification& c);

struct ParsedClassification {
  IntegerMap map;
  OrbitClassification classification;
};

/// Inverse of classification_to_json. Throws std::invalid_argument.
ParsedClassification classification_from_json(const Json& j);

std::string render_table(const IntegerMap& f, const OrbitClassification& c);
std::string render_table(const IntegerMap& f, const EscapeBound& bound, const OrbitTrace& t);
Json trace_to_json(const IntegerMap& f, const EscapeBound& bound, const OrbitTrace& t);

// ---------------------------------------------------------------------------
// Bounding curves

struct CurvePoint {
  Rat param;  ///< k, or q = k - 1/4 in odd-b mode
  std::optional<DecimalApprox> beta;
  std::optional<DecimalApprox> gamma;
  std::optional<DecimalApprox> beta_minus_one;
  bool marked = false;
  std::optional<Int> j;
  std::string kind;  ///< "fixed", "two_cycle" or empty
  /// Lattice points (integers, or half-integers in odd-b mode) in [gamma, beta].
  std::vector<Rat> band;
};

/// One point per k in `ks`. Throws std::domain_error for k < 0 or digits <= 0.
std::vector<CurvePoint> bounding_curve(const std::vector<Int>& ks, int digits, bool odd_b);

std::string curves_csv(const std::vector<CurvePoint>& pts);
std::string curves_svg(const std::vector<CurvePoint>& pts, bool odd_b);

}  // namespace orbitforge::cli
