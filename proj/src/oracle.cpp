#include "orbitforge/oracle.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace orbitforge {

std::string_view to_string(BoundReason r) {
  switch (r) {
    case BoundReason::lemma1_beta_floor: return "lemma1_beta_floor";
    case BoundReason::conjugacy_pullback: return "conjugacy_pullback";
    case BoundReason::odd_m_monotone: return "odd_m_monotone";
    case BoundReason::empty_no_real_fixed_point: return "empty_no_real_fixed_point";
  }
  return "?";
}

EscapeBound escape_bound(const PowerMap& f) {
  if (f.m < 1) throw std::domain_error("power map degree must be >= 1");
  if (f.m % 2 == 1) return {iroot(abs(f.k), f.m) + 2, BoundReason::odd_m_monotone};
  // Even m. For k <= -1 there is no real fixed point and x^m - k > x
  // everywhere; for k = 0 the fixed points are 0 and 1.
  if (f.k <= -1) return {1, BoundReason::empty_no_real_fixed_point};
  if (f.k == 0) return {1, BoundReason::lemma1_beta_floor};
  // |x| > beta > 1 escapes; for integers |x| > floor(beta) is the same test.
  return {beta_floor(f.m, f.k), BoundReason::lemma1_beta_floor};
}

EscapeBound escape_bound(const QuadMap& f) {
  // r = a s + b/2 conjugates Q to x^2 - q. Periodic r satisfy |r| <= B_q, so
  // periodic integers s satisfy |s| <= (B_q + |b|/2) / |a|.
  const Conjugacy c = conjugacy_of_quad(f);
  const Int disc = Int{4 * c.q.get_num() / c.q.get_den()} + 1;  // 1 + 4q, an integer
  const Int abs_a = abs(f.a), abs_b = abs(f.b);
  if (disc < 0) {
    // x^2 - q > x for every real x: no cycles; scan a token neighbourhood.
    return {Int{abs_b / (2 * abs_a)} + 1, BoundReason::empty_no_real_fixed_point};
  }
  // floor((1 + |b| + sqrt(disc)) / (2|a|)) == floor((1 + |b| + isqrt(disc)) / (2|a|))
  Int num = 1 + abs_b + isqrt(disc);
  Int den = 2 * abs_a;
  Int bound;
  mpz_fdiv_q(bound.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {bound, BoundReason::conjugacy_pullback};
}

EscapeBound escape_bound(const IntegerMap& f) {
  return std::visit([](const auto& g) { return escape_bound(g); }, f);
}

OrbitTrace iterate_with_escape(const IntegerMap& f, const Int& seed, std::size_t cap) {
  return iterate_with_escape(f, escape_bound(f), seed, cap);
}

OrbitTrace iterate_with_escape(const IntegerMap& f, const EscapeBound& eb, const Int& seed, std::size_t cap) {
  if (cap < 1) throw std::domain_error("iteration cap must be >= 1");
  OrbitTrace t;
  t.seed = seed;
  std::map<Int, std::size_t> first_seen;
  Int x = seed;
  for (std::size_t step = 0;; ++step) {
    t.points.push_back(x);
    if (abs(x) > eb.bound) {
      std::ostringstream cert;
      cert << "|" << to_string(x) << "| > " << to_string(eb.bound) << " (" << to_string(eb.justification) << ")";
      t.outcome = Escapes{step, cert.str()};
      return t;
    }
    auto [it, inserted] = first_seen.emplace(x, step);
    if (!inserted) {
      const std::size_t start = it->second;
      std::vector<Int> pts(t.points.begin() + static_cast<std::ptrdiff_t>(start),
                           t.points.begin() + static_cast<std::ptrdiff_t>(step));
      t.outcome = EntersCycle{Cycle::canonical(std::move(pts)), start};
      return t;
    }
    if (step == cap) {
      t.outcome = Truncated{cap};
      return t;
    }
    x = eval(f, x);
  }
}

OrbitClassification oracle_cycles(const IntegerMap& f) {
  const EscapeBound eb = escape_bound(f);
  // Inside the bound there are 2B+1 integers, plus one escaping step.
  const std::size_t cap = 4 * eb.bound.get_ui() + 4;
  std::set<Cycle> cycles;
  for (Int s = -eb.bound; s <= eb.bound; ++s) {
    auto t = iterate_with_escape(f, eb, s, cap);
    if (auto* e = std::get_if<EntersCycle>(&t.outcome)) cycles.insert(e->cycle);
    if (std::holds_alternative<Truncated>(t.outcome))
      throw std::logic_error("oracle trace truncated from seed " + to_string(s));
  }
  OrbitClassification out;
  for (const auto& c : cycles) {
    if (c.period() == 1)
      out.fixed_points.push_back(c.points().front());
    else if (c.period() == 2)
      out.two_cycles.push_back(c);
    else
      out.higher_cycles.push_back(c);
  }
  out.normalize();
  return out;
}

namespace {

std::string render_points(const std::vector<Int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

std::string render_cycles(const std::vector<Cycle>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render_points(v[i].points());
  return s + "]";
}

}  // namespace

CrossCheckReport cross_check(const IntegerMap& f) {
  CrossCheckReport r;
  r.classifier = classify(f);
  r.oracle = oracle_cycles(f);
  r.anomaly = !r.oracle.higher_cycles.empty();

  if (r.classifier.behavior == Behavior::all_seeds_fixed) {
    // The classifier cannot list infinitely many fixed points; the oracle must
    // see every scanned seed as fixed and nothing else.
    const Int b = escape_bound(f).bound;
    bool every_seed = r.oracle.two_cycles.empty() && r.oracle.higher_cycles.empty() &&
                      r.oracle.fixed_points.size() == 2 * b.get_ui() + 1;
    r.agree = every_seed;
    if (!every_seed) r.diff = "expected every seed in [-" + to_string(b) + ", " + to_string(b) + "] to be fixed";
    return r;
  }

  r.agree = r.classifier.same_cycles(r.oracle) && !r.anomaly;
  if (!r.agree) {
    std::ostringstream d;
    if (r.classifier.fixed_points != r.oracle.fixed_points)
      d << "fixed points: classifier " << render_points(r.classifier.fixed_points) << " oracle "
        << render_points(r.oracle.fixed_points) << "; ";
    if (r.classifier.two_cycles != r.oracle.two_cycles)
      d << "2-cycles: classifier " << render_cycles(r.classifier.two_cycles) << " oracle "
        << render_cycles(r.oracle.two_cycles) << "; ";
    if (!r.oracle.higher_cycles.empty()) d << "ANOMALY higher cycles " << render_cycles(r.oracle.higher_cycles) << "; ";
    r.diff = d.str();
  }
  return r;
}

}  // namespace orbitforge
