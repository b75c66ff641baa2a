#pragma once
// Independent reference computations used only by the tests. None of these
// call into the library's predicates or search routines.

#include "orbitforge/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace testsupport {

using orbitforge::Int;

/// Every j in [-r, r] with j^m - j == k, by plain scanning.
inline std::vector<Int> scan_fixed_points(long m, const Int& k, long r) {
  std::vector<Int> out;
  for (long j = -r; j <= r; ++j) {
    Int p = 1;
    for (long i = 0; i < m; ++i) p *= j;
    if (p - j == k) out.push_back(Int{j});
  }
  return out;
}

/// Root of g on [lo, hi] (g(lo) < 0 < g(hi)) by floating bisection.
template <class G>
double bisect(G g, double lo, double hi, int rounds = 200) {
  for (int i = 0; i < rounds; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double beta_double(int m, double k) {
  return bisect([&](double x) { return std::pow(x, m) - x - k; }, 1.0, k + 2.0);
}

inline double gamma_double(int m, double k) { return std::pow(k - beta_double(m, k), 1.0 / m); }

/// Cycles met from seeds in [-r, r] using Floyd's tortoise and hare, giving up
/// on a seed once |x| exceeds `limit`. Each cycle is returned rotated so the
/// minimum comes first.
template <class F>
std::set<std::vector<long long>> floyd_cycles(F f, long long r, long long limit, int steps = 4000) {
  std::set<std::vector<long long>> out;
  auto big = [&](long long x) { return x > limit || x < -limit; };
  for (long long s = -r; s <= r; ++s) {
    long long slow = s, fast = s;
    bool escaped = false;
    for (int i = 0; i < steps; ++i) {
      slow = f(slow);
      fast = f(fast);
      if (big(fast)) { escaped = true; break; }
      fast = f(fast);
      if (big(fast) || big(slow)) { escaped = true; break; }
      if (slow == fast) break;
    }
    if (escaped || slow != fast) continue;
    std::vector<long long> cyc{slow};
    for (long long x = f(slow); x != slow; x = f(x)) cyc.push_back(x);
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    out.insert(cyc);
  }
  return out;
}

/// Functional graph statistics for x -> g(x) mod M by walking every node
/// with a position map. Independent of the library's table and peeling code.
struct GraphStats {
  std::uint64_t cycle_count = 0;
  std::uint64_t max_cycle = 0;
  std::uint64_t nodes_on_cycles = 0;
  std::uint64_t max_tail = 0;
  std::vector<std::uint64_t> lengths;
};

template <class G>
GraphStats walk_graph(G g, std::uint64_t M) {
  GraphStats st;
  std::vector<char> on_cycle(M, 0);
  for (std::uint64_t s = 0; s < M; ++s) {
    std::map<std::uint64_t, std::uint64_t> pos;
    std::uint64_t x = s;
    for (std::uint64_t i = 0; !pos.count(x); ++i) {
      pos[x] = i;
      x = g(x);
    }
    if (!on_cycle[x]) {
      std::uint64_t len = 0, y = x;
      do {
        on_cycle[y] = 1;
        y = g(y);
        ++len;
      } while (y != x);
      st.lengths.push_back(len);
    }
  }
  for (std::uint64_t s = 0; s < M; ++s) {
    std::uint64_t t = 0;
    for (std::uint64_t x = s; !on_cycle[x]; x = g(x)) ++t;
    st.max_tail = std::max(st.max_tail, t);
  }
  std::sort(st.lengths.begin(), st.lengths.end());
  st.cycle_count = st.lengths.size();
  for (auto l : st.lengths) {
    st.nodes_on_cycles += l;
    st.max_cycle = std::max(st.max_cycle, l);
  }
  return st;
}

}  // namespace testsupport
