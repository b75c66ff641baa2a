#include "orbitforge/modular.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace orbitforge {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

u64 residue(const Int& x, u64 m) { return mpz_fdiv_ui(x.get_mpz_t(), m); }

// Residue arithmetic for one map and modulus.
struct ModularStep {
  u64 modulus;
  bool power;
  u64 degree = 0;
  u64 k = 0;
  u64 a = 0, b = 0, c = 0;

  ModularStep(const IntegerMap& f, u64 m) : modulus(m), power(std::holds_alternative<PowerMap>(f)) {
    if (power) {
      const auto& p = std::get<PowerMap>(f);
      degree = static_cast<u64>(p.m);
      k = residue(p.k, m);
    } else {
      const auto& q = std::get<QuadMap>(f);
      a = residue(q.a, m);
      b = residue(q.b, m);
      c = residue(q.c, m);
    }
  }

  u64 operator()(u64 x) const {
    if (power) {
      u64 v = powmod(x, degree, modulus);
      return v >= k ? v - k : v + (modulus - k);
    }
    u64 v = mulmod(a, mulmod(x, x, modulus), modulus);
    v = (v + mulmod(b, x, modulus)) % modulus;
    return (v + c) % modulus;
  }
};

void check_modulus(u64 m) {
  if (m < 2) throw std::domain_error("modulus must be >= 2");
  if (m > max_table_modulus) throw std::domain_error("modulus too large for an in-memory successor table");
}

}  // namespace

std::vector<std::uint32_t> successor_table(const IntegerMap& f, std::uint64_t modulus, unsigned workers) {
  check_modulus(modulus);
  const ModularStep step(f, modulus);
  std::vector<std::uint32_t> succ(modulus);
  auto fill = [&](u64 lo, u64 hi) {
    for (u64 x = lo; x < hi; ++x) succ[x] = static_cast<std::uint32_t>(step(x));
  };
  constexpr u64 parallel_threshold = 1u << 15;
  if (workers <= 1 || modulus < parallel_threshold) {
    fill(0, modulus);
    return succ;
  }
  {
    std::vector<std::jthread> pool;
    const u64 chunk = (modulus + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const u64 lo = w * chunk;
      const u64 hi = std::min<u64>(modulus, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(fill, lo, hi);
    }
  }
  return succ;
}

FunctionalGraphSummary functional_graph(const IntegerMap& f, std::uint64_t modulus, unsigned workers) {
  check_modulus(modulus);
  const auto succ = successor_table(f, modulus, workers);
  const u64 n = modulus;

  std::vector<std::uint32_t> indeg(n, 0);
  for (u64 x = 0; x < n; ++x) ++indeg[succ[x]];

  // Peel: order[] receives nodes in removal order.
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (u64 x = 0; x < n; ++x)
    if (indeg[x] == 0) order.push_back(static_cast<std::uint32_t>(x));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto y = succ[order[i]];
    if (--indeg[y] == 0) order.push_back(y);
  }

  // Nodes never peeled form a disjoint union of cycles.
  std::vector<std::uint8_t> on_cycle(n, 1);
  for (auto v : order) on_cycle[v] = 0;

  FunctionalGraphSummary s;
  s.modulus = s.node_count = n;
  std::vector<std::uint8_t> seen(n, 0);
  for (u64 x = 0; x < n; ++x) {
    if (!on_cycle[x] || seen[x]) continue;
    u64 len = 0;
    for (u64 y = x; !seen[y]; y = succ[y]) {
      seen[y] = 1;
      ++len;
    }
    s.cycle_lengths.push_back(len);
  }
  std::sort(s.cycle_lengths.begin(), s.cycle_lengths.end());
  s.cycle_count = s.cycle_lengths.size();
  s.max_cycle_length = s.cycle_lengths.empty() ? 0 : s.cycle_lengths.back();
  s.nodes_on_cycles = n - order.size();

  // A node is peeled before its successor, so the reverse order reaches each
  // successor's depth first.
  std::vector<std::uint32_t> depth(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto y = succ[*it];
    depth[*it] = on_cycle[y] ? 1 : depth[y] + 1;
    s.max_tail_length = std::max<u64>(s.max_tail_length, depth[*it]);
  }
  return s;
}

FunctionalGraphSummary naive_graph_oracle(const IntegerMap& f, std::uint64_t modulus) {
  if (modulus < 2) throw std::domain_error("modulus must be >= 2");
  auto next = [&](u64 x) {
    Int y = eval(f, Int{static_cast<unsigned long>(x)});
    return static_cast<u64>(mpz_fdiv_ui(y.get_mpz_t(), modulus));
  };

  std::map<u64, u64> cycles;  // smallest member -> length
  FunctionalGraphSummary s;
  s.modulus = s.node_count = modulus;
  for (u64 x = 0; x < modulus; ++x) {
    std::map<u64, u64> index;
    std::vector<u64> path;
    u64 y = x;
    while (!index.contains(y)) {
      index.emplace(y, path.size());
      path.push_back(y);
      y = next(y);
    }
    const u64 start = index[y];
    s.max_tail_length = std::max(s.max_tail_length, start);
    const u64 smallest = *std::min_element(path.begin() + static_cast<std::ptrdiff_t>(start), path.end());
    cycles.emplace(smallest, path.size() - start);
  }
  for (const auto& [_, len] : cycles) s.cycle_lengths.push_back(len);
  std::sort(s.cycle_lengths.begin(), s.cycle_lengths.end());
  s.cycle_count = s.cycle_lengths.size();
  s.max_cycle_length = s.cycle_lengths.back();
  for (auto len : s.cycle_lengths) s.nodes_on_cycles += len;
  return s;
}

std::string checkpoint_line(const IntegerMap& f, const ScanRow& row) {
  std::ostringstream out;
  if (const auto* p = std::get_if<PowerMap>(&f))
    out << p->m << ' ' << to_string(p->k);
  else {
    const auto& q = std::get<QuadMap>(f);
    out << "quad " << to_string(q.a) << ' ' << to_string(q.b) << ' ' << to_string(q.c);
  }
  out << ' ' << row.modulus << ' ' << row.max_cycle_length << ' ' << row.cycle_count << ' ' << row.nodes_on_cycles
      << ' ' << row.max_tail_length;
  return out.str();
}

namespace {

u64 parse_u64(const std::string& tok, const std::string& line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw CheckpointError("malformed checkpoint record: '" + line + "'");
  return std::stoull(tok);
}

}  // namespace

std::vector<ScanRow> load_checkpoint(const std::filesystem::path& path, const IntegerMap& f) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::vector<ScanRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);

    std::optional<IntegerMap> record_map;
    std::size_t pos = 0;
    try {
      if (!tok.empty() && tok[0] == "quad") {
        if (tok.size() < 4) throw CheckpointError("");
        record_map = QuadMap{parse_int(tok[1]), parse_int(tok[2]), parse_int(tok[3])};
        pos = 4;
      } else {
        if (tok.size() < 2) throw CheckpointError("");
        record_map = PowerMap{static_cast<long>(parse_u64(tok[0], line)), parse_int(tok[1])};
        pos = 2;
      }
    } catch (const std::exception&) {
      throw CheckpointError("malformed checkpoint record: '" + line + "'");
    }
    const std::size_t fields = tok.size() - pos;
    // Short records (M max_cycle cycle_count) lack the tail columns; the
    // modulus is recomputed rather than trusted.
    if (fields != 5 && fields != 3) throw CheckpointError("malformed checkpoint record: '" + line + "'");
    if (*record_map != f) continue;
    if (fields == 3) {
      for (std::size_t i = pos; i < tok.size(); ++i) parse_u64(tok[i], line);
      continue;
    }
    ScanRow r;
    r.modulus = parse_u64(tok[pos], line);
    r.max_cycle_length = parse_u64(tok[pos + 1], line);
    r.cycle_count = parse_u64(tok[pos + 2], line);
    r.nodes_on_cycles = parse_u64(tok[pos + 3], line);
    r.max_tail_length = parse_u64(tok[pos + 4], line);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ScanRow> max_cycle_scan(const IntegerMap& f, const ScanOptions& opts) {
  if (opts.stride == 0) throw std::domain_error("stride must be >= 1");
  std::map<u64, ScanRow> done;
  std::ofstream log;
  if (opts.checkpoint) {
    if (std::filesystem::exists(*opts.checkpoint))
      for (const auto& r : load_checkpoint(*opts.checkpoint, f)) done.emplace(r.modulus, r);
    log.open(*opts.checkpoint, std::ios::app);
    if (!log) throw CheckpointError("cannot write checkpoint " + opts.checkpoint->string());
  }

  std::vector<ScanRow> rows;
  std::size_t fresh = 0;
  for (u64 m = opts.first; m <= opts.last; m += opts.stride) {
    if (auto it = done.find(m); it != done.end()) {
      rows.push_back(it->second);
    } else {
      if (opts.max_new_rows && fresh == *opts.max_new_rows) break;
      const auto t0 = std::chrono::steady_clock::now();
      const auto g = functional_graph(f, m, opts.workers);
      ScanRow r{m, g.max_cycle_length, g.cycle_count, g.nodes_on_cycles, g.max_tail_length,
                std::chrono::steady_clock::now() - t0};
      ++fresh;
      if (log.is_open()) {
        log << checkpoint_line(f, r) << '\n' << std::flush;
        if (!log) throw CheckpointError("write to checkpoint failed");
      }
      rows.push_back(r);
    }
    if (opts.last - m < opts.stride) break;  // no overflow past last
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << scan_csv_header << '\n';
  for (const auto& r : rows)
    out << r.modulus << ',' << r.max_cycle_length << ',' << r.cycle_count << ',' << r.nodes_on_cycles << ','
        << r.max_tail_length << '\n';
  return out.str();
}

}  // namespace orbitforge
