#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforge/modular.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace orbitforge;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("orbitforge_test_" + name);
  std::filesystem::remove(p);
  return p;
}

void check_against_walk(const IntegerMap& f, std::uint64_t M) {
  auto g = [&](std::uint64_t x) {
    Int r = eval(f, Int{static_cast<unsigned long>(x)}) % Int{static_cast<unsigned long>(M)};
    if (r < 0) r += M;
    return static_cast<std::uint64_t>(r.get_ui());
  };
  const auto want = testsupport::walk_graph(g, M);
  const auto got = functional_graph(f, M);
  CHECK(got.modulus == M);
  CHECK(got.node_count == M);
  CHECK(got.cycle_count == want.cycle_count);
  CHECK(got.cycle_lengths == want.lengths);
  CHECK(got.max_cycle_length == want.max_cycle);
  CHECK(got.nodes_on_cycles == want.nodes_on_cycles);
  CHECK(got.max_tail_length == want.max_tail);
}

}  // namespace

TEST_CASE("successor_table") {
  const auto t = successor_table(PowerMap(2, 1), 3);
  CHECK(t == std::vector<std::uint32_t>{2, 0, 0});
  CHECK(successor_table(QuadMap(-3, 5, -7), 11) == successor_table(QuadMap(-3, 5, -7), 11, 4));
  CHECK(successor_table(PowerMap(7, -12), 1000, 3) == successor_table(PowerMap(7, -12), 1000, 1));
}

TEST_CASE("functional_graph examples") {
  auto two = functional_graph(PowerMap(2, 0), 2);
  CHECK(two.cycle_count == 2);
  CHECK(two.cycle_lengths == std::vector<std::uint64_t>{1, 1});
  CHECK(two.max_tail_length == 0);

  auto three = functional_graph(PowerMap(2, 1), 3);
  CHECK(three.cycle_count == 1);
  CHECK(three.cycle_lengths == std::vector<std::uint64_t>{2});
  CHECK(three.max_tail_length == 1);

  CHECK(functional_graph(PowerMap(2, 3), 5) == naive_graph_oracle(PowerMap(2, 3), 5));
  CHECK(functional_graph(PowerMap(3, 1), 7) == naive_graph_oracle(PowerMap(3, 1), 7));
  CHECK(functional_graph(QuadMap(1, 1, -2), 4) == naive_graph_oracle(QuadMap(1, 1, -2), 4));

  CHECK_THROWS_AS(functional_graph(PowerMap(2, 1), 1), std::domain_error);
  CHECK_THROWS_AS(functional_graph(PowerMap(2, 1), max_table_modulus + 1), std::domain_error);
}

TEST_CASE("functional_graph against an independent walk") {
  for (long k = 0; k <= 10; ++k)
    for (std::uint64_t M = 2; M <= 60; ++M) check_against_walk(PowerMap(2, k), M);
  for (std::uint64_t M : {97u, 128u, 255u, 1000u}) {
    check_against_walk(PowerMap(3, -5), M);
    check_against_walk(PowerMap(6, 1), M);
    check_against_walk(QuadMap(-2, 3, 7), M);
  }
}

TEST_CASE("functional_graph is independent of worker count") {
  const IntegerMap f = PowerMap(2, 1);
  const auto one = functional_graph(f, 100000, 1);
  CHECK(one == functional_graph(f, 100000, 4));
  CHECK(one == functional_graph(f, 100000, 7));
}

TEST_CASE("max_cycle_scan") {
  ScanOptions o;
  o.first = 2;
  o.last = 100;
  const auto rows = max_cycle_scan(PowerMap(2, 1), o);
  REQUIRE(rows.size() == 99);
  for (const auto& r : rows) {
    const auto n = naive_graph_oracle(PowerMap(2, 1), r.modulus);
    CHECK(r.max_cycle_length == n.max_cycle_length);
    CHECK(r.cycle_count == n.cycle_count);
  }

  o.first = 10;
  o.last = 30;
  o.stride = 7;
  const auto strided = max_cycle_scan(PowerMap(2, 1), o);
  REQUIRE(strided.size() == 3);
  CHECK(strided.back().modulus == 24);

  o.first = 5;
  o.last = 4;
  CHECK(max_cycle_scan(PowerMap(2, 1), o).empty());
}

TEST_CASE("M = 10^6 regression fixture") {
  const auto g = functional_graph(PowerMap(2, 1), 1000000, 4);
  CHECK(g.max_cycle_length == 6250);
  CHECK(g.cycle_count == 3);
  CHECK(g.nodes_on_cycles == 6254);
  CHECK(g.max_tail_length == 6);
}

TEST_CASE("checkpoint resume") {
  const IntegerMap f = QuadMap(2, -1, 3);
  ScanOptions full;
  full.first = 2;
  full.last = 80;
  const auto expected = scan_csv(max_cycle_scan(f, full));

  ScanOptions part = full;
  part.checkpoint = scratch("resume.ckpt");
  part.max_new_rows = 25;
  CHECK(max_cycle_scan(f, part).size() == 25);
  part.max_new_rows = 10;
  CHECK(max_cycle_scan(f, part).size() == 35);
  part.max_new_rows.reset();
  CHECK(scan_csv(max_cycle_scan(f, part)) == expected);
  CHECK(scan_csv(max_cycle_scan(f, part)) == expected);

  // Records for a different map in the same file are ignored.
  const auto other = load_checkpoint(*part.checkpoint, PowerMap(2, 1));
  CHECK(other.empty());
  std::filesystem::remove(*part.checkpoint);
}

TEST_CASE("checkpoint records") {
  ScanRow r{12, 2, 3, 4, 5, {}};
  CHECK(checkpoint_line(PowerMap(2, -1), r) == "2 -1 12 2 3 4 5");
  CHECK(checkpoint_line(QuadMap(1, 1, -2), r) == "quad 1 1 -2 12 2 3 4 5");

  const auto path = scratch("short.ckpt");
  {
    std::ofstream out(path);
    out << "2 1 12 2 3\n";
  }
  // Short records carry no tail data, so that modulus is recomputed.
  CHECK(load_checkpoint(path, PowerMap(2, 1)).empty());
  ScanOptions o;
  o.first = 11;
  o.last = 13;
  o.checkpoint = path;
  const auto rows = max_cycle_scan(PowerMap(2, 1), o);
  REQUIRE(rows.size() == 3);
  const auto g = functional_graph(PowerMap(2, 1), 12);
  CHECK(rows[1] == ScanRow{12, g.max_cycle_length, g.cycle_count, g.nodes_on_cycles, g.max_tail_length, {}});

  {
    std::ofstream out(path);
    out << "2 1 twelve 2 3\n";
  }
  CHECK_THROWS_AS(load_checkpoint(path, PowerMap(2, 1)), CheckpointError);
  std::filesystem::remove(path);
}

TEST_CASE("modular reduction coherence") {
  const IntegerMap f = QuadMap(3, -2, 5);
  const std::uint64_t M = 997;
  const auto t = successor_table(f, M);
  Int x = -41;
  std::uint64_t r = M - 41;
  for (int i = 0; i < 16; ++i) {
    Int xm = x % Int{M};
    if (xm < 0) xm += M;
    CHECK(xm.get_ui() == r);
    x = eval(f, x);
    r = t[r];
  }
}
