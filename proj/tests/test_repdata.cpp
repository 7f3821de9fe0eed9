#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cherednik/repdata.hpp"

using namespace cherednik;

namespace {
Registry& registry() {
  static Registry reg(Registry::default_data_dir());
  return reg;
}

std::string write_temp(const std::string& body) {
  static int n = 0;
  std::string path = "repdata_tmp_" + std::to_string(n++) + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}
}  // namespace

TEST_CASE("group files load and validate") {
  Registry& reg = registry();
  const GroupDescriptor& e8 = reg.group("E8");
  CHECK(e8.rank == 8);
  REQUIRE(e8.reflection_classes.size() == 1);
  CHECK(e8.reflection_classes[0].second == 120);
  const GroupDescriptor& f4 = reg.group("F4");
  CHECK(f4.rank == 4);
  REQUIRE(f4.reflection_classes.size() == 2);
  CHECK(f4.reflection_classes[0].second == 12);
  CHECK(f4.reflection_classes[1].second == 12);
}

TEST_CASE("malformed group files are rejected") {
  std::string p0 = write_temp(R"({"name":"X3","rank":0,"reflection_classes":[{"label":"a","size":3}]})");
  CHECK_THROWS_AS(load_group(p0), SchemaError);
  std::string p1 = write_temp(R"({"name":"E8","rank":8,"reflection_classes":[{"label":"a","size":60}]})");
  CHECK_THROWS_AS(load_group(p1), ConsistencyError);
  std::string p2 = write_temp(R"({"rank":8})");
  CHECK_THROWS_AS(load_group(p2), SchemaError);
  std::remove(p0.c_str());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("h weight formula reproduces the charts") {
  Registry& reg = registry();
  const GroupDescriptor& e8 = reg.group("E8");
  // trivial representation at c = 1/12 sits at -6
  CHECK(compute_h_weight(e8, reg.irrep("E8", "1_x"), Rational(1, 12)) == Rational(-6));
  // c = 0 kills the reflection term
  CHECK(compute_h_weight(e8, reg.irrep("E8", "1_x"), Rational(0)) == Rational(4));
  const GroupDescriptor& f4 = reg.group("F4");
  CHECK(compute_h_weight(f4, reg.irrep("F4", "1_1"), Rational(1, 3)) == Rational(-6));
  CHECK(compute_h_weight(f4, reg.irrep("F4", "1_4"), Rational(1, 3)) == Rational(10));
  IrrepInfo bare;
  bare.label = "9_1";
  bare.dim = 9;
  CHECK_THROWS_AS(compute_h_weight(f4, bare, Rational(1, 4)), MissingDataError);
}

TEST_CASE("every bundled block loads; chart weights match reflection data") {
  Registry& reg = registry();
  auto paths = reg.all_block_paths();
  CHECK(paths.size() >= 50);
  int charted = 0;
  for (const auto& p : paths) {
    BlockSpec b = reg.load_block(p);  // load_block itself cross-validates
    CHECK(!b.irreps.empty());
    if (!b.h_shifted) {
      const GroupDescriptor& g = reg.group(b.group);
      for (const auto& lab : b.irreps) {
        const IrrepInfo& info = reg.irrep(b.group, lab);
        if (info.reflection_sums.size() == g.reflection_classes.size()) {
          CHECK(compute_h_weight(g, info, b.c) == b.h(lab));
          ++charted;
        }
      }
    }
  }
  CHECK(charted > 200);
}

TEST_CASE("loading is deterministic") {
  Registry& reg = registry();
  std::string p = reg.dir() + "/E8/c_1_12/principal.json";
  BlockSpec a = reg.load_block(p);
  BlockSpec b = reg.load_block(p);
  CHECK(a.irreps == b.irreps);
  CHECK(a.expected_matrix == b.expected_matrix);
  CHECK(a.h_weights.size() == b.h_weights.size());
  for (const auto& [lab, h] : a.h_weights) CHECK(b.h(lab) == h);
}

TEST_CASE("the E8 c=1/12 principal block matches the chart endpoints") {
  Registry& reg = registry();
  BlockSpec b = reg.load_block(reg.dir() + "/E8/c_1_12/principal.json");
  CHECK(b.irreps.size() == 26);
  CHECK(b.h(b.irreps.front()) == Rational(-6));
  CHECK(b.h(b.irreps.back()) == Rational(14));
}

TEST_CASE("blocks with broken weights are rejected") {
  std::string p = write_temp(R"({"group":"E8","c":"1/12",
    "irreps":["1_x","35_x"],
    "h_weights":{"1_x":"0","35_x":"-1"}})");
  Registry& reg = registry();
  CHECK_THROWS_AS(reg.load_block(p), ConsistencyError);
  std::remove(p.c_str());
  std::string q = write_temp(R"({"group":"E8","c":"1/12",
    "irreps":["1_x","35_x"],
    "h_weights":{"1_x":"0","35_x":"1/2"}})");
  CHECK_THROWS_AS(reg.load_block(q), ConsistencyError);
  std::remove(q.c_str());
}

TEST_CASE("a single irrep is a valid defect-0 block") {
  std::string p = write_temp(R"({"group":"E8","c":"1/12",
    "irreps":["1344_w"],"h_weights":{"1344_w":"4"},"h_shifted":true})");
  Registry& reg = registry();
  BlockSpec b = reg.load_block(p);
  CHECK(b.irreps.size() == 1);
  std::remove(p.c_str());
}

TEST_CASE("branching rows restrict with the dimension identity") {
  Registry& reg = registry();
  const BranchingTable& t = reg.branching("E8", "E7");
  auto r = restrict_irrep(t, "112_z");
  CHECK(r.size() == 5);
  CHECK(r.at("1_a") == 1);
  CHECK(r.at("27_a") == 1);
  CHECK(r.at("7_a'") == 1);
  CHECK(r.at("21_b'") == 1);
  CHECK(r.at("56_a'") == 1);
  auto r2 = restrict_irrep(t, "1008_z");
  CHECK(r2.size() == 8);
  CHECK(r2.at("27_a") == 1);
  CHECK(r2.at("280_a'") == 1);
  CHECK_THROWS_AS(restrict_irrep(t, "8_z"), UnknownLabelError);
  for (const auto& [lab, row] : t.rows) {
    if (t.partial.count(lab)) continue;
    long long total = 0;
    for (const auto& [ch, m] : row) total += m * reg.dim_of("E7", ch);
    CHECK(total == reg.dim_of("E8", lab));
  }
}

TEST_CASE("a branching row violating the dimension identity is rejected") {
  Registry& reg = registry();
  std::string p = write_temp(R"({"parent":"E8","child":"E7",
    "rows":{"112_z":["1_a","27_a"]}})");
  CHECK_THROWS_AS(reg.load_branching(p), ConsistencyError);
  std::remove(p.c_str());
}
