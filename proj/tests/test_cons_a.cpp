#include <catch2/catch_amalgamated.hpp>

#include "mbr/cons_a.hpp"

using namespace mbr;

TEST_CASE("mixing columns") {
  SECTION("golden values at n=6, d=2 over GF(4)") {
    Field f = cons_a_default_field(6, 2);
    REQUIRE(f.order() == 4);
    Mat mix = cons_a_mixing_columns(6, 2, f);
    REQUIRE(mix.rows == 2);
    REQUIRE(mix.cols == 3);
    auto e = [&](int v) { return f.element(v); };
    CHECK(mix.column(0) == std::vector<FieldElem>{e(1), e(1)});
    CHECK(mix.column(1) == std::vector<FieldElem>{e(1), e(2)});
    CHECK(mix.column(2) == std::vector<FieldElem>{e(1), e(3)});
  }
  SECTION("single column is all-ones over GF(2)") {
    Field f = cons_a_default_field(6, 4);
    REQUIRE(f.order() == 2);
    Mat mix = cons_a_mixing_columns(6, 4, f);
    REQUIRE(mix.cols == 1);
    for (int r = 0; r < 4; ++r) CHECK(mix.at(r, 0) == f.one());
  }
  SECTION("any d columns of [I | mix] independent") {
    for (auto [n, d] : {std::pair{7, 3}, {8, 4}, {8, 3}}) {
      Field f = cons_a_default_field(n, d);
      Mat mix = cons_a_mixing_columns(n, d, f);
      Mat full(d, d + mix.cols, f);
      for (int i = 0; i < d; ++i) full.at(i, i) = f.one();
      for (int c = 0; c < mix.cols; ++c) full.set_column(d + c, mix.column(c));
      std::vector<int> pool;
      for (int i = 0; i < full.cols; ++i) pool.push_back(i);
      for_each_subset(pool, d, [&](const std::vector<int>& s) {
        Mat sub(d, d, f);
        for (int c = 0; c < d; ++c) sub.set_column(c, full.column(s[c]));
        REQUIRE(rank(sub) == d);
      });
    }
  }
}

TEST_CASE("augmented-matrix code, k = d") {
  CodeInstance inst = build_a_equal(6, 2);
  REQUIRE(inst.field.order() == 4);
  REQUIRE(inst.params.B == 3);

  SECTION("golden node contents") {
    auto m = random_messages(inst, 1, 29)[0];
    auto shards = inst.encode(m);
    // M = [[m1,m2],[m2,m3]]; columns, diagonal, then M * [1,1]^t
    CHECK(shards[0] == Shard{m[0], m[1]});
    CHECK(shards[1] == Shard{m[1], m[2]});
    CHECK(shards[2] == Shard{m[0], m[2]});
    const Field& f = inst.field;
    CHECK(shards[3] == Shard{f.add(m[0], m[1]), f.add(m[1], m[2])});
  }
  SECTION("exhaustive repair / collection, replication") {
    auto msgs = random_messages(inst, 10, 31);
    CHECK(verify_repair_all(inst, msgs).ok());
    CHECK(verify_dc_all(inst, msgs).ok());
    auto rep = replication_histogram(inst);
    CHECK(rep.max_multiplicity == 2);
    CHECK(rep.histogram[2] == 3);  // the three core symbols
  }
  SECTION("diag packet rule and help-by-transfer") {
    for (int i = 0; i < 6; ++i)
      if (i != 2) CHECK(diag_helper_identity(inst, i));
    for (int j = 0; j < 2; ++j) CHECK(verify_hbt_all_sets(inst, j));
  }
}

TEST_CASE("k = d at more sizes, including GF(2) at d = n-2") {
  for (auto [n, d] : {std::pair{7, 3}, {6, 4}, {8, 6}, {4, 2}}) {
    CodeInstance inst = build_a_equal(n, d);
    INFO("equal n=" << n << " d=" << d);
    if (d == n - 2) CHECK(inst.field.order() == 2);
    auto msgs = random_messages(inst, 5, 37);
    CHECK(verify_repair_all(inst, msgs).ok());
    CHECK(verify_dc_all(inst, msgs).ok());
    for (int j = 0; j < d; ++j) CHECK(verify_hbt_all_sets(inst, j));
    CHECK(replication_histogram(inst).max_multiplicity == 2);
  }
}

TEST_CASE("rank-metric precoded variant, k < d") {
  for (auto [n, k, d] : {std::tuple{7, 2, 4}, {6, 3, 4}, {8, 3, 4}}) {
    CodeInstance inst = build_a_general(n, k, d);
    INFO("general n=" << n << " k=" << k << " d=" << d);
    REQUIRE(inst.field.ext_degree() == d * (d + 1) / 2);
    auto msgs = random_messages(inst, 3, 41);
    CHECK(verify_repair_all(inst, msgs).ok());
    CHECK(verify_dc_all(inst, msgs).ok());
    for (int j = 0; j < d; ++j) CHECK(verify_hbt_all_sets(inst, j));
    auto rep = replication_histogram(inst);
    CHECK(rep.max_multiplicity == 2);
    CHECK(rep.histogram[2] == d * (d + 1) / 2);  // all core symbols doubled
  }
  CHECK_THROWS_AS(build_a_general(6, 2, 2), std::invalid_argument);
}

TEST_CASE("binary single-parity variant") {
  CodeInstance inst = build_a_binary(5);
  REQUIRE(inst.field.order() == 2);
  REQUIRE(inst.params.B == 5);
  auto msgs = random_messages(inst, 10, 43);
  CHECK(verify_repair_all(inst, msgs).ok());
  CHECK(verify_dc_all(inst, msgs).ok());
  for (int j = 0; j < 3; ++j) CHECK(verify_hbt_all_sets(inst, j));
  CHECK(replication_histogram(inst).max_multiplicity == 2);
  CHECK_THROWS_AS(build_a_binary(4), std::invalid_argument);

  CodeInstance big = build_a_binary(7);
  auto msgs7 = random_messages(big, 5, 47);
  CHECK(verify_repair_all(big, msgs7).ok());
  CHECK(verify_dc_all(big, msgs7).ok());
}

TEST_CASE("dispatch covers the three variants") {
  CHECK(build_a(6, 2, 2).field.order() == 4);
  CHECK(build_a(5, 2, 3).field.order() == 2);   // binary: k=n-3, d=n-2
  CHECK(build_a(7, 2, 4).field.ext_degree() == 10);
  CHECK_THROWS_AS(build_a(5, 2, 4), std::invalid_argument);  // d > n-2
}
