#include <catch2/catch_amalgamated.hpp>

#include "mbr/cons_b.hpp"

using namespace mbr;

TEST_CASE("chi and lambda transforms") {
  Field f = pm_default_field(5, 2, 3);
  Mat psi = pm_encoding_matrix(5, 2, 3, f);
  // chi(0) = [psi_1 psi_2 psi_3], chi(1) = [psi_0 psi_2 psi_3], ...
  Mat c0 = chi_matrix(psi, 0, 3);
  CHECK(c0.column(0) == psi.column(1));
  CHECK(c0.column(1) == psi.column(2));
  CHECK(c0.column(2) == psi.column(3));
  // nodes beyond d share chi(d)
  CHECK(chi_matrix(psi, 4, 3) == chi_matrix(psi, 3, 3));
  for (int i = 0; i <= 3; ++i) CHECK(rank(chi_matrix(psi, i, 3)) == 3);
  // lambda(i): column i swapped for psi_d
  Mat l1 = lambda_matrix(psi, 1, 3);
  CHECK(l1.column(0) == psi.column(0));
  CHECK(l1.column(1) == psi.column(3));
  CHECK(l1.column(2) == psi.column(2));
  for (int i = 0; i < 2; ++i) CHECK(rank(lambda_matrix(psi, i, 3)) == 3);
}

TEST_CASE("systematic golden contents at k=2, d=3") {
  CodeInstance inst = build_b(5, 2, 3);
  for (auto& m : random_messages(inst, 100, 53)) {
    auto shards = inst.encode(m);
    CHECK(shards[0] == Shard{m[1], m[2], m[0]});
    CHECK(shards[1] == Shard{m[1], m[4], m[3]});
  }
}

TEST_CASE("transformed code: exhaustive repair / collection") {
  for (auto [n, k, d] : {std::tuple{5, 2, 3}, {6, 2, 2}, {6, 3, 4}, {7, 2, 4},
                         {6, 4, 4}, {6, 5, 5}}) {
    CodeInstance inst = build_b(n, k, d);
    INFO("cons-b n=" << n << " k=" << k << " d=" << d);
    auto msgs = random_messages(inst, 5, 59);
    CHECK(verify_repair_all(inst, msgs).ok());
    CHECK(verify_dc_all(inst, msgs).ok());
    CHECK(full_rank_stacked(inst));
    for (int j = 0; j < d; ++j) CHECK(verify_hbt_all_sets(inst, j));
  }
}

TEST_CASE("core symbols are doubled across the first d+1 nodes") {
  CodeInstance inst = build_b(5, 2, 3);
  // count generator-column multiplicities within nodes 0..d only
  std::map<std::vector<FieldElem>, int> groups;
  for (int i = 0; i <= 3; ++i)
    for (int c = 0; c < 3; ++c) ++groups[inst.blocks[i].column(c)];
  int doubled = 0;
  for (auto& [col, cnt] : groups) {
    CHECK(cnt == 2);
    ++doubled;
  }
  CHECK(doubled == 6);  // C(d+1, 2)
  CHECK(replication_histogram(inst).max_multiplicity == 2);
}

TEST_CASE("d = n-1 builds over GF(2)") {
  CodeInstance inst = build_b(6, 5, 5);
  CHECK(inst.field.order() == 2);
  CodeInstance big = build_b(9, 8, 8);
  CHECK(big.field.order() == 2);
  auto msgs = random_messages(big, 3, 61);
  CHECK(verify_repair_all(big, msgs).ok());
  CHECK(verify_dc_all(big, msgs).ok());
}

TEST_CASE("update complexity at k = d is no worse than product-matrix") {
  CodeInstance b = build_b(6, 4, 4);
  CodeInstance pm = build_pm(6, 4, 4);
  auto ub = update_complexity(b);
  auto upm = update_complexity(pm);
  REQUIRE(ub.counts.size() == upm.counts.size());
  for (size_t r = 0; r < ub.counts.size(); ++r)
    CHECK(ub.counts[r] <= upm.counts[r]);
}
