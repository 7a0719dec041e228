#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mbr/mat.hpp"

using namespace mbr;

namespace {

Mat random_invertible(int n, const Field& f, std::mt19937_64& rng) {
  for (;;) {
    Mat a(n, n, f);
    for (auto& e : a.e) e = f.element(rng() % f.order());
    if (rank(a) == n) return a;
  }
}

}  // namespace

TEST_CASE("cauchy golden values") {
  Field f2 = Field::base(1);
  Mat c1 = cauchy({f2.zero()}, {f2.one()}, f2);
  CHECK(c1.at(0, 0) == f2.one());

  Field f4 = Field::base(2);
  auto e = [&](std::uint64_t v) { return f4.element(v); };
  Mat c2 = cauchy({e(1), e(2)}, {e(3)}, f4);
  // (1+3)^{-1} = 2^{-1} = 3; (2+3)^{-1} = 1
  CHECK(c2.at(0, 0) == e(3));
  CHECK(c2.at(1, 0) == e(1));

  CHECK_THROWS_AS(cauchy({e(1), e(1)}, {e(3)}, f4), std::invalid_argument);
  CHECK_THROWS_AS(cauchy({e(1)}, {e(1)}, f4), std::invalid_argument);
}

TEST_CASE("every square submatrix of a Cauchy matrix is invertible") {
  Field f = Field::base(4);
  std::vector<FieldElem> x, y;
  for (int i = 0; i < 6; ++i) x.push_back(f.element(1 + i));
  for (int j = 0; j < 6; ++j) y.push_back(f.element(7 + j));
  Mat c = cauchy(x, y, f);
  // all square submatrices up to the full 6x6, by explicit subset enumeration
  for (int sz = 1; sz <= 6; ++sz) {
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if ((int)cur.size() == sz) {
        subsets.push_back(cur);
        return;
      }
      for (int i = start; i < 6; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    for (const auto& R : subsets)
      for (const auto& C : subsets) {
        Mat sub(sz, sz, f);
        for (int a = 0; a < sz; ++a)
          for (int b = 0; b < sz; ++b) sub.at(a, b) = c.at(R[a], C[b]);
        REQUIRE(rank(sub) == sz);
      }
  }
}

TEST_CASE("solve golden values") {
  Field f4 = Field::base(2);
  auto e = [&](std::uint64_t v) { return f4.element(v); };

  Mat I = Mat::identity(3, f4);
  std::vector<FieldElem> b{e(1), e(2), e(3)};
  CHECK(solve_vec(I, b) == b);

  // A = [[1,1],[1,2]], b = [0,1]: eliminating gives 3y = 1, 3^{-1} = 2,
  // so x = y = 2 (hand Gaussian elimination oracle)
  Mat A(2, 2, f4);
  A.at(0, 0) = e(1);
  A.at(0, 1) = e(1);
  A.at(1, 0) = e(1);
  A.at(1, 1) = e(2);
  auto x = solve_vec(A, {e(0), e(1)});
  CHECK(x == std::vector<FieldElem>{e(2), e(2)});
  // verify against the system directly
  CHECK(f4.add(x[0], x[1]) == e(0));
  CHECK(f4.add(x[0], f4.mul(e(2), x[1])) == e(1));

  Mat Z(2, 2, f4);
  CHECK_THROWS_AS(solve_vec(Z, {e(1), e(1)}), SingularMatrix);
}

TEST_CASE("solve/multiply round-trip for random invertible systems") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::base(3), Field::extension(2, 2)}) {
    for (int n : {1, 2, 5, 12}) {
      Mat a = random_invertible(n, f, rng);
      Mat x(n, 1, f);
      for (auto& e : x.e) e = f.element(rng() % f.order());
      Mat b = mat_mul(a, x);
      CHECK(solve(a, b) == x);
      CHECK(mat_mul(a, inverse(a)) == Mat::identity(n, f));
    }
  }
}

TEST_CASE("hadamard") {
  Field f4 = Field::base(2);
  auto e = [&](std::uint64_t v) { return f4.element(v); };
  Mat v(2, 1, f4);
  v.at(0, 0) = e(1);
  v.at(1, 0) = e(2);
  Mat prod = hadamard(v, v);
  CHECK(prod.at(0, 0) == e(1));
  CHECK(prod.at(1, 0) == e(3));  // 2*2 = 3

  // e_i element-wise squared is e_i; all-ones is the identity
  Mat ei(3, 1, f4), ones(3, 1, f4);
  ei.at(1, 0) = f4.one();
  for (auto& x : ones.e) x = f4.one();
  CHECK(hadamard(ei, ei) == ei);
  Mat w(3, 1, f4);
  for (int i = 0; i < 3; ++i) w.at(i, 0) = e(i + 1);
  CHECK(hadamard(ones, w) == w);
  CHECK(hadamard(w, ones) == w);
  // commutative / associative on random triples
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    Mat a(3, 1, f4), b(3, 1, f4), c(3, 1, f4);
    for (auto& x : a.e) x = f4.element(rng() % 4);
    for (auto& x : b.e) x = f4.element(rng() % 4);
    for (auto& x : c.e) x = f4.element(rng() % 4);
    CHECK(hadamard(a, b) == hadamard(b, a));
    CHECK(hadamard(hadamard(a, b), c) == hadamard(a, hadamard(b, c)));
  }

  Mat bad(2, 2, f4);
  CHECK_THROWS_AS(hadamard(v, bad), std::invalid_argument);
}

TEST_CASE("rank_over_subfield") {
  Field f = Field::extension(2, 4);
  // single nonzero column
  Mat a(1, 1, f);
  a.at(0, 0) = f.element(9);
  CHECK(rank_over_subfield(a) == 1);
  // repeated column
  Mat b(1, 2, f);
  b.at(0, 0) = f.element(9);
  b.at(0, 1) = f.element(9);
  CHECK(rank_over_subfield(b) == 1);
  // polynomial basis 1, theta, theta^2, theta^3 as four columns of one row
  Mat c(1, 4, f);
  for (int i = 0; i < 4; ++i) {
    FieldElem e = f.zero();
    e.c[i] = 1;
    c.at(0, i) = e;
  }
  CHECK(rank_over_subfield(c) == 4);
  // theta and c*theta for base-field c are dependent
  Mat d(1, 2, f);
  d.at(0, 0) = c.at(0, 1);
  d.at(0, 1) = f.smul(3, c.at(0, 1));
  CHECK(rank_over_subfield(d) == 1);
}
