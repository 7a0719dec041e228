#pragma once

#include <memory>
#include <vector>

#include "mbr/core.hpp"
#include "mbr/linpoly.hpp"

namespace mbr {

// ---- message matrix layout ----------------------------------------------
// The d x d symmetric message matrix M = [S T; T^t 0] holds its B free
// symbols in the upper triangle of the first k rows, row-major: row r
// covers columns r..d-1. For k=2, d=3 this is the layout
//   [m1 m2 m3]
//   [m2 m4 m5]
//   [m3 m5  0]

inline std::vector<std::pair<int, int>> message_entry_positions(int k, int d) {
  std::vector<std::pair<int, int>> pos;
  for (int r = 0; r < k; ++r)
    for (int c = r; c < d; ++c) pos.emplace_back(r, c);
  return pos;
}

inline Mat build_message_matrix(const Message& msg, int k, int d,
                                const Field& f) {
  auto pos = message_entry_positions(k, d);
  if (msg.size() != pos.size())
    throw std::invalid_argument("message length != B");
  Mat M(d, d, f);
  for (size_t i = 0; i < pos.size(); ++i) {
    M.at(pos[i].first, pos[i].second) = msg[i];
    M.at(pos[i].second, pos[i].first) = msg[i];
  }
  return M;
}

inline Message message_from_matrix(const Mat& M, int k, int d) {
  Message msg;
  for (auto [r, c] : message_entry_positions(k, d)) msg.push_back(M.at(r, c));
  return msg;
}

// ---- encoding matrix, Eq-(4) style --------------------------------------

/// Systematic d x n encoding matrix: columns 1..k are identity columns, the
/// remaining n-k columns are rows of an (n-k) x d Cauchy matrix with x points
/// 1..n-k and y points n-k+1..n-k+d in field representation order. When
/// n-k = 1 (so k = d = n-1) the single extra column is all-ones, which keeps
/// every d-subset of columns independent over any field.
inline Mat pm_encoding_matrix(int n, int k, int d, const Field& f) {
  Mat psi(d, n, f);
  for (int i = 0; i < k; ++i) psi.at(i, i) = f.one();
  if (n - k == 1) {
    for (int r = 0; r < d; ++r) psi.at(r, k) = f.one();
    return psi;
  }
  std::vector<FieldElem> x, y;
  for (int i = 0; i < n - k; ++i) x.push_back(f.element(1 + i));
  for (int j = 0; j < d; ++j) y.push_back(f.element(1 + (n - k) + j));
  Mat C = cauchy(x, y, f);
  for (int i = 0; i < n - k; ++i)
    for (int r = 0; r < d; ++r) psi.at(r, k + i) = C.at(i, r);
  return psi;
}

inline Field pm_default_field(int n, int k, int d) {
  if (n - k == 1) return Field::base(1);
  return Field::base_with_min_order((std::uint64_t)(n - k) + d + 1);
}

// ---- product-matrix MBR -------------------------------------------------

/// Two-stage product-matrix decoder: with received N^t = Psi_K^t M, the
/// Delta-free right block gives T, substitution gives S.
inline Mat pm_collect_matrix(const std::vector<int>& nodes,
                             const std::vector<Shard>& shards, const Mat& psi,
                             int k, int d) {
  const Field& f = psi.field;
  Mat Phi(k, k, f), Delta(k, d - k, f), L(k, k, f), R(k, d - k, f);
  for (int t = 0; t < k; ++t) {
    int i = nodes[t];
    for (int r = 0; r < k; ++r) Phi.at(t, r) = psi.at(r, i);
    for (int r = k; r < d; ++r) Delta.at(t, r - k) = psi.at(r, i);
    for (int c = 0; c < k; ++c) L.at(t, c) = shards[t][c];
    for (int c = k; c < d; ++c) R.at(t, c - k) = shards[t][c];
  }
  Mat T(k, d - k, f), S(k, k, f);
  if (d > k) T = solve(Phi, R);
  // S = Phi^{-1} (L + Delta T^t)   (char 2)
  Mat L2 = (d > k) ? mat_add(L, mat_mul(Delta, T.transpose())) : L;
  S = solve(Phi, L2);
  Mat M(d, d, f);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) M.at(r, c) = S.at(r, c);
    for (int c = k; c < d; ++c) {
      M.at(r, c) = T.at(r, c - k);
      M.at(c, r) = T.at(r, c - k);
    }
  }
  return M;
}

inline Message pm_collect(const std::vector<int>& nodes,
                          const std::vector<Shard>& shards, const Mat& psi,
                          int k, int d) {
  return message_from_matrix(pm_collect_matrix(nodes, shards, psi, k, d), k, d);
}

/// Product-matrix MBR code: n_i = M psi_i, repair packet psi_j^t n_i,
/// repair solves Psi_D^t (M psi_j) = packets.
inline CodeInstance build_pm(int n, int k, int d, const Field& field) {
  CodeInstance inst;
  inst.params = MbrParams::make(n, k, d);
  inst.field = field;
  inst.scheme = "pm";
  auto psi = std::make_shared<Mat>(pm_encoding_matrix(n, k, d, field));

  // generator blocks: G_i(r, c) = (M(e_r) psi_i)_c
  auto pos = message_entry_positions(k, d);
  int B = (int)inst.params.B;
  for (int i = 0; i < n; ++i) {
    Mat G(B, d, field);
    for (int r = 0; r < B; ++r) {
      auto [a, b] = pos[r];
      // M(e_r) has 1 at (a,b) and (b,a)
      G.at(r, a) = field.add(G.at(r, a), psi->at(b, i));
      if (a != b) G.at(r, b) = field.add(G.at(r, b), psi->at(a, i));
    }
    inst.blocks.push_back(std::move(G));
  }

  inst.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) inst.repair_vectors[i][j] = psi->column(j);

  Field f = field;
  inst.repair = [psi, f, d](int failed, const std::vector<int>& helpers,
                            const std::vector<FieldElem>& packets) -> Shard {
    Mat PsiD(d, d, f);
    for (int t = 0; t < d; ++t) PsiD.set_column(t, psi->column(helpers[t]));
    // rows psi_i^t x = packet_i with x = M psi_failed = n_failed
    return solve_vec(PsiD.transpose(), packets);
  };
  int k_ = k;
  inst.collect = [psi, k_, d](const std::vector<int>& nodes,
                              const std::vector<Shard>& shards) -> Message {
    return pm_collect(nodes, shards, *psi, k_, d);
  };
  return inst;
}

inline CodeInstance build_pm(int n, int k, int d) {
  return build_pm(n, k, d, pm_default_field(n, k, d));
}

}  // namespace mbr
