#pragma once

#include <memory>
#include <vector>

#include "mbr/core.hpp"
#include "mbr/pm.hpp"

namespace mbr {

// ---- per-node transforms of the product-matrix code ----------------------
// Node i <= d applies the invertible transform chi(i) whose columns are the
// encoding columns psi_l, l in {0..d}\{i}, ascending; nodes beyond d apply
// chi(d). This turns the first d+1 nodes into the edge structure of a
// complete graph on d+1 vertices (every stored value psi_l^t M psi_i shared
// by two nodes) while repair data stays psi_j^t M psi_i. The precoder
// lambda(i) restores systematicity of the first k nodes.

inline Mat chi_matrix(const Mat& psi, int i, int d) {
  const Field& f = psi.field;
  Mat chi(d, d, f);
  int c = 0;
  int self = std::min(i, d);
  for (int l = 0; l <= d; ++l)
    if (l != self) chi.set_column(c++, psi.column(l));
  return chi;
}

inline Mat lambda_matrix(const Mat& psi, int i, int d) {
  const Field& f = psi.field;
  Mat lam(d, d, f);
  for (int j = 0; j < d; ++j)
    lam.set_column(j, psi.column(j == i ? d : j));
  return lam;
}

namespace detail {

/// Precode the raw symmetric matrix: column i (i < k) becomes
/// [lambda(i)^t]^{-1} times the raw column; the rest follows from symmetry
/// and the zero tail block. Off-diagonal entries shared by two precoded
/// columns must agree, which is checked.
inline Mat precode_b(const Mat& raw, const Mat& psi, int k, int d) {
  const Field& f = psi.field;
  Mat M(d, d, f);
  std::vector<Mat> cols;
  for (int i = 0; i < k; ++i) {
    Mat lamT = lambda_matrix(psi, i, d).transpose();
    Mat rhs(d, 1, f);
    rhs.set_column(0, raw.column(i));
    cols.push_back(solve(lamT, rhs));
  }
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < d; ++r) {
      FieldElem v = cols[i].at(r, 0);
      if (r < k && r != i && !(M.at(r, i) == f.zero()) && !(M.at(r, i) == v))
        throw std::logic_error("precoder inconsistency across shared entries");
      M.at(r, i) = v;
      M.at(i, r) = v;
    }
  // verify agreement exactly (the zero-check above misses zero collisions)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      if (!(cols[i].at(j, 0) == cols[j].at(i, 0)))
        throw std::logic_error("precoder inconsistency across shared entries");
  return M;
}

}  // namespace detail

inline CodeInstance build_b(int n, int k, int d, const Field& field) {
  CodeInstance inst;
  inst.params = MbrParams::make(n, k, d);
  inst.field = field;
  inst.scheme = "cons-b";
  int B = (int)inst.params.B;
  auto psi = std::make_shared<Mat>(pm_encoding_matrix(n, k, d, field));

  std::vector<Mat> chi, chi_inv;
  for (int i = 0; i <= d; ++i) {
    chi.push_back(chi_matrix(*psi, i, d));
    if (rank(chi.back()) != d) throw std::logic_error("chi transform singular");
    chi_inv.push_back(inverse(chi.back()));
  }
  for (int i = 0; i < k; ++i)
    if (rank(lambda_matrix(*psi, i, d)) != d)
      throw std::logic_error("lambda transform singular");
  auto chi_of = [&](int i) -> const Mat& { return chi[std::min(i, d)]; };

  // generator blocks numerically from basis messages:
  // n_i = chi(i)^t M psi_i with M the precoded matrix
  auto pos = message_entry_positions(k, d);
  std::vector<Mat> G(n, Mat(B, d, field));
  for (int r = 0; r < B; ++r) {
    Mat raw(d, d, field);
    raw.at(pos[r].first, pos[r].second) = field.one();
    raw.at(pos[r].second, pos[r].first) = field.one();
    Mat M = detail::precode_b(raw, *psi, k, d);
    for (int i = 0; i < n; ++i) {
      Mat Mpsi(d, 1, field);
      Mpsi.set_column(0, psi->column(i));
      Mat ni = mat_mul(chi_of(i).transpose(), mat_mul(M, Mpsi));
      for (int c = 0; c < d; ++c) G[i].at(r, c) = ni.at(c, 0);
    }
  }
  inst.blocks = std::move(G);

  // packet helper i -> failed j must equal psi_j^t M psi_i, so the
  // coefficient vector on n_i = chi^t M psi_i is chi^{-1} psi_j
  inst.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i) {
    const Mat& ci = chi_inv[std::min(i, d)];
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat pj(d, 1, field);
      pj.set_column(0, psi->column(j));
      inst.repair_vectors[i][j] = mat_mul(ci, pj).column(0);
    }
  }

  Field f = field;
  auto chis = std::make_shared<std::vector<Mat>>(std::move(chi));
  auto chi_invs = std::make_shared<std::vector<Mat>>(std::move(chi_inv));
  inst.repair = [psi, chis, f, d](int failed, const std::vector<int>& helpers,
                                  const std::vector<FieldElem>& packets) -> Shard {
    Mat PsiD(d, d, f);
    for (int t = 0; t < d; ++t) PsiD.set_column(t, psi->column(helpers[t]));
    auto x = solve_vec(PsiD.transpose(), packets);  // x = M psi_failed
    Mat xm(d, 1, f);
    xm.set_column(0, x);
    return mat_mul((*chis)[std::min(failed, d)].transpose(), xm).column(0);
  };
  int k_ = k;
  inst.collect = [psi, chi_invs, f, k_, d](const std::vector<int>& nodes,
                                           const std::vector<Shard>& shards) -> Message {
    // undo the node transforms, run product-matrix collection, then undo
    // the precoder column by column
    std::vector<Shard> pm_shards;
    for (size_t t = 0; t < nodes.size(); ++t) {
      Mat nm(d, 1, f);
      nm.set_column(0, shards[t]);
      pm_shards.push_back(
          mat_mul((*chi_invs)[std::min(nodes[t], d)].transpose(), nm).column(0));
    }
    Mat M = pm_collect_matrix(nodes, pm_shards, *psi, k_, d);
    std::vector<std::vector<FieldElem>> raw_cols;
    for (int i = 0; i < k_; ++i) {
      Mat mi(d, 1, f);
      mi.set_column(0, M.column(i));
      raw_cols.push_back(
          mat_mul(lambda_matrix(*psi, i, d).transpose(), mi).column(0));
    }
    Message out;
    for (auto [r, c] : message_entry_positions(k_, d))
      out.push_back(c < k_ ? raw_cols[c][r] : raw_cols[r][c]);
    return out;
  };
  return inst;
}

inline CodeInstance build_b(int n, int k, int d) {
  return build_b(n, k, d, pm_default_field(n, k, d));
}

}  // namespace mbr
