#pragma once

#include <memory>
#include <vector>

#include "mbr/core.hpp"
#include "mbr/linpoly.hpp"
#include "mbr/pm.hpp"

namespace mbr {

// ---- augmented-matrix family --------------------------------------------
// A d x d symmetric inner matrix M with all C(d+1,2) upper-triangle entries
// free. Nodes 0..d-1 store the columns of M, node d stores diag(M), nodes
// d+1..n-1 store M*phi for mixing columns phi. Every inner symbol therefore
// appears twice among the first d+1 nodes.

/// Mixing columns for the parity nodes: the parity part of a systematic
/// [n-1, d] extended Reed-Solomon generator, so that any d columns among
/// {e_0..e_{d-1}, mixing columns} are independent. Point order 0, infinity,
/// 1, 2, ... makes the first d columns already near-systematic and yields
/// [1,1]^t, [1,2]^t, [1,3]^t at d=2, n=6. A single mixing column degenerates
/// to all-ones, which is valid over any field including GF(2).
inline Mat cons_a_mixing_columns(int n, int d, const Field& f) {
  int parity = n - d - 1;
  if (parity < 1) throw std::invalid_argument("require d <= n-2");
  Mat mix(d, parity, f);
  if (parity == 1) {
    for (int r = 0; r < d; ++r) mix.at(r, 0) = f.one();
    return mix;
  }
  if ((std::uint64_t)f.base_order() < (std::uint64_t)n - 2)
    throw std::invalid_argument("mixing columns need a base field with >= n-2 elements");
  int len = n - 1;
  Mat V(d, len, f);
  for (int j = 0; j < len; ++j) {
    if (j == 0) {
      V.at(0, j) = f.one();  // evaluation at 0
    } else if (j == 1) {
      V.at(d - 1, j) = f.one();  // point at infinity: leading coefficient
    } else {
      FieldElem p = f.element(j - 1);  // nonzero subfield points 1, 2, ...
      FieldElem acc = f.one();
      for (int i = 0; i < d; ++i) {
        V.at(i, j) = acc;
        acc = f.mul(acc, p);
      }
    }
  }
  Mat A(d, d, f);
  for (int j = 0; j < d; ++j) A.set_column(j, V.column(j));
  Mat sys = solve(A, V);  // [I_d | parity part]
  Mat out(d, parity, f);
  for (int j = 0; j < parity; ++j) out.set_column(j, sys.column(d + j));
  return out;
}

inline Field cons_a_default_field(int n, int d) {
  if (n - d - 1 == 1) return Field::base(1);
  return Field::base_with_min_order(std::max<std::uint64_t>(2, (std::uint64_t)n - 2));
}

namespace detail {

/// Shared structure of the family: inner-symbol indexing and per-node
/// functionals over the inner message (columns of M, diag, mixed columns).
struct ConsAStructure {
  int n, d, nc;
  Mat mix;                                // d x (n-d-1)
  std::vector<std::pair<int, int>> pos;   // inner entry (row, col), row <= col
  std::vector<std::vector<int>> idx;      // (a,b) -> inner index

  ConsAStructure(int n, int d, const Mat& mix)
      : n(n), d(d), nc(d * (d + 1) / 2), mix(mix),
        pos(message_entry_positions(d, d)), idx(d, std::vector<int>(d, -1)) {
    for (int t = 0; t < nc; ++t) {
      auto [a, b] = pos[t];
      idx[a][b] = idx[b][a] = t;
    }
  }

  /// phi column of node i (identity for i < d, mixing for i > d); node d
  /// holds the diagonal and has no phi column.
  std::vector<FieldElem> phi_of(int i, const Field& f) const {
    std::vector<FieldElem> v(d, f.zero());
    if (i < d)
      v[i] = f.one();
    else if (i > d)
      for (int r = 0; r < d; ++r) v[r] = mix.at(r, i - d - 1);
    else
      throw std::invalid_argument("diag node has no phi column");
    return v;
  }

  /// Functional of stored symbol c of node i over the nc inner symbols.
  std::vector<FieldElem> inner_column(int i, int c, const Field& f) const {
    std::vector<FieldElem> w(nc, f.zero());
    if (i < d) {
      w[idx[c][i]] = f.one();
    } else if (i == d) {
      w[idx[c][c]] = f.one();
    } else {
      for (int r = 0; r < d; ++r)
        w[idx[c][r]] = f.add(w[idx[c][r]], mix.at(r, i - d - 1));
    }
    return w;
  }
};

/// Repair vectors and the solve-based repair closure, shared by all three
/// precoder variants (they act on the inner structure only).
inline void cons_a_attach_repair(CodeInstance& inst,
                                 std::shared_ptr<ConsAStructure> st) {
  const Field f = inst.field;
  int n = st->n, d = st->d;
  inst.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (j == d) {
        inst.repair_vectors[i][j] = st->phi_of(i, f);
      } else if (i == d) {
        auto p = st->phi_of(j, f);
        for (auto& e : p) e = f.mul(e, e);
        inst.repair_vectors[i][j] = p;
      } else {
        inst.repair_vectors[i][j] = st->phi_of(j, f);
      }
    }
  inst.repair = [st, f, d](int failed, const std::vector<int>& helpers,
                           const std::vector<FieldElem>& packets) -> Shard {
    // failed < d or parity: packets are x_i^t (M phi_failed) with x_i = phi_i
    // (phi_failed itself for the diag helper); failed == d: packets are
    // (phi_i . phi_i)^t diag(M). Either way a d x d solve in phi space.
    Mat A(d, d, f);
    for (int t = 0; t < d; ++t) {
      std::vector<FieldElem> row;
      if (failed == d) {
        row = st->phi_of(helpers[t], f);
        for (auto& e : row) e = f.mul(e, e);
      } else if (helpers[t] == d) {
        row = st->phi_of(failed, f);
      } else {
        row = st->phi_of(helpers[t], f);
      }
      for (int c = 0; c < d; ++c) A.at(t, c) = row[c];
    }
    return solve_vec(A, packets);
  };
}

}  // namespace detail

/// Symbolic check that the diag node's packet toward node i carries the same
/// message functional as node i's packet toward the diag node (the element-
/// wise-square helper rule is consistent).
inline bool diag_helper_identity(const CodeInstance& inst, int i) {
  int d = inst.params.d;
  if (i == d) throw std::invalid_argument("i must differ from the diag node");
  return inst.packet_functional(i, d) == inst.packet_functional(d, i);
}

// ---- k = d ---------------------------------------------------------------

inline CodeInstance build_a_equal(int n, int d, const Field& field,
                                  const Mat& mix) {
  CodeInstance inst;
  inst.params = MbrParams::make(n, d, d);
  inst.field = field;
  inst.scheme = "cons-a";
  auto st = std::make_shared<detail::ConsAStructure>(n, d, mix);
  if (inst.params.B != st->nc) throw std::logic_error("B != C(d+1,2)");
  for (int i = 0; i < n; ++i) {
    Mat G((int)inst.params.B, d, field);
    for (int c = 0; c < d; ++c) G.set_column(c, st->inner_column(i, c, field));
    inst.blocks.push_back(std::move(G));
  }
  detail::cons_a_attach_repair(inst, st);
  inst.collect = [inst_blocks = inst.blocks, params = inst.params,
                  f = field](const std::vector<int>& nodes,
                             const std::vector<Shard>& shards) -> Message {
    CodeInstance tmp;
    tmp.params = params;
    tmp.field = f;
    tmp.blocks = inst_blocks;
    return collect_by_generator_solve(tmp, nodes, shards);
  };
  return inst;
}

inline CodeInstance build_a_equal(int n, int d, const Field& field) {
  return build_a_equal(n, d, field, cons_a_mixing_columns(n, d, field));
}

inline CodeInstance build_a_equal(int n, int d) {
  return build_a_equal(n, d, cons_a_default_field(n, d));
}

// ---- k < d: rank-metric precoder ----------------------------------------

inline Field cons_a_general_field(int n, int d) {
  int s = 1;
  while ((1u << s) < std::max(2u, (unsigned)n - 2)) ++s;
  return Field::extension(s, d * (d + 1) / 2);
}

/// k < d: the B message symbols are first spread over the nc = C(d+1,2)
/// inner symbols as a systematic rank-metric codeword (evaluations of a
/// q-degree < B linearized polynomial at independent points), then laid out
/// as above. Every stored symbol is then an evaluation of the same
/// polynomial at a subfield combination of the points, so any k nodes yield
/// >= B evaluations at subfield-independent points.
inline CodeInstance build_a_general(int n, int k, int d, const Field& field) {
  if (!(k < d)) throw std::invalid_argument("general variant requires k < d");
  CodeInstance inst;
  inst.params = MbrParams::make(n, k, d);
  inst.field = field;
  inst.scheme = "cons-a";
  int B = (int)inst.params.B;
  auto st = std::make_shared<detail::ConsAStructure>(
      n, d, cons_a_mixing_columns(n, d, field));
  int nc = st->nc;
  if (field.ext_degree() < nc)
    throw std::invalid_argument("extension degree must be >= C(d+1,2)");
  auto theta = std::make_shared<std::vector<FieldElem>>(
      polynomial_basis_points(field, nc));
  std::vector<FieldElem> thetaB(theta->begin(), theta->begin() + B);
  Mat Minv = inverse(moore_matrix(thetaB, B, field));

  // composite generator column for a stored symbol with inner functional w:
  // evaluation point pi = sum w_t theta_t, column = Minv * [pi^{q^t}]_t
  auto points = std::make_shared<std::vector<std::vector<FieldElem>>>();
  for (int i = 0; i < n; ++i) {
    Mat G(B, d, field);
    std::vector<FieldElem> node_pts;
    for (int c = 0; c < d; ++c) {
      auto w = st->inner_column(i, c, field);
      FieldElem pi = field.zero();
      for (int t = 0; t < nc; ++t)
        if (!w[t].is_zero())
          pi = field.add(pi, field.mul(w[t], (*theta)[t]));
      node_pts.push_back(pi);
      Mat vec(B, 1, field);
      for (int t = 0; t < B; ++t) vec.at(t, 0) = field.frobenius(pi, t);
      G.set_column(c, mat_mul(Minv, vec).column(0));
    }
    points->push_back(std::move(node_pts));
    inst.blocks.push_back(std::move(G));
  }
  detail::cons_a_attach_repair(inst, st);

  Field f = field;
  int alpha = d;
  inst.collect = [points, theta, f, B, alpha](
                     const std::vector<int>& nodes,
                     const std::vector<Shard>& shards) -> Message {
    // greedy selection of B symbols whose evaluation points are independent
    // over the base subfield, then interpolation
    std::vector<FieldElem> sel_pts, sel_vals;
    for (size_t t = 0; t < nodes.size() && (int)sel_pts.size() < B; ++t)
      for (int c = 0; c < alpha && (int)sel_pts.size() < B; ++c) {
        FieldElem pi = (*points)[nodes[t]][c];
        Mat trial(1, (int)sel_pts.size() + 1, f);
        for (size_t s = 0; s < sel_pts.size(); ++s) trial.at(0, (int)s) = sel_pts[s];
        trial.at(0, (int)sel_pts.size()) = pi;
        if (rank_over_subfield(trial) == (int)sel_pts.size() + 1) {
          sel_pts.push_back(pi);
          sel_vals.push_back(shards[t][c]);
        }
      }
    if ((int)sel_pts.size() < B)
      throw std::logic_error("accessed symbols span fewer than B independent points");
    LinearizedPoly poly = interpolate(sel_pts, sel_vals, B - 1, f);
    Message out;
    for (int i = 0; i < B; ++i) out.push_back(lin_eval(poly, (*theta)[i], f));
    return out;
  };
  return inst;
}

inline CodeInstance build_a_general(int n, int k, int d) {
  return build_a_general(n, k, d, cons_a_general_field(n, d));
}

// ---- k = n-3, d = n-2: binary single-parity precoder --------------------

/// The inner message is (m_1..m_B, p) with p the XOR of all m_i, so the
/// whole code lives over GF(2): B = C(d+1,2) - 1 and the mixing column is
/// all-ones.
inline CodeInstance build_a_binary(int n) {
  if (n < 5) throw std::invalid_argument("binary variant requires n >= 5");
  int k = n - 3, d = n - 2;
  Field f = Field::base(1);
  CodeInstance inst;
  inst.params = MbrParams::make(n, k, d);
  inst.field = f;
  inst.scheme = "cons-a";
  int B = (int)inst.params.B;
  auto st = std::make_shared<detail::ConsAStructure>(
      n, d, cons_a_mixing_columns(n, d, f));
  if (B + 1 != st->nc) throw std::logic_error("binary variant: B+1 != C(d+1,2)");
  for (int i = 0; i < n; ++i) {
    Mat G(B, d, f);
    for (int c = 0; c < d; ++c) {
      auto w = st->inner_column(i, c, f);
      // substitute the parity symbol: p = m_1 + ... + m_B
      std::vector<FieldElem> g(w.begin(), w.begin() + B);
      if (!w[B].is_zero())
        for (int t = 0; t < B; ++t) g[t] = f.add(g[t], w[B]);
      G.set_column(c, g);
    }
    inst.blocks.push_back(std::move(G));
  }
  detail::cons_a_attach_repair(inst, st);
  inst.collect = [blocks = inst.blocks, params = inst.params,
                  f](const std::vector<int>& nodes,
                     const std::vector<Shard>& shards) -> Message {
    CodeInstance tmp;
    tmp.params = params;
    tmp.field = f;
    tmp.blocks = blocks;
    return collect_by_generator_solve(tmp, nodes, shards);
  };
  return inst;
}

/// Dispatch on (k, d): exact cover of the three variants.
inline CodeInstance build_a(int n, int k, int d) {
  if (d > n - 2) throw std::invalid_argument("cons-a requires d <= n-2");
  if (k == d) return build_a_equal(n, d);
  if (k == n - 3 && d == n - 2) return build_a_binary(n);
  return build_a_general(n, k, d);
}

}  // namespace mbr
