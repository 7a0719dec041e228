#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "mbr/cons_a.hpp"
#include "mbr/core.hpp"
#include "mbr/pm.hpp"

namespace mbr {

struct SimpleGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // i < j

  void add_edge(int i, int j) {
    if (i == j || i < 0 || j >= n || i >= n || j < 0)
      throw std::invalid_argument("bad edge");
    if (i > j) std::swap(i, j);
    edges.insert({i, j});
  }
  int degree(int v) const {
    int deg = 0;
    for (auto [a, b] : edges)
      if (a == v || b == v) ++deg;
    return deg;
  }
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
      if (a == v) out.push_back(b);
      if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Deterministic d-regular simple graph on n vertices: circulant with
/// offsets 1..d/2, plus the antipodal offset n/2 when d is odd (which forces
/// n even). Exists iff n*d is even and d < n.
inline SimpleGraph regular_graph(int n, int d) {
  if (d >= n) throw std::invalid_argument("regular graph needs d <= n-1");
  if ((n * d) % 2 != 0)
    throw std::invalid_argument("n*d odd: no d-regular graph on n vertices");
  SimpleGraph g;
  g.n = n;
  for (int off = 1; off <= d / 2; ++off)
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + off) % n);
  if (d % 2 == 1)
    for (int v = 0; v < n / 2; ++v) g.add_edge(v, v + n / 2);
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != d) throw std::logic_error("circulant degree mismatch");
  return g;
}

namespace detail {

/// Message-space functional of the symbol shared on edge {i,j}: the repair
/// packet between the two nodes. Both directions must carry the same
/// functional (the 1-dimensional intersection of the node subspaces).
inline std::vector<FieldElem> edge_functional(const CodeInstance& base, int i,
                                              int j) {
  auto h = base.packet_functional(i, j);
  if (!(h == base.packet_functional(j, i)))
    throw std::logic_error("pairwise repair packets disagree across an edge");
  return h;
}

}  // namespace detail

/// Re-encode each node of a linear MBR base code so that its d stored
/// symbols are the pairwise repair packets toward its neighbors in a
/// d-regular graph: the symbol of edge {i,j} then lives in both node i and
/// node j, so every stored symbol of the result has multiplicity exactly 2.
/// Nodes whose symbol set is unchanged (as a multiset of functionals) keep
/// their original column order.
inline CodeInstance transform_replicate(const CodeInstance& base,
                                        const SimpleGraph& g) {
  int n = base.params.n, d = base.params.d;
  if (g.n != n) throw std::invalid_argument("graph order != n");
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != d)
      throw std::invalid_argument("graph must be d-regular");
  const Field& f = base.field;

  CodeInstance out;
  out.params = base.params;
  out.field = f;
  out.scheme = base.scheme + "+replicate";

  // R_v: columns are the repair coefficient vectors toward the neighbors;
  // n'_v = R_v^t n_v and the new generator block is G_v R_v
  auto R = std::make_shared<std::vector<Mat>>();
  auto Rinv = std::make_shared<std::vector<Mat>>();
  for (int v = 0; v < n; ++v) {
    Mat Rv(d, d, f);
    auto nb = g.neighbors(v);
    for (int c = 0; c < d; ++c) {
      const auto& r = base.repair_vectors[v][nb[c]];
      for (int a = 0; a < d; ++a) Rv.at(a, c) = r[a];
    }
    Mat Gv = mat_mul(base.blocks[v], Rv);
    // if the node already stores exactly these symbols, leave it untouched
    auto sorted_cols = [](const Mat& m) {
      std::vector<std::vector<FieldElem>> cols;
      for (int c = 0; c < m.cols; ++c) cols.push_back(m.column(c));
      std::sort(cols.begin(), cols.end());
      return cols;
    };
    if (sorted_cols(Gv) == sorted_cols(base.blocks[v])) {
      Rv = Mat::identity(d, f);
      Gv = base.blocks[v];
    }
    if (rank(Rv) != d)
      throw std::logic_error("substituted symbols do not span the node subspace");
    out.blocks.push_back(Gv);
    Rinv->push_back(inverse(Rv));
    R->push_back(std::move(Rv));
  }
  // verify the doubling: each edge symbol appears in both endpoint blocks
  for (auto [a, b] : g.edges) (void)detail::edge_functional(base, a, b);

  out.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat rm(d, 1, f);
      for (int a = 0; a < d; ++a) rm.at(a, 0) = base.repair_vectors[i][j][a];
      out.repair_vectors[i][j] = mat_mul((*Rinv)[i], rm).column(0);
    }

  auto base_repair = base.repair;
  auto base_collect = base.collect;
  Field field = f;
  out.repair = [base_repair, R, field](int failed, const std::vector<int>& helpers,
                                       const std::vector<FieldElem>& packets) -> Shard {
    // packets equal the base code's packets, so base repair gives the old
    // shard; re-encode it through R_failed
    Shard old = base_repair(failed, helpers, packets);
    const Mat& Rv = (*R)[failed];
    Mat om(Rv.rows, 1, field);
    om.set_column(0, old);
    return mat_mul(Rv.transpose(), om).column(0);
  };
  out.collect = [base_collect, Rinv, field](const std::vector<int>& nodes,
                                            const std::vector<Shard>& shards) -> Message {
    std::vector<Shard> old;
    for (size_t t = 0; t < nodes.size(); ++t) {
      const Mat& Ri = (*Rinv)[nodes[t]];
      Mat sm(Ri.rows, 1, field);
      sm.set_column(0, shards[t]);
      old.push_back(mat_mul(Ri.transpose(), sm).column(0));
    }
    return base_collect(nodes, old);
  };
  return out;
}

/// Disjoint complete graphs K_{d+1}: with the augmented-matrix base whose
/// first d+1 nodes already form that clique structure, the result is a
/// concatenation of n/(d+1) codes each repairing by pure transfer in-group.
inline CodeInstance concatenated_rbt(int n, int k, int d) {
  if (n % (d + 1) != 0)
    throw std::invalid_argument("concatenation requires (d+1) | n");
  SimpleGraph g;
  g.n = n;
  for (int grp = 0; grp < n / (d + 1); ++grp)
    for (int a = 0; a <= d; ++a)
      for (int b = a + 1; b <= d; ++b)
        g.add_edge(grp * (d + 1) + a, grp * (d + 1) + b);
  CodeInstance out = transform_replicate(build_a(n, k, d), g);
  out.scheme = "concat-rbt";
  return out;
}

/// n*d odd: no d-regular graph exists, but all-but-one symbols can still be
/// doubled. Take a (d-1)-regular circulant plus a perfect matching on the
/// first n-1 vertices; the last vertex keeps degree d-1 and stores, as its
/// d-th symbol, the repair packet from the lowest-index node not adjacent to
/// it. That one symbol has multiplicity 1, all others 2.
inline CodeInstance near_replicate(const CodeInstance& base) {
  int n = base.params.n, d = base.params.d;
  if ((n * d) % 2 == 0)
    throw std::invalid_argument("n*d even: use the full replication transform");
  SimpleGraph g1 = regular_graph(n, d - 1);
  SimpleGraph g;
  g.n = n;
  g.edges = g1.edges;
  for (int v = 0; v < (n - 1) / 2; ++v) g.add_edge(v, v + (n - 1) / 2);
  int last = n - 1;
  if (g.degree(last) != d - 1) throw std::logic_error("matching touched last vertex");

  const Field& f = base.field;
  CodeInstance out;
  out.params = base.params;
  out.field = f;
  out.scheme = "near-replicate";

  auto nbs = g.neighbors(last);
  int extra = -1;
  for (int u = 0; u < n && extra < 0; ++u)
    if (u != last && !std::binary_search(nbs.begin(), nbs.end(), u)) extra = u;

  auto R = std::make_shared<std::vector<Mat>>();
  auto Rinv = std::make_shared<std::vector<Mat>>();
  for (int v = 0; v < n; ++v) {
    Mat Rv(d, d, f);
    auto nb = g.neighbors(v);
    for (int c = 0; c < (int)nb.size(); ++c)
      for (int a = 0; a < d; ++a) Rv.at(a, c) = base.repair_vectors[v][nb[c]][a];
    if (v == last) {
      // the unpaired d-th symbol: the repair packet exchanged with the
      // lowest-index non-adjacent node (same value seen from either side)
      (void)detail::edge_functional(base, extra, last);
      for (int a = 0; a < d; ++a)
        Rv.at(a, d - 1) = base.repair_vectors[last][extra][a];
    }
    if (rank(Rv) != d)
      throw std::logic_error("substituted symbols do not span the node subspace");
    out.blocks.push_back(mat_mul(base.blocks[v], Rv));
    Rinv->push_back(inverse(Rv));
    R->push_back(std::move(Rv));
  }

  out.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat rm(d, 1, f);
      for (int a = 0; a < d; ++a) rm.at(a, 0) = base.repair_vectors[i][j][a];
      out.repair_vectors[i][j] = mat_mul((*Rinv)[i], rm).column(0);
    }
  auto base_repair = base.repair;
  auto base_collect = base.collect;
  Field field = f;
  out.repair = [base_repair, R, field](int failed, const std::vector<int>& helpers,
                                       const std::vector<FieldElem>& packets) -> Shard {
    Shard old = base_repair(failed, helpers, packets);
    const Mat& Rv = (*R)[failed];
    Mat om(Rv.rows, 1, field);
    om.set_column(0, old);
    return mat_mul(Rv.transpose(), om).column(0);
  };
  out.collect = [base_collect, Rinv, field](const std::vector<int>& nodes,
                                            const std::vector<Shard>& shards) -> Message {
    std::vector<Shard> old;
    for (size_t t = 0; t < nodes.size(); ++t) {
      const Mat& Ri = (*Rinv)[nodes[t]];
      Mat sm(Ri.rows, 1, field);
      sm.set_column(0, shards[t]);
      old.push_back(mat_mul(Ri.transpose(), sm).column(0));
    }
    return base_collect(nodes, old);
  };
  return out;
}

inline CodeInstance near_replicate(int n, int k, int d) {
  return near_replicate(build_pm(n, k, d));
}

}  // namespace mbr
