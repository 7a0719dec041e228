#pragma once

#include <memory>
#include <vector>

#include "mbr/core.hpp"

namespace mbr {

/// Canonical edge indexing on the complete graph: unordered pairs {i,j},
/// i < j, in lexicographic order.
struct EdgeIndex {
  int n;
  explicit EdgeIndex(int n) : n(n) {}
  int count() const { return n * (n - 1) / 2; }
  int index(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j || i < 0 || j >= n) throw std::invalid_argument("bad edge");
    // edges with first endpoint < i come first
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }
  std::pair<int, int> pair_of(int idx) const {
    for (int i = 0; i < n; ++i) {
      int cnt = n - i - 1;
      if (idx < cnt) return {i, i + 1 + idx};
      idx -= cnt;
    }
    throw std::invalid_argument("edge index out of range");
  }
  /// neighbors of vertex v in ascending order
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n; ++u)
      if (u != v) out.push_back(u);
    return out;
  }
};

inline Field rbt_default_field(int n) {
  return Field::base_with_min_order((std::uint64_t)n * (n - 1) / 2 + 1);
}

/// Systematic generator of an [len, B] MDS code: Vandermonde on the points
/// 1..len, row-reduced so the first B positions are the message.
inline Mat systematic_mds_generator(int B, int len, const Field& f) {
  Mat V(B, len, f);
  for (int j = 0; j < len; ++j) {
    FieldElem p = f.element(1 + j);
    FieldElem acc = f.one();
    for (int i = 0; i < B; ++i) {
      V.at(i, j) = acc;
      acc = f.mul(acc, p);
    }
  }
  Mat VB(B, B, f);
  for (int j = 0; j < B; ++j) VB.set_column(j, V.column(j));
  return solve(VB, V);
}

/// Repair-by-transfer MBR code for d = n-1: an outer [C(n,2), B] MDS code
/// assigns one symbol per edge of the complete graph; node i stores the
/// symbols of its incident edges and repair is a pure transfer of edge {i,j}.
inline CodeInstance build_rbt(int n, int k, const Field& field) {
  int d = n - 1;
  CodeInstance inst;
  inst.params = MbrParams::make(n, k, d);
  inst.field = field;
  inst.scheme = "rbt";
  auto edges = std::make_shared<EdgeIndex>(n);
  int B = (int)inst.params.B;
  int E = edges->count();
  if (field.order() < (std::uint64_t)E + 1)
    throw std::invalid_argument("rbt outer MDS code needs 2^w >= C(n,2)+1");
  auto outer = std::make_shared<Mat>(systematic_mds_generator(B, E, field));

  for (int i = 0; i < n; ++i) {
    Mat G(B, d, field);
    auto nb = edges->neighbors(i);
    for (int c = 0; c < d; ++c)
      G.set_column(c, outer->column(edges->index(i, nb[c])));
    inst.blocks.push_back(std::move(G));
  }

  inst.repair_vectors.assign(n, std::vector<std::vector<FieldElem>>(n));
  for (int i = 0; i < n; ++i) {
    auto nb = edges->neighbors(i);
    for (int c = 0; c < d; ++c) {
      std::vector<FieldElem> r(d, field.zero());
      r[c] = field.one();
      inst.repair_vectors[i][nb[c]] = r;
    }
  }

  Field f = field;
  inst.repair = [edges, f, d](int failed, const std::vector<int>& helpers,
                              const std::vector<FieldElem>& packets) -> Shard {
    // received symbols are stored as-is in edge order
    Shard out(d, f.zero());
    auto nb = edges->neighbors(failed);
    for (int t = 0; t < d; ++t) {
      int pos = -1;
      for (int c = 0; c < d; ++c)
        if (nb[c] == helpers[t]) pos = c;
      if (pos < 0) throw std::invalid_argument("helper set must be all survivors");
      out[pos] = packets[t];
    }
    return out;
  };

  inst.collect = [edges, outer, f, B](const std::vector<int>& nodes,
                                      const std::vector<Shard>& shards) -> Message {
    // the k nodes expose exactly B distinct edge symbols
    std::vector<int> seen(edges->count(), 0);
    Mat A(B, B, f);
    std::vector<FieldElem> b;
    int eq = 0;
    for (size_t t = 0; t < nodes.size(); ++t) {
      auto nb = edges->neighbors(nodes[t]);
      for (size_t c = 0; c < nb.size(); ++c) {
        int idx = edges->index(nodes[t], nb[c]);
        if (seen[idx]) continue;
        seen[idx] = 1;
        if (eq >= B) throw std::logic_error("edge count exceeds B");
        for (int r = 0; r < B; ++r) A.at(eq, r) = outer->at(r, idx);
        b.push_back(shards[t][c]);
        ++eq;
      }
    }
    if (eq != B) throw std::logic_error("edge count mismatch");
    return solve_vec(A, b);
  };
  return inst;
}

inline CodeInstance build_rbt(int n, int k) {
  return build_rbt(n, k, rbt_default_field(n));
}

}  // namespace mbr
