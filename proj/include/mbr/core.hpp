#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mbr/gf.hpp"
#include "mbr/mat.hpp"

namespace mbr {

/// MBR-point parameters with beta = 1: alpha = d, B = kd - C(k,2).
struct MbrParams {
  int n = 0, k = 0, d = 0;
  int beta = 1;
  int alpha = 0;
  long B = 0;

  static MbrParams make(int n, int k, int d) {
    if (k < 1 || k > d || d > n - 1)
      throw std::invalid_argument("require 1 <= k <= d <= n-1");
    MbrParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.alpha = d;
    p.B = (long)k * d - (long)k * (k - 1) / 2;
    // Eq-consistency: the file-size bound holds with equality at MBR
    long acc = 0;
    for (int i = 0; i < k; ++i) acc += std::min(p.alpha, d - i);
    if (acc != p.B) throw std::logic_error("MBR file-size identity violated");
    return p;
  }
};

using Shard = std::vector<FieldElem>;
using Message = std::vector<FieldElem>;

/// Scheme-agnostic linear MBR code instance. Node i stores n_i = G_i^t f.
/// Repair functionals are per ordered pair (helper, failed): the packet a
/// helper sends is r_{i->j}^t n_i, independent of the helper set.
/// Reconstruction maps are scheme-supplied closures over aux data.
struct CodeInstance {
  MbrParams params;
  Field field;  // message field
  std::string scheme;
  std::vector<Mat> blocks;  // n generator blocks, each B x alpha
  // repair_vectors[helper][failed], each length alpha; empty on diagonal
  std::vector<std::vector<std::vector<FieldElem>>> repair_vectors;
  std::function<Shard(int failed, const std::vector<int>& helpers,
                      const std::vector<FieldElem>& packets)>
      repair;
  std::function<Message(const std::vector<int>& nodes,
                        const std::vector<Shard>& shards)>
      collect;

  Shard encode_node(int i, const Message& f) const {
    if ((long)f.size() != params.B)
      throw std::invalid_argument("message length != B");
    const Mat& G = blocks[i];
    Shard out(params.alpha, field.zero());
    for (int r = 0; r < G.rows; ++r) {
      if (f[r].is_zero()) continue;
      for (int c = 0; c < G.cols; ++c) {
        const FieldElem& g = G.at(r, c);
        if (!g.is_zero()) out[c] = field.add(out[c], field.mul(f[r], g));
      }
    }
    return out;
  }

  std::vector<Shard> encode(const Message& f) const {
    std::vector<Shard> all;
    all.reserve(params.n);
    for (int i = 0; i < params.n; ++i) all.push_back(encode_node(i, f));
    return all;
  }

  FieldElem packet(int helper, int failed, const Shard& helper_shard) const {
    const auto& r = repair_vectors[helper][failed];
    FieldElem acc = field.zero();
    for (int c = 0; c < params.alpha; ++c)
      acc = field.add(acc, field.mul(r[c], helper_shard[c]));
    return acc;
  }

  /// Message-space functional of the packet helper->failed: G_helper * r.
  std::vector<FieldElem> packet_functional(int helper, int failed) const {
    const auto& r = repair_vectors[helper][failed];
    const Mat& G = blocks[helper];
    std::vector<FieldElem> h(G.rows, field.zero());
    for (int row = 0; row < G.rows; ++row)
      for (int c = 0; c < G.cols; ++c)
        if (!G.at(row, c).is_zero() && !r[c].is_zero())
          h[row] = field.add(h[row], field.mul(G.at(row, c), r[c]));
    return h;
  }
};

/// Fallback decoder / test oracle: recover the file by solving the stacked
/// generator system of the accessed nodes directly.
inline Message collect_by_generator_solve(const CodeInstance& inst,
                                          const std::vector<int>& nodes,
                                          const std::vector<Shard>& shards) {
  const Field& f = inst.field;
  long B = inst.params.B;
  int eqs = (int)nodes.size() * inst.params.alpha;
  Mat A(eqs, (int)B, f);
  std::vector<FieldElem> b;
  b.reserve(eqs);
  int row = 0;
  for (size_t t = 0; t < nodes.size(); ++t) {
    const Mat& G = inst.blocks[nodes[t]];
    for (int c = 0; c < G.cols; ++c) {
      for (int r = 0; r < G.rows; ++r) A.at(row, r) = G.at(r, c);
      b.push_back(shards[t][c]);
      ++row;
    }
  }
  return solve_vec(A, b);
}

// ---- subset enumeration -------------------------------------------------

inline void for_each_subset(const std::vector<int>& pool, int size,
                            const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(size);
  std::vector<int> sel(size);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == size) {
      fn(sel);
      return;
    }
    for (int i = start; i <= (int)pool.size() - (size - depth); ++i) {
      sel[depth] = pool[i];
      rec(i + 1, depth + 1);
    }
  };
  if (size <= (int)pool.size()) rec(0, 0);
}

// ---- verification -------------------------------------------------------

struct VerifyReport {
  int total = 0;
  int passed = 0;
  bool exhaustive = true;  // false when subset sampling kicked in (n > cap)
  int cap = 12;
  std::vector<std::string> failures;

  bool ok() const { return total > 0 && passed == total; }
  void record(bool good, const std::string& what) {
    ++total;
    if (good)
      ++passed;
    else if (failures.size() < 32)
      failures.push_back(what);
    else if (failures.size() == 32)
      failures.push_back("...");
  }
};

namespace detail {

inline std::vector<std::vector<int>> helper_sets(int n, int excluded, int d,
                                                 VerifyReport& rep,
                                                 std::uint64_t seed) {
  std::vector<int> pool;
  for (int i = 0; i < n; ++i)
    if (i != excluded) pool.push_back(i);
  std::vector<std::vector<int>> sets;
  if (n <= rep.cap) {
    for_each_subset(pool, d, [&](const std::vector<int>& s) { sets.push_back(s); });
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed ^ (std::uint64_t)excluded);
    for (int t = 0; t < 64; ++t) {
      std::vector<int> p = pool;
      std::shuffle(p.begin(), p.end(), rng);
      p.resize(d);
      std::sort(p.begin(), p.end());
      sets.push_back(p);
    }
  }
  return sets;
}

}  // namespace detail

/// Exhaustive node-repair check: every failed node, every d-subset of
/// survivors, every provided message must reconstruct the shard exactly.
inline VerifyReport verify_repair_all(const CodeInstance& inst,
                                      const std::vector<Message>& messages,
                                      std::uint64_t seed = 1) {
  VerifyReport rep;
  int n = inst.params.n, d = inst.params.d;
  std::vector<std::vector<Shard>> encoded;
  encoded.reserve(messages.size());
  for (const auto& m : messages) encoded.push_back(inst.encode(m));
  for (int j = 0; j < n; ++j) {
    auto sets = detail::helper_sets(n, j, d, rep, seed);
    for (const auto& D : sets) {
      bool good = true;
      for (size_t mi = 0; mi < messages.size() && good; ++mi) {
        const auto& shards = encoded[mi];
        std::vector<FieldElem> packets;
        packets.reserve(d);
        for (int i : D) packets.push_back(inst.packet(i, j, shards[i]));
        try {
          Shard got = inst.repair(j, D, packets);
          good = (got == shards[j]);
        } catch (const std::exception&) {
          good = false;
        }
      }
      std::string desc = "repair j=" + std::to_string(j) + " D={";
      for (int i : D) desc += std::to_string(i) + ",";
      rep.record(good, desc + "}");
    }
  }
  return rep;
}

/// Exhaustive data-collection check: every k-subset recovers the file.
inline VerifyReport verify_dc_all(const CodeInstance& inst,
                                  const std::vector<Message>& messages,
                                  std::uint64_t seed = 2) {
  VerifyReport rep;
  int n = inst.params.n, k = inst.params.k;
  std::vector<std::vector<Shard>> encoded;
  for (const auto& m : messages) encoded.push_back(inst.encode(m));
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::vector<int>> sets;
  if (n <= rep.cap) {
    for_each_subset(pool, k, [&](const std::vector<int>& s) { sets.push_back(s); });
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 64; ++t) {
      std::vector<int> p = pool;
      std::shuffle(p.begin(), p.end(), rng);
      p.resize(k);
      std::sort(p.begin(), p.end());
      sets.push_back(p);
    }
  }
  for (const auto& K : sets) {
    bool good = true;
    for (size_t mi = 0; mi < messages.size() && good; ++mi) {
      std::vector<Shard> sub;
      for (int i : K) sub.push_back(encoded[mi][i]);
      try {
        good = (inst.collect(K, sub) == messages[mi]);
      } catch (const std::exception&) {
        good = false;
      }
    }
    std::string desc = "collect K={";
    for (int i : K) desc += std::to_string(i) + ",";
    rep.record(good, desc + "}");
  }
  return rep;
}

// ---- replication --------------------------------------------------------

struct ReplicationReport {
  // multiplicity -> number of distinct stored symbols with that multiplicity
  std::map<int, int> histogram;
  int max_multiplicity = 0;
};

/// Stored symbols are the same iff their generator columns are exactly equal
/// (identical linear functionals, not scalar multiples).
inline ReplicationReport replication_histogram(const CodeInstance& inst) {
  std::map<std::vector<FieldElem>, int> groups;
  for (const Mat& G : inst.blocks)
    for (int c = 0; c < G.cols; ++c) ++groups[G.column(c)];
  ReplicationReport rep;
  for (const auto& [col, count] : groups) {
    ++rep.histogram[count];
    rep.max_multiplicity = std::max(rep.max_multiplicity, count);
  }
  return rep;
}

// ---- help-by-transfer ---------------------------------------------------

inline bool is_basis_vector(const std::vector<FieldElem>& v, const Field& f) {
  int nonzero = 0;
  bool unit = false;
  for (const auto& e : v)
    if (!e.is_zero()) {
      ++nonzero;
      unit = (e == f.one());
    }
  return nonzero == 1 && unit;
}

/// True iff every helper in D serves node j's repair by reading exactly one
/// stored symbol (its repair functional is a standard basis vector).
inline bool verify_hbt(const CodeInstance& inst, int j,
                       const std::vector<int>& D) {
  for (int i : D)
    if (!is_basis_vector(inst.repair_vectors[i][j], inst.field)) return false;
  return true;
}

/// HBT for node j against every possible helper set.
inline bool verify_hbt_all_sets(const CodeInstance& inst, int j) {
  std::vector<int> all;
  for (int i = 0; i < inst.params.n; ++i)
    if (i != j) all.push_back(i);
  return verify_hbt(inst, j, all);
}

/// Repair-by-transfer: additionally the failed node's content is exactly the
/// received packets (the packet functionals are the node's own columns).
inline bool verify_rbt(const CodeInstance& inst, int j,
                       const std::vector<int>& D) {
  if (!verify_hbt(inst, j, D)) return false;
  std::vector<std::vector<FieldElem>> packets, own;
  for (int i : D) packets.push_back(inst.packet_functional(i, j));
  for (int c = 0; c < inst.params.alpha; ++c)
    own.push_back(inst.blocks[j].column(c));
  std::sort(packets.begin(), packets.end());
  std::sort(own.begin(), own.end());
  return packets == own;
}

// ---- update complexity --------------------------------------------------

struct UpdateComplexity {
  std::vector<int> counts;      // per message symbol: stored symbols affected
  std::vector<int> unused_rows; // message symbols touching nothing (flagged)
};

inline UpdateComplexity update_complexity(const CodeInstance& inst) {
  UpdateComplexity u;
  u.counts.assign(inst.params.B, 0);
  for (const Mat& G : inst.blocks)
    for (int r = 0; r < G.rows; ++r)
      for (int c = 0; c < G.cols; ++c)
        if (!G.at(r, c).is_zero()) ++u.counts[r];
  for (int r = 0; r < (int)u.counts.size(); ++r)
    if (u.counts[r] == 0) u.unused_rows.push_back(r);
  return u;
}

// ---- invariants shared by schemes --------------------------------------

/// Stacked generator [G_1 | ... | G_n] has rank B: the file is recoverable
/// from all nodes together.
inline bool full_rank_stacked(const CodeInstance& inst) {
  const Field& f = inst.field;
  Mat A((int)inst.params.B, inst.params.n * inst.params.alpha, f);
  int col = 0;
  for (const Mat& G : inst.blocks)
    for (int c = 0; c < G.cols; ++c, ++col)
      for (int r = 0; r < G.rows; ++r) A.at(r, col) = G.at(r, c);
  return rank(A) == (int)inst.params.B;
}

/// The packet functional for (i, j) lies in col(G_i) and col(G_j) (the
/// repair subspace is the intersection of the node subspaces).
inline bool packet_in_both_columns_spaces(const CodeInstance& inst, int i, int j) {
  auto h = inst.packet_functional(i, j);
  for (int node : {i, j}) {
    const Mat& G = inst.blocks[node];
    Mat A(G.rows, G.cols + 1, inst.field);
    for (int r = 0; r < G.rows; ++r) {
      for (int c = 0; c < G.cols; ++c) A.at(r, c) = G.at(r, c);
      A.at(r, G.cols) = h[r];
    }
    if (rank(A) != rank(G)) return false;
  }
  return true;
}

inline std::vector<Message> random_messages(const CodeInstance& inst, int count,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t order = inst.field.order();
  std::vector<Message> out;
  for (int t = 0; t < count; ++t) {
    Message m;
    for (long i = 0; i < inst.params.B; ++i)
      m.push_back(inst.field.element(rng() % order));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mbr
