#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mbr/manifest.hpp"
#include "mbr/shard.hpp"

namespace mbr {

inline std::string shard_path(const std::string& dir, int node_id_1based) {
  return dir + "/node_" + std::to_string(node_id_1based) + ".shard";
}

/// Split a file into B-symbol stripes, encode every stripe, write one shard
/// file per node and record the payload geometry in the manifest.
inline void encode_file(Manifest& m, const CodeInstance& inst,
                        const std::vector<std::uint8_t>& data,
                        const std::string& out_dir) {
  const Field& f = inst.field;
  long stripes = 0;
  auto syms = bytes_to_symbols(data, m.symbol_bits, m.B, stripes);
  m.payload_bytes = (long)data.size();
  m.stripes = stripes;
  std::vector<ShardFile> shards(m.n);
  for (int i = 0; i < m.n; ++i) {
    shards[i].node_id = (std::uint16_t)(i + 1);
    shards[i].alpha = (std::uint16_t)m.alpha;
    shards[i].symbol_bits = (std::uint16_t)m.symbol_bits;
  }
  for (long s = 0; s < stripes; ++s) {
    Message msg;
    for (long t = 0; t < m.B; ++t) msg.push_back(f.element(syms[s * m.B + t]));
    for (int i = 0; i < m.n; ++i)
      for (const FieldElem& e : inst.encode_node(i, msg))
        shards[i].symbols.push_back(f.to_index(e));
  }
  for (int i = 0; i < m.n; ++i) save_shard(shards[i], shard_path(out_dir, i + 1));
}

struct RepairResult {
  long symbols_transferred = 0;  // d per stripe
  long helper_reads = 0;         // stored symbols read across all helpers
  bool hbt = false;              // every helper read exactly one symbol
  bool rbt = false;              // and the replacement stored packets as-is
};

/// Regenerate one node's shard from exactly d helper shards on disk.
inline RepairResult repair_shard(const Manifest& m, const CodeInstance& inst,
                                 const std::string& dir, int failed,
                                 const std::vector<int>& helpers) {
  if ((int)helpers.size() != m.d)
    throw std::invalid_argument("need exactly d = " + std::to_string(m.d) +
                                " helpers");
  for (int h : helpers)
    if (h == failed) throw std::invalid_argument("failed node cannot help");
  const Field& f = inst.field;
  std::vector<ShardFile> hs;
  for (int h : helpers) {
    hs.push_back(load_shard(shard_path(dir, h + 1)));
    if (hs.back().node_id != h + 1) throw std::runtime_error("shard id mismatch");
  }
  long stripes = hs[0].stripes();
  RepairResult res;
  res.hbt = verify_hbt(inst, failed, helpers);
  res.rbt = verify_rbt(inst, failed, helpers);
  ShardFile out;
  out.node_id = (std::uint16_t)(failed + 1);
  out.alpha = (std::uint16_t)m.alpha;
  out.symbol_bits = (std::uint16_t)m.symbol_bits;
  for (long s = 0; s < stripes; ++s) {
    std::vector<FieldElem> packets;
    for (size_t t = 0; t < helpers.size(); ++t) {
      Shard stored;
      for (int c = 0; c < m.alpha; ++c)
        stored.push_back(f.element(hs[t].symbols[s * m.alpha + c]));
      packets.push_back(inst.packet(helpers[t], failed, stored));
      // an HBT helper reads just the one symbol it forwards
      res.helper_reads += is_basis_vector(inst.repair_vectors[helpers[t]][failed], f)
                              ? 1
                              : m.alpha;
    }
    res.symbols_transferred += (long)helpers.size();
    for (const FieldElem& e : inst.repair(failed, helpers, packets))
      out.symbols.push_back(f.to_index(e));
  }
  save_shard(out, shard_path(dir, failed + 1));
  return res;
}

/// Recover the original file bytes from exactly k shards on disk.
inline std::vector<std::uint8_t> collect_file(const Manifest& m,
                                              const CodeInstance& inst,
                                              const std::string& dir,
                                              const std::vector<int>& nodes) {
  if ((int)nodes.size() != m.k)
    throw std::invalid_argument("need exactly k = " + std::to_string(m.k) +
                                " nodes");
  if (m.payload_bytes < 0) throw std::runtime_error("manifest has no payload");
  const Field& f = inst.field;
  std::vector<ShardFile> hs;
  for (int i : nodes) hs.push_back(load_shard(shard_path(dir, i + 1)));
  long stripes = hs[0].stripes();
  std::vector<std::uint64_t> syms;
  for (long s = 0; s < stripes; ++s) {
    std::vector<Shard> sub;
    for (auto& h : hs) {
      Shard sh;
      for (int c = 0; c < m.alpha; ++c)
        sh.push_back(f.element(h.symbols[s * m.alpha + c]));
      sub.push_back(std::move(sh));
    }
    for (const FieldElem& e : inst.collect(nodes, sub))
      syms.push_back(f.to_index(e));
  }
  return symbols_to_bytes(syms, m.symbol_bits, m.payload_bytes);
}

// ---- reports -------------------------------------------------------------

inline nlohmann::json verify_report(const CodeInstance& inst, int messages,
                                    std::uint64_t seed) {
  auto msgs = random_messages(inst, messages, seed);
  auto rr = verify_repair_all(inst, msgs, seed);
  auto dc = verify_dc_all(inst, msgs, seed + 1);
  auto rep = replication_histogram(inst);
  auto u = update_complexity(inst);
  nlohmann::json j;
  j["scheme"] = inst.scheme;
  j["n"] = inst.params.n;
  j["k"] = inst.params.k;
  j["d"] = inst.params.d;
  j["B"] = inst.params.B;
  j["repair"] = {{"passed", rr.passed},
                 {"total", rr.total},
                 {"exhaustive", rr.exhaustive},
                 {"failures", rr.failures}};
  j["collect"] = {{"passed", dc.passed},
                  {"total", dc.total},
                  {"exhaustive", dc.exhaustive},
                  {"failures", dc.failures}};
  nlohmann::json hist = nlohmann::json::object();
  for (auto [mult, cnt] : rep.histogram) hist[std::to_string(mult)] = cnt;
  j["replication"] = {{"histogram", hist},
                      {"max_multiplicity", rep.max_multiplicity}};
  nlohmann::json hbt = nlohmann::json::array();
  for (int node = 0; node < inst.params.n; ++node)
    hbt.push_back(verify_hbt_all_sets(inst, node));
  j["hbt_all_helper_sets"] = hbt;
  j["update_complexity"] = {{"per_symbol", u.counts},
                            {"unused_rows", u.unused_rows}};
  j["ok"] = rr.ok() && dc.ok();
  return j;
}

inline nlohmann::json compare_table(const std::vector<std::string>& schemes,
                                    int n, int k, int d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& scheme : schemes) {
    nlohmann::json row;
    row["scheme"] = scheme;
    try {
      CodeInstance inst = build_scheme(scheme, n, k, d);
      row["field_order"] = inst.field.order();
      row["symbol_bits"] = inst.field.symbol_bits();
      auto rep = replication_histogram(inst);
      nlohmann::json hist = nlohmann::json::object();
      for (auto [mult, cnt] : rep.histogram) hist[std::to_string(mult)] = cnt;
      row["replication_histogram"] = hist;
      row["max_multiplicity"] = rep.max_multiplicity;
      int hbt_nodes = 0;
      for (int node = 0; node < inst.params.n; ++node)
        if (verify_hbt_all_sets(inst, node)) ++hbt_nodes;
      row["hbt_nodes"] = hbt_nodes;
      auto u = update_complexity(inst);
      int mx = 0;
      long sum = 0;
      for (int c : u.counts) {
        mx = std::max(mx, c);
        sum += c;
      }
      row["update_complexity_max"] = mx;
      row["update_complexity_avg"] =
          u.counts.empty() ? 0.0 : (double)sum / (double)u.counts.size();
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mbr
