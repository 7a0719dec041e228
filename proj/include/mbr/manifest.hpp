#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "mbr/cons_a.hpp"
#include "mbr/cons_b.hpp"
#include "mbr/pm.hpp"
#include "mbr/rbt.hpp"
#include "mbr/transform.hpp"

namespace mbr {

/// Everything needed to rebuild a code instance bit-exactly plus the payload
/// geometry of an encoded file. Construction is deterministic given
/// (scheme, n, k, d, field), so the aux block is informational.
struct Manifest {
  int version = 1;
  std::string scheme;
  int n = 0, k = 0, d = 0;
  long B = 0;
  int alpha = 0;
  FieldSpec field;
  int symbol_bits = 0;
  std::optional<int> field_bits;   // explicit base-field override, if any
  long payload_bytes = -1;         // -1 until a file is encoded
  long stripes = 0;
  nlohmann::json aux;
};

inline CodeInstance build_scheme(const std::string& scheme, int n, int k, int d,
                                 std::optional<int> field_bits = {}) {
  auto base_field = [&](Field dflt) {
    return field_bits ? Field::base(*field_bits) : dflt;
  };
  if (scheme == "pm")
    return build_pm(n, k, d, base_field(pm_default_field(n, k, d)));
  if (scheme == "rbt") {
    if (d != n - 1 && d != 0)
      throw std::invalid_argument("rbt requires d = n-1");
    return build_rbt(n, k, base_field(rbt_default_field(n)));
  }
  if (scheme == "cons-a") {
    if (field_bits) {
      if (k != d) throw std::invalid_argument("field override only for k = d");
      return build_a_equal(n, d, Field::base(*field_bits));
    }
    return build_a(n, k, d);
  }
  if (scheme == "cons-b")
    return build_b(n, k, d, base_field(pm_default_field(n, k, d)));
  if (scheme == "concat-rbt") {
    if (field_bits) throw std::invalid_argument("field override unsupported here");
    return concatenated_rbt(n, k, d);
  }
  if (scheme == "replicate") {
    if ((n * d) % 2 != 0)
      throw std::invalid_argument("n*d odd; use near-replicate");
    return transform_replicate(
        build_pm(n, k, d, base_field(pm_default_field(n, k, d))),
        regular_graph(n, d));
  }
  if (scheme == "near-replicate")
    return near_replicate(
        build_pm(n, k, d, base_field(pm_default_field(n, k, d))));
  throw std::invalid_argument("unknown scheme: " + scheme);
}

namespace detail {

inline nlohmann::json scheme_aux(const CodeInstance& inst, const std::string& scheme,
                                 int n, int k, int d) {
  nlohmann::json aux;
  const Field& f = inst.field;
  if (scheme == "pm" || scheme == "cons-b") {
    aux["psi"] = "systematic head + inverse-difference tail, points 1.." +
                 std::to_string(n - k) + " vs " + std::to_string(n - k + 1) +
                 ".." + std::to_string(n - k + d);
  }
  if (scheme == "cons-a" && k == d) {
    Mat mix = cons_a_mixing_columns(n, d, f);
    nlohmann::json cols = nlohmann::json::array();
    for (int c = 0; c < mix.cols; ++c) {
      nlohmann::json col = nlohmann::json::array();
      for (int r = 0; r < d; ++r) col.push_back(f.to_index(mix.at(r, c)));
      cols.push_back(col);
    }
    aux["mixing_columns"] = cols;
  }
  if (scheme == "cons-a") {
    aux["precoder"] = k == d ? "none"
                     : (k == n - 3 && d == n - 2) ? "single-parity"
                                                  : "rank-metric";
    if (aux["precoder"] == "rank-metric")
      aux["theta"] = "polynomial basis, first " + std::to_string(d * (d + 1) / 2);
  }
  if (scheme == "replicate" || scheme == "near-replicate" ||
      scheme == "concat-rbt") {
    SimpleGraph g;
    g.n = n;
    if (scheme == "replicate") g = regular_graph(n, d);
    if (scheme == "near-replicate") {
      g = regular_graph(n, d - 1);
      for (int v = 0; v < (n - 1) / 2; ++v) g.add_edge(v, v + (n - 1) / 2);
    }
    if (scheme == "concat-rbt")
      for (int grp = 0; grp < n / (d + 1); ++grp)
        for (int a = 0; a <= d; ++a)
          for (int b = a + 1; b <= d; ++b)
            g.add_edge(grp * (d + 1) + a, grp * (d + 1) + b);
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.edges) edges.push_back({a + 1, b + 1});
    aux["graph_edges"] = edges;
  }
  return aux;
}

}  // namespace detail

inline Manifest make_manifest(const std::string& scheme, int n, int k, int d,
                              std::optional<int> field_bits = {}) {
  CodeInstance inst = build_scheme(scheme, n, k, d, field_bits);
  Manifest m;
  m.scheme = scheme;
  m.n = n;
  m.k = k;
  m.d = inst.params.d;  // rbt may force d = n-1
  m.B = inst.params.B;
  m.alpha = inst.params.alpha;
  m.field = inst.field.spec();
  m.symbol_bits = inst.field.symbol_bits();
  m.field_bits = field_bits;
  m.aux = detail::scheme_aux(inst, scheme, n, k, m.d);
  return m;
}

inline CodeInstance build_from_manifest(const Manifest& m) {
  CodeInstance inst = build_scheme(m.scheme, m.n, m.k, m.d, m.field_bits);
  if (!(inst.field.spec().base_poly == m.field.base_poly &&
        inst.field.spec().ext_poly == m.field.ext_poly))
    throw std::runtime_error("manifest field table mismatch");
  return inst;
}

inline nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json j;
  j["version"] = m.version;
  j["scheme"] = m.scheme;
  j["n"] = m.n;
  j["k"] = m.k;
  j["d"] = m.d;
  j["B"] = m.B;
  j["alpha"] = m.alpha;
  j["field"] = {{"base_degree", m.field.base_degree},
                {"base_poly", m.field.base_poly},
                {"ext_degree", m.field.ext_degree},
                {"ext_poly", m.field.ext_poly}};
  j["symbol_bits"] = m.symbol_bits;
  if (m.field_bits) j["field_bits"] = *m.field_bits;
  j["payload_bytes"] = m.payload_bytes;
  j["stripes"] = m.stripes;
  j["aux"] = m.aux;
  return j;
}

inline Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  m.version = j.at("version");
  if (m.version != 1) throw std::runtime_error("unsupported manifest version");
  m.scheme = j.at("scheme");
  m.n = j.at("n");
  m.k = j.at("k");
  m.d = j.at("d");
  m.B = j.at("B");
  m.alpha = j.at("alpha");
  m.field.base_degree = j.at("field").at("base_degree");
  m.field.base_poly = j.at("field").at("base_poly");
  m.field.ext_degree = j.at("field").at("ext_degree");
  m.field.ext_poly = j.at("field").at("ext_poly").get<std::vector<std::uint32_t>>();
  m.symbol_bits = j.at("symbol_bits");
  if (j.contains("field_bits")) m.field_bits = j.at("field_bits").get<int>();
  m.payload_bytes = j.at("payload_bytes");
  m.stripes = j.at("stripes");
  m.aux = j.value("aux", nlohmann::json::object());
  return m;
}

inline void save_manifest(const Manifest& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << manifest_to_json(m).dump(2) << "\n";
}

inline Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return manifest_from_json(j);
}

}  // namespace mbr
