#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "mbr/core.hpp"

namespace mbr {

// Shard file layout: 11-byte header, then per stripe alpha symbols, each
// stored in ceil(symbol_bits / 8) bytes little-endian.
//   offset 0: magic "MBR1"
//   offset 4: version (u8)
//   offset 5: node_id (u16 LE, 1-based)
//   offset 7: alpha (u16 LE)
//   offset 9: symbol_bits (u16 LE)

struct ShardFile {
  std::uint8_t version = 1;
  std::uint16_t node_id = 0;  // 1-based on disk
  std::uint16_t alpha = 0;
  std::uint16_t symbol_bits = 0;
  std::vector<std::uint64_t> symbols;  // stripe-major, alpha per stripe

  long stripes() const { return alpha ? (long)symbols.size() / alpha : 0; }
};

inline int symbol_bytes(int symbol_bits) { return (symbol_bits + 7) / 8; }

inline std::vector<std::uint8_t> shard_to_bytes(const ShardFile& s) {
  std::vector<std::uint8_t> out{'M', 'B', 'R', '1', s.version,
                                (std::uint8_t)(s.node_id & 0xff),
                                (std::uint8_t)(s.node_id >> 8),
                                (std::uint8_t)(s.alpha & 0xff),
                                (std::uint8_t)(s.alpha >> 8),
                                (std::uint8_t)(s.symbol_bits & 0xff),
                                (std::uint8_t)(s.symbol_bits >> 8)};
  int nb = symbol_bytes(s.symbol_bits);
  for (std::uint64_t v : s.symbols)
    for (int b = 0; b < nb; ++b) out.push_back((std::uint8_t)(v >> (8 * b)));
  return out;
}

inline ShardFile shard_from_bytes(const std::vector<std::uint8_t>& in) {
  if (in.size() < 11 || in[0] != 'M' || in[1] != 'B' || in[2] != 'R' || in[3] != '1')
    throw std::runtime_error("bad shard magic");
  ShardFile s;
  s.version = in[4];
  if (s.version != 1) throw std::runtime_error("unsupported shard version");
  s.node_id = (std::uint16_t)(in[5] | (in[6] << 8));
  s.alpha = (std::uint16_t)(in[7] | (in[8] << 8));
  s.symbol_bits = (std::uint16_t)(in[9] | (in[10] << 8));
  int nb = symbol_bytes(s.symbol_bits);
  if (nb == 0 || (in.size() - 11) % ((size_t)nb * s.alpha) != 0)
    throw std::runtime_error("shard payload length mismatch");
  for (size_t off = 11; off < in.size(); off += nb) {
    std::uint64_t v = 0;
    for (int b = 0; b < nb; ++b) v |= (std::uint64_t)in[off + b] << (8 * b);
    s.symbols.push_back(v);
  }
  return s;
}

inline void write_file_bytes(const std::string& path,
                             const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write((const char*)bytes.data(), (std::streamsize)bytes.size());
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void save_shard(const ShardFile& s, const std::string& path) {
  write_file_bytes(path, shard_to_bytes(s));
}

inline ShardFile load_shard(const std::string& path) {
  return shard_from_bytes(read_file_bytes(path));
}

// ---- bit-level payload <-> symbol mapping --------------------------------
// Files map onto message symbols as a little-endian bitstream: symbol_bits
// bits per symbol, B symbols per stripe, final stripe zero-padded. Any bit
// pattern of symbol_bits bits is a valid field element index.

inline std::vector<std::uint64_t> bytes_to_symbols(
    const std::vector<std::uint8_t>& data, int symbol_bits, long per_stripe,
    long& stripes_out) {
  long total_bits = (long)data.size() * 8;
  long nsym = (total_bits + symbol_bits - 1) / symbol_bits;
  stripes_out = per_stripe ? (nsym + per_stripe - 1) / per_stripe : 0;
  std::vector<std::uint64_t> out((size_t)(stripes_out * per_stripe), 0);
  for (long s = 0; s < nsym; ++s) {
    std::uint64_t v = 0;
    for (int b = 0; b < symbol_bits; ++b) {
      long bit = s * symbol_bits + b;
      if (bit >= total_bits) break;
      if (data[bit / 8] >> (bit % 8) & 1) v |= 1ull << b;
    }
    out[(size_t)s] = v;
  }
  return out;
}

inline std::vector<std::uint8_t> symbols_to_bytes(
    const std::vector<std::uint64_t>& symbols, int symbol_bits, long nbytes) {
  std::vector<std::uint8_t> out((size_t)nbytes, 0);
  long total_bits = nbytes * 8;
  for (size_t s = 0; s < symbols.size(); ++s)
    for (int b = 0; b < symbol_bits; ++b) {
      long bit = (long)s * symbol_bits + b;
      if (bit >= total_bits) break;
      if (symbols[s] >> b & 1) out[bit / 8] |= (std::uint8_t)(1 << (bit % 8));
    }
  return out;
}

}  // namespace mbr
