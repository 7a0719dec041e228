#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbr {

/// Binary-characteristic finite fields F_{2^s} and extensions F_{q^m}
/// (q = 2^s) in polynomial basis. All arithmetic is exact and bit-stable:
/// the base polynomial comes from a fixed table, extension polynomials are
/// found by a deterministic search and verified irreducible.

struct FieldSpec {
  int base_degree = 1;             // s, bits per base element
  std::uint32_t base_poly = 0x3;   // bit mask incl. leading term
  int ext_degree = 1;              // m; 1 = no extension
  std::vector<std::uint32_t> ext_poly;  // monic, size m+1, coeffs in F_q

  bool operator==(const FieldSpec&) const = default;
};

/// Element of F_{q^m}: m base-field coordinates, c[0] the constant term.
struct FieldElem {
  std::vector<std::uint32_t> c;

  bool operator==(const FieldElem&) const = default;
  bool operator<(const FieldElem& o) const { return c < o.c; }
  bool is_zero() const {
    for (auto v : c)
      if (v) return false;
    return true;
  }
};

/// Fixed table of irreducible polynomials over F_2, degrees 1..16.
/// Entry [s] is the lexicographically smallest irreducible mask of degree s;
/// published in the manifest format for cross-implementation reproducibility.
inline std::uint32_t base_poly_table(int degree) {
  static constexpr std::uint32_t table[17] = {
      0,      0x3,    0x7,    0xb,   0x13,   0x25,   0x43,   0x83,  0x11b,
      0x203,  0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b};
  if (degree < 1 || degree > 16)
    throw std::invalid_argument("base field degree must be in 1..16");
  return table[degree];
}

namespace detail {

// carryless multiply modulo base_poly (degree s)
inline std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, int s,
                               std::uint32_t poly) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> s & 1u) a ^= poly;
  }
  return r;
}

}  // namespace detail

class Field;

/// Shared immutable field implementation: spec plus log/antilog tables for
/// the base field (results are bit-identical to carryless multiplication).
class FieldImpl {
 public:
  FieldSpec spec;
  std::uint32_t q;                    // base field size 2^s
  std::vector<std::uint32_t> log_;    // size q, log_[0] unused
  std::vector<std::uint32_t> exp_;    // size 2(q-1)

  explicit FieldImpl(FieldSpec s) : spec(std::move(s)) {
    if (spec.base_degree < 1 || spec.base_degree > 16)
      throw std::invalid_argument("base degree out of range");
    if (spec.base_poly != base_poly_table(spec.base_degree))
      throw std::invalid_argument("base polynomial not in the published table");
    if (spec.ext_degree < 1)
      throw std::invalid_argument("extension degree must be >= 1");
    q = 1u << spec.base_degree;
    if (spec.ext_degree == 1) {
      spec.ext_poly.clear();
    } else if ((int)spec.ext_poly.size() != spec.ext_degree + 1 ||
               spec.ext_poly.back() != 1u) {
      throw std::invalid_argument("ext_poly must be monic of degree m");
    }
    build_tables();
    if (spec.ext_degree > 1 && !ext_poly_irreducible())
      throw std::invalid_argument("ext_poly is reducible over F_q");
  }

  std::uint32_t bmul(std::uint32_t a, std::uint32_t b) const {
    if (!a || !b) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t binv(std::uint32_t a) const {
    if (!a) throw std::domain_error("division by zero in base field");
    return exp_[(q - 1) - log_[a]];
  }

 private:
  void build_tables() {
    log_.assign(q, 0);
    exp_.assign(2 * (q - 1) + 1, 1);
    if (q == 2) {  // trivial field
      exp_ = {1, 1, 1};
      return;
    }
    // find a multiplicative generator
    for (std::uint32_t g = 2; g < q; ++g) {
      std::uint32_t x = 1;
      std::uint32_t ord = 0;
      do {
        x = detail::clmul_mod(x, g, spec.base_degree, spec.base_poly);
        ++ord;
      } while (x != 1);
      if (ord == q - 1) {
        x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
          exp_[i] = x;
          log_[x] = i;
          x = detail::clmul_mod(x, g, spec.base_degree, spec.base_poly);
        }
        for (std::uint32_t i = q - 1; i <= 2 * (q - 1); ++i)
          exp_[i] = exp_[i - (q - 1)];
        return;
      }
    }
    throw std::logic_error("no generator found");
  }

  // --- dense polynomials over F_q used only for the irreducibility test ---
  using Poly = std::vector<std::uint32_t>;

  static void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  Poly pmulmod(const Poly& a, const Poly& b, const Poly& mod) const {
    Poly r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (size_t j = 0; j < b.size(); ++j)
          if (b[j]) r[i + j] ^= bmul(a[i], b[j]);
    // reduce by monic mod
    int md = (int)mod.size() - 1;
    for (int i = (int)r.size() - 1; i >= md; --i) {
      if (!r[i]) continue;
      std::uint32_t c = r[i];
      for (int j = 0; j <= md; ++j) r[i - md + j] ^= bmul(c, mod[j]);
    }
    r.resize(md);
    return r;
  }
  Poly pgcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      // a mod b
      std::uint32_t lead_inv = binv(b.back());
      while (a.size() >= b.size() && !a.empty()) {
        std::uint32_t c = bmul(a.back(), lead_inv);
        size_t off = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[off + j] ^= bmul(c, b[j]);
        trim(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    return a;
  }

  // no roots in F_q, and gcd(x^{q^i} - x, f) = 1 for i <= m/2
  bool ext_poly_irreducible() const {
    const Poly& f = spec.ext_poly;
    for (std::uint32_t r = 0; r < q; ++r) {
      std::uint32_t v = 0, x = 1;
      for (auto c : f) {
        v ^= bmul(c, x);
        x = bmul(x, r);
      }
      if (!v) return false;
    }
    Poly xp = {0, 1};  // x
    int m = spec.ext_degree;
    for (int i = 1; i <= m / 2; ++i) {
      // xp <- xp^q  (s squarings)
      for (int sq = 0; sq < spec.base_degree; ++sq) xp = pmulmod(xp, xp, f);
      Poly g = xp;
      if (g.size() < 2) g.resize(2, 0);
      g[1] ^= 1;  // xp - x
      Poly gg = pgcd(g, f);
      if (!(gg.size() == 1)) return false;
    }
    return true;
  }
};

/// Value-semantic handle to a shared immutable FieldImpl.
class Field {
 public:
  Field() : impl_(default_gf2()) {}
  explicit Field(FieldSpec spec)
      : impl_(std::make_shared<const FieldImpl>(std::move(spec))) {}

  /// F_{2^s} with the table polynomial.
  static Field base(int s) {
    FieldSpec sp;
    sp.base_degree = s;
    sp.base_poly = base_poly_table(s);
    sp.ext_degree = 1;
    return Field(sp);
  }

  /// Smallest F_{2^s} with at least min_elems elements.
  static Field base_with_min_order(std::uint64_t min_elems) {
    for (int s = 1; s <= 16; ++s)
      if ((std::uint64_t(1) << s) >= min_elems) return base(s);
    throw std::invalid_argument("field larger than 2^16 requested");
  }

  /// Degree-m extension of F_{2^s}; the extension polynomial is the first
  /// monic irreducible in counter order, so the choice is reproducible.
  static Field extension(int s, int m) {
    if (m == 1) return base(s);
    Field bf = base(s);
    std::uint32_t q = bf.impl_->q;
    FieldSpec sp = bf.spec();
    sp.ext_degree = m;
    // enumerate lower coefficients as base-q digits of a counter
    for (std::uint64_t ctr = 1;; ++ctr) {
      std::vector<std::uint32_t> co(m + 1, 0);
      std::uint64_t t = ctr;
      for (int i = 0; i < m && t; ++i) {
        co[i] = (std::uint32_t)(t % q);
        t /= q;
      }
      if (t) throw std::runtime_error("no irreducible ext_poly found");
      if (!co[0]) continue;  // constant term must be nonzero
      co[m] = 1;
      sp.ext_poly = co;
      try {
        return Field(sp);
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }

  const FieldSpec& spec() const { return impl_->spec; }
  int base_degree() const { return impl_->spec.base_degree; }
  int ext_degree() const { return impl_->spec.ext_degree; }
  std::uint32_t base_order() const { return impl_->q; }
  /// total elements q^m
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (int i = 0; i < ext_degree(); ++i) o *= impl_->q;
    return o;
  }
  int symbol_bits() const { return base_degree() * ext_degree(); }
  bool operator==(const Field& o) const { return spec() == o.spec(); }

  FieldElem zero() const { return {std::vector<std::uint32_t>(ext_degree(), 0)}; }
  FieldElem one() const { return element(1); }

  /// Element with packed representation value `idx` (base-q digits are the
  /// polynomial-basis coordinates). This is "field representation order".
  FieldElem element(std::uint64_t idx) const {
    FieldElem e = zero();
    for (int i = 0; i < ext_degree(); ++i) {
      e.c[i] = (std::uint32_t)(idx % impl_->q);
      idx /= impl_->q;
    }
    if (idx) throw std::invalid_argument("element index out of field range");
    return e;
  }
  /// Embed a base-field value as a degree-0 element.
  FieldElem scalar(std::uint32_t v) const {
    check_base(v);
    FieldElem e = zero();
    e.c[0] = v;
    return e;
  }
  std::uint64_t to_index(const FieldElem& a) const {
    check(a);
    std::uint64_t v = 0;
    for (int i = ext_degree() - 1; i >= 0; --i) v = v * impl_->q + a.c[i];
    return v;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] ^= b.c[i];
    return r;
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    int m = ext_degree();
    if (m == 1) return {{impl_->bmul(a.c[0], b.c[0])}};
    std::vector<std::uint32_t> prod(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      if (a.c[i])
        for (int j = 0; j < m; ++j)
          if (b.c[j]) prod[i + j] ^= impl_->bmul(a.c[i], b.c[j]);
    // reduce modulo monic ext_poly
    const auto& f = impl_->spec.ext_poly;
    for (int i = 2 * m - 2; i >= m; --i) {
      if (!prod[i]) continue;
      std::uint32_t c = prod[i];
      prod[i] = 0;
      for (int j = 0; j < m; ++j) prod[i - m + j] ^= impl_->bmul(c, f[j]);
    }
    prod.resize(m);
    return {std::move(prod)};
  }

  /// Multiply by a base-field scalar (coordinate-wise).
  FieldElem smul(std::uint32_t s, const FieldElem& a) const {
    check(a);
    check_base(s);
    FieldElem r = a;
    for (auto& v : r.c) v = impl_->bmul(s, v);
    return r;
  }

  FieldElem pow(FieldElem a, std::uint64_t e) const {
    FieldElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(const FieldElem& a) const {
    check(a);
    if (a.is_zero()) throw std::domain_error("division by zero");
    if (ext_degree() == 1) return {{impl_->binv(a.c[0])}};
    return pow(a, order() - 2);
  }

  /// a^{q^i}: the i-fold q-power Frobenius. Period ext_degree.
  FieldElem frobenius(FieldElem a, int i) const {
    check(a);
    i %= ext_degree();
    if (i < 0) i += ext_degree();
    for (int r = 0; r < i; ++r)
      for (int sq = 0; sq < base_degree(); ++sq) a = mul(a, a);
    return a;
  }

  std::uint32_t badd(std::uint32_t a, std::uint32_t b) const {
    return a ^ b;
  }
  std::uint32_t bmul(std::uint32_t a, std::uint32_t b) const {
    check_base(a);
    check_base(b);
    return impl_->bmul(a, b);
  }
  std::uint32_t binv(std::uint32_t a) const {
    check_base(a);
    return impl_->binv(a);
  }

  /// View of the base field F_q as a Field.
  Field base_field() const { return base(base_degree()); }

 private:
  std::shared_ptr<const FieldImpl> impl_;

  static std::shared_ptr<const FieldImpl> default_gf2() {
    static const auto f = std::make_shared<const FieldImpl>(FieldSpec{});
    return f;
  }
  void check(const FieldElem& a) const {
    if ((int)a.c.size() != ext_degree())
      throw std::invalid_argument("element does not conform to field spec");
    for (auto v : a.c)
      if (v >= impl_->q)
        throw std::invalid_argument("element coordinate out of range");
  }
  void check_base(std::uint32_t v) const {
    if (v >= impl_->q)
      throw std::invalid_argument("base element out of range");
  }
};

}  // namespace mbr
