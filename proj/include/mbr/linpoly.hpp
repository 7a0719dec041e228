#pragma once

#include <stdexcept>
#include <vector>

#include "mbr/gf.hpp"
#include "mbr/mat.hpp"

namespace mbr {

/// Linearized polynomial f(x) = sum a_i x^{q^i} over F_{q^m}. As a map it is
/// F_q-linear and is determined by t+1 evaluations at points independent
/// over F_q.
struct LinearizedPoly {
  std::vector<FieldElem> coeffs;  // a_0 .. a_t

  int q_degree() const { return (int)coeffs.size() - 1; }
};

inline FieldElem lin_eval(const LinearizedPoly& f, const FieldElem& x,
                          const Field& field) {
  FieldElem acc = field.zero();
  FieldElem xq = x;  // x^{q^i}
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    if (i > 0) xq = field.frobenius(xq, 1);
    acc = field.add(acc, field.mul(f.coeffs[i], xq));
  }
  return acc;
}

/// Matrix with entry (i, j) = theta_j^{q^i}, i = 0..rows-1. Square Moore
/// matrices are invertible exactly when the points are F_q-independent.
inline Mat moore_matrix(const std::vector<FieldElem>& points, int rows,
                        const Field& field) {
  if (rows > field.ext_degree())
    throw std::invalid_argument("moore_matrix rows exceed extension degree");
  Mat m(rows, (int)points.size(), field);
  for (int j = 0; j < m.cols; ++j) {
    FieldElem p = points[j];
    for (int i = 0; i < rows; ++i) {
      m.at(i, j) = p;
      p = field.frobenius(p, 1);
    }
  }
  return m;
}

/// Unique f of q-degree <= t with f(points[i]) = values[i]; needs exactly
/// t+1 points, F_q-independent.
inline LinearizedPoly interpolate(const std::vector<FieldElem>& points,
                                  const std::vector<FieldElem>& values,
                                  int t, const Field& field) {
  if ((int)points.size() != t + 1 || values.size() != points.size())
    throw std::invalid_argument("interpolate needs exactly t+1 point/value pairs");
  Mat pts(1, (int)points.size(), field);
  for (int j = 0; j <= t; ++j) pts.at(0, j) = points[j];
  if (rank_over_subfield(pts) != t + 1)
    throw std::invalid_argument("interpolation points dependent over F_q");
  // Moore system: sum_i a_i theta_j^{q^i} = v_j
  Mat sys = moore_matrix(points, t + 1, field).transpose();
  LinearizedPoly f{solve_vec(sys, values)};
  return f;
}

/// Evaluation-point set for a systematic Gabidulin code. The default basis
/// points x^{i} of F_{q^m} are independent over F_q by construction.
inline std::vector<FieldElem> polynomial_basis_points(const Field& field,
                                                      int count) {
  if (count > field.ext_degree())
    throw std::invalid_argument("more points than extension degree");
  std::vector<FieldElem> pts;
  for (int i = 0; i < count; ++i) {
    FieldElem e = field.zero();
    e.c[i] = 1;
    pts.push_back(e);
  }
  return pts;
}

/// Systematic [n_c, B] Gabidulin encode: interpolate f of q-degree B-1
/// through the first B points and message symbols, output f at all points.
inline std::vector<FieldElem> gabidulin_systematic_encode(
    const std::vector<FieldElem>& msg, const std::vector<FieldElem>& points,
    const Field& field) {
  int B = (int)msg.size();
  int nc = (int)points.size();
  if (B > nc) throw std::invalid_argument("message longer than code length");
  std::vector<FieldElem> head(points.begin(), points.begin() + B);
  LinearizedPoly f = interpolate(head, msg, B - 1, field);
  std::vector<FieldElem> out;
  out.reserve(nc);
  for (int i = 0; i < nc; ++i) out.push_back(lin_eval(f, points[i], field));
  return out;
}

}  // namespace mbr
