#pragma once

// Small row-major matrices of jets, used wherever a geometric quantity must
// be differentiated along the submanifold.

#include <vector>

#include "rectsub/jet.hpp"
#include "rectsub/metric.hpp"

namespace rectsub::detail {

struct JetMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Jet> data;

  JetMatrix() = default;
  JetMatrix(int r, int c, int nvars, int order) : rows(r), cols(c), data(r * c, Jet(nvars, order)) {}

  Jet& operator()(int i, int j) { return data[i * cols + j]; }
  const Jet& operator()(int i, int j) const { return data[i * cols + j]; }

  Matrix values() const {
    Matrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) out(i, j) = (*this)(i, j).value();
    }
    return out;
  }
};

inline JetMatrix constant(const Matrix& m, int nvars, int order) {
  JetMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()), nvars, order);
  for (int i = 0; i < out.rows; ++i) {
    for (int j = 0; j < out.cols; ++j) out(i, j) = Jet(nvars, order, m(i, j));
  }
  return out;
}

inline JetMatrix multiply(const JetMatrix& a, const JetMatrix& b) {
  const int nvars = a.data[0].nvars();
  const int order = std::min(a.data[0].order(), b.data[0].order());
  JetMatrix out(a.rows, b.cols, nvars, order);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      Jet s(nvars, order);
      for (int k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

inline JetMatrix transpose(const JetMatrix& a) {
  JetMatrix out;
  out.rows = a.cols;
  out.cols = a.rows;
  out.data.resize(a.data.size());
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  }
  return out;
}

/// Inverse of an SPD jet matrix: with G = G0 + D (D without constant term),
/// G^-1 = sum_k (-G0^-1 D)^k G0^-1, exact after `order` terms.
inline JetMatrix spd_inverse(const JetMatrix& g, double spd_tol) {
  const int nvars = g.data[0].nvars();
  const int order = g.data[0].order();
  const Matrix g0inv = rectsub::spd_inverse(g.values(), spd_tol);
  JetMatrix delta = g;
  for (Jet& j : delta.data) j -= j.value();
  JetMatrix step = multiply(constant(-g0inv, nvars, order), delta);
  JetMatrix term = constant(g0inv, nvars, order);
  JetMatrix sum = term;
  for (int k = 1; k <= order; ++k) {
    term = multiply(step, term);
    for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += term.data[i];
  }
  return sum;
}

}  // namespace rectsub::detail
