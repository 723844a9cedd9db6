#pragma once

#include <vector>

#include "whitcalc/liealg.hpp"

namespace wct {

inline wc::QMat diag(std::vector<wc::Rat> d) {
  const int n = static_cast<int>(d.size());
  wc::QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
  return m;
}

inline wc::QMat unit(int n, int i, int j) {
  wc::QMat m(n, n);
  m.at(i - 1, j - 1) = 1;
  return m;
}

/// Element of a matrix build from the elementary matrix e_ij (1-based).
inline wc::Elem E(const wc::LieAlgebra& g, int i, int j) { return g.elem_from_matrix(unit(g.matrix_size(), i, j)); }

inline wc::Elem D(const wc::LieAlgebra& g, std::vector<wc::Rat> d) { return g.elem_from_matrix(diag(std::move(d))); }

inline wc::Subspace span(const wc::LieAlgebra& g, const std::vector<wc::Elem>& v) {
  return wc::Subspace::span(g.dim(), v);
}

}  // namespace wct
