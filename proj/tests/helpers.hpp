#pragma once

#include <random>
#include <vector>

#include "qdesign/qdesign.hpp"

namespace qtest {

using namespace qdesign;

inline MatFq mat(const Gf& f, const std::vector<std::vector<Fe>>& rows) {
  MatFq m(f, static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows.at(0).size()));
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

inline MatFq random_matrix(const Gf& f, unsigned r, unsigned c, std::mt19937_64& rng) {
  MatFq m(f, r, c);
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < c; ++j) m.at(i, j) = static_cast<Fe>(rng() % f.q());
  return m;
}

inline MatFq random_invertible(const Gf& f, unsigned n, std::mt19937_64& rng) {
  for (;;) {
    MatFq m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

inline MatFq random_full_rank(const Gf& f, unsigned n, unsigned k, std::mt19937_64& rng) {
  for (;;) {
    MatFq m = random_matrix(f, n, k, rng);
    if (rank(m) == k) return m;
  }
}

inline Subspace random_subspace(const Gf& f, unsigned n, unsigned k, std::mt19937_64& rng) {
  return canonicalize(random_full_rank(f, n, k, rng));
}

inline MatFq random_borel_element(const Gf& f, unsigned n, std::mt19937_64& rng) {
  MatFq m(f, n, n);
  for (unsigned i = 0; i < n; ++i) {
    m.at(i, i) = static_cast<Fe>(1 + rng() % (f.q() - 1));
    for (unsigned j = i + 1; j < n; ++j) m.at(i, j) = static_cast<Fe>(rng() % f.q());
  }
  return m;
}

}  // namespace qtest
