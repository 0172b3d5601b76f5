#pragma once

// Subspaces of F_q^n as column spaces, keyed by their unique canonical
// generator matrix.  The canonical form of an n x k generator matrix has,
// for pivot rows p_1 < ... < p_k ("base row indices", 1-based):
//   - entry(p_j, j) = 1 and entry(r, j) = 0 for r > p_j,
//   - entry(p_i, j) = 0 for i != j,
//   - arbitrary entries ("stars") in the remaining positions above p_j.
// Two subspaces are equal iff their canonical matrices are equal.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/matrix.hpp"

namespace qdesign {

class Subspace {
 public:
  const MatFq& canon() const { return canon_; }
  // 1-based base row indices, strictly increasing.
  const std::vector<unsigned>& pivots() const { return pivots_; }

  const Gf& field() const { return canon_.field(); }
  unsigned ambient() const { return canon_.rows(); }
  unsigned dim() const { return canon_.cols(); }

  std::string key() const { return canon_.key(); }

  bool operator==(const Subspace& o) const { return canon_ == o.canon_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const { return canon_.key() < o.canon_.key(); }

  // Builds a subspace from an already-canonical matrix without re-reducing.
  // Callers must guarantee the canonical shape.
  static Subspace from_canonical(MatFq canon, std::vector<unsigned> pivots) {
    return Subspace(std::move(canon), std::move(pivots));
  }

 private:
  friend Subspace canonicalize(const MatFq&);
  Subspace(MatFq canon, std::vector<unsigned> pivots) : canon_(std::move(canon)), pivots_(std::move(pivots)) {}

  MatFq canon_;
  std::vector<unsigned> pivots_;
};

// Reduces a full-column-rank generator matrix to the canonical form by
// elementary column operations, bottom-up: repeatedly pick the column whose
// last nonzero entry sits in the highest row not yet used as a pivot,
// normalize it, clear that row from every other column, then sort columns by
// pivot row.
inline Subspace canonicalize(const MatFq& g) {
  const Gf& f = g.field();
  const unsigned n = g.rows(), k = g.cols();
  MatFq m = g;
  std::vector<unsigned> pivot_row(k, 0);  // 0-based row of each column's pivot
  std::vector<bool> done(k, false);

  for (unsigned step = 0; step < k; ++step) {
    unsigned best_col = k;
    int best_row = -1;
    for (unsigned c = 0; c < k; ++c) {
      if (done[c]) continue;
      int last = -1;
      for (int r = static_cast<int>(n) - 1; r >= 0; --r)
        if (m.at(static_cast<unsigned>(r), c) != 0) {
          last = r;
          break;
        }
      if (last > best_row) {
        best_row = last;
        best_col = c;
      }
    }
    if (best_row < 0) throw std::invalid_argument("generator matrix is rank-deficient");
    const unsigned r = static_cast<unsigned>(best_row), c = best_col;

    Fe s = f.inv(m.at(r, c));
    for (unsigned i = 0; i <= r; ++i) m.at(i, c) = f.mul(s, m.at(i, c));
    for (unsigned c2 = 0; c2 < k; ++c2) {
      if (c2 == c || m.at(r, c2) == 0) continue;
      Fe factor = m.at(r, c2);
      for (unsigned i = 0; i <= r; ++i) m.at(i, c2) = f.sub(m.at(i, c2), f.mul(factor, m.at(i, c)));
    }
    pivot_row[c] = r;
    done[c] = true;
  }

  std::vector<unsigned> order(k);
  for (unsigned c = 0; c < k; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return pivot_row[a] < pivot_row[b]; });

  MatFq canon(f, n, k);
  std::vector<unsigned> pivots(k);
  for (unsigned j = 0; j < k; ++j) {
    for (unsigned i = 0; i < n; ++i) canon.at(i, j) = m.at(i, order[j]);
    pivots[j] = pivot_row[order[j]] + 1;  // 1-based
  }
  return Subspace::from_canonical(std::move(canon), std::move(pivots));
}

// Left action of GL(F_q^n) on subspaces: alpha * S.
inline Subspace apply(const MatFq& alpha, const Subspace& s) {
  if (alpha.field() != s.field()) throw std::invalid_argument("apply: field mismatch");
  if (alpha.rows() != alpha.cols() || alpha.rows() != s.ambient())
    throw std::invalid_argument("apply: dimension mismatch");
  if (!is_invertible(alpha)) throw std::invalid_argument("apply: singular matrix");
  return canonicalize(alpha * s.canon());
}

// True iff t is a subspace of s.  Decided exactly: because pivot rows of a
// canonical matrix carry the coordinates of any member vector, v lies in s
// iff s.canon() * v[pivots] == v.
inline bool is_subspace_of(const Subspace& t, const Subspace& s) {
  if (t.field() != s.field() || t.ambient() != s.ambient())
    throw std::invalid_argument("containment across different ambient spaces");
  const Gf& f = s.field();
  const MatFq& gs = s.canon();
  const MatFq& gt = t.canon();
  const unsigned n = s.ambient();
  for (unsigned c = 0; c < gt.cols(); ++c) {
    for (unsigned r = 0; r < n; ++r) {
      Fe want = gt.at(r, c);
      Fe got = 0;
      for (unsigned j = 0; j < gs.cols(); ++j)
        got = f.add(got, f.mul(gs.at(r, j), gt.at(s.pivots()[j] - 1, c)));
      if (got != want) return false;
    }
  }
  return true;
}

}  // namespace qdesign
