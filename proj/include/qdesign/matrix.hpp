#pragma once

// Dense matrices over GF(q).  Row and column indices are 0-based in code;
// every external interface (pivot sets, labels, file formats) is 1-based.

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/gfq.hpp"

namespace qdesign {

class MatFq {
 public:
  MatFq(Gf field, unsigned rows, unsigned cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  MatFq(Gf field, unsigned rows, unsigned cols, std::vector<Fe> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rows_) * cols_)
      throw std::invalid_argument("entry count does not match matrix shape");
    for (Fe v : a_)
      if (!field_.valid(v)) throw std::invalid_argument("matrix entry out of range for the field");
  }

  static MatFq identity(const Gf& field, unsigned n) {
    MatFq m(field, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const Gf& field() const { return field_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }

  Fe at(unsigned r, unsigned c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Fe& at(unsigned r, unsigned c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<Fe>& entries() const { return a_; }

  MatFq operator*(const MatFq& o) const {
    if (field_ != o.field_) throw std::invalid_argument("matrix product across different fields");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    MatFq r(field_, rows_, o.cols_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned k = 0; k < cols_; ++k) {
        Fe v = at(i, k);
        if (v == 0) continue;
        for (unsigned j = 0; j < o.cols_; ++j) r.at(i, j) = field_.add(r.at(i, j), field_.mul(v, o.at(k, j)));
      }
    return r;
  }

  bool operator==(const MatFq& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const MatFq& o) const { return !(*this == o); }

  // Entry bytes, used as a canonical hash/compare key (shape is implied by
  // context everywhere keys are compared).
  std::string key() const {
    std::string s;
    s.reserve(a_.size());
    for (Fe v : a_) s.push_back(static_cast<char>(v));
    return s;
  }

 private:
  Gf field_;
  unsigned rows_, cols_;
  std::vector<Fe> a_;
};

inline unsigned rank(MatFq m) {
  const Gf& f = m.field();
  unsigned r = 0;
  for (unsigned c = 0; c < m.cols() && r < m.rows(); ++c) {
    unsigned piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(piv, j));
    Fe inv = f.inv(m.at(r, c));
    for (unsigned j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(inv, m.at(r, j));
    for (unsigned i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Fe factor = m.at(i, c);
      for (unsigned j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

inline bool is_invertible(const MatFq& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

inline MatFq inverse(const MatFq& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Gf& f = m.field();
  const unsigned n = m.rows();
  MatFq a = m;
  MatFq inv = MatFq::identity(f, n);
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) throw std::invalid_argument("matrix is singular");
    for (unsigned j = 0; j < n; ++j) {
      std::swap(a.at(c, j), a.at(piv, j));
      std::swap(inv.at(c, j), inv.at(piv, j));
    }
    Fe s = f.inv(a.at(c, c));
    for (unsigned j = 0; j < n; ++j) {
      a.at(c, j) = f.mul(s, a.at(c, j));
      inv.at(c, j) = f.mul(s, inv.at(c, j));
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      Fe factor = a.at(i, c);
      for (unsigned j = 0; j < n; ++j) {
        a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(c, j)));
        inv.at(i, j) = f.sub(inv.at(i, j), f.mul(factor, inv.at(c, j)));
      }
    }
  }
  return inv;
}

// True iff the matrix is upper triangular with nonzero diagonal, i.e. a
// member of the standard Borel subgroup.
inline bool is_borel(const MatFq& m) {
  if (m.rows() != m.cols()) return false;
  for (unsigned i = 0; i < m.rows(); ++i) {
    if (m.at(i, i) == 0) return false;
    for (unsigned j = 0; j < i; ++j)
      if (m.at(i, j) != 0) return false;
  }
  return true;
}

// Plain-text matrix format: "rows cols" on a header line, then one line per
// row of space-separated element indices.
inline std::string format_matrix(const MatFq& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (unsigned i = 0; i < m.rows(); ++i) {
    for (unsigned j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

inline MatFq parse_matrix(const Gf& field, std::istream& in) {
  unsigned rows, cols;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix header: expected \"rows cols\"");
  MatFq m(field, rows, cols);
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) {
      Fe v;
      if (!(in >> v)) throw std::invalid_argument("matrix body: not enough entries");
      if (!field.valid(v)) throw std::invalid_argument("matrix entry out of range for the field");
      m.at(i, j) = v;
    }
  return m;
}

inline MatFq parse_matrix(const Gf& field, const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(field, in);
}

}  // namespace qdesign
