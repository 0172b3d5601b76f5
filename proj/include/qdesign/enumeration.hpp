#pragma once

// q-binomial coefficients and enumeration of k-subspaces by echelon class.
// Each class is named by its pivot set (the base row indices of the
// canonical generator matrices) and has exactly q^s members, where s is the
// number of free "star" cells of the class pattern.

#include <functional>
#include <stdexcept>
#include <vector>

#include "qdesign/bigint.hpp"
#include "qdesign/subspace.hpp"

namespace qdesign {

// A k-subset of {1..n} naming an echelon class / Borel orbit.
struct PivotSet {
  unsigned n = 0;
  std::vector<unsigned> elems;  // strictly increasing, 1-based

  PivotSet() = default;
  PivotSet(unsigned ambient, std::vector<unsigned> e) : n(ambient), elems(std::move(e)) {
    unsigned prev = 0;
    for (unsigned v : elems) {
      if (v <= prev || v > n) throw std::invalid_argument("pivot set must be a strictly increasing subset of {1..n}");
      prev = v;
    }
  }

  unsigned k() const { return static_cast<unsigned>(elems.size()); }
  bool contains(unsigned v) const { return std::find(elems.begin(), elems.end(), v) != elems.end(); }
  bool subset_of(const PivotSet& o) const {
    for (unsigned v : elems)
      if (!o.contains(v)) return false;
    return true;
  }

  bool operator==(const PivotSet& o) const { return n == o.n && elems == o.elems; }
  bool operator!=(const PivotSet& o) const { return !(*this == o); }
  bool operator<(const PivotSet& o) const { return elems < o.elems; }

  std::string label() const {
    std::string s = "E{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(elems[i]);
    }
    s += '}';
    return s;
  }
};

// Number of k-subspaces of F_q^n; the ordinary binomial coefficient at q=1.
// Evaluated by the product formula  prod_{i=0}^{k-1} (q^n - q^i)/(q^k - q^i).
inline BigInt qbinom(long n, long k, unsigned q) {
  if (q < 1) throw std::invalid_argument("qbinom: q must be >= 1");
  if (k < 0 || k > n || n < 0) return 0;
  if (q == 1) return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigInt num = 1, den = 1;
  BigInt qn = big_pow(q, static_cast<unsigned long>(n));
  BigInt qk = big_pow(q, static_cast<unsigned long>(k));
  BigInt qi = 1;
  for (long i = 0; i < k; ++i) {
    num *= qn - qi;
    den *= qk - qi;
    qi *= q;
  }
  return num / den;
}

// All C(n,k) pivot sets in lexicographic order of their sorted tuples.
inline std::vector<PivotSet> enum_pivot_sets(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("enum_pivot_sets: k > n");
  std::vector<PivotSet> out;
  std::vector<unsigned> cur(k);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned next) {
    if (pos == k) {
      out.emplace_back(n, cur);
      return;
    }
    for (unsigned v = next; v + (k - pos - 1) <= n; ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 1);
  return out;
}

// The class representative E(pi), generated by the unit vectors e_{pi_1},...
inline Subspace standard_rep(const PivotSet& pi, const Gf& field) {
  MatFq g(field, pi.n, pi.k());
  for (unsigned j = 0; j < pi.k(); ++j) g.at(pi.elems[j] - 1, j) = 1;
  return Subspace::from_canonical(std::move(g), pi.elems);
}

// Star count of the class pattern: column j has stars exactly in the rows
// above pi_j that are not pivot rows, i.e. pi_j - j of them.
inline unsigned long star_count(const PivotSet& pi) {
  unsigned long s = 0;
  for (unsigned j = 0; j < pi.k(); ++j) s += pi.elems[j] - (j + 1);
  return s;
}

// Number of subspaces in the echelon class of pi: q^star_count.
inline BigInt class_size(const PivotSet& pi, unsigned q) {
  if (q < 1) throw std::invalid_argument("class_size: q must be >= 1");
  return big_pow(q, star_count(pi));
}

inline PivotSet class_of(const Subspace& s) { return PivotSet(s.ambient(), s.pivots()); }

// Streams all members of the echelon class of pi, replacing the star cells
// by field elements in odometer order: star cells are listed row-major and
// the last cell varies fastest, counting up from 0.
template <typename Fn>
void for_each_class_member(const PivotSet& pi, const Gf& field, Fn&& fn) {
  const unsigned n = pi.n, k = pi.k();
  std::vector<std::pair<unsigned, unsigned>> stars;  // (row, col), 0-based
  for (unsigned r = 0; r < n; ++r) {
    if (pi.contains(r + 1)) continue;
    for (unsigned j = 0; j < k; ++j)
      if (r + 1 < pi.elems[j]) stars.emplace_back(r, j);
  }
  MatFq g(field, n, k);
  for (unsigned j = 0; j < k; ++j) g.at(pi.elems[j] - 1, j) = 1;
  std::vector<Fe> digits(stars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < stars.size(); ++i) g.at(stars[i].first, stars[i].second) = digits[i];
    fn(Subspace::from_canonical(g, pi.elems));
    std::size_t i = stars.size();
    while (i > 0) {
      --i;
      if (++digits[i] < field.q()) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (stars.empty()) return;
  }
}

// Materialized class, in stream order.
inline std::vector<Subspace> enum_class_members(const PivotSet& pi, const Gf& field) {
  std::vector<Subspace> out;
  for_each_class_member(pi, field, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

}  // namespace qdesign
