#pragma once

// Orbit incidence matrices (Kramer-Mesner matrices): rows indexed by the
// G-orbits on t-subspaces, columns by the G-orbits on k-subspaces, entries
// counting |{S' in G(S) : T <= S'}|.  Every row of a k-block sums to
// qbinom(n-t, k-t, q).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdesign/serialize.hpp"

namespace qdesign {

struct KMRow {
  std::optional<Subspace> rep;
  std::optional<PivotSet> pivots;  // set when the orbit is an echelon class
  std::string label;
};

struct KMCol {
  unsigned k = 0;
  std::optional<Subspace> rep;
  std::optional<PivotSet> pivots;
  std::string label;
  BigInt orbit_size;
};

struct KMMatrix {
  std::string group_label;
  std::optional<GroupDesc> group;  // carried for downstream expansion when known
  unsigned n = 0, q = 0, t = 0;
  std::vector<unsigned> K;
  std::vector<KMRow> rows;
  std::vector<KMCol> cols;
  std::vector<std::vector<BigInt>> a;  // rows x cols

  const BigInt& at(std::size_t r, std::size_t c) const { return a[r][c]; }
  BigInt row_sum(std::size_t r) const {
    BigInt s = 0;
    for (const BigInt& v : a[r]) s += v;
    return s;
  }
};

namespace detail {

inline std::string orbit_label(const std::optional<PivotSet>& pivots, unsigned k, std::size_t index) {
  if (pivots) return pivots->label();
  return "orb" + std::to_string(k) + "_" + std::to_string(index);
}

inline std::vector<KMRow> km_rows(const GroupGens& g, unsigned t, std::uint64_t guard) {
  std::vector<KMRow> rows;
  std::size_t i = 0;
  for (const OrbitInfo& o : transversal(g, t, guard)) {
    KMRow r;
    if (g.is_borel()) r.pivots = class_of(o.rep);
    r.label = orbit_label(r.pivots, t, i++);
    r.rep = o.rep;
    rows.push_back(std::move(r));
  }
  return rows;
}

// One k-block: columns plus entries, computed by streaming each column orbit
// once and testing every row representative against each member.
inline void km_block(const GroupGens& g, const std::vector<KMRow>& rows, unsigned k, std::uint64_t guard,
                     std::vector<KMCol>& cols, std::vector<std::vector<BigInt>>& a) {
  std::size_t block_index = 0;
  for (const OrbitInfo& o : transversal(g, k, guard)) {
    KMCol c;
    c.k = k;
    if (g.is_borel()) c.pivots = class_of(o.rep);
    c.label = orbit_label(c.pivots, k, block_index++);
    c.rep = o.rep;
    c.orbit_size = o.size;

    std::vector<std::uint64_t> counts(rows.size(), 0);
    for_each_orbit_member(
        g, *c.rep,
        [&](const Subspace& member) {
          for (std::size_t r = 0; r < rows.size(); ++r)
            if (is_subspace_of(*rows[r].rep, member)) ++counts[r];
        },
        guard);
    for (std::size_t r = 0; r < rows.size(); ++r)
      a[r].push_back(BigInt(static_cast<unsigned long>(counts[r])));
    cols.push_back(std::move(c));
  }
}

}  // namespace detail

// A_{t,K}^G: horizontal concatenation of the k-blocks in K order, rows
// shared.
inline KMMatrix km_concat(const GroupGens& g, unsigned t, const std::vector<unsigned>& K,
                          std::uint64_t guard = kDefaultOrbitGuard) {
  if (K.empty()) throw std::invalid_argument("km: K must be non-empty");
  for (unsigned k : K)
    if (t > k || k > g.n) throw std::invalid_argument("km: need t <= k <= n for every k in K");
  KMMatrix m;
  m.group_label = g.label;
  m.n = g.n;
  m.q = g.field.q();
  m.t = t;
  m.K = K;
  m.rows = detail::km_rows(g, t, guard);
  m.a.assign(m.rows.size(), {});
  for (unsigned k : K) detail::km_block(g, m.rows, k, guard, m.cols, m.a);
  return m;
}

inline KMMatrix km_matrix(const GroupGens& g, unsigned t, unsigned k, std::uint64_t guard = kDefaultOrbitGuard) {
  return km_concat(g, t, {k}, guard);
}

// Structural fast path for the Borel group.  The entry indexed by (tau, pi)
// is zero unless tau is a subset of pi; otherwise it counts the members of
// the class of pi whose canonical matrix has zero stars in every column
// pivoted at an element of tau, which leaves the stars of the remaining
// columns free:
//   entry(tau, pi) = q ^ sum_{j : pi_j not in tau} (pi_j - j).
// Always a power of q, and equal to the literally-counted incidence number.
inline KMMatrix borel_km_concat(unsigned n, unsigned q, unsigned t, const std::vector<unsigned>& K) {
  if (K.empty()) throw std::invalid_argument("km: K must be non-empty");
  for (unsigned k : K)
    if (t > k || k > n) throw std::invalid_argument("km: need t <= k <= n for every k in K");
  Gf field = Gf::make(q);

  KMMatrix m;
  m.group_label = "borel";
  m.group = GroupDesc{"borel", {}, std::nullopt};
  m.n = n;
  m.q = q;
  m.t = t;
  m.K = K;

  auto taus = enum_pivot_sets(n, t);
  for (const PivotSet& tau : taus) {
    KMRow r;
    r.pivots = tau;
    r.rep = standard_rep(tau, field);
    r.label = tau.label();
    m.rows.push_back(std::move(r));
  }
  m.a.assign(m.rows.size(), {});

  for (unsigned k : K) {
    for (const PivotSet& pi : enum_pivot_sets(n, k)) {
      KMCol c;
      c.k = k;
      c.pivots = pi;
      c.rep = standard_rep(pi, field);
      c.label = pi.label();
      c.orbit_size = class_size(pi, q);
      for (std::size_t r = 0; r < m.rows.size(); ++r) {
        const PivotSet& tau = taus[r];
        if (!tau.subset_of(pi)) {
          m.a[r].push_back(0);
          continue;
        }
        unsigned long exp = 0;
        for (unsigned j = 0; j < pi.k(); ++j)
          if (!tau.contains(pi.elems[j])) exp += pi.elems[j] - (j + 1);
        m.a[r].push_back(big_pow(q, exp));
      }
      m.cols.push_back(std::move(c));
    }
  }
  return m;
}

inline KMMatrix borel_km_matrix(unsigned n, unsigned q, unsigned t, unsigned k) {
  return borel_km_concat(n, q, t, {k});
}

// q = 1 specialization of a Borel matrix: every nonzero entry becomes 1,
// which is the containment incidence matrix between t-subsets and k-subsets
// of {1..n}.
inline KMMatrix q1_specialize(const KMMatrix& m) {
  if (m.group_label != "borel") throw std::invalid_argument("q1_specialize: input is not a Borel matrix");
  KMMatrix r = m;
  r.q = 1;
  for (auto& row : r.a)
    for (BigInt& v : row) v = (v != 0) ? 1 : 0;
  for (KMCol& c : r.cols) {
    c.rep.reset();
    c.orbit_size = 1;
  }
  for (KMRow& row : r.rows) row.rep.reset();
  return r;
}

// Block layout of A_{t,{t+1,t+2}} under the Borel group, with rows and
// columns permuted so the recursive structure is visible:
//   rows:    t-subsets of {1..n-1}, then t-subsets containing n;
//   columns: (t+1)-sets (tau u {n}) aligned with the first row block, then
//            (t+2)-subsets of {1..n-1}, then all remaining columns.
// The result decomposes as
//   [ q^{n-t-1} I | A_{t,t+2} over F_q^{n-1}   | * ]
//   [ A_{t-1,t} over F_q^{n-1} | 0             | * ]
struct BorelBlockMatrix {
  KMMatrix full;             // permuted A_{t,{t+1,t+2}}^{B(F_q^n)}
  std::size_t row_split;     // rows before this index avoid n
  std::size_t col_split_1;   // columns of the diagonal block
  std::size_t col_split_2;   // columns of the first two blocks
};

inline BorelBlockMatrix borel_block_matrix(unsigned n, unsigned q, unsigned t) {
  if (t + 2 > n) throw std::invalid_argument("block layout needs n >= t+2");
  KMMatrix base = borel_km_concat(n, q, t, {t + 1, t + 2});

  auto row_avoids_n = [&](const KMRow& r) { return !r.pivots->contains(n); };
  std::vector<std::size_t> row_order;
  for (std::size_t i = 0; i < base.rows.size(); ++i)
    if (row_avoids_n(base.rows[i])) row_order.push_back(i);
  const std::size_t row_split = row_order.size();
  for (std::size_t i = 0; i < base.rows.size(); ++i)
    if (!row_avoids_n(base.rows[i])) row_order.push_back(i);

  // first block: tau u {n} in the order of the first row block
  std::vector<std::size_t> col_order;
  for (std::size_t r = 0; r < row_split; ++r) {
    PivotSet want = base.rows[row_order[r]].pivots.value();
    std::vector<unsigned> elems = want.elems;
    elems.push_back(n);
    for (std::size_t c = 0; c < base.cols.size(); ++c)
      if (base.cols[c].k == t + 1 && base.cols[c].pivots->elems == elems) {
        col_order.push_back(c);
        break;
      }
  }
  const std::size_t col_split_1 = col_order.size();
  for (std::size_t c = 0; c < base.cols.size(); ++c)
    if (base.cols[c].k == t + 2 && !base.cols[c].pivots->contains(n)) col_order.push_back(c);
  const std::size_t col_split_2 = col_order.size();
  for (std::size_t c = 0; c < base.cols.size(); ++c) {
    if (base.cols[c].k == t + 1 && !base.cols[c].pivots->contains(n)) col_order.push_back(c);
  }
  for (std::size_t c = 0; c < base.cols.size(); ++c)
    if (base.cols[c].k == t + 2 && base.cols[c].pivots->contains(n)) col_order.push_back(c);

  KMMatrix out = base;
  out.rows.clear();
  out.cols.clear();
  out.a.assign(base.rows.size(), std::vector<BigInt>(base.cols.size(), 0));
  for (std::size_t r = 0; r < row_order.size(); ++r) out.rows.push_back(base.rows[row_order[r]]);
  for (std::size_t c = 0; c < col_order.size(); ++c) out.cols.push_back(base.cols[col_order[c]]);
  for (std::size_t r = 0; r < row_order.size(); ++r)
    for (std::size_t c = 0; c < col_order.size(); ++c) out.a[r][c] = base.a[row_order[r]][col_order[c]];
  return BorelBlockMatrix{std::move(out), row_split, col_split_1, col_split_2};
}

// Aligned text rendering, blank for zero; used for golden comparisons.
inline std::string km_text(const KMMatrix& m) {
  std::size_t width = 1;
  for (const auto& row : m.a)
    for (const BigInt& v : row)
      if (v != 0) width = std::max(width, v.get_str().size());
  std::ostringstream os;
  for (const auto& row : m.a) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += ' ';
      std::string cell = (row[c] == 0) ? "" : row[c].get_str();
      line += std::string(width - cell.size(), ' ') + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

// Labeled CSV rendering.
inline std::string km_csv(const KMMatrix& m) {
  std::ostringstream os;
  os << "orbit";
  for (const KMCol& c : m.cols) os << ',' << c.label;
  os << '\n';
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    os << m.rows[r].label;
    for (const BigInt& v : m.a[r]) os << ',' << v.get_str();
    os << '\n';
  }
  return os.str();
}

inline Json km_to_json(const KMMatrix& m) {
  Json j;
  j["group_label"] = m.group_label;
  if (m.group) j["group"] = group_to_json(*m.group);
  j["n"] = m.n;
  j["q"] = m.q;
  j["t"] = m.t;
  j["K"] = m.K;
  Json rows = Json::array();
  for (const KMRow& r : m.rows) {
    Json jr;
    jr["label"] = r.label;
    if (r.pivots) jr["pivots"] = pivots_to_json(r.pivots->elems);
    if (r.rep && !r.pivots) jr["matrix"] = matrix_to_json(r.rep->canon());
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  Json cols = Json::array();
  for (const KMCol& c : m.cols) {
    Json jc;
    jc["k"] = c.k;
    jc["label"] = c.label;
    if (c.pivots) jc["pivots"] = pivots_to_json(c.pivots->elems);
    if (c.rep && !c.pivots) jc["matrix"] = matrix_to_json(c.rep->canon());
    jc["orbit_size"] = json_int(c.orbit_size);
    cols.push_back(std::move(jc));
  }
  j["cols"] = std::move(cols);
  Json entries = Json::array();
  for (const auto& row : m.a) {
    Json jr = Json::array();
    for (const BigInt& v : row) jr.push_back(json_int(v));
    entries.push_back(std::move(jr));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline KMMatrix km_from_json(const Json& j) {
  KMMatrix m;
  m.group_label = j.at("group_label").get<std::string>();
  m.n = j.at("n").get<unsigned>();
  m.q = j.at("q").get<unsigned>();
  m.t = j.at("t").get<unsigned>();
  for (const auto& k : j.at("K")) m.K.push_back(k.get<unsigned>());
  std::optional<Gf> field;
  if (m.q >= 2) field = Gf::make(m.q);
  if (j.contains("group") && field) m.group = group_from_json(j["group"], *field);
  for (const auto& jr : j.at("rows")) {
    KMRow r;
    r.label = jr.at("label").get<std::string>();
    if (jr.contains("pivots")) {
      r.pivots = PivotSet(m.n, pivots_from_json(jr["pivots"]));
      if (field) r.rep = standard_rep(*r.pivots, *field);
    } else if (jr.contains("matrix") && field) {
      r.rep = canonicalize(matrix_from_json(*field, jr["matrix"]));
    }
    m.rows.push_back(std::move(r));
  }
  for (const auto& jc : j.at("cols")) {
    KMCol c;
    c.k = jc.at("k").get<unsigned>();
    c.label = jc.at("label").get<std::string>();
    if (jc.contains("pivots")) {
      c.pivots = PivotSet(m.n, pivots_from_json(jc["pivots"]));
      if (field) c.rep = standard_rep(*c.pivots, *field);
    } else if (jc.contains("matrix") && field) {
      c.rep = canonicalize(matrix_from_json(*field, jc["matrix"]));
    }
    c.orbit_size = jc.contains("orbit_size") ? int_from_json(jc["orbit_size"]) : BigInt(0);
    m.cols.push_back(std::move(c));
  }
  for (const auto& jr : j.at("entries")) {
    std::vector<BigInt> row;
    for (const auto& v : jr) row.push_back(int_from_json(v));
    if (row.size() != m.cols.size()) throw std::invalid_argument("km json: ragged entry rows");
    m.a.push_back(std::move(row));
  }
  if (m.a.size() != m.rows.size()) throw std::invalid_argument("km json: entry/row count mismatch");
  return m;
}

}  // namespace qdesign
