#pragma once

// Matrix groups acting on subspaces: Singer cycles and their Frobenius
// normalizer, user-supplied generator sets, and the standard Borel subgroup.
// The Borel group is symbolic (label "borel", no generator matrices): its
// orbits are exactly the echelon classes, so orbit work reduces to class
// enumeration instead of BFS.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdesign/enumeration.hpp"

namespace qdesign {

inline constexpr std::uint64_t kDefaultOrbitGuard = 1'000'000;
// Largest q^n for which Singer polynomials are searched/verified by walking
// the powers of the companion root.
inline constexpr unsigned long long kSingerOrderBound = 1ull << 22;

struct GroupGens {
  Gf field;
  unsigned n = 0;
  std::vector<MatFq> gens;  // empty for the symbolic Borel group
  std::string label;

  bool is_borel() const { return label == "borel"; }
};

inline GroupGens matrix_group(const Gf& field, unsigned n, std::vector<MatFq> gens,
                              std::string label = "matrices") {
  for (const MatFq& g : gens) {
    if (g.field() != field || g.rows() != n || g.cols() != n)
      throw std::invalid_argument("group generator has wrong shape");
    if (!is_invertible(g)) throw std::invalid_argument("group generator is singular");
  }
  return GroupGens{field, n, std::move(gens), std::move(label)};
}

inline GroupGens trivial_group(const Gf& field, unsigned n) { return matrix_group(field, n, {}, "trivial"); }

inline GroupGens borel_group(const Gf& field, unsigned n) { return GroupGens{field, n, {}, "borel"}; }

// Explicit generators of the Borel subgroup (for cross-validation against
// the echelon shortcut): adjacent transvections plus, for q > 2, diagonal
// scalings by a generator of the multiplicative group.
inline std::vector<MatFq> borel_generators(const Gf& field, unsigned n) {
  std::vector<MatFq> gens;
  for (unsigned i = 0; i + 1 < n; ++i) {
    MatFq m = MatFq::identity(field, n);
    m.at(i, i + 1) = 1;
    gens.push_back(std::move(m));
  }
  if (field.q() > 2) {
    Fe g = field.generator();
    for (unsigned i = 0; i < n; ++i) {
      MatFq m = MatFq::identity(field, n);
      m.at(i, i) = g;
      gens.push_back(std::move(m));
    }
  }
  return gens;
}

// Builtin monic primitive polynomials of degree n over GF(q), coefficients
// c0..cn; the representation of the Singer cycle depends on this choice, so
// orbit-level results are always relative to the configured polynomial.
inline const std::map<std::pair<unsigned, unsigned>, std::vector<Fe>>& builtin_singer_polys() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<Fe>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},              // x^6+x+1
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},           // x^7+x+1
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},        // x^8+x^4+x^3+x^2+1
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},     // x^9+x^4+1
  };
  return table;
}

namespace detail {

// Residues mod a monic degree-n polynomial over GF(q), as coefficient
// vectors of length n.
struct PolyMod {
  const Gf& f;
  std::vector<Fe> mod;  // c0..cn, monic
  unsigned n;

  PolyMod(const Gf& field, const std::vector<Fe>& m) : f(field), mod(m), n(static_cast<unsigned>(m.size()) - 1) {}

  std::vector<Fe> one() const {
    std::vector<Fe> v(n, 0);
    v[0] = 1;
    return v;
  }

  std::vector<Fe> mulx(std::vector<Fe> v) const {
    Fe carry = v[n - 1];
    for (std::size_t i = n; i-- > 1;) v[i] = v[i - 1];
    v[0] = 0;
    if (carry)
      for (unsigned i = 0; i < n; ++i) v[i] = f.sub(v[i], f.mul(carry, mod[i]));
    return v;
  }

  std::vector<Fe> mul(const std::vector<Fe>& a, const std::vector<Fe>& b) const {
    std::vector<Fe> res(n, 0), t = a;
    for (unsigned i = 0; i < n; ++i) {
      if (b[i])
        for (unsigned j = 0; j < n; ++j) res[j] = f.add(res[j], f.mul(b[i], t[j]));
      t = mulx(t);
    }
    return res;
  }

  bool is_one(const std::vector<Fe>& v) const {
    if (v[0] != 1) return false;
    for (unsigned i = 1; i < n; ++i)
      if (v[i]) return false;
    return true;
  }

  // Multiplicative order of the class of x, walked step by step; stops at
  // the full unit-group size.
  unsigned long long order_of_x(unsigned long long limit) const {
    auto v = mulx(one());
    unsigned long long ord = 1;
    while (!is_one(v)) {
      v = mulx(v);
      if (++ord > limit) return 0;
    }
    return ord;
  }
};

inline unsigned long long pow_ull(unsigned long long b, unsigned e) {
  unsigned long long r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

// True iff the monic degree-n polynomial (coefficients c0..cn over GF(q)) is
// primitive: the class of x has multiplicative order exactly q^n - 1.
inline bool is_primitive_poly(const Gf& field, const std::vector<Fe>& coeffs) {
  if (coeffs.size() < 2 || coeffs.back() != 1) return false;
  if (coeffs.front() == 0) return false;
  for (Fe c : coeffs)
    if (!field.valid(c)) return false;
  const unsigned n = static_cast<unsigned>(coeffs.size()) - 1;
  const unsigned long long qn = detail::pow_ull(field.q(), n);
  if (qn > kSingerOrderBound) throw std::invalid_argument("primitivity check out of range for q^n > 2^22");
  detail::PolyMod pm(field, coeffs);
  return pm.order_of_x(qn - 1) == qn - 1;
}

// Deterministic lexicographic search for a monic primitive polynomial of
// degree n over GF(q).
inline std::vector<Fe> find_primitive_poly(const Gf& field, unsigned n) {
  const unsigned q = field.q();
  const unsigned long long qn = detail::pow_ull(q, n);
  if (qn > kSingerOrderBound)
    throw std::invalid_argument("no primitive polynomial known for q=" + std::to_string(q) +
                                ", n=" + std::to_string(n) + " (search bound exceeded)");
  std::vector<Fe> coeffs(n + 1, 0);
  coeffs[n] = 1;
  for (;;) {
    // next candidate with nonzero constant term
    unsigned i = 0;
    while (i < n && ++coeffs[i] == q) coeffs[i++] = 0;
    if (i == n) break;
    if (coeffs[0] == 0) continue;
    if (is_primitive_poly(field, coeffs)) return coeffs;
  }
  throw std::invalid_argument("no primitive polynomial exists for q=" + std::to_string(q) +
                              ", n=" + std::to_string(n));
}

struct SingerFrobenius {
  MatFq sigma;            // companion matrix of the polynomial, order q^n - 1
  MatFq phi;              // matrix of x -> x^q in the power basis, order n
  std::vector<Fe> poly;   // the defining primitive polynomial, c0..cn
};

// The Singer cycle and Frobenius map for F_q^n, for the given primitive
// polynomial (builtin table / search when omitted).
inline SingerFrobenius singer_frobenius_gens(const Gf& field, unsigned n,
                                             const std::vector<Fe>* poly_override = nullptr) {
  if (n == 0) throw std::invalid_argument("singer: n must be positive");
  std::vector<Fe> poly;
  if (poly_override) {
    poly = *poly_override;
    if (poly.size() != n + 1) throw std::invalid_argument("singer polynomial must have degree n");
    if (!is_primitive_poly(field, poly)) throw std::invalid_argument("supplied singer polynomial is not primitive");
  } else {
    auto it = builtin_singer_polys().find({field.q(), n});
    if (it != builtin_singer_polys().end())
      poly = it->second;
    else
      poly = find_primitive_poly(field, n);
  }

  MatFq sigma(field, n, n);
  for (unsigned j = 0; j + 1 < n; ++j) sigma.at(j + 1, j) = 1;
  for (unsigned i = 0; i < n; ++i) sigma.at(i, n - 1) = field.neg(poly[i]);

  detail::PolyMod pm(field, poly);
  auto alpha_q = pm.one();
  for (unsigned i = 0; i < field.q(); ++i) alpha_q = pm.mulx(alpha_q);  // alpha^q
  MatFq phi(field, n, n);
  auto cur = pm.one();
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < n; ++i) phi.at(i, j) = cur[i];
    cur = pm.mul(cur, alpha_q);
  }
  return SingerFrobenius{std::move(sigma), std::move(phi), std::move(poly)};
}

inline GroupGens singer_group(const Gf& field, unsigned n, const std::vector<Fe>* poly_override = nullptr) {
  auto sf = singer_frobenius_gens(field, n, poly_override);
  return matrix_group(field, n, {std::move(sf.sigma)}, "singer");
}

inline GroupGens singer_frobenius_group(const Gf& field, unsigned n,
                                        const std::vector<Fe>* poly_override = nullptr) {
  auto sf = singer_frobenius_gens(field, n, poly_override);
  return matrix_group(field, n, {std::move(sf.sigma), std::move(sf.phi)}, "singer_frobenius");
}

namespace detail {

// Breadth-first closure of {seed} under the generators.
template <typename Fn>
void orbit_bfs(const GroupGens& g, const Subspace& seed, std::uint64_t guard, Fn&& fn) {
  std::unordered_set<std::string> visited;
  std::deque<Subspace> queue;
  visited.insert(seed.key());
  queue.push_back(seed);
  fn(seed);
  while (!queue.empty()) {
    Subspace s = std::move(queue.front());
    queue.pop_front();
    for (const MatFq& a : g.gens) {
      Subspace img = apply(a, s);
      if (visited.insert(img.key()).second) {
        if (visited.size() > guard)
          throw guard_exceeded("orbit materialization exceeds the size guard (" + std::to_string(guard) + ")");
        fn(img);
        queue.push_back(img);
      }
    }
  }
}

}  // namespace detail

// Streams every member of the G-orbit of s exactly once.  For the Borel
// group this is the echelon class of s, in class-stream order; otherwise BFS
// order over canonical keys.
template <typename Fn>
void for_each_orbit_member(const GroupGens& g, const Subspace& s, Fn&& fn, std::uint64_t guard = kDefaultOrbitGuard) {
  if (g.field != s.field() || g.n != s.ambient()) throw std::invalid_argument("orbit: shape mismatch");
  if (g.is_borel()) {
    PivotSet pi = class_of(s);
    if (class_size(pi, g.field.q()) > BigInt(static_cast<unsigned long>(guard)))
      throw guard_exceeded("orbit materialization exceeds the size guard (" + std::to_string(guard) + ")");
    for_each_class_member(pi, g.field, fn);
    return;
  }
  detail::orbit_bfs(g, s, guard, fn);
}

// The full orbit, sorted by canonical key.
inline std::vector<Subspace> orbit(const GroupGens& g, const Subspace& s, std::uint64_t guard = kDefaultOrbitGuard) {
  std::vector<Subspace> out;
  for_each_orbit_member(g, s, [&](const Subspace& m) { out.push_back(m); }, guard);
  std::sort(out.begin(), out.end());
  return out;
}

struct OrbitInfo {
  Subspace rep;  // lexicographically least canonical matrix in the orbit
  BigInt size;
};

// Group descriptor as it appears in CLI arguments and file formats.
struct GroupDesc {
  std::string kind;                     // "borel" | "singer" | "singer_frobenius" | "matrices"
  std::vector<MatFq> matrices;          // kind == "matrices"; an empty list is the trivial group
  std::optional<std::vector<Fe>> poly;  // Singer polynomial override, c0..cn over GF(q)
};

inline GroupGens make_group(const GroupDesc& d, const Gf& field, unsigned n) {
  if (d.kind == "borel") return borel_group(field, n);
  if (d.kind == "singer") return singer_group(field, n, d.poly ? &*d.poly : nullptr);
  if (d.kind == "singer_frobenius") return singer_frobenius_group(field, n, d.poly ? &*d.poly : nullptr);
  if (d.kind == "matrices") return matrix_group(field, n, d.matrices);
  throw std::invalid_argument("unknown group kind: " + d.kind);
}

// Orbit transversal on k-subspaces.  For the Borel group the representatives
// are exactly the E(pi) in lexicographic pivot-set order; for explicit
// generator sets, orbits are found by sweeping all echelon classes and the
// list is sorted by representative key.
inline std::vector<OrbitInfo> transversal(const GroupGens& g, unsigned k, std::uint64_t guard = kDefaultOrbitGuard) {
  if (k > g.n) throw std::invalid_argument("transversal: k > n");
  std::vector<OrbitInfo> out;
  if (g.is_borel()) {
    for (const PivotSet& pi : enum_pivot_sets(g.n, k))
      out.push_back(OrbitInfo{standard_rep(pi, g.field), class_size(pi, g.field.q())});
    return out;
  }
  if (qbinom(g.n, k, g.field.q()) > BigInt(static_cast<unsigned long>(guard)))
    throw guard_exceeded("transversal materialization exceeds the size guard (" + std::to_string(guard) + ")");
  std::unordered_set<std::string> seen;
  for (const PivotSet& pi : enum_pivot_sets(g.n, k)) {
    for_each_class_member(pi, g.field, [&](const Subspace& seed) {
      if (seen.count(seed.key())) return;
      const Subspace* best = nullptr;
      std::uint64_t size = 0;
      std::vector<Subspace> members;
      detail::orbit_bfs(g, seed, guard, [&](const Subspace& m) { members.push_back(m); });
      for (const Subspace& m : members) {
        seen.insert(m.key());
        ++size;
        if (!best || m.key() < best->key()) best = &m;
      }
      out.push_back(OrbitInfo{*best, BigInt(static_cast<unsigned long>(size))});
    });
  }
  std::sort(out.begin(), out.end(), [](const OrbitInfo& a, const OrbitInfo& b) { return a.rep < b.rep; });
  return out;
}

}  // namespace qdesign
