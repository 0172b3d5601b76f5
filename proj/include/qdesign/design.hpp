#pragma once

// Designs: sets of subspaces of F_q^n with dimensions in K such that every
// t-subspace lies in exactly lambda of them.  A design is given either as
// explicit blocks or as a group descriptor plus orbit representatives.  The
// q = 1 case is handled as a separate set mode (subsets of {1..n} and
// ordinary binomials), not as a degenerate field.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdesign/incidence.hpp"

namespace qdesign {

struct DesignParams {
  unsigned t = 0, n = 0, q = 0;
  std::vector<unsigned> K;
  std::optional<BigInt> lambda;  // declared index, when known

  void validate() const {
    if (K.empty()) throw std::invalid_argument("design params: K must be non-empty");
    for (unsigned k : K)
      if (k < t || k > n) throw std::invalid_argument("design params: need t <= k <= n for every k in K");
  }
};

struct OrbitSelection {
  GroupDesc group;
  std::vector<Subspace> reps;
};

struct BlockList {
  std::vector<Subspace> blocks;
};

// q = 1 design on subsets of {1..n}.
struct SetDesign {
  unsigned n = 0;
  std::vector<std::vector<unsigned>> blocks;  // sorted subsets, 1-based
};

inline BigInt lambda_max(unsigned n, const std::vector<unsigned>& K, unsigned t, unsigned q) {
  BigInt s = 0;
  for (unsigned k : K) s += qbinom(static_cast<long>(n) - t, static_cast<long>(k) - t, q);
  return s;
}

// Row sums of the family layout: alpha for rows avoiding n, beta for rows
// containing n.  They agree exactly when n = t+4, which is what makes the
// selected orbits a design.
inline std::pair<BigInt, BigInt> alpha_beta(unsigned t, unsigned n, unsigned q) {
  if (n < t + 2) throw std::invalid_argument("alpha_beta: need n >= t+2");
  BigInt alpha = big_pow(q, n - t - 1) + qbinom(static_cast<long>(n) - t - 1, 2, q);
  BigInt beta = qbinom(static_cast<long>(n) - t, 1, q);
  return {alpha, beta};
}

// The Borel-orbit family in F_q^{t+4}: representatives are the E(tau u {n})
// for all t-subsets tau of {1..n-1} together with the E(pi) for all
// (t+2)-subsets pi of {1..n-1}.  The resulting union of Borel orbits is a
// t-(t+4, {t+1,t+2}, q^3+q^2+q+1; q) design.
inline std::pair<OrbitSelection, DesignParams> borel_family_selection(unsigned t, unsigned q) {
  if (t < 1) throw std::invalid_argument("family: t must be >= 1");
  const unsigned n = t + 4;
  Gf field = Gf::make(q);

  OrbitSelection sel;
  sel.group = GroupDesc{"borel", {}, std::nullopt};
  for (const PivotSet& tau : enum_pivot_sets(n - 1, t)) {
    std::vector<unsigned> elems = tau.elems;
    elems.push_back(n);
    sel.reps.push_back(standard_rep(PivotSet(n, std::move(elems)), field));
  }
  for (const PivotSet& pi : enum_pivot_sets(n - 1, t + 2))
    sel.reps.push_back(standard_rep(PivotSet(n, pi.elems), field));

  DesignParams params;
  params.t = t;
  params.n = n;
  params.q = q;
  params.K = {t + 1, t + 2};
  params.lambda = qbinom(4, 1, q);  // q^3+q^2+q+1
  return {std::move(sel), std::move(params)};
}

// The selected columns of the Borel block layout, i.e. the incidence matrix
// of the family between t-orbits and the chosen (t+1)- and (t+2)-orbits.
inline KMMatrix borel_family_matrix(unsigned n, unsigned q, unsigned t) {
  BorelBlockMatrix b = borel_block_matrix(n, q, t);
  KMMatrix m = b.full;
  m.cols.resize(b.col_split_2);
  for (auto& row : m.a) row.resize(b.col_split_2);
  return m;
}

// Disjoint union of the orbits of all representatives.
inline BlockList expand(const OrbitSelection& sel, const Gf& field, unsigned n,
                        std::uint64_t guard = kDefaultOrbitGuard) {
  GroupGens g = make_group(sel.group, field, n);
  BlockList out;
  std::unordered_set<std::string> seen;
  for (const Subspace& rep : sel.reps) {
    for_each_orbit_member(
        g, rep,
        [&](const Subspace& s) {
          if (!seen.insert(s.key()).second)
            throw std::invalid_argument("orbit selection: representatives are not in distinct orbits");
          if (out.blocks.size() >= guard) throw guard_exceeded("expansion exceeds the size guard");
          out.blocks.push_back(s);
        },
        guard);
  }
  return out;
}

struct Violation {
  std::string what;  // rendering of the uncovered/overcovered t-object
  BigInt count;
};

struct VerifyResult {
  bool balanced = false;
  BigInt lambda = 0;
  std::vector<Violation> violations;  // up to 10, empty when balanced
};

namespace detail {

inline std::string pivot_matrix_line(const MatFq& m) {
  std::string s;
  for (unsigned i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (unsigned j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += std::to_string(m.at(i, j));
    }
  }
  return s;
}

}  // namespace detail

// Brute-force balance check: counts, for every t-subspace of F_q^n, the
// blocks containing it.  The counter is filled by enumerating each block's
// own t-subspaces (cost sum over blocks of qbinom(k,t,q)) rather than by
// testing all t-subspaces against all blocks.
inline VerifyResult verify_design(const BlockList& b, unsigned t, std::uint64_t guard = kDefaultOrbitGuard) {
  VerifyResult res;
  if (b.blocks.empty()) {
    res.balanced = true;
    res.lambda = 0;
    return res;
  }
  const Gf field = b.blocks.front().field();
  const unsigned n = b.blocks.front().ambient();
  for (const Subspace& s : b.blocks) {
    if (s.field() != field || s.ambient() != n) throw std::invalid_argument("verify: blocks in different spaces");
    if (s.dim() < t) throw std::invalid_argument("verify: block dimension below t");
  }
  const BigInt total = qbinom(n, t, field.q());
  if (total > BigInt(static_cast<unsigned long>(guard)))
    throw guard_exceeded("verification would enumerate more t-subspaces than the size guard");

  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Subspace& block : b.blocks) {
    const unsigned k = block.dim();
    for (const PivotSet& pi : enum_pivot_sets(k, t)) {
      Gf bf = block.field();
      for_each_class_member(pi, bf, [&](const Subspace& w) {
        // w is a t-subspace of F_q^k in block coordinates
        ++counts[canonicalize(block.canon() * w.canon()).key()];
      });
    }
  }

  bool all_equal = counts.size() == static_cast<std::size_t>(total.get_ui());
  std::uint64_t lambda = counts.empty() ? 0 : counts.begin()->second;
  if (all_equal)
    for (const auto& [key, c] : counts)
      if (c != lambda) {
        all_equal = false;
        break;
      }
  if (all_equal) {
    res.balanced = true;
    res.lambda = BigInt(static_cast<unsigned long>(lambda));
    return res;
  }

  // most frequent count is the reference index for reporting
  std::map<std::uint64_t, std::uint64_t> freq;
  for (const auto& [key, c] : counts) ++freq[c];
  std::uint64_t missing = static_cast<std::uint64_t>(total.get_ui()) - counts.size();
  if (missing) freq[0] += missing;
  std::uint64_t ref = 0, best = 0;
  for (const auto& [value, f] : freq)
    if (f > best) {
      best = f;
      ref = value;
    }
  res.balanced = false;
  res.lambda = BigInt(static_cast<unsigned long>(ref));
  for (const PivotSet& pi : enum_pivot_sets(n, t)) {
    if (res.violations.size() >= 10) break;
    for_each_class_member(pi, field, [&](const Subspace& w) {
      if (res.violations.size() >= 10) return;
      auto it = counts.find(w.key());
      std::uint64_t c = it == counts.end() ? 0 : it->second;
      if (c != ref)
        res.violations.push_back(Violation{detail::pivot_matrix_line(w.canon()), BigInt(static_cast<unsigned long>(c))});
    });
  }
  return res;
}

inline VerifyResult verify_set_design(const SetDesign& d, unsigned t) {
  VerifyResult res;
  std::map<std::vector<unsigned>, std::uint64_t> counts;
  std::vector<unsigned> cur(t);
  for (const auto& block : d.blocks) {
    if (block.size() < t) throw std::invalid_argument("verify: block size below t");
    // all t-subsets of the block
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned next) {
      if (pos == t) {
        ++counts[cur];
        return;
      }
      for (unsigned i = next; i + (t - pos - 1) < block.size(); ++i) {
        cur[pos] = block[i];
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  }
  const BigInt total = binomial(d.n, t);
  bool all_equal = BigInt(static_cast<unsigned long>(counts.size())) == total;
  std::uint64_t lambda = counts.empty() ? 0 : counts.begin()->second;
  if (all_equal)
    for (const auto& [key, c] : counts)
      if (c != lambda) {
        all_equal = false;
        break;
      }
  if (all_equal && !counts.empty()) {
    res.balanced = true;
    res.lambda = BigInt(static_cast<unsigned long>(lambda));
    return res;
  }
  res.balanced = d.blocks.empty();
  res.lambda = 0;
  if (res.balanced) return res;
  // report against the most frequent count
  std::map<std::uint64_t, std::uint64_t> freq;
  for (const auto& [key, c] : counts) ++freq[c];
  BigInt missing = total - BigInt(static_cast<unsigned long>(counts.size()));
  if (missing > 0) freq[0] += missing.get_ui();
  std::uint64_t ref = 0, best = 0;
  for (const auto& [value, f] : freq)
    if (f > best) {
      best = f;
      ref = value;
    }
  res.lambda = BigInt(static_cast<unsigned long>(ref));
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned next) {
    if (res.violations.size() >= 10) return;
    if (pos == t) {
      auto it = counts.find(cur);
      std::uint64_t c = it == counts.end() ? 0 : it->second;
      if (c != ref) {
        std::string s;
        for (unsigned v : cur) s += (s.empty() ? "" : ",") + std::to_string(v);
        res.violations.push_back(Violation{"{" + s + "}", BigInt(static_cast<unsigned long>(c))});
      }
      return;
    }
    for (unsigned v = next; v <= d.n; ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 1);
  return res;
}

// The q = 1 shadow of the family: (t+1)-subsets of {1..t+4} containing t+4
// plus (t+2)-subsets of {1..t+3}; a t-(t+4, {t+1,t+2}, 4) design.
inline std::pair<SetDesign, DesignParams> q1_family(unsigned t) {
  if (t < 1) throw std::invalid_argument("family: t must be >= 1");
  const unsigned n = t + 4;
  SetDesign d;
  d.n = n;
  for (const PivotSet& tau : enum_pivot_sets(n - 1, t)) {
    std::vector<unsigned> block = tau.elems;
    block.push_back(n);
    d.blocks.push_back(std::move(block));
  }
  for (const PivotSet& pi : enum_pivot_sets(n - 1, t + 2)) d.blocks.push_back(pi.elems);

  DesignParams params;
  params.t = t;
  params.n = n;
  params.q = 1;
  params.K = {t + 1, t + 2};
  params.lambda = 4;

  VerifyResult check = verify_set_design(d, t);
  if (!check.balanced || check.lambda != 4)
    throw std::logic_error("set-family construction failed its internal balance check");
  return {std::move(d), std::move(params)};
}

struct DisjointReport {
  bool disjoint = false;
  bool full_cover = false;  // union equals all k-subspaces, k in the observed dimensions
};

inline DisjointReport are_disjoint(const std::vector<BlockList>& designs) {
  DisjointReport rep;
  rep.disjoint = true;
  std::unordered_set<std::string> seen;
  std::map<unsigned, std::uint64_t> dim_counts;
  const Gf* field = nullptr;
  unsigned n = 0;
  for (const BlockList& d : designs)
    for (const Subspace& s : d.blocks) {
      if (!field) {
        field = &s.field();
        n = s.ambient();
      }
      if (!seen.insert(s.key()).second) rep.disjoint = false;
      ++dim_counts[s.dim()];
    }
  if (!field) return rep;  // all empty
  if (rep.disjoint) {
    BigInt want = 0;
    for (const auto& [k, c] : dim_counts) want += qbinom(n, k, field->q());
    rep.full_cover = BigInt(static_cast<unsigned long>(seen.size())) == want;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Design exchange format

struct Design {
  DesignParams params;
  std::optional<GroupDesc> group;
  std::vector<Subspace> reps;                 // orbit representatives (q >= 2)
  std::optional<BlockList> blocks;            // explicit blocks (q >= 2)
  std::vector<std::vector<unsigned>> set_blocks;  // q = 1
};

inline VerifyResult verify(const Design& d, std::uint64_t guard = kDefaultOrbitGuard) {
  if (d.params.q == 1) {
    SetDesign sd{d.params.n, d.set_blocks};
    return verify_set_design(sd, d.params.t);
  }
  Gf field = Gf::make(d.params.q);
  if (d.blocks) return verify_design(*d.blocks, d.params.t, guard);
  if (!d.group) throw std::invalid_argument("design: need either explicit blocks or a group plus representatives");
  BlockList b = expand(OrbitSelection{*d.group, d.reps}, field, d.params.n, guard);
  return verify_design(b, d.params.t, guard);
}

// True iff the canonical matrix is a pattern of unit vectors, i.e. the
// subspace is its own class representative E(pi).
inline bool is_standard_rep(const Subspace& s) {
  for (unsigned j = 0; j < s.dim(); ++j)
    for (unsigned i = 0; i < s.ambient(); ++i) {
      Fe want = (i + 1 == s.pivots()[j]) ? 1 : 0;
      if (s.canon().at(i, j) != want) return false;
    }
  return true;
}

inline Json design_to_json(const Design& d) {
  Json j;
  Json params;
  params["t"] = d.params.t;
  params["n"] = d.params.n;
  params["q"] = d.params.q;
  params["K"] = d.params.K;
  if (d.params.lambda) params["lambda"] = json_int(*d.params.lambda);
  j["params"] = std::move(params);
  if (d.group) j["group"] = group_to_json(*d.group);
  if (!d.reps.empty()) {
    Json reps = Json::array();
    for (const Subspace& s : d.reps) {
      Json r;
      if (is_standard_rep(s))
        r["pivots"] = pivots_to_json(s.pivots());
      else
        r["matrix"] = matrix_to_json(s.canon());
      reps.push_back(std::move(r));
    }
    j["representatives"] = std::move(reps);
  }
  if (d.blocks) {
    Json blocks = Json::array();
    for (const Subspace& s : d.blocks->blocks) blocks.push_back(matrix_to_json(s.canon()));
    j["blocks"] = std::move(blocks);
  }
  if (d.params.q == 1) {
    Json blocks = Json::array();
    for (const auto& b : d.set_blocks) {
      Json jb = Json::array();
      for (unsigned v : b) jb.push_back(v);
      blocks.push_back(std::move(jb));
    }
    j["set_blocks"] = std::move(blocks);
  }
  return j;
}

inline Design design_from_json(const Json& j) {
  Design d;
  const Json& params = j.at("params");
  d.params.t = params.at("t").get<unsigned>();
  d.params.n = params.at("n").get<unsigned>();
  d.params.q = params.at("q").get<unsigned>();
  for (const auto& k : params.at("K")) d.params.K.push_back(k.get<unsigned>());
  if (params.contains("lambda")) d.params.lambda = int_from_json(params["lambda"]);
  d.params.validate();
  if (d.params.q == 1) {
    for (const auto& jb : j.at("set_blocks")) {
      std::vector<unsigned> b;
      for (const auto& v : jb) b.push_back(v.get<unsigned>());
      std::sort(b.begin(), b.end());
      d.set_blocks.push_back(std::move(b));
    }
    return d;
  }
  Gf field = Gf::make(d.params.q);
  if (j.contains("group")) d.group = group_from_json(j["group"], field);
  if (j.contains("representatives"))
    for (const auto& r : j["representatives"]) {
      if (r.contains("pivots"))
        d.reps.push_back(standard_rep(PivotSet(d.params.n, pivots_from_json(r["pivots"])), field));
      else
        d.reps.push_back(canonicalize(matrix_from_json(field, r.at("matrix"))));
    }
  if (j.contains("blocks")) {
    BlockList b;
    for (const auto& m : j["blocks"]) b.blocks.push_back(canonicalize(matrix_from_json(field, m)));
    d.blocks = std::move(b);
  }
  return d;
}

}  // namespace qdesign
