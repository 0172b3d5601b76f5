#pragma once

// Exact arithmetic in GF(q) for small prime powers q (q <= 32).  All
// operations go through tables built once per field, so element operations
// are O(1) and total.

#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdesign {

// Field element, an index in [0, q).  For prime fields this is the residue
// mod p; for extension fields it packs the coefficient vector over GF(p) in
// base p (power basis), so 0 is the additive zero and 1 the multiplicative
// one.
using Fe = unsigned;

// Thrown when a computation would materialize more objects than the
// configured size guard allows.
class guard_exceeded : public std::runtime_error {
 public:
  explicit guard_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Splits q = p^m with p prime; returns {0,0} if q is not a prime power.
inline std::pair<unsigned, unsigned> prime_power_split(unsigned q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0 || !is_prime(p)) continue;
    unsigned m = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r == 1) return {p, m};
    return {0, 0};
  }
  return {0, 0};
}

}  // namespace detail

// Monic primitive polynomials over GF(p) used to build GF(p^m) when no
// modulus is supplied.  Coefficients are listed c0..cm.
inline const std::map<unsigned, std::vector<Fe>>& builtin_field_moduli() {
  static const std::map<unsigned, std::vector<Fe>> table = {
      {4, {1, 1, 1}},           // x^2+x+1
      {8, {1, 1, 0, 1}},        // x^3+x+1
      {9, {2, 2, 1}},           // x^2+2x+2
      {16, {1, 1, 0, 0, 1}},    // x^4+x+1
      {25, {2, 4, 1}},          // x^2+4x+2
      {27, {1, 2, 0, 1}},       // x^3+2x+1
      {32, {1, 0, 1, 0, 0, 1}}, // x^5+x^2+1
  };
  return table;
}

// Immutable handle to a finite field GF(q).  Cheap to copy; all operations
// are pure and safe for concurrent use.
class Gf {
 public:
  static constexpr unsigned kMaxOrder = 32;

  static Gf make(unsigned q) { return Gf(build(q, nullptr)); }
  static Gf make(unsigned q, const std::vector<Fe>& modulus) { return Gf(build(q, &modulus)); }

  unsigned q() const { return d_->q; }
  unsigned p() const { return d_->p; }
  unsigned m() const { return d_->m; }
  // Coefficients c0..cm of the defining polynomial; empty for prime fields.
  const std::vector<Fe>& modulus() const { return d_->modulus; }

  bool valid(Fe a) const { return a < d_->q; }

  Fe add(Fe a, Fe b) const { return d_->add_t[idx2(a, b)]; }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const { return d_->mul_t[idx2(a, b)]; }
  Fe neg(Fe a) const { return d_->neg_t[check(a)]; }

  Fe inv(Fe a) const {
    check(a);
    if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(q()) + ")");
    return d_->inv_t[a];
  }
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  Fe pow(Fe a, unsigned long e) const {
    check(a);
    if (e == 0) return 1;
    if (a == 0) return 0;
    // via discrete logs: order of the unit group is q-1
    unsigned long lg = (static_cast<unsigned long>(d_->log_t[a]) * (e % (q() - 1))) % (q() - 1);
    return d_->exp_t[lg];
  }

  // A fixed generator of the multiplicative group.
  Fe generator() const { return d_->exp_t[q() == 2 ? 0 : 1]; }

  // Multiplicative order of a nonzero element.
  unsigned element_order(Fe a) const {
    check(a);
    if (a == 0) throw std::domain_error("order of zero is undefined");
    unsigned ord = 1;
    Fe x = a;
    while (x != 1) {
      x = mul(x, a);
      ++ord;
    }
    return ord;
  }

  // Coefficient vector over GF(p) in the power basis, length m.
  std::vector<Fe> to_coeffs(Fe a) const {
    check(a);
    std::vector<Fe> c(d_->m);
    for (unsigned i = 0; i < d_->m; ++i) {
      c[i] = a % d_->p;
      a /= d_->p;
    }
    return c;
  }

  Fe from_coeffs(const std::vector<Fe>& c) const {
    if (c.size() > d_->m) throw std::invalid_argument("coefficient vector too long");
    Fe a = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= d_->p) throw std::invalid_argument("coefficient out of range");
      a = a * d_->p + c[i];
    }
    return a;
  }

  bool operator==(const Gf& o) const { return d_ == o.d_ || (q() == o.q() && modulus() == o.modulus()); }
  bool operator!=(const Gf& o) const { return !(*this == o); }

 private:
  struct Data {
    unsigned q = 0, p = 0, m = 0;
    std::vector<Fe> modulus;
    std::vector<Fe> add_t, mul_t;  // q*q
    std::vector<Fe> neg_t, inv_t;  // q
    std::vector<Fe> exp_t;         // exp_t[i] = g^i, i in [0, q-1)
    std::vector<unsigned> log_t;   // log_t[exp_t[i]] = i
  };

  explicit Gf(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  Fe check(Fe a) const {
    if (a >= d_->q) throw std::invalid_argument("element index out of range for GF(" + std::to_string(q()) + ")");
    return a;
  }
  std::size_t idx2(Fe a, Fe b) const { return static_cast<std::size_t>(check(a)) * d_->q + check(b); }

  static std::shared_ptr<const Data> build(unsigned q, const std::vector<Fe>* modulus) {
    if (q > kMaxOrder)
      throw std::invalid_argument("field order " + std::to_string(q) + " exceeds the supported bound " +
                                  std::to_string(kMaxOrder));
    auto [p, m] = detail::prime_power_split(q);
    if (p == 0) throw std::invalid_argument(std::to_string(q) + " is not a prime power");

    auto d = std::make_shared<Data>();
    d->q = q;
    d->p = p;
    d->m = m;

    if (m == 1) {
      if (modulus && !modulus->empty()) throw std::invalid_argument("prime fields take no modulus");
      build_prime(*d);
    } else {
      std::vector<Fe> mod;
      if (modulus) {
        mod = *modulus;
      } else {
        auto it = builtin_field_moduli().find(q);
        if (it == builtin_field_moduli().end())
          throw std::invalid_argument("no builtin modulus for GF(" + std::to_string(q) + ")");
        mod = it->second;
      }
      validate_modulus(*d, mod);
      d->modulus = std::move(mod);
      build_extension(*d);
    }
    return d;
  }

  static void validate_modulus(const Data& d, const std::vector<Fe>& mod) {
    if (mod.size() != d.m + 1) throw std::invalid_argument("modulus must have degree m = " + std::to_string(d.m));
    if (mod.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (Fe c : mod)
      if (c >= d.p) throw std::invalid_argument("modulus coefficient out of range for GF(p)");
    if (mod.front() == 0) throw std::invalid_argument("modulus is not primitive (zero constant term)");
  }

  static void build_prime(Data& d) {
    const unsigned p = d.p;
    d.add_t.resize(static_cast<std::size_t>(p) * p);
    d.mul_t.resize(static_cast<std::size_t>(p) * p);
    d.neg_t.resize(p);
    d.inv_t.resize(p);
    for (unsigned a = 0; a < p; ++a) {
      d.neg_t[a] = (p - a) % p;
      for (unsigned b = 0; b < p; ++b) {
        d.add_t[static_cast<std::size_t>(a) * p + b] = (a + b) % p;
        d.mul_t[static_cast<std::size_t>(a) * p + b] = (a * b) % p;
      }
    }
    // smallest primitive root
    unsigned g = 1;
    for (; g < p; ++g) {
      unsigned ord = 1, x = g;
      while (x != 1) {
        x = (x * g) % p;
        ++ord;
      }
      if (ord == p - 1) break;
    }
    d.exp_t.resize(p - 1);
    d.log_t.assign(p, 0);
    unsigned x = 1;
    for (unsigned i = 0; i + 1 < p; ++i) {
      d.exp_t[i] = x;
      d.log_t[x] = i;
      x = (x * g) % p;
    }
    for (unsigned a = 1; a < p; ++a) d.inv_t[a] = d.exp_t[(p - 1 - d.log_t[a]) % (p - 1)];
  }

  static void build_extension(Data& d) {
    const unsigned q = d.q, p = d.p, m = d.m;

    auto decode = [&](Fe a) {
      std::vector<Fe> c(m);
      for (unsigned i = 0; i < m; ++i) {
        c[i] = a % p;
        a /= p;
      }
      return c;
    };
    auto encode = [&](const std::vector<Fe>& c) {
      Fe a = 0;
      for (std::size_t i = m; i-- > 0;) a = a * p + c[i];
      return a;
    };
    // multiply by x modulo the defining polynomial
    auto mulx = [&](std::vector<Fe> c) {
      Fe carry = c[m - 1];
      for (std::size_t i = m; i-- > 1;) c[i] = c[i - 1];
      c[0] = 0;
      if (carry)
        for (unsigned i = 0; i < m; ++i) c[i] = (c[i] + (p - (carry * d.modulus[i]) % p)) % p;
      return c;
    };

    // log/antilog tables from the powers of the companion root x; the walk
    // doubles as the primitivity check
    d.exp_t.resize(q - 1);
    d.log_t.assign(q, 0);
    std::vector<bool> seen(q, false);
    std::vector<Fe> cur(m, 0);
    cur[0] = 1;
    for (unsigned i = 0; i < q - 1; ++i) {
      Fe e = encode(cur);
      if (e == 0 || seen[e] || (i > 0 && e == 1))
        throw std::invalid_argument("modulus is not primitive over GF(" + std::to_string(p) + ")");
      seen[e] = true;
      d.exp_t[i] = e;
      d.log_t[e] = i;
      cur = mulx(cur);
    }
    if (encode(cur) != 1) throw std::invalid_argument("modulus is not primitive over GF(" + std::to_string(p) + ")");

    d.add_t.resize(static_cast<std::size_t>(q) * q);
    d.mul_t.resize(static_cast<std::size_t>(q) * q);
    d.neg_t.resize(q);
    d.inv_t.resize(q);
    for (Fe a = 0; a < q; ++a) {
      auto ca = decode(a);
      for (unsigned i = 0; i < m; ++i) ca[i] = (p - ca[i]) % p;
      d.neg_t[a] = encode(ca);
      ca = decode(a);
      for (Fe b = 0; b < q; ++b) {
        auto cb = decode(b);
        std::vector<Fe> s(m);
        for (unsigned i = 0; i < m; ++i) s[i] = (ca[i] + cb[i]) % p;
        d.add_t[static_cast<std::size_t>(a) * q + b] = encode(s);
        d.mul_t[static_cast<std::size_t>(a) * q + b] =
            (a == 0 || b == 0) ? 0 : d.exp_t[(d.log_t[a] + d.log_t[b]) % (q - 1)];
      }
    }
    for (Fe a = 1; a < q; ++a) d.inv_t[a] = d.exp_t[(q - 1 - d.log_t[a]) % (q - 1)];
  }

  std::shared_ptr<const Data> d_;
};

// Override table for primitive polynomials, loaded from a plain-text file.
// One record per line:
//   <order> <degree> <c_0> ... <c_degree>
// describing a monic primitive polynomial of the given degree over the base
// field of size order^(1/degree); coefficients are element indices of that
// base field.  Records with order = p^m over GF(p) replace the builtin field
// moduli; records with order = q^n over GF(q) replace the builtin Singer
// polynomials.
struct PolyTable {
  std::map<std::pair<unsigned long long, unsigned>, std::vector<Fe>> entries;

  const std::vector<Fe>* find(unsigned long long order, unsigned degree) const {
    auto it = entries.find({order, degree});
    return it == entries.end() ? nullptr : &it->second;
  }

  static PolyTable parse(std::istream& in) {
    PolyTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      unsigned long long order;
      unsigned degree;
      if (!(ls >> order)) continue;  // blank line
      if (!(ls >> degree) || degree == 0)
        throw std::invalid_argument("poly table line " + std::to_string(lineno) + ": bad degree");
      unsigned long long base = 1;
      // integral degree-th root of order
      for (unsigned long long b = 2; b <= order; ++b) {
        unsigned long long v = 1;
        bool over = false;
        for (unsigned i = 0; i < degree; ++i) {
          v *= b;
          if (v > order) {
            over = true;
            break;
          }
        }
        if (!over && v == order) {
          base = b;
          break;
        }
        if (over || v > order) break;
      }
      if (base == 1)
        throw std::invalid_argument("poly table line " + std::to_string(lineno) +
                                    ": order is not a perfect degree-th power");
      std::vector<Fe> coeffs;
      unsigned long long c;
      while (ls >> c) {
        if (c >= base)
          throw std::invalid_argument("poly table line " + std::to_string(lineno) + ": coefficient out of range");
        coeffs.push_back(static_cast<Fe>(c));
      }
      if (coeffs.size() != degree + 1)
        throw std::invalid_argument("poly table line " + std::to_string(lineno) + ": expected degree+1 coefficients");
      if (coeffs.back() != 1)
        throw std::invalid_argument("poly table line " + std::to_string(lineno) + ": polynomial must be monic");
      t.entries[{order, degree}] = std::move(coeffs);
    }
    return t;
  }

  static PolyTable load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open poly file: " + path);
    return parse(in);
  }
};

}  // namespace qdesign
