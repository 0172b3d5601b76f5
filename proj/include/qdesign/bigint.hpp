#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdesign {

// Counts (q-binomials, class sizes, lambda values) are unbounded integers.
using BigInt = mpz_class;

inline BigInt big_pow(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_fits_ulong_p(v.get_mpz_t());
}

inline std::uint64_t to_u64(const BigInt& v) {
  if (!fits_u64(v)) throw std::overflow_error("count does not fit in 64 bits: " + v.get_str());
  return mpz_get_ui(v.get_mpz_t());
}

}  // namespace qdesign
