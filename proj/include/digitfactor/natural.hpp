#ifndef DIGITFACTOR_NATURAL_HPP
#define DIGITFACTOR_NATURAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <vector>

namespace digitfactor {

// Arbitrary-precision non-negative integer. GMP gives canonical values and
// exact arithmetic; everything downstream builds on this alias.
using Natural = mpz_class;

Natural gcd(const Natural &a, const Natural &b);

// x in [1, n-1] with a*x = 1 (mod n), or empty when gcd(a, n) != 1.
// A non-invertible a is interesting to callers: gcd(a, n) may be a factor.
std::optional<Natural> mod_inverse(const Natural &a, const Natural &n);

Natural pow_mod(const Natural &base, const Natural &exp, const Natural &n);

// floor(n^(1/k)), exact: r^k <= n < (r+1)^k.
Natural integer_kth_root(const Natural &n, unsigned k);

struct PerfectPower {
  Natural base;
  unsigned exponent; // >= 2, maximal
};

// Maximal-exponent decomposition n = base^exponent, or empty if n is not a
// perfect power. Requires n >= 2.
std::optional<PerfectPower> perfect_power(const Natural &n);

struct TrialDivision {
  std::vector<Natural> factors; // prime factors <= bound, with multiplicity
  Natural cofactor;             // no prime factor <= bound
};

TrialDivision trial_division(const Natural &n, const Natural &bound);

// Deterministic reference oracle for test-scale inputs: Miller-Rabin with
// the witness set {2,...,41}, proven correct below 3.3*10^24; trial
// division beyond that.
bool is_prime_oracle(const Natural &n);

inline bool fits_u64(const Natural &n) { return n.fits_ulong_p(); }
inline std::uint64_t to_u64(const Natural &n) { return mpz_get_ui(n.get_mpz_t()); }

namespace fastmod {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = m > 1 ? 1 : 0;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

} // namespace fastmod

} // namespace digitfactor

#endif
