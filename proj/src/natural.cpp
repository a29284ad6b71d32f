#include "digitfactor/natural.hpp"

#include <stdexcept>

namespace digitfactor {

Natural gcd(const Natural &a, const Natural &b) {
  Natural r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::optional<Natural> mod_inverse(const Natural &a, const Natural &n) {
  if (n < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  Natural r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
    return std::nullopt;
  return r;
}

Natural pow_mod(const Natural &base, const Natural &exp, const Natural &n) {
  if (n < 1) throw std::invalid_argument("pow_mod: modulus must be >= 1");
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), n.get_mpz_t());
  return r;
}

Natural integer_kth_root(const Natural &n, unsigned k) {
  if (k == 0) throw std::invalid_argument("integer_kth_root: k must be >= 1");
  Natural r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k); // exact integer floor root
  return r;
}

std::optional<PerfectPower> perfect_power(const Natural &n) {
  if (n < 2) throw std::invalid_argument("perfect_power: n must be >= 2");
  unsigned maxexp = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (unsigned e = maxexp; e >= 2; --e) {
    Natural r = integer_kth_root(n, e);
    if (r < 2) continue;
    Natural p;
    mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), e);
    if (p == n) return PerfectPower{r, e};
  }
  return std::nullopt;
}

TrialDivision trial_division(const Natural &n, const Natural &bound) {
  if (n < 1) throw std::invalid_argument("trial_division: n must be >= 1");
  TrialDivision out;
  out.cofactor = n;
  Natural c = 2;
  while (c <= bound && c * c <= out.cofactor) {
    while (out.cofactor % c == 0) {
      out.factors.push_back(c);
      out.cofactor /= c;
    }
    c += (c == 2) ? 1 : 2;
  }
  // c*c > cofactor means the remaining cofactor is 1 or prime.
  if (out.cofactor > 1 && out.cofactor <= bound) {
    out.factors.push_back(out.cofactor);
    out.cofactor = 1;
  }
  return out;
}

namespace {

bool miller_rabin(const Natural &n, const Natural &a) {
  Natural d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Natural x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

} // namespace

bool is_prime_oracle(const Natural &n) {
  if (n < 2) return false;
  static const unsigned small[] = {2,  3,  5,  7,  11, 13, 17,
                                   19, 23, 29, 31, 37, 41};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Deterministic below 3.317*10^24 (Sorenson-Webster witness set).
  Natural limit("3317044064679887385961980");
  if (n < limit) {
    for (unsigned a : small)
      if (!miller_rabin(n, a)) return false;
    return true;
  }
  Natural c = 43;
  while (c * c <= n) {
    if (n % c == 0) return false;
    c += 2;
  }
  return true;
}

} // namespace digitfactor
