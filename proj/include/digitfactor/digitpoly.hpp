#ifndef DIGITFACTOR_DIGITPOLY_HPP
#define DIGITFACTOR_DIGITPOLY_HPP

#include "digitfactor/modpoly.hpp"
#include "digitfactor/natural.hpp"

#include <string>
#include <variant>
#include <vector>

namespace digitfactor {

// Integer polynomial f with f(base) = target, kept with exact coefficients;
// the defining identity is an exact-integer statement, reduction mod N
// happens only on the way into the polynomial ring.
struct DigitPoly {
  std::vector<mpz_class> coeffs; // ascending degree, exact integers
  mpz_class base;
  Natural target;

  std::size_t degree() const;
  mpz_class eval_exact(const mpz_class &x) const;
  ModPoly to_modpoly() const; // over Z_target
};

bool is_digit_poly(const std::vector<mpz_class> &coeffs, const mpz_class &b,
                   const Natural &N);

// P_b = sum n_i X^i with digits n_i in {0,...,b-1} and P_b(b) = N.
DigitPoly badic_digit_poly(const Natural &N, const Natural &b);

// X + (N - b): the degree-1 digit polynomial congruent to X - b mod N.
DigitPoly linear_digit_poly(const Natural &N, const Natural &b);

struct FactorLeak {
  Natural factor; // strictly between 1 and N, divides N
};

// Vieta companion of base b as a zero of a degree-2 digit polynomial:
// n_0 * n_2^-1 * b^-1 mod N. Non-invertible n_2 or b leaks a factor.
std::variant<Natural, FactorLeak> companion_zero(const DigitPoly &f,
                                                 const Natural &N);

struct QuadFamily {
  Natural target;
  std::vector<Natural> bases;           // consecutive, b_1..b_d
  std::vector<DigitPoly> polys;         // P_{b_i}, all with n_2 = 1
  std::vector<Natural> companion_bases; // b_{d+i} = -floor(N/b_i) mod N
  Natural big_d;                        // D = b_1 + floor(N/b_d)
};

struct FamilyRejection {
  Natural base;          // offending base (or D+z value)
  std::string condition; // failed hypothesis, human-readable
};

using QuadFamilyResult = std::variant<QuadFamily, FamilyRejection, FactorLeak>;

// Builds P_{b_i} for d consecutive bases starting at b_start, checking every
// hypothesis of the base-range lemma: bases inside
// [least c with 2c^2 >= N, isqrt(N)], gcd(b_i, N) = 1, n_2 = 1,
// n_1 <= n_0 + 1, and gcd(D+z, N) = 1 for z in {0,...,2d-2}. A gcd check
// that lands strictly between 1 and N is promoted to a FactorLeak.
QuadFamilyResult quad_family(const Natural &N, const Natural &b_start,
                             unsigned d);

// Least c with 2c^2 >= N (integer-only stand-in for ceil(sqrt(N)/sqrt 2)).
Natural quad_base_min(const Natural &N);
Natural quad_base_max(const Natural &N); // isqrt(N)

} // namespace digitfactor

#endif
