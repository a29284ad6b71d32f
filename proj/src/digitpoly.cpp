#include "digitfactor/digitpoly.hpp"

#include <stdexcept>

namespace digitfactor {

std::size_t DigitPoly::degree() const {
  std::size_t d = coeffs.size();
  while (d > 1 && coeffs[d - 1] == 0) --d;
  return d - 1;
}

mpz_class DigitPoly::eval_exact(const mpz_class &x) const {
  mpz_class r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

ModPoly DigitPoly::to_modpoly() const {
  return ModPoly(target, std::vector<Natural>(coeffs.begin(), coeffs.end()));
}

bool is_digit_poly(const std::vector<mpz_class> &coeffs, const mpz_class &b,
                   const Natural &N) {
  mpz_class r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * b + coeffs[i];
  return r == N;
}

DigitPoly badic_digit_poly(const Natural &N, const Natural &b) {
  if (b < 2) throw std::invalid_argument("badic_digit_poly: base must be >= 2");
  DigitPoly f;
  f.base = b;
  f.target = N;
  Natural rest = N;
  do {
    f.coeffs.push_back(rest % b);
    rest /= b;
  } while (rest > 0);
  return f;
}

DigitPoly linear_digit_poly(const Natural &N, const Natural &b) {
  if (b >= N) throw std::invalid_argument("linear_digit_poly: need 0 <= b < N");
  DigitPoly f;
  f.base = b;
  f.target = N;
  f.coeffs = {N - b, 1};
  return f;
}

std::variant<Natural, FactorLeak> companion_zero(const DigitPoly &f,
                                                 const Natural &N) {
  if (f.degree() != 2)
    throw std::invalid_argument("companion_zero: degree must be 2");
  Natural n0 = Natural(f.coeffs[0] % N);
  if (n0 < 0) n0 += N;
  if (n0 == 0) return Natural(0);
  auto n2inv = mod_inverse(Natural(((f.coeffs[2] % N) + N) % N), N);
  if (!n2inv) {
    Natural g = gcd(Natural(((f.coeffs[2] % N) + N) % N), N);
    return FactorLeak{g};
  }
  Natural b = Natural(((f.base % N) + N) % N);
  auto binv = mod_inverse(b, N);
  if (!binv) return FactorLeak{gcd(b, N)};
  return n0 * *n2inv % N * *binv % N;
}

Natural quad_base_min(const Natural &N) {
  // least c with 2c^2 >= N
  Natural c = integer_kth_root((N + 1) / 2, 2);
  while (2 * c * c < N) ++c;
  return c;
}

Natural quad_base_max(const Natural &N) { return integer_kth_root(N, 2); }

QuadFamilyResult quad_family(const Natural &N, const Natural &b_start,
                             unsigned d) {
  if (d == 0) throw std::invalid_argument("quad_family: d must be >= 1");
  const Natural lo = quad_base_min(N), hi = quad_base_max(N);
  const Natural b_last = b_start + (d - 1);
  if (b_start < lo || b_last > hi)
    return FamilyRejection{b_start, "base range outside [ceil(sqrt(N/2)), isqrt(N)]"};

  QuadFamily fam;
  fam.target = N;
  for (unsigned i = 0; i < d; ++i) {
    Natural b = b_start + i;
    Natural g = gcd(b, N);
    if (g != 1) {
      if (g < N) return FactorLeak{g};
      return FamilyRejection{b, "gcd(b_i, N) != 1"};
    }
    DigitPoly p = badic_digit_poly(N, b);
    if (p.degree() != 2 || p.coeffs[2] != 1)
      return FamilyRejection{b, "n_2 != 1"};
    if (p.coeffs[1] > p.coeffs[0] + 1)
      return FamilyRejection{b, "n_1 > n_0 + 1"};
    fam.bases.push_back(b);
    fam.polys.push_back(std::move(p));
  }

  fam.big_d = fam.bases.front() + N / fam.bases.back();
  for (unsigned z = 0; z + 1 < 2 * d; ++z) {
    Natural g = gcd(fam.big_d + z, N);
    if (g != 1) {
      if (g < N) return FactorLeak{g};
      return FamilyRejection{fam.big_d + z, "gcd(D+z, N) != 1"};
    }
  }

  for (unsigned i = 0; i < d; ++i) {
    Natural m = N / fam.bases[i];
    fam.companion_bases.push_back((N - m % N) % N);
  }
  return fam;
}

} // namespace digitfactor
