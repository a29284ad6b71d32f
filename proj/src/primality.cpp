#include "digitfactor/primality.hpp"

#include "digitfactor/detail/parallel.hpp"

#include <stdexcept>

namespace digitfactor {

namespace {

Natural eval_mod(const DigitPoly &f, const Natural &x, const Natural &N) {
  mpz_class r = 0;
  for (std::size_t i = f.coeffs.size(); i-- > 0;) r = (r * x + f.coeffs[i]) % N;
  if (r < 0) r += N;
  return r;
}

void check_pre(const Natural &N, const Natural &x) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("characterization values need odd N >= 3");
  if (x >= N) throw std::invalid_argument("x must lie in Z_N");
}

} // namespace

Natural fermat_value(const Natural &N, const DigitPoly &f, const Natural &x) {
  check_pre(N, x);
  return pow_mod(eval_mod(f, x, N), N - 1, N);
}

Natural euler_value(const Natural &N, const DigitPoly &f, const Natural &x) {
  check_pre(N, x);
  return pow_mod(eval_mod(f, x, N), (N - 1) / 2, N);
}

CharVerdict exhaustive_characterization(
    const Natural &N, const DigitPoly &f, CharMode mode,
    const std::optional<std::pair<Natural, Natural>> &known_factors,
    std::uint64_t bound) {
  CharVerdict v;
  v.n = N;
  v.mode = mode;
  if (N < 3 || N > Natural(static_cast<unsigned long>(bound)))
    throw std::invalid_argument("exhaustive_characterization: N out of range");

  v.odd_ok = (N % 2 == 1);
  v.not_perfect_power = !perfect_power(N).has_value();
  const std::size_t deg = f.degree();
  Natural lc = f.coeffs[deg] % N;
  if (lc < 0) lc += N;
  Natural g = gcd(lc, N);
  v.lc_coprime = (g == 1);
  if (g > 1 && g < N) v.factor_leak = g;
  if (known_factors) {
    const Natural &largest = std::max(known_factors->first, known_factors->second);
    v.degree_hypothesis = Natural(static_cast<unsigned long>(deg)) < largest
                              ? DegreeHypothesis::Holds
                              : DegreeHypothesis::Violated;
  }
  if (!v.odd_ok)
    throw std::invalid_argument("exhaustive_characterization: N must be odd");

  const std::uint64_t n = mpz_get_ui(N.get_mpz_t());
  const std::uint64_t exp = mode == CharMode::Fermat ? n - 1 : (n - 1) / 2;

  // Word-size scan; membership set is {0,1} (Fermat) or {0,1,N-1} (Euler).
  std::vector<std::uint64_t> coeffs(f.coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    mpz_class c = f.coeffs[i] % N;
    if (c < 0) c += N;
    coeffs[i] = mpz_get_ui(c.get_mpz_t());
  }

  auto chunk_witness = [&](std::uint64_t lo, std::uint64_t hi,
                           std::optional<std::uint64_t> &out) {
    for (std::uint64_t x = lo; x < hi; ++x) {
      std::uint64_t val = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;)
        val = (fastmod::mulmod(val, x, n) + coeffs[i]) % n;
      std::uint64_t pw = fastmod::powmod(val, exp, n);
      bool ok = pw == 0 || pw == 1 ||
                (mode == CharMode::Euler && pw == n - 1);
      if (!ok) {
        out = x;
        return;
      }
    }
  };

  // Parallel ranges keep per-range minima; the merge below restores the
  // minimal-witness contract.
  auto minima = detail::chunked<std::optional<std::uint64_t>>(0, n, chunk_witness);
  std::optional<std::uint64_t> witness;
  for (const auto &m : minima)
    if (m && (!witness || *m < *witness)) witness = m;

  if (witness) {
    v.prime_consistent = false;
    v.witness = Natural(static_cast<unsigned long>(*witness));
    v.checked = *witness + 1;
  } else {
    v.prime_consistent = true;
    v.checked = n;
  }
  return v;
}

} // namespace digitfactor
