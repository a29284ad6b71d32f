#ifndef DIGITFACTOR_NU_HPP
#define DIGITFACTOR_NU_HPP

#include "digitfactor/digitpoly.hpp"
#include "digitfactor/modpoly.hpp"
#include "digitfactor/natural.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace digitfactor {

inline constexpr std::uint64_t kDefaultExhaustiveBound = 1'000'000;

struct NuReport {
  Natural n;
  std::uint64_t suitable_count = 0;
  std::optional<std::uint64_t> vanishing_count;
  std::optional<std::uint64_t> roots_mod_p; // n in the paper's naming
  std::optional<std::uint64_t> roots_mod_q; // m
  std::optional<std::int64_t> formula_value;
  std::optional<std::int64_t> bound_value;
};

// 1 < gcd(g(x), N) < N.
bool is_suitable(const Natural &x, const ModPoly &g, const Natural &N);

// Exact count of suitable x over all of Z_N. Refuses N above the bound
// (the scan is Theta(N)).
NuReport nu_bruteforce(const ModPoly &g, const Natural &N,
                       std::uint64_t bound = kDefaultExhaustiveBound);

// m*p + n*q - 2*n*m (n roots mod p, m roots mod q).
std::int64_t nu_formula(std::uint64_t n_roots_p, std::uint64_t m_roots_q,
                        const Natural &p, const Natural &q);

// d*p + d*q - 2*d^2; only claimed for 2d < p <= q.
std::int64_t nu_bound(unsigned d, const Natural &p, const Natural &q);

// Distinct zeros of f in Z_p by exhaustive evaluation.
std::uint64_t count_roots_mod(const ModPoly &f, const Natural &p);

// All x in Z_N where the product completes N (gcd = N) while some factor
// alone would have been suitable.
std::vector<Natural> vanishing_points(const std::vector<ModPoly> &factors,
                                      const Natural &N,
                                      std::uint64_t bound = kDefaultExhaustiveBound);

struct TheoremReport {
  bool hypotheses_ok = false;
  std::string failing_condition;
  std::optional<Natural> factor_leak;
  std::uint64_t nu_value = 0;
  std::int64_t expected = 0;
  bool match = false;
  unsigned d = 0;
};

// f_i = X - b_i; checks gcd(b_i, N) = 1 and gcd(b_j - b_k, N) = 1, then
// asserts nu(prod f_i) = d*p + d*q - 2d^2 by brute force.
TheoremReport verify_linear_product_theorem(
    const Natural &N, const Natural &p, const Natural &q,
    const std::vector<Natural> &bases,
    std::uint64_t bound = kDefaultExhaustiveBound);

// nu(prod of the family's quadratics) = 2d*p + 2d*q - 8d^2.
TheoremReport verify_quadratic_product_theorem(
    const Natural &N, const Natural &p, const Natural &q,
    const QuadFamily &family, std::uint64_t bound = kDefaultExhaustiveBound);

} // namespace digitfactor

#endif
