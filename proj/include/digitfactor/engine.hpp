#ifndef DIGITFACTOR_ENGINE_HPP
#define DIGITFACTOR_ENGINE_HPP

#include "digitfactor/digitpoly.hpp"
#include "digitfactor/natural.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace digitfactor {

enum class ParamKind { Strassen, Multifactor, Hint, HintShifted, Custom };

// The triple (B, digit rule, S) driving one run of the factoring loop.
// B and S must be disjoint subsets of Z_N of equal size d.
struct Parametrization {
  Natural modulus; // N
  std::vector<Natural> bases;       // B, b_1..b_d
  std::vector<Natural> eval_points; // S, s_1..s_d
  std::function<DigitPoly(const Natural &)> digit_rule; // b -> f_b
  ParamKind kind = ParamKind::Custom;
  std::string label = "custom";

  std::size_t d() const { return bases.size(); }
};

// Default rule f_b = X + N - b (reduces to X - b mod N).
std::function<DigitPoly(const Natural &)> linear_digit_rule(const Natural &N);

enum class OutcomeKind { Factor, PrimeIndicated, Exhausted };

struct FactorOutcome {
  OutcomeKind kind;
  std::optional<Natural> factor;
  std::optional<Natural> cofactor;
  int step = 0; // 4 or 6 for Factor outcomes
  std::optional<std::pair<std::size_t, std::size_t>> indices; // 1-based (j, i)
  std::uint64_t gcd_scans = 0;
  std::vector<std::size_t> unscanned_j; // diagnostics on Exhausted
};

// One run of the six-step factoring loop: build g = prod f_b mod N through a
// product tree, evaluate it on S through the remainder tree, then scan
// gcd(y_j, N) and, where a product hides the factor, gcd(f_{b_i}(s_j), N).
// PrimeIndicated is the paper's 'Error A', Exhausted its 'Error B'.
FactorOutcome run_algorithm1(const Natural &N, const Parametrization &P,
                             std::size_t block_size = std::size_t{1} << 16);

// d = ceil(N^(1/4)), B = {-n mod N}, S = {(n-1)d}; the difference grid
// covers {1,...,d^2} and with it every candidate prime up to isqrt(N).
Parametrization strassen_param(const Natural &N);

// d = floor(N^(1/(2m))); valid when N has a prime factor below N^(1/m).
Parametrization multifactor_param(const Natural &N, unsigned m);

// Residue hint r = p mod m: B = {mdn + r}, S = {mn}, d = ceil((b/m)^(1/2)).
// Requires 2 <= m, r < m, 5b <= N.
Parametrization hint_param(const Natural &N, const Natural &m,
                           const Natural &r, const Natural &b);

// Shifted variant: B = {m^-1 r - n mod N}, S = {-dn mod N}. Needs
// gcd(m, N) = 1; a nontrivial gcd is returned as a factor leak instead.
std::variant<Parametrization, FactorLeak>
hint_param_shifted(const Natural &N, const Natural &m, const Natural &r,
                   const Natural &b);

// Test utility: B, S disjoint in Z_N and some pair congruent modulo some
// known prime factor.
bool verify_problem_solution(const std::vector<Natural> &B,
                             const std::vector<Natural> &S, const Natural &N,
                             const std::vector<Natural> &known_factors);

struct FactorizeConfig {
  Natural trial_bound = 1000;
  std::size_t block_size = std::size_t{1} << 16;
  // Optional (m, r, b) residue hint, applied to the first hard cofactor.
  std::optional<std::tuple<Natural, Natural, Natural>> hint;
  std::optional<unsigned> d_override; // forces d of the Strassen grid
};

// Complete prime factorization, sorted ascending: trial division for small
// primes, perfect-power peeling, then the engine on hard cofactors.
std::vector<std::pair<Natural, unsigned>>
factorize(const Natural &N, const FactorizeConfig &config = {});

} // namespace digitfactor

#endif
