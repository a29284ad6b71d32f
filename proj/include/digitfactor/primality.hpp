#ifndef DIGITFACTOR_PRIMALITY_HPP
#define DIGITFACTOR_PRIMALITY_HPP

#include "digitfactor/digitpoly.hpp"
#include "digitfactor/natural.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace digitfactor {

enum class CharMode { Fermat, Euler };

enum class DegreeHypothesis { Unverified, Holds, Violated };

struct CharVerdict {
  Natural n;
  CharMode mode = CharMode::Fermat;
  bool prime_consistent = false;
  std::optional<Natural> witness; // minimal x whose value escapes the set
  std::uint64_t checked = 0;
  // Precondition flags: N odd, N not a perfect power, gcd(lc f, N) = 1,
  // and (when the factorization is known) deg f < largest prime factor.
  bool odd_ok = false;
  bool not_perfect_power = false;
  bool lc_coprime = false;
  DegreeHypothesis degree_hypothesis = DegreeHypothesis::Unverified;
  std::optional<Natural> factor_leak; // gcd(lc f, N) when nontrivial
};

// f(x)^(N-1) mod N; outside {0,1} it witnesses compositeness.
Natural fermat_value(const Natural &N, const DigitPoly &f, const Natural &x);

// f(x)^((N-1)/2) mod N; outside {-1,0,1} (with -1 read as N-1) it witnesses
// compositeness.
Natural euler_value(const Natural &N, const DigitPoly &f, const Natural &x);

// Scans x = 0,1,2,... over Z_N, reporting the minimal witness or
// prime-consistent after the full scan. Theta(N) exponentiations; a
// characterization, not a primality test.
CharVerdict exhaustive_characterization(
    const Natural &N, const DigitPoly &f, CharMode mode,
    const std::optional<std::pair<Natural, Natural>> &known_factors = {},
    std::uint64_t bound = 10'000);

} // namespace digitfactor

#endif
