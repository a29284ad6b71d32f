#ifndef DIGITFACTOR_MODPOLY_HPP
#define DIGITFACTOR_MODPOLY_HPP

#include "digitfactor/natural.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace digitfactor {

// Raised when an operation stumbles over a zero divisor of the modulus.
// The carried gcd is a nontrivial factor of N, which callers may treat as
// a success rather than a failure.
class FactorLeakError : public std::runtime_error {
public:
  explicit FactorLeakError(Natural g)
      : std::runtime_error("nontrivial gcd with modulus: " + g.get_str()),
        gcd_(std::move(g)) {}
  const Natural &leaked_gcd() const { return gcd_; }

private:
  Natural gcd_;
};

// Dense polynomial over Z_N, coefficients in [0, N), ascending degree,
// normalized (no trailing zeros; the zero polynomial has no coefficients).
class ModPoly {
public:
  explicit ModPoly(Natural modulus);
  ModPoly(Natural modulus, std::vector<Natural> coeffs);

  static ModPoly constant(const Natural &modulus, const Natural &c);
  // X - s mod N, monic.
  static ModPoly x_minus(const Natural &modulus, const Natural &s);

  const Natural &modulus() const { return modulus_; }
  const std::vector<Natural> &coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is not an integer; empty optional.
  std::optional<std::size_t> degree() const;
  const Natural &leading_coeff() const;
  Natural coeff(std::size_t i) const;
  bool is_monic() const;

  bool operator==(const ModPoly &o) const = default;

private:
  Natural modulus_;
  std::vector<Natural> coeffs_;
};

// Coefficient-multiplication counter, the empirical handle on the
// O(M(d) log d) claims. Accumulation-safe under concurrent updates.
namespace opcount {
void reset();
std::uint64_t coefficient_mults();
void add(std::uint64_t n);
} // namespace opcount

// Multiplication strategy knobs. force_schoolbook exists as the quadratic
// negative control for the scaling benchmark.
std::size_t mul_cutoff();
void set_mul_cutoff(std::size_t n);
bool force_schoolbook();
void set_force_schoolbook(bool v);

// f*g mod N. Schoolbook below the cutoff, multi-modular NTT above.
ModPoly poly_mul(const ModPoly &f, const ModPoly &g);

struct DivRem {
  ModPoly quotient;
  ModPoly remainder;
};

// f = q*g + r with deg r < deg g. Requires lc(g) invertible mod N;
// otherwise throws FactorLeakError carrying gcd(lc g, N).
DivRem poly_divrem(const ModPoly &f, const ModPoly &g);

Natural eval_horner(const ModPoly &f, const Natural &x);

// Balanced binary product tree: level 0 holds the leaves, the top level the
// product of all leaves mod N. Odd nodes are carried up unchanged.
class ProductTree {
public:
  static ProductTree build(std::vector<ModPoly> leaves);
  const ModPoly &root() const { return levels_.back().front(); }
  const std::vector<std::vector<ModPoly>> &levels() const { return levels_; }

private:
  std::vector<std::vector<ModPoly>> levels_;
};

// Remainder-tree multipoint evaluation. The subproduct tree is retained so
// several polynomials can be evaluated at the same point set.
class MultipointEvaluator {
public:
  MultipointEvaluator(const Natural &modulus, std::vector<Natural> points);
  std::vector<Natural> eval(const ModPoly &f) const;
  const std::vector<Natural> &points() const { return points_; }
  const ProductTree &tree() const { return tree_; }

private:
  Natural modulus_;
  std::vector<Natural> points_;
  ProductTree tree_;
};

std::vector<Natural> multipoint_eval(const ModPoly &f,
                                     const std::vector<Natural> &points);

} // namespace digitfactor

#endif
