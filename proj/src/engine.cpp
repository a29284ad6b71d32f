#include "digitfactor/engine.hpp"

#include "digitfactor/modpoly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace digitfactor {

std::function<DigitPoly(const Natural &)> linear_digit_rule(const Natural &N) {
  return [N](const Natural &b) { return linear_digit_poly(N, b); };
}

namespace {

void validate(const Natural &N, const Parametrization &P) {
  if (N < 2) throw std::invalid_argument("run_algorithm1: N must be >= 2");
  if (P.modulus != N)
    throw std::invalid_argument("parametrization built for a different N");
  if (P.bases.empty() || P.bases.size() != P.eval_points.size())
    throw std::invalid_argument("parametrization: |B| and |S| must be equal and >= 1");
  if (!P.digit_rule)
    throw std::invalid_argument("parametrization: missing digit rule");
  std::set<Natural> b(P.bases.begin(), P.bases.end());
  std::set<Natural> s(P.eval_points.begin(), P.eval_points.end());
  if (b.size() != P.bases.size() || s.size() != P.eval_points.size())
    throw std::invalid_argument("parametrization: duplicate elements");
  for (const auto &x : P.bases)
    if (x >= N) throw std::invalid_argument("parametrization: base outside Z_N");
  for (const auto &x : P.eval_points) {
    if (x >= N) throw std::invalid_argument("parametrization: point outside Z_N");
    if (b.count(x))
      throw std::invalid_argument("parametrization: B and S not disjoint");
  }
}

} // namespace

namespace {
FactorOutcome run_algorithm1_impl(const Natural &N, const Parametrization &P,
                                  std::size_t block_size);
}

FactorOutcome run_algorithm1(const Natural &N, const Parametrization &P,
                             std::size_t block_size) {
  validate(N, P);
  try {
    return run_algorithm1_impl(N, P, block_size);
  } catch (const FactorLeakError &e) {
    // A zero divisor surfacing inside the polynomial arithmetic is already
    // the answer, just found off the scripted path.
    const Natural &g = e.leaked_gcd();
    if (g > 1 && g < N)
      return {OutcomeKind::Factor, g, N / g, 2, {}, 0, {}};
    throw;
  }
}

namespace {
FactorOutcome run_algorithm1_impl(const Natural &N, const Parametrization &P,
                                  std::size_t block_size) {
  const std::size_t d = P.d();

  // Step 1: the digit polynomials and their product mod N.
  std::vector<ModPoly> fb;
  fb.reserve(d);
  for (const auto &b : P.bases) {
    DigitPoly f = P.digit_rule(b);
    if (f.eval_exact(mpz_class(b)) != N)
      throw std::invalid_argument("digit rule violated f(b) = N at base " +
                                  b.get_str());
    fb.push_back(ModPoly(N, std::vector<Natural>(f.coeffs.begin(),
                                                 f.coeffs.end())));
  }
  const ModPoly g = ProductTree::build(fb).root();

  FactorOutcome out{OutcomeKind::PrimeIndicated, {}, {}, 0, {}, 0, {}};

  // Step 2 in chunks of S (g is reused, only the remainder tree is rebuilt),
  // steps 3-6 as literal index scans.
  for (std::size_t lo = 0; lo < d; lo += block_size) {
    const std::size_t hi = std::min(lo + block_size, d);
    std::vector<Natural> pts(P.eval_points.begin() + lo,
                             P.eval_points.begin() + hi);
    MultipointEvaluator ev(N, pts);
    const std::vector<Natural> y = ev.eval(g);

    for (std::size_t j = lo; j < hi; ++j) {
      ++out.gcd_scans;
      const Natural G = gcd(y[j - lo], N);
      if (G == 1) continue;
      if (G < N) {
        out.kind = OutcomeKind::Factor;
        out.factor = G;
        out.cofactor = N / G;
        out.step = 4;
        out.indices = {j + 1, 0};
        return out;
      }
      // G_j = N: the factor hides in the product; scan the factors at s_j.
      for (std::size_t i = 0; i < d; ++i) {
        ++out.gcd_scans;
        const Natural H = gcd(eval_horner(fb[i], P.eval_points[j]), N);
        if (H == 1 || H == N) continue;
        out.kind = OutcomeKind::Factor;
        out.factor = H;
        out.cofactor = N / H;
        out.step = 6;
        out.indices = {j + 1, i + 1};
        return out;
      }
      out.kind = OutcomeKind::Exhausted;
      out.indices = {j + 1, d};
      for (std::size_t rest = j + 1; rest < d; ++rest)
        out.unscanned_j.push_back(rest + 1);
      return out;
    }
  }
  return out; // every G_j was 1: 'Error A'
}
} // namespace

namespace {

Parametrization strassen_grid(const Natural &N, const Natural &d) {
  Parametrization P;
  P.modulus = N;
  for (Natural n = 1; n <= d; ++n) P.bases.push_back(N - n);
  for (Natural n = 0; n < d; ++n) P.eval_points.push_back(n * d % N);
  P.digit_rule = linear_digit_rule(N);
  return P;
}

} // namespace

Parametrization strassen_param(const Natural &N) {
  if (N < 30)
    throw std::invalid_argument("strassen_param: N must be >= 30");
  Natural d = integer_kth_root(N, 4);
  if (d * d * d * d < N) ++d; // ceil
  Parametrization P = strassen_grid(N, d);
  P.kind = ParamKind::Strassen;
  P.label = "strassen";
  return P;
}

Parametrization multifactor_param(const Natural &N, unsigned m) {
  if (m < 2) throw std::invalid_argument("multifactor_param: m must be >= 2");
  Natural d = integer_kth_root(N, 2 * m);
  if (d == 0) throw std::invalid_argument("multifactor_param: d = 0");
  Parametrization P = strassen_grid(N, d);
  P.kind = ParamKind::Multifactor;
  P.label = "multifactor(" + std::to_string(m) + ")";
  return P;
}

namespace {

// Least d with m*d^2 >= b.
Natural hint_degree(const Natural &m, const Natural &b) {
  Natural q = (b + m - 1) / m;
  Natural d = integer_kth_root(q, 2);
  while (m * d * d < b) ++d;
  while (d > 1 && m * (d - 1) * (d - 1) >= b) --d;
  return d;
}

} // namespace

Parametrization hint_param(const Natural &N, const Natural &m,
                           const Natural &r, const Natural &b) {
  if (m < 2) throw std::invalid_argument("hint_param: m must be >= 2");
  if (r >= m) throw std::invalid_argument("hint_param: need r < m");
  if (5 * b > N) throw std::invalid_argument("hint_param: need b <= N/5");
  const Natural d = hint_degree(m, b);
  Parametrization P;
  P.modulus = N;
  for (Natural n = 1; n <= d; ++n) {
    P.bases.push_back((m * d * n + r) % N);
    P.eval_points.push_back(m * n % N);
  }
  P.digit_rule = linear_digit_rule(N);
  P.kind = ParamKind::Hint;
  P.label = "hint(" + m.get_str() + "," + r.get_str() + "," + b.get_str() + ")";
  return P;
}

std::variant<Parametrization, FactorLeak>
hint_param_shifted(const Natural &N, const Natural &m, const Natural &r,
                   const Natural &b) {
  if (m < 2) throw std::invalid_argument("hint_param_shifted: m must be >= 2");
  if (r >= m) throw std::invalid_argument("hint_param_shifted: need r < m");
  if (5 * b > N) throw std::invalid_argument("hint_param_shifted: need b <= N/5");
  Natural g = gcd(m % N, N);
  if (g == N)
    throw std::invalid_argument("hint_param_shifted: m is a multiple of N");
  if (g != 1) return FactorLeak{g};
  const Natural minv = *mod_inverse(m % N, N);
  const Natural d = hint_degree(m, b);
  Parametrization P;
  P.modulus = N;
  for (Natural n = 1; n <= d; ++n) {
    P.bases.push_back((minv * r % N + N - n % N) % N);
    P.eval_points.push_back((N - d * n % N) % N);
  }
  P.digit_rule = linear_digit_rule(N);
  P.kind = ParamKind::HintShifted;
  P.label = "hint_shifted(" + m.get_str() + "," + r.get_str() + "," +
            b.get_str() + ")";
  return P;
}

bool verify_problem_solution(const std::vector<Natural> &B,
                             const std::vector<Natural> &S, const Natural &N,
                             const std::vector<Natural> &known_factors) {
  std::set<Natural> bs(B.begin(), B.end());
  for (const auto &s : S)
    if (bs.count(s)) return false;
  for (const auto &p : known_factors) {
    if (p <= 1 || p >= N) continue;
    std::set<Natural> bres;
    for (const auto &b : B) bres.insert(b % p);
    for (const auto &s : S)
      if (bres.count(s % p)) return true;
  }
  return false;
}

std::vector<std::pair<Natural, unsigned>>
factorize(const Natural &N, const FactorizeConfig &config) {
  if (N < 1) throw std::invalid_argument("factorize: N must be >= 1");
  std::map<Natural, unsigned> primes;

  // (value, multiplicity) work items
  std::vector<std::pair<Natural, unsigned>> work{{N, 1}};
  bool hint_available = config.hint.has_value();

  while (!work.empty()) {
    auto [n, mult] = work.back();
    work.pop_back();
    if (n == 1) continue;

    // Small prime pre-pass; also disposes of any n below the grid's
    // validity threshold outright.
    Natural bound = config.trial_bound < 2 ? Natural(2) : config.trial_bound;
    if (n < 1000 || n <= bound * bound) bound = integer_kth_root(n, 2);
    TrialDivision td = trial_division(n, bound);
    for (const auto &p : td.factors) primes[p] += mult;
    Natural rest = td.cofactor;
    if (rest == 1) continue;
    if (rest < 1000) { // below the grid's validity threshold
      TrialDivision full = trial_division(rest, integer_kth_root(rest, 2));
      for (const auto &p : full.factors) primes[p] += mult;
      if (full.cofactor > 1) primes[full.cofactor] += mult;
      continue;
    }

    if (is_prime_oracle(rest)) {
      primes[rest] += mult;
      continue;
    }
    if (auto pp = perfect_power(rest)) {
      work.emplace_back(pp->base, mult * pp->exponent);
      continue;
    }

    FactorOutcome outcome = [&] {
      if (hint_available) {
        hint_available = false;
        const auto &[m, r, b] = *config.hint;
        return run_algorithm1(rest, hint_param(rest, m, r, b),
                              config.block_size);
      }
      Parametrization P =
          config.d_override
              ? strassen_grid(rest, Natural(*config.d_override))
              : strassen_param(rest);
      return run_algorithm1(rest, P, config.block_size);
    }();

    if (outcome.kind != OutcomeKind::Factor)
      throw std::logic_error(
          "factorize: engine failed on a certified composite (invariant breach)");
    work.emplace_back(*outcome.factor, mult);
    work.emplace_back(*outcome.cofactor, mult);
  }

  return {primes.begin(), primes.end()};
}

} // namespace digitfactor
