#include "digitfactor/modpoly.hpp"

#include "digitfactor/ntt.hpp"

#include <atomic>
#include <bit>
#include <cassert>
#include <mutex>

namespace digitfactor {

namespace {

void reduce_and_normalize(const Natural &modulus, std::vector<Natural> &c) {
  for (auto &x : c) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
}

} // namespace

ModPoly::ModPoly(Natural modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw std::invalid_argument("ModPoly: modulus must be >= 2");
}

ModPoly::ModPoly(Natural modulus, std::vector<Natural> coeffs)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  if (modulus_ < 2) throw std::invalid_argument("ModPoly: modulus must be >= 2");
  reduce_and_normalize(modulus_, coeffs_);
}

ModPoly ModPoly::constant(const Natural &modulus, const Natural &c) {
  return ModPoly(modulus, {c});
}

ModPoly ModPoly::x_minus(const Natural &modulus, const Natural &s) {
  return ModPoly(modulus, {modulus - s % modulus, 1});
}

std::optional<std::size_t> ModPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

const Natural &ModPoly::leading_coeff() const {
  if (coeffs_.empty())
    throw std::logic_error("leading_coeff of zero polynomial");
  return coeffs_.back();
}

Natural ModPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Natural(0);
}

bool ModPoly::is_monic() const {
  return !coeffs_.empty() && coeffs_.back() == 1;
}

namespace opcount {
namespace {
std::atomic<std::uint64_t> g_mults{0};
}
void reset() { g_mults.store(0); }
std::uint64_t coefficient_mults() { return g_mults.load(); }
void add(std::uint64_t n) { g_mults.fetch_add(n, std::memory_order_relaxed); }
} // namespace opcount

namespace {
// Crossover tuned on the coefficient-mult count of the tree pipeline: the
// transform path must engage early or the doubling ratios at small d are
// dominated by the schoolbook levels.
std::atomic<std::size_t> g_cutoff{8};
std::atomic<bool> g_force_schoolbook{false};
} // namespace

std::size_t mul_cutoff() { return g_cutoff.load(); }
void set_mul_cutoff(std::size_t n) { g_cutoff.store(n ? n : 1); }
bool force_schoolbook() { return g_force_schoolbook.load(); }
void set_force_schoolbook(bool v) { g_force_schoolbook.store(v); }

namespace {

std::vector<Natural> schoolbook_mul(const std::vector<Natural> &a,
                                    const std::vector<Natural> &b) {
  std::vector<Natural> out(a.size() + b.size() - 1, Natural(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  opcount::add(static_cast<std::uint64_t>(a.size()) * b.size());
  return out;
}

// CRT reconstruction plan for a fixed prime count, cached per count.
struct CrtPlan {
  std::vector<ntt::Field> fields;
  std::vector<Natural> prefix;                       // prefix[i] = p_0*...*p_{i-1}
  std::vector<std::vector<std::uint64_t>> prefix_mod; // prefix_mod[i][l] = prefix[l] mod p_i
  std::vector<std::uint64_t> inv;                    // prefix[i]^-1 mod p_i
};

const CrtPlan &crt_plan(std::size_t k) {
  static std::mutex mtx;
  static std::vector<CrtPlan> plans; // plans[k-1]
  std::lock_guard<std::mutex> lock(mtx);
  while (plans.size() < k) {
    std::size_t n = plans.size() + 1;
    CrtPlan plan;
    plan.fields = ntt::fields(n);
    plan.fields.resize(n);
    plan.prefix.resize(n);
    plan.prefix_mod.assign(n, std::vector<std::uint64_t>(n, 0));
    plan.inv.resize(n);
    Natural acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
      plan.prefix[i] = acc;
      acc *= Natural(static_cast<unsigned long>(plan.fields[i].p));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l <= i; ++l)
        plan.prefix_mod[i][l] =
            mpz_fdiv_ui(plan.prefix[l].get_mpz_t(), plan.fields[i].p);
      plan.inv[i] = fastmod::powmod(plan.prefix_mod[i][i],
                                    plan.fields[i].p - 2, plan.fields[i].p);
    }
    plans.push_back(std::move(plan));
  }
  return plans[k - 1];
}

std::vector<Natural> ntt_mul(const Natural &modulus,
                             const std::vector<Natural> &a,
                             const std::vector<Natural> &b) {
  const std::size_t n = a.size() + b.size() - 1;
  const std::size_t t = std::bit_ceil(n);

  // Product coefficients are sums of at most min(|a|,|b|) terms < N^2.
  const std::size_t bound_bits = 2 * mpz_sizeinbase(modulus.get_mpz_t(), 2) +
                                 std::bit_width(std::min(a.size(), b.size())) + 1;
  std::size_t k = 1;
  {
    std::size_t bits = 0;
    while (bits < bound_bits) {
      const auto &fs = ntt::fields(k);
      bits += std::bit_width(fs[k - 1].p) - 1;
      if (bits < bound_bits) ++k;
    }
  }
  const CrtPlan &plan = crt_plan(k);

  std::vector<std::vector<std::uint64_t>> residues(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto &f = plan.fields[i];
    std::vector<std::uint64_t> fa(t, 0), fb(t, 0);
    for (std::size_t j = 0; j < a.size(); ++j)
      fa[j] = mpz_fdiv_ui(a[j].get_mpz_t(), f.p);
    for (std::size_t j = 0; j < b.size(); ++j)
      fb[j] = mpz_fdiv_ui(b[j].get_mpz_t(), f.p);
    ntt::forward(fa, f);
    ntt::forward(fb, f);
    for (std::size_t j = 0; j < t; ++j) fa[j] = fastmod::mulmod(fa[j], fb[j], f.p);
    ntt::inverse(fa, f);
    residues[i] = std::move(fa);
  }
  const unsigned lg = std::countr_zero(t);
  opcount::add(static_cast<std::uint64_t>(k) * (3 * (t / 2) * lg + 2 * t));

  // Garner mixed-radix reconstruction per coefficient.
  std::vector<Natural> out(n, Natural(0));
  std::vector<std::uint64_t> digits(k);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t p = plan.fields[i].p;
      std::uint64_t x = 0;
      for (std::size_t l = 0; l < i; ++l) {
        x = (x + fastmod::mulmod(digits[l] % p, plan.prefix_mod[i][l], p)) % p;
      }
      std::uint64_t r = residues[i][j];
      std::uint64_t diff = r >= x ? r - x : r + p - x;
      digits[i] = fastmod::mulmod(diff, plan.inv[i], p);
    }
    Natural &acc = out[j];
    for (std::size_t i = 0; i < k; ++i) {
      if (digits[i])
        mpz_addmul_ui(acc.get_mpz_t(), plan.prefix[i].get_mpz_t(),
                      static_cast<unsigned long>(digits[i]));
    }
  }
  return out;
}

} // namespace

ModPoly poly_mul(const ModPoly &f, const ModPoly &g) {
  if (f.modulus() != g.modulus())
    throw std::invalid_argument("poly_mul: modulus mismatch");
  if (f.is_zero() || g.is_zero()) return ModPoly(f.modulus());
  const auto &a = f.coeffs();
  const auto &b = g.coeffs();
  std::vector<Natural> raw;
  if (force_schoolbook() || std::min(a.size(), b.size()) <= mul_cutoff())
    raw = schoolbook_mul(a, b);
  else
    raw = ntt_mul(f.modulus(), a, b);
  return ModPoly(f.modulus(), std::move(raw));
}

namespace {

std::vector<Natural> trunc_coeffs(const std::vector<Natural> &c, std::size_t l) {
  return {c.begin(), c.begin() + std::min(l, c.size())};
}

ModPoly mul_trunc(const ModPoly &f, const ModPoly &g, std::size_t l) {
  ModPoly p = poly_mul(f, g);
  return ModPoly(f.modulus(), trunc_coeffs(p.coeffs(), l));
}

// Power-series inverse of a mod X^l via Newton iteration; a.coeff(0) must be
// invertible mod N.
ModPoly series_inverse(const ModPoly &a, std::size_t l) {
  const Natural &N = a.modulus();
  auto inv0 = mod_inverse(a.coeff(0), N);
  if (!inv0) throw FactorLeakError(gcd(a.coeff(0), N));
  ModPoly x = ModPoly::constant(N, *inv0);
  std::size_t prec = 1;
  while (prec < l) {
    prec = std::min(prec * 2, l);
    ModPoly at(N, trunc_coeffs(a.coeffs(), prec));
    ModPoly e = mul_trunc(at, x, prec);
    // x <- x*(2 - e) mod X^prec
    std::vector<Natural> two_minus(e.coeffs());
    two_minus.resize(std::max<std::size_t>(1, two_minus.size()));
    for (auto &c : two_minus) c = (N - c) % N;
    two_minus[0] = (two_minus[0] + 2) % N;
    x = mul_trunc(x, ModPoly(N, std::move(two_minus)), prec);
  }
  return x;
}

std::vector<Natural> reversed(const std::vector<Natural> &c, std::size_t len) {
  // rev_{len-1}(f): coefficient i of the output is c[len-1-i].
  std::vector<Natural> out(len, Natural(0));
  for (std::size_t i = 0; i < c.size() && i < len; ++i)
    out[len - 1 - i] = c[i];
  return out;
}

DivRem schoolbook_divrem(const ModPoly &f, const ModPoly &g,
                         const Natural &lcinv) {
  const Natural &N = f.modulus();
  const std::size_t dg = *g.degree();
  std::vector<Natural> r = f.coeffs();
  const std::size_t dr = r.size() - 1 - dg;
  std::vector<Natural> q(dr + 1, Natural(0));
  for (std::size_t i = dr + 1; i-- > 0;) {
    Natural qi = r[i + dg] * lcinv % N;
    q[i] = qi;
    if (qi == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      r[i + j] = (r[i + j] + N - g.coeffs()[j] * qi % N) % N;
    }
  }
  opcount::add(static_cast<std::uint64_t>(dr + 1) * (dg + 2));
  r.resize(dg);
  return {ModPoly(N, std::move(q)), ModPoly(N, std::move(r))};
}

} // namespace

DivRem poly_divrem(const ModPoly &f, const ModPoly &g) {
  if (f.modulus() != g.modulus())
    throw std::invalid_argument("poly_divrem: modulus mismatch");
  if (g.is_zero()) throw std::invalid_argument("poly_divrem: division by zero");
  const Natural &N = f.modulus();
  if (f.is_zero() || *f.degree() < *g.degree())
    return {ModPoly(N), f};

  Natural lcinv;
  if (g.is_monic()) {
    lcinv = 1;
  } else {
    auto inv = mod_inverse(g.leading_coeff(), N);
    if (!inv) throw FactorLeakError(gcd(g.leading_coeff(), N));
    lcinv = *inv;
  }

  const std::size_t df = *f.degree(), dg = *g.degree();
  const std::size_t dr = df - dg;
  if (force_schoolbook() || dg <= mul_cutoff() || dr <= mul_cutoff())
    return schoolbook_divrem(f, g, lcinv);

  // Newton: rev(q) = rev(f) * rev(g)^-1 mod X^(dr+1).
  ModPoly rev_g(N, reversed(g.coeffs(), dg + 1));
  ModPoly rev_f(N, trunc_coeffs(reversed(f.coeffs(), df + 1), dr + 1));
  ModPoly inv = series_inverse(rev_g, dr + 1);
  ModPoly qrev = mul_trunc(rev_f, inv, dr + 1);
  std::vector<Natural> qc(dr + 1, Natural(0));
  for (std::size_t i = 0; i < qrev.coeffs().size(); ++i)
    qc[dr - i] = qrev.coeffs()[i];
  ModPoly q(N, std::move(qc));

  ModPoly qg = poly_mul(q, g);
  std::vector<Natural> rc(dg, Natural(0));
  for (std::size_t i = 0; i < dg; ++i)
    rc[i] = (f.coeff(i) + N - qg.coeff(i)) % N;
  return {std::move(q), ModPoly(N, std::move(rc))};
}

Natural eval_horner(const ModPoly &f, const Natural &x) {
  Natural r = 0;
  Natural xr = x % f.modulus();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    r = (r * xr + f.coeffs()[i]) % f.modulus();
  }
  return r;
}

ProductTree ProductTree::build(std::vector<ModPoly> leaves) {
  if (leaves.empty())
    throw std::invalid_argument("ProductTree: no leaves");
  for (const auto &l : leaves)
    if (l.modulus() != leaves.front().modulus())
      throw std::invalid_argument("ProductTree: modulus mismatch");
  ProductTree t;
  t.levels_.push_back(std::move(leaves));
  while (t.levels_.back().size() > 1) {
    const auto &cur = t.levels_.back();
    std::vector<ModPoly> next;
    next.reserve((cur.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < cur.size(); i += 2)
      next.push_back(poly_mul(cur[i], cur[i + 1]));
    if (cur.size() % 2 == 1) next.push_back(cur.back());
    t.levels_.push_back(std::move(next));
  }
  return t;
}

MultipointEvaluator::MultipointEvaluator(const Natural &modulus,
                                         std::vector<Natural> points)
    : modulus_(modulus), points_(std::move(points)),
      tree_([&] {
        if (points_.empty())
          throw std::invalid_argument("MultipointEvaluator: no points");
        std::vector<ModPoly> leaves;
        leaves.reserve(points_.size());
        for (const auto &s : points_) {
          if (s >= modulus)
            throw std::invalid_argument("MultipointEvaluator: point >= modulus");
          leaves.push_back(ModPoly::x_minus(modulus, s));
        }
        return ProductTree::build(std::move(leaves));
      }()) {}

namespace {

void descend(const ProductTree &tree, std::size_t level, std::size_t idx,
             const ModPoly &rem, std::vector<Natural> &out) {
  const auto &levels = tree.levels();
  const ModPoly &node = levels[level][idx];
  // Reduce only when it lowers the degree; low-degree polynomials fall
  // through untouched until the node degree catches up.
  const ModPoly *r = &rem;
  ModPoly reduced(rem.modulus());
  if (!rem.is_zero() && *rem.degree() >= *node.degree()) {
    reduced = poly_divrem(rem, node).remainder;
    r = &reduced;
  }
  if (level == 0) {
    out[idx] = r->coeff(0);
    return;
  }
  std::size_t left = 2 * idx, right = 2 * idx + 1;
  if (right < levels[level - 1].size()) {
    descend(tree, level - 1, left, *r, out);
    descend(tree, level - 1, right, *r, out);
  } else {
    descend(tree, level - 1, left, *r, out); // carried node
  }
}

} // namespace

std::vector<Natural> MultipointEvaluator::eval(const ModPoly &f) const {
  if (f.modulus() != modulus_)
    throw std::invalid_argument("MultipointEvaluator: modulus mismatch");
  std::vector<Natural> out(points_.size());
  descend(tree_, tree_.levels().size() - 1, 0, f, out);
  return out;
}

std::vector<Natural> multipoint_eval(const ModPoly &f,
                                     const std::vector<Natural> &points) {
  return MultipointEvaluator(f.modulus(), points).eval(f);
}

} // namespace digitfactor
