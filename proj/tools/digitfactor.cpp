// digitfactor: factoring with digit-polynomial product grids, nu analysis,
// theorem verification, primality characterizations, and scaling benchmarks.

#include "digitfactor/bench.hpp"
#include "digitfactor/engine.hpp"
#include "digitfactor/modpoly.hpp"
#include "digitfactor/nu.hpp"
#include "digitfactor/primality.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>

using json = nlohmann::json;
using namespace digitfactor;

namespace {

Natural parse_nat(const std::string &s) {
  Natural n;
  int rc;
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
    rc = mpz_set_str(n.get_mpz_t(), s.c_str() + 2, 16);
  else
    rc = mpz_set_str(n.get_mpz_t(), s.c_str(), 10);
  if (rc != 0 || n < 0) throw std::invalid_argument("not a natural number: " + s);
  return n;
}

std::vector<Natural> parse_nats(const std::vector<std::string> &v) {
  std::vector<Natural> out;
  for (const auto &s : v) out.push_back(parse_nat(s));
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void emit(const json &record, bool as_json) {
  if (as_json) std::cout << record.dump(2) << "\n";
}

json counters_json(std::uint64_t gcds) {
  return {{"coefficient_mults", opcount::coefficient_mults()},
          {"gcd_count", gcds}};
}

int run_factor(const std::string &n_str, bool single,
               const std::vector<std::string> &hint_str, unsigned multifactor_m,
               unsigned d_override, std::size_t block_size,
               const std::string &trial_bound, bool as_json) {
  const Natural N = parse_nat(n_str);
  opcount::reset();
  Timer timer;
  json rec{{"command", "factor"},
           {"inputs", {{"N", N.get_str()}, {"single", single}}}};

  std::optional<std::tuple<Natural, Natural, Natural>> hint;
  if (!hint_str.empty()) {
    if (hint_str.size() != 3)
      throw std::invalid_argument("--hint wants m,r,b");
    auto h = parse_nats(hint_str);
    hint = {h[0], h[1], h[2]};
    rec["inputs"]["hint"] = {h[0].get_str(), h[1].get_str(), h[2].get_str()};
  }

  if (single) {
    if (N < 2) throw std::invalid_argument("factor --single: N must be >= 2");
    Parametrization P =
        hint ? hint_param(N, std::get<0>(*hint), std::get<1>(*hint),
                          std::get<2>(*hint))
        : multifactor_m ? multifactor_param(N, multifactor_m)
        : d_override    ? [&] {
            Parametrization sp = strassen_param(N);
            (void)sp;
            throw std::invalid_argument("--d requires full factorization mode");
            return sp;
          }()
                        : strassen_param(N);
    FactorOutcome out = run_algorithm1(N, P, block_size);
    json oj{{"parametrization", P.label}, {"d", P.d()}};
    int status = 0;
    switch (out.kind) {
    case OutcomeKind::Factor:
      oj["kind"] = "factor";
      oj["factor"] = out.factor->get_str();
      oj["cofactor"] = out.cofactor->get_str();
      oj["step"] = out.step;
      oj["j"] = out.indices->first;
      if (out.step == 6) oj["i"] = out.indices->second;
      if (!as_json)
        std::cout << N.get_str() << ": factor " << out.factor->get_str()
                  << " (step " << out.step << ", j=" << out.indices->first
                  << ", d=" << P.d() << ")\n";
      break;
    case OutcomeKind::PrimeIndicated:
      oj["kind"] = "prime_indicated";
      if (!as_json) std::cout << "Error A\n";
      break;
    case OutcomeKind::Exhausted:
      oj["kind"] = "exhausted";
      if (!as_json) std::cout << "Error B\n";
      // A Strassen grid may never exhaust on composite N; an exhausted scan
      // implies composite, so this is an invariant breach.
      if (P.kind == ParamKind::Strassen) status = 3;
      break;
    }
    oj["gcd_scans"] = out.gcd_scans;
    rec["outcome"] = oj;
    rec["counters"] = counters_json(out.gcd_scans);
    rec["wall_time_ms"] = timer.ms();
    emit(rec, as_json);
    return status;
  }

  FactorizeConfig cfg;
  cfg.trial_bound = parse_nat(trial_bound);
  cfg.block_size = block_size;
  cfg.hint = hint;
  if (d_override) cfg.d_override = d_override;
  auto factors = factorize(N, cfg);

  json fj = json::array();
  std::string human;
  for (const auto &[p, e] : factors) {
    fj.push_back({{"prime", p.get_str()}, {"exponent", e}});
    if (!human.empty()) human += " · ";
    human += p.get_str();
    if (e > 1) human += "^" + std::to_string(e);
  }
  rec["outcome"] = {{"kind", "factorization"}, {"factors", fj}};
  rec["counters"] = counters_json(0);
  rec["wall_time_ms"] = timer.ms();
  if (!as_json) {
    if (factors.empty())
      std::cout << N.get_str() << " = 1\n";
    else if (factors.size() == 1 && factors[0].second == 1)
      std::cout << N.get_str() << " is prime\n";
    else
      std::cout << N.get_str() << " = " << human << "\n";
  }
  emit(rec, as_json);
  return 0;
}

json theorem_report_json(const TheoremReport &rep) {
  json j{{"hypotheses_ok", rep.hypotheses_ok},
         {"nu", rep.nu_value},
         {"expected", rep.expected},
         {"match", rep.match},
         {"d", rep.d}};
  if (!rep.failing_condition.empty()) j["failing_condition"] = rep.failing_condition;
  if (rep.factor_leak) j["factor_leak"] = rep.factor_leak->get_str();
  return j;
}

int run_nu(const std::string &n_str, const std::vector<std::string> &poly,
           const std::vector<std::string> &linear_bases,
           const std::string &quad_base, unsigned quad_count,
           const std::vector<std::string> &factors_str, std::uint64_t bound,
           bool as_json) {
  const Natural N = parse_nat(n_str);
  opcount::reset();
  Timer timer;
  json rec{{"command", "nu"}, {"inputs", {{"N", N.get_str()}}}};

  std::optional<std::pair<Natural, Natural>> pq;
  if (!factors_str.empty()) {
    if (factors_str.size() != 2) throw std::invalid_argument("--factors wants p,q");
    auto f = parse_nats(factors_str);
    if (f[0] * f[1] != N) throw std::invalid_argument("--factors do not multiply to N");
    pq = {f[0], f[1]};
    rec["inputs"]["factors"] = {f[0].get_str(), f[1].get_str()};
  }

  json oj;
  if (!poly.empty()) {
    ModPoly g(N, parse_nats(poly));
    rec["inputs"]["poly"] = poly;
    NuReport rep = nu_bruteforce(g, N, bound);
    oj["suitable"] = rep.suitable_count;
    if (pq) {
      auto n_roots = count_roots_mod(g, pq->first);
      auto m_roots = count_roots_mod(g, pq->second);
      oj["roots_mod_p"] = n_roots;
      oj["roots_mod_q"] = m_roots;
      oj["formula"] = nu_formula(n_roots, m_roots, pq->first, pq->second);
      oj["match"] = oj["formula"] == static_cast<std::int64_t>(rep.suitable_count);
    }
    if (!as_json) std::cout << "suitable = " << rep.suitable_count << "\n";
  } else if (!linear_bases.empty()) {
    if (!pq) throw std::invalid_argument("--linear-bases needs --factors p,q");
    auto bases = parse_nats(linear_bases);
    rec["inputs"]["linear_bases"] = linear_bases;
    TheoremReport rep =
        verify_linear_product_theorem(N, pq->first, pq->second, bases, bound);
    oj = theorem_report_json(rep);
    if (!as_json)
      std::cout << "suitable = " << rep.nu_value << ", formula = "
                << rep.expected << (rep.match ? " (match)" : " (MISMATCH)")
                << "\n";
  } else if (!quad_base.empty()) {
    if (!pq) throw std::invalid_argument("--quad-base needs --factors p,q");
    rec["inputs"]["quad_base"] = quad_base;
    rec["inputs"]["quad_count"] = quad_count;
    auto fam = quad_family(N, parse_nat(quad_base), quad_count);
    if (auto *leak = std::get_if<FactorLeak>(&fam)) {
      oj = {{"kind", "factor_leak"}, {"factor", leak->factor.get_str()}};
      if (!as_json) std::cout << "factor leak: " << leak->factor.get_str() << "\n";
    } else if (auto *rej = std::get_if<FamilyRejection>(&fam)) {
      oj = {{"kind", "rejected"},
            {"base", rej->base.get_str()},
            {"condition", rej->condition}};
      if (!as_json)
        std::cout << "rejected at " << rej->base.get_str() << ": "
                  << rej->condition << "\n";
    } else {
      TheoremReport rep = verify_quadratic_product_theorem(
          N, pq->first, pq->second, std::get<QuadFamily>(fam), bound);
      oj = theorem_report_json(rep);
      if (!as_json)
        std::cout << "suitable = " << rep.nu_value << ", formula = "
                  << rep.expected << (rep.match ? " (match)" : " (MISMATCH)")
                  << "\n";
    }
  } else {
    throw std::invalid_argument("nu: give --poly, --linear-bases, or --quad-base");
  }

  rec["outcome"] = oj;
  rec["counters"] = counters_json(0);
  rec["wall_time_ms"] = timer.ms();
  emit(rec, as_json);
  return 0;
}

int run_prime_char(const std::string &n_str, const std::string &base,
                   const std::string &mode_str, std::uint64_t bound,
                   bool as_json) {
  const Natural N = parse_nat(n_str);
  opcount::reset();
  Timer timer;
  json rec{{"command", "prime-char"},
           {"inputs", {{"N", N.get_str()}, {"mode", mode_str}}}};

  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("prime-char: N must be odd and >= 3");
  if (perfect_power(N))
    throw std::invalid_argument(
        "prime-char: N is a perfect power (excluded precondition)");

  DigitPoly f;
  if (base.empty()) {
    // Default f = X to base N.
    f.base = N;
    f.target = N;
    f.coeffs = {0, 1};
  } else {
    f = badic_digit_poly(N, parse_nat(base));
    rec["inputs"]["base"] = base;
  }
  const CharMode mode = mode_str == "euler" ? CharMode::Euler : CharMode::Fermat;
  CharVerdict v = exhaustive_characterization(N, f, mode, {}, bound);

  json oj{{"verdict", v.prime_consistent ? "prime-consistent" : "composite"},
          {"checked", v.checked},
          {"odd_ok", v.odd_ok},
          {"not_perfect_power", v.not_perfect_power},
          {"lc_coprime", v.lc_coprime}};
  if (v.witness) oj["witness"] = v.witness->get_str();
  if (v.factor_leak) oj["factor_leak"] = v.factor_leak->get_str();
  rec["outcome"] = oj;
  rec["counters"] = counters_json(0);
  rec["wall_time_ms"] = timer.ms();
  if (!as_json) {
    if (v.prime_consistent)
      std::cout << N.get_str() << ": prime-consistent (checked " << v.checked
                << ")\n";
    else
      std::cout << N.get_str() << ": composite, witness "
                << v.witness->get_str() << "\n";
  }
  emit(rec, as_json);
  return 0;
}

int run_verify(const std::string &n_str,
               const std::vector<std::string> &factors_str,
               const std::vector<std::string> &linear_bases,
               const std::string &quad_base, unsigned quad_count,
               bool vanishing, std::uint64_t bound, bool as_json) {
  const Natural N = parse_nat(n_str);
  opcount::reset();
  Timer timer;
  if (factors_str.size() != 2) throw std::invalid_argument("--factors wants p,q");
  auto pqv = parse_nats(factors_str);
  if (pqv[0] * pqv[1] != N) throw std::invalid_argument("--factors do not multiply to N");
  json rec{{"command", "verify"},
           {"inputs",
            {{"N", N.get_str()},
             {"factors", {pqv[0].get_str(), pqv[1].get_str()}}}}};
  json oj;

  if (!linear_bases.empty() && vanishing) {
    auto bases = parse_nats(linear_bases);
    rec["inputs"]["vanishing_bases"] = linear_bases;
    std::vector<ModPoly> fs;
    for (const auto &b : bases) fs.push_back(ModPoly::x_minus(N, b % N));
    auto pts = vanishing_points(fs, N, bound);
    json pj = json::array();
    for (const auto &x : pts) pj.push_back(x.get_str());
    const std::uint64_t d = bases.size();
    oj = {{"kind", "vanishing"},
          {"points", pj},
          {"count", pts.size()},
          {"suitability_losses", 2 * pts.size()},
          {"four_choose2", 2 * d * (d - 1)}};
    if (!as_json)
      std::cout << "vanishing points: " << pts.size()
                << " (suitability losses " << 2 * pts.size() << ")\n";
  } else if (!linear_bases.empty()) {
    auto bases = parse_nats(linear_bases);
    rec["inputs"]["linear_bases"] = linear_bases;
    TheoremReport rep =
        verify_linear_product_theorem(N, pqv[0], pqv[1], bases, bound);
    oj = theorem_report_json(rep);
    oj["kind"] = "linear_product";
    if (!as_json)
      std::cout << "nu = " << rep.nu_value << ", expected = " << rep.expected
                << (rep.match ? " (match)" : " (MISMATCH)") << "\n";
  } else if (!quad_base.empty()) {
    rec["inputs"]["quad_base"] = quad_base;
    rec["inputs"]["quad_count"] = quad_count;
    auto fam = quad_family(N, parse_nat(quad_base), quad_count);
    if (auto *leak = std::get_if<FactorLeak>(&fam)) {
      oj = {{"kind", "factor_leak"}, {"factor", leak->factor.get_str()}};
      if (!as_json) std::cout << "factor leak: " << leak->factor.get_str() << "\n";
    } else if (auto *rej = std::get_if<FamilyRejection>(&fam)) {
      oj = {{"kind", "rejected"},
            {"base", rej->base.get_str()},
            {"condition", rej->condition}};
      if (!as_json)
        std::cout << "rejected at " << rej->base.get_str() << ": "
                  << rej->condition << "\n";
    } else {
      TheoremReport rep = verify_quadratic_product_theorem(
          N, pqv[0], pqv[1], std::get<QuadFamily>(fam), bound);
      oj = theorem_report_json(rep);
      oj["kind"] = "quadratic_product";
      if (!as_json)
        std::cout << "nu = " << rep.nu_value << ", expected = " << rep.expected
                  << (rep.match ? " (match)" : " (MISMATCH)") << "\n";
    }
  } else {
    throw std::invalid_argument("verify: give --linear-bases or --quad-base");
  }

  rec["outcome"] = oj;
  rec["counters"] = counters_json(0);
  rec["wall_time_ms"] = timer.ms();
  emit(rec, as_json);
  return 0;
}

int run_bench(std::vector<std::size_t> sizes, bool schoolbook, bool as_json) {
  if (sizes.empty()) sizes = {256, 512, 1024, 2048};
  Timer timer;
  auto rows = bench_pipeline(sizes, schoolbook);
  json rj = json::array();
  for (const auto &r : rows) {
    rj.push_back({{"d", r.d},
                  {"coefficient_mults", r.coefficient_mults},
                  {"ratio", r.ratio},
                  {"wall_time_ms", r.wall_time_ms}});
    if (!as_json) {
      std::cout << "d=" << r.d << "  mults=" << r.coefficient_mults;
      if (r.ratio > 0) std::cout << "  ratio=" << r.ratio;
      std::cout << "  time=" << r.wall_time_ms << "ms\n";
    }
  }
  json rec{{"command", "bench"},
           {"inputs", {{"sizes", sizes}, {"schoolbook", schoolbook}}},
           {"outcome", {{"rows", rj}}},
           {"counters", counters_json(0)},
           {"wall_time_ms", timer.ms()}};
  emit(rec, as_json);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"digit-polynomial factoring toolkit"};
  app.require_subcommand(1);

  // factor
  std::string f_n, f_trial_bound = "1000";
  bool f_single = false, f_json = false;
  std::vector<std::string> f_hint;
  unsigned f_multifactor = 0, f_d = 0;
  std::size_t f_block = std::size_t{1} << 16;
  auto *factor = app.add_subcommand("factor", "factor N completely, or run one grid scan");
  factor->add_option("N", f_n)->required();
  factor->add_flag("--single", f_single, "one run, report Error A/B verbatim");
  factor->add_option("--hint", f_hint, "m,r,b residue hint (r = p mod m, p < b <= N/5)")
      ->delimiter(',');
  factor->add_option("--multifactor", f_multifactor, "m >= 2: d = floor(N^(1/2m))");
  factor->add_option("--d", f_d, "override the Strassen grid size");
  factor->add_option("--block-size", f_block);
  factor->add_option("--trial-bound", f_trial_bound);
  factor->add_flag("--json", f_json);

  // nu
  std::string n_n, n_quad_base;
  std::vector<std::string> n_poly, n_linear, n_factors;
  unsigned n_quad_count = 1;
  std::uint64_t n_bound = kDefaultExhaustiveBound;
  bool n_json = false;
  auto *nu = app.add_subcommand("nu", "count suitable integers by brute force");
  nu->add_option("N", n_n)->required();
  nu->add_option("--poly", n_poly, "coefficients c0,c1,... ascending")->delimiter(',');
  nu->add_option("--linear-bases", n_linear)->delimiter(',');
  nu->add_option("--quad-base", n_quad_base);
  nu->add_option("--quad-count", n_quad_count);
  nu->add_option("--factors", n_factors, "p,q for formula comparison")->delimiter(',');
  nu->add_option("--bound", n_bound);
  nu->add_flag("--json", n_json);

  // prime-char
  std::string p_n, p_base, p_mode = "fermat";
  std::uint64_t p_bound = 10'000;
  bool p_json = false;
  auto *pc = app.add_subcommand("prime-char", "exhaustive primality characterization");
  pc->add_option("N", p_n)->required();
  pc->add_option("--base", p_base, "use the b-adic digit polynomial (default f = X)");
  pc->add_option("--mode", p_mode)->check(CLI::IsMember({"fermat", "euler"}));
  pc->add_option("--bound", p_bound);
  pc->add_flag("--json", p_json);

  // verify
  std::string v_n, v_quad_base;
  std::vector<std::string> v_factors, v_linear;
  unsigned v_quad_count = 1;
  bool v_vanishing = false, v_json = false;
  std::uint64_t v_bound = kDefaultExhaustiveBound;
  auto *verify = app.add_subcommand("verify", "check the counting theorems on a known factorization");
  verify->add_option("N", v_n)->required();
  verify->add_option("--factors", v_factors)->delimiter(',')->required();
  verify->add_option("--linear-bases", v_linear)->delimiter(',');
  verify->add_option("--quad-base", v_quad_base);
  verify->add_option("--quad-count", v_quad_count);
  verify->add_flag("--vanishing", v_vanishing, "list vanishing points of the linear family");
  verify->add_option("--bound", v_bound);
  verify->add_flag("--json", v_json);

  // bench
  std::vector<std::size_t> b_sizes;
  bool b_schoolbook = false, b_json = false;
  auto *bench = app.add_subcommand("bench", "operation-count scaling of the tree pipeline");
  bench->add_option("sizes", b_sizes);
  bench->add_flag("--schoolbook", b_schoolbook, "quadratic negative control");
  bench->add_flag("--json", b_json);

  try {
    app.parse(argc, argv);
    if (factor->parsed())
      return run_factor(f_n, f_single, f_hint, f_multifactor, f_d, f_block,
                        f_trial_bound, f_json);
    if (nu->parsed())
      return run_nu(n_n, n_poly, n_linear, n_quad_base, n_quad_count,
                    n_factors, n_bound, n_json);
    if (pc->parsed()) return run_prime_char(p_n, p_base, p_mode, p_bound, p_json);
    if (verify->parsed())
      return run_verify(v_n, v_factors, v_linear, v_quad_base, v_quad_count,
                        v_vanishing, v_bound, v_json);
    if (bench->parsed()) return run_bench(b_sizes, b_schoolbook, b_json);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const FactorLeakError &e) {
    std::cout << "factor leak: " << e.leaked_gcd().get_str() << "\n";
    return 0;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error &e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
