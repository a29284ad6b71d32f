// pybind11 surface: big integers cross the boundary as decimal strings so
// arbitrary Python ints round-trip exactly.

#include "digitfactor/bench.hpp"
#include "digitfactor/engine.hpp"
#include "digitfactor/nu.hpp"
#include "digitfactor/primality.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace digitfactor;

namespace {

Natural nat(const std::string &s) {
  Natural n;
  if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0 || n < 0)
    throw std::invalid_argument("not a natural number: " + s);
  return n;
}

} // namespace

PYBIND11_MODULE(_digitfactor, m) {
  m.doc() = "digit-polynomial factoring toolkit";

  m.def("factorize", [](const std::string &n) {
    std::vector<std::pair<std::string, unsigned>> out;
    for (const auto &[p, e] : factorize(nat(n))) out.emplace_back(p.get_str(), e);
    return out;
  });

  m.def("is_prime", [](const std::string &n) { return is_prime_oracle(nat(n)); });

  m.def("digits", [](const std::string &n, const std::string &b) {
    std::vector<std::string> out;
    for (const auto &c : badic_digit_poly(nat(n), nat(b)).coeffs)
      out.push_back(c.get_str());
    return out;
  });

  m.def("nu_bruteforce", [](const std::string &n,
                            const std::vector<std::string> &coeffs) {
    Natural N = nat(n);
    std::vector<Natural> c;
    for (const auto &s : coeffs) c.push_back(nat(s));
    return nu_bruteforce(ModPoly(N, std::move(c)), N).suitable_count;
  });

  m.def("nu_formula",
        [](std::uint64_t n_roots, std::uint64_t m_roots, const std::string &p,
           const std::string &q) { return nu_formula(n_roots, m_roots, nat(p), nat(q)); });

  m.def("prime_char", [](const std::string &n, const std::string &mode) {
    Natural N = nat(n);
    DigitPoly f;
    f.base = N;
    f.target = N;
    f.coeffs = {0, 1};
    CharVerdict v = exhaustive_characterization(
        N, f, mode == "euler" ? CharMode::Euler : CharMode::Fermat);
    py::dict d;
    d["prime_consistent"] = v.prime_consistent;
    d["checked"] = v.checked;
    if (v.witness) d["witness"] = v.witness->get_str();
    return d;
  });

  m.def("single_run", [](const std::string &n) {
    Natural N = nat(n);
    FactorOutcome out = run_algorithm1(N, strassen_param(N));
    py::dict d;
    switch (out.kind) {
    case OutcomeKind::Factor:
      d["kind"] = "factor";
      d["factor"] = out.factor->get_str();
      d["step"] = out.step;
      break;
    case OutcomeKind::PrimeIndicated:
      d["kind"] = "prime_indicated";
      break;
    case OutcomeKind::Exhausted:
      d["kind"] = "exhausted";
      break;
    }
    return d;
  });

  m.def("bench", [](const std::vector<std::size_t> &sizes, bool schoolbook) {
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    for (const auto &r : bench_pipeline(sizes, schoolbook))
      out.emplace_back(r.d, r.coefficient_mults);
    return out;
  });
}
