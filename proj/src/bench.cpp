#include "digitfactor/bench.hpp"

#include "digitfactor/modpoly.hpp"

#include <chrono>

namespace digitfactor {

std::vector<BenchRow> bench_pipeline(const std::vector<std::size_t> &sizes,
                                     bool schoolbook) {
  // 61-bit prime-ish modulus; the pipeline only needs some wide odd N.
  const Natural N = (Natural(1) << 61) - 1;
  const bool saved = force_schoolbook();
  set_force_schoolbook(schoolbook);

  std::vector<BenchRow> rows;
  for (std::size_t d : sizes) {
    std::vector<ModPoly> leaves;
    std::vector<Natural> points;
    leaves.reserve(d);
    points.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      leaves.push_back(ModPoly::x_minus(N, Natural(1) + 3 * Natural(i)));
      points.push_back(2 * Natural(i) % N);
    }

    opcount::reset();
    const auto t0 = std::chrono::steady_clock::now();
    ModPoly g = ProductTree::build(std::move(leaves)).root();
    MultipointEvaluator ev(N, points);
    volatile std::size_t sink = ev.eval(g).size();
    (void)sink;
    const auto t1 = std::chrono::steady_clock::now();

    BenchRow row;
    row.d = d;
    row.coefficient_mults = opcount::coefficient_mults();
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!rows.empty() && rows.back().coefficient_mults > 0)
      row.ratio = static_cast<double>(row.coefficient_mults) /
                  static_cast<double>(rows.back().coefficient_mults);
    rows.push_back(row);
  }
  set_force_schoolbook(saved);
  return rows;
}

} // namespace digitfactor
