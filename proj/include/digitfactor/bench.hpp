#ifndef DIGITFACTOR_BENCH_HPP
#define DIGITFACTOR_BENCH_HPP

#include "digitfactor/natural.hpp"

#include <cstdint>
#include <vector>

namespace digitfactor {

struct BenchRow {
  std::size_t d = 0;
  std::uint64_t coefficient_mults = 0;
  double wall_time_ms = 0.0;
  double ratio = 0.0; // count(d) / count(previous d), 0 for the first row
};

// Builds the product tree of d linear polynomials over a synthetic modulus
// and multipoint-evaluates the root at d points, reporting the counted
// coefficient multiplications. schoolbook = true forces the quadratic
// multiplier (the negative control).
std::vector<BenchRow> bench_pipeline(const std::vector<std::size_t> &sizes,
                                     bool schoolbook = false);

} // namespace digitfactor

#endif
