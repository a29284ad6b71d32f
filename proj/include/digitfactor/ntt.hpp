#ifndef DIGITFACTOR_NTT_HPP
#define DIGITFACTOR_NTT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace digitfactor::ntt {

// Word-size prime field p = c*2^24 + 1 with a root of unity of order 2^24.
// Transform sizes up to 2^24 cover every polynomial degree this project
// touches; new fields are mined on demand for wide moduli.
struct Field {
  std::uint64_t p;
  std::uint64_t root24; // element of order exactly 2^24
};

inline constexpr unsigned kMaxLog2 = 24;

// First `count` fields, generated lazily and cached (deterministic order).
// Returned by value: the internal cache may grow concurrently.
std::vector<Field> fields(std::size_t count);

// In-place transforms; a.size() must be a power of two <= 2^24.
void forward(std::vector<std::uint64_t> &a, const Field &f);
void inverse(std::vector<std::uint64_t> &a, const Field &f);

} // namespace digitfactor::ntt

#endif
