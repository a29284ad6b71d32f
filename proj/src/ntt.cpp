#include "digitfactor/ntt.hpp"

#include "digitfactor/natural.hpp"

#include <bit>
#include <mutex>
#include <stdexcept>

namespace digitfactor::ntt {

using std::uint64_t;
using fastmod::mulmod;
using fastmod::powmod;

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  unsigned s = std::countr_zero(d);
  d >>= s;
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// For p = c*2^24 + 1 an element of order exactly 2^24 is x^c for any x
// whose 2-part of the order is full, i.e. (x^c)^(2^23) != 1.
std::vector<Field> g_fields;
uint64_t g_next_c = (uint64_t{1} << 37) + 1; // p ~ 2^61
std::mutex g_mutex;

void mine_fields(std::size_t count) {
  while (g_fields.size() < count) {
    uint64_t c = g_next_c;
    g_next_c += 2;
    uint64_t p = (c << kMaxLog2) + 1;
    if (!is_prime_u64(p)) continue;
    uint64_t root = 0;
    for (uint64_t x = 2; x < 1000; ++x) {
      uint64_t w = powmod(x, c, p);
      if (powmod(w, uint64_t{1} << (kMaxLog2 - 1), p) != 1) {
        root = w;
        break;
      }
    }
    if (root == 0) continue;
    g_fields.push_back(Field{p, root});
  }
}

} // namespace

std::vector<Field> fields(std::size_t count) {
  std::lock_guard<std::mutex> lock(g_mutex);
  mine_fields(count);
  return {g_fields.begin(), g_fields.begin() + count};
}

namespace {

void transform(std::vector<uint64_t> &a, const Field &f, bool inv) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("ntt: size must be a power of two");
  const unsigned lg = std::countr_zero(n);
  if (lg > kMaxLog2) throw std::invalid_argument("ntt: size exceeds 2^24");
  const uint64_t p = f.p;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (unsigned len = 1; len <= lg; ++len) {
    uint64_t w = f.root24;
    for (unsigned k = len; k < kMaxLog2; ++k) w = mulmod(w, w, p);
    if (inv) w = powmod(w, p - 2, p);
    const std::size_t half = std::size_t{1} << (len - 1);
    for (std::size_t i = 0; i < n; i += half << 1) {
      uint64_t wj = 1;
      for (std::size_t j = 0; j < half; ++j) {
        uint64_t u = a[i + j];
        uint64_t v = mulmod(a[i + j + half], wj, p);
        a[i + j] = u + v < p ? u + v : u + v - p;
        a[i + j + half] = u >= v ? u - v : u + p - v;
        wj = mulmod(wj, w, p);
      }
    }
  }

  if (inv) {
    uint64_t ninv = powmod(n % p, p - 2, p);
    for (auto &x : a) x = mulmod(x, ninv, p);
  }
}

} // namespace

void forward(std::vector<uint64_t> &a, const Field &f) { transform(a, f, false); }
void inverse(std::vector<uint64_t> &a, const Field &f) { transform(a, f, true); }

} // namespace digitfactor::ntt
