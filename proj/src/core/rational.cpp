#include "rational.hpp"

#include <mutex>

namespace hz {

namespace {
constexpr unsigned kFactorialCacheBound = 64;
}

Integer factorial(unsigned n) {
  static std::vector<Integer> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (cache.empty()) {
    cache.reserve(kFactorialCacheBound + 1);
    cache.push_back(1);
  }
  while (cache.size() <= n && cache.size() <= kFactorialCacheBound) {
    Integer next = cache.back() * Integer(static_cast<unsigned long>(cache.size()));
    cache.push_back(next);
  }
  if (n < cache.size()) return cache[n];
  // past the cache bound, compute directly
  Integer f = cache.back();
  for (unsigned k = kFactorialCacheBound + 1; k <= n; ++k) f *= k;
  return f;
}

Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) throw std::invalid_argument("pow_rational: 0^negative");
  Rational base = q;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational out(1);
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  if (e < 0) out = Rational(1) / out;
  out.canonicalize();
  return out;
}

}  // namespace hz
