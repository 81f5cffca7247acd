#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's arithmetic; everything is brute force on machine integers.

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Right-to-left square-and-multiply.
inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Inverse by exhaustive search (small moduli only).
inline std::uint64_t inverse_by_search(std::uint64_t x, std::uint64_t p) {
  for (std::uint64_t y = 1; y < p; ++y)
    if (mulmod(x, y, p) == 1) return y;
  return 0;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Multiplicative order by repeated multiplication.
inline std::uint64_t order(std::uint64_t g, std::uint64_t p) {
  std::uint64_t x = g % p, k = 1;
  while (x != 1) {
    x = mulmod(x, g, p);
    ++k;
  }
  return k;
}

inline std::set<std::uint64_t> square_roots(std::uint64_t a, std::uint64_t p) {
  std::set<std::uint64_t> r;
  for (std::uint64_t x = 0; x < p; ++x)
    if (mulmod(x, x, p) == a % p) r.insert(x);
  return r;
}

// Coefficients ascending; Horner evaluation.
inline std::uint64_t eval(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

inline std::set<std::uint64_t> roots_by_evaluation(const std::vector<std::uint64_t>& c, std::uint64_t p) {
  std::set<std::uint64_t> r;
  for (std::uint64_t x = 0; x < p; ++x)
    if (eval(c, x, p) == 0) r.insert(x);
  return r;
}

// Quasigroup operation straight from the definition, machine integers only.
struct SmallQg {
  std::uint64_t p, K;
  std::uint64_t f(std::uint64_t j) const { return inverse_by_search(1 + (K + j) % (p - 1), p); }
  std::uint64_t star(std::uint64_t i, std::uint64_t j) const { return mulmod(i, f(j), p); }
  // Left division by search: the unique x with i * x = j.
  std::uint64_t left_div(std::uint64_t i, std::uint64_t j) const {
    for (std::uint64_t x = 1; x < p; ++x)
      if (star(i, x) == j) return x;
    return 0;
  }
};

}  // namespace oracle
