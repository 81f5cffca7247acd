#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qgc {

using Int = mpz_class;
using Bytes = std::vector<std::uint8_t>;

std::size_t bit_length(const Int& x);
std::size_t byte_length(const Int& x);

// Minimal big-endian encoding; zero encodes as an empty string.
Bytes to_bytes_be(const Int& x);
// Fixed-width big-endian encoding, left-padded with zeros. Throws if x does not fit.
Bytes to_bytes_be(const Int& x, std::size_t width);
Int from_bytes_be(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Non-negative residue of x modulo m (m > 0).
inline Int mod(const Int& x, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace qgc
