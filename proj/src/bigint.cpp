#include "qgc/bigint.hpp"

#include "qgc/error.hpp"

namespace qgc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_modulus: return "invalid-modulus";
    case Errc::not_invertible: return "not-invertible";
    case Errc::cannot_verify: return "cannot-verify";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::modulus_mismatch: return "modulus-mismatch";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::degenerate_instance: return "degenerate-instance";
    case Errc::attack_failed: return "attack-failed";
    case Errc::handshake_rejected: return "handshake-rejected";
    case Errc::corrupt_block: return "corrupt-block";
    case Errc::padding_malformed: return "padding-malformed";
    case Errc::bad_format: return "bad-format";
    case Errc::protocol: return "protocol";
    case Errc::desync: return "desync";
    case Errc::io: return "io";
  }
  return "unknown";
}

std::size_t bit_length(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::size_t byte_length(const Int& x) { return (bit_length(x) + 7) / 8; }

Bytes to_bytes_be(const Int& x) {
  if (sgn(x) < 0) throw Error(Errc::invalid_argument, "cannot encode a negative integer");
  Bytes out(byte_length(x));
  if (!out.empty()) {
    std::size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, x.get_mpz_t());
    out.resize(written);
  }
  return out;
}

Bytes to_bytes_be(const Int& x, std::size_t width) {
  Bytes minimal = to_bytes_be(x);
  if (minimal.size() > width)
    throw Error(Errc::invalid_argument, "integer does not fit in " + std::to_string(width) + " bytes");
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

Int from_bytes_be(std::span<const std::uint8_t> bytes) {
  Int r;
  if (!bytes.empty()) mpz_import(r.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return r;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

}  // namespace qgc
