#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qgc/bigint.hpp"
#include "qgc/numtheory.hpp"
#include "qgc/random.hpp"

namespace qgc::elgamal {

struct PublicKey {
  PrimeParams params;
  Int alpha_a;

  const Int& p() const { return params.p; }
  const Int& alpha() const { return params.alpha; }
};

struct KeyPair {
  PublicKey pub;
  Int a;
};

struct Ciphertext {
  Int gamma;
  Int delta;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

KeyPair keygen(const PrimeParams& params, RandomSource& rng);
// Deterministic key pair from a chosen private exponent a in [1, p-2].
KeyPair keypair_from_private(const PrimeParams& params, const Int& a);

// gamma = alpha^e, delta = m * (alpha^a)^e. e is drawn from [1, p-2] unless overridden.
Ciphertext encrypt(const PublicKey& pub, const Int& m, RandomSource& rng,
                   const std::optional<Int>& e_override = std::nullopt);
// delta * gamma^(p-1-a) mod p.
Int decrypt(const KeyPair& kp, const Ciphertext& c);

// Width in bytes of one group element of Z_p.
std::size_t element_width(const Int& p);
// Fixed-width gamma || delta, each element_width(p) bytes.
Bytes serialize_ciphertext(const Int& p, const Ciphertext& c);
Ciphertext parse_ciphertext(const Int& p, std::span<const std::uint8_t> bytes);

// QGEK key files: "QGEK", version 0x01, flags (bit0 private, bit1 generator verified),
// then length-prefixed p, alpha, alpha^a and, for private files, a.
inline constexpr std::uint8_t kKeyFileVersion = 0x01;

struct KeyFile {
  PublicKey pub;
  std::optional<Int> a;
};

Bytes serialize_public_key(const PublicKey& pub);
Bytes serialize_private_key(const KeyPair& kp);
KeyFile parse_key_file(std::span<const std::uint8_t> bytes);
KeyPair require_private(const KeyFile& kf);

// Hex SHA-256 over length-prefixed p || alpha || alpha^a.
std::string fingerprint(const PublicKey& pub);

}  // namespace qgc::elgamal
