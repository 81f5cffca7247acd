#include "qgc/elgamal.hpp"

#include <openssl/evp.h>

#include "qgc/error.hpp"
#include "qgc/serial.hpp"

namespace qgc::elgamal {

namespace {

constexpr std::string_view kKeyMagic = "QGEK";
constexpr std::uint8_t kFlagPrivate = 0x01;
constexpr std::uint8_t kFlagVerified = 0x02;

void require_private_range(const Int& p, const Int& a) {
  if (a < 1 || a > p - 2) throw Error(Errc::out_of_domain, "private exponent must lie in [1, p-2]");
}

Bytes key_body(const PublicKey& pub, const Int* a) {
  Bytes out;
  put_magic(out, kKeyMagic);
  out.push_back(kKeyFileVersion);
  std::uint8_t flags = 0;
  if (a) flags |= kFlagPrivate;
  if (pub.params.generator_verified) flags |= kFlagVerified;
  out.push_back(flags);
  put_int(out, pub.p());
  put_int(out, pub.alpha());
  put_int(out, pub.alpha_a);
  if (a) put_int(out, *a);
  return out;
}

}  // namespace

KeyPair keygen(const PrimeParams& params, RandomSource& rng) {
  return keypair_from_private(params, rng.uniform(1, params.p - 2));
}

KeyPair keypair_from_private(const PrimeParams& params, const Int& a) {
  require_private_range(params.p, a);
  return KeyPair{PublicKey{params, mod_pow(params.alpha, a, params.p)}, a};
}

Ciphertext encrypt(const PublicKey& pub, const Int& m, RandomSource& rng, const std::optional<Int>& e_override) {
  const Int& p = pub.p();
  if (m < 0 || m > p - 1) throw Error(Errc::out_of_domain, "ElGamal message must lie in [0, p-1]");
  Int e = e_override ? *e_override : rng.uniform(1, p - 2);
  if (e < 1 || e > p - 2) throw Error(Errc::out_of_domain, "ElGamal exponent must lie in [1, p-2]");
  Int gamma = mod_pow(pub.alpha(), e, p);
  Int delta = m * mod_pow(pub.alpha_a, e, p) % p;
  return Ciphertext{std::move(gamma), std::move(delta)};
}

Int decrypt(const KeyPair& kp, const Ciphertext& c) {
  const Int& p = kp.pub.p();
  if (mod(c.gamma, p) == 0) throw Error(Errc::not_invertible, "invalid ciphertext: gamma is 0 mod p");
  return mod(c.delta * mod_pow(c.gamma, p - 1 - kp.a, p), p);
}

std::size_t element_width(const Int& p) { return byte_length(p - 1); }

Bytes serialize_ciphertext(const Int& p, const Ciphertext& c) {
  const std::size_t w = element_width(p);
  Bytes out = to_bytes_be(c.gamma, w);
  Bytes d = to_bytes_be(c.delta, w);
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

Ciphertext parse_ciphertext(const Int& p, std::span<const std::uint8_t> bytes) {
  const std::size_t w = element_width(p);
  if (bytes.size() != 2 * w) throw Error(Errc::bad_format, "ciphertext must be two group elements wide");
  Ciphertext c{from_bytes_be(bytes.first(w)), from_bytes_be(bytes.subspan(w))};
  if (c.gamma >= p || c.delta >= p) throw Error(Errc::bad_format, "ciphertext element not reduced mod p");
  return c;
}

Bytes serialize_public_key(const PublicKey& pub) { return key_body(pub, nullptr); }

Bytes serialize_private_key(const KeyPair& kp) { return key_body(kp.pub, &kp.a); }

KeyFile parse_key_file(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic(kKeyMagic);
  if (r.get_be(1) != kKeyFileVersion) throw Error(Errc::bad_format, "unsupported key file version");
  const auto flags = static_cast<std::uint8_t>(r.get_be(1));
  if (flags & ~(kFlagPrivate | kFlagVerified)) throw Error(Errc::bad_format, "unknown key file flags");

  KeyFile kf;
  kf.pub.params.p = r.get_int();
  kf.pub.params.alpha = r.get_int();
  kf.pub.params.generator_verified = (flags & kFlagVerified) != 0;
  kf.pub.alpha_a = r.get_int();
  if (flags & kFlagPrivate) kf.a = r.get_int();
  r.expect_end();

  const Int& p = kf.pub.params.p;
  if (p < 5) throw Error(Errc::bad_format, "key file modulus too small");
  if (kf.pub.params.alpha < 2 || kf.pub.params.alpha >= p || kf.pub.alpha_a < 1 || kf.pub.alpha_a >= p)
    throw Error(Errc::bad_format, "key file values not reduced mod p");
  if (kf.a) {
    require_private_range(p, *kf.a);
    if (mod_pow(kf.pub.alpha(), *kf.a, p) != kf.pub.alpha_a)
      throw Error(Errc::bad_format, "private exponent does not match public key");
  }
  return kf;
}

KeyPair require_private(const KeyFile& kf) {
  if (!kf.a) throw Error(Errc::invalid_argument, "key file holds no private exponent");
  return KeyPair{kf.pub, *kf.a};
}

std::string fingerprint(const PublicKey& pub) {
  Bytes material;
  put_int(material, pub.p());
  put_int(material, pub.alpha());
  put_int(material, pub.alpha_a);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::io, "SHA-256 digest failed");
  return to_hex(std::span<const std::uint8_t>(digest, len));
}

}  // namespace qgc::elgamal
