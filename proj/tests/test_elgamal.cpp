#include <doctest.h>

#include "oracles.hpp"
#include "qgc/elgamal.hpp"
#include "qgc/error.hpp"
#include "qgc/params.hpp"

using namespace qgc;
using namespace qgc::elgamal;

namespace {

const PrimeParams& small() { return named_params("test65537").prime; }

}  // namespace

TEST_CASE("key generation from the worked example") {
  auto kp = keypair_from_private(small(), 10307);
  CHECK(kp.pub.alpha_a == 29656);
  CHECK(keypair_from_private(small(), 1).pub.alpha_a == 13);
  auto last = keypair_from_private(small(), 65535);
  CHECK(last.pub.alpha_a == oracle::powmod(13, 65535, 65537));
  CHECK(13 * last.pub.alpha_a % 65537 == 1);

  CHECK_THROWS_AS(keypair_from_private(small(), 0), Error);
  CHECK_THROWS_AS(keypair_from_private(small(), 65536), Error);
}

TEST_CASE("keygen draws a in [1, p-2] and is reproducible under a seed") {
  SeededRandom r1(42), r2(42);
  auto a = keygen(small(), r1), b = keygen(small(), r2);
  CHECK(a.a == b.a);
  CHECK(a.a >= 1);
  CHECK(a.a <= 65535);
  CHECK(a.pub.alpha_a == mod_pow(13, a.a, 65537));
}

TEST_CASE("encryption with fixed exponents reproduces the session transcript") {
  auto kp = keypair_from_private(small(), 10307);
  SeededRandom rng(0);
  CHECK(encrypt(kp.pub, 35469, rng, Int(53882)) == Ciphertext{1845, 57308});
  CHECK(encrypt(kp.pub, 41866, rng, Int(19495)) == Ciphertext{13023, 32389});
  CHECK(encrypt(kp.pub, 44005, rng, Int(7737)) == Ciphertext{39691, 7691});
  CHECK(encrypt(kp.pub, 27025, rng, Int(4256)) == Ciphertext{14791, 21654});
  CHECK(encrypt(kp.pub, 0, rng, Int(999)).delta == 0);

  CHECK(decrypt(kp, {1845, 57308}) == 35469);
  CHECK(decrypt(kp, {13023, 32389}) == 41866);
  CHECK(decrypt(kp, {39691, 7691}) == 44005);
  CHECK(decrypt(kp, {14791, 21654}) == 27025);

  CHECK_THROWS_AS(encrypt(kp.pub, 65537, rng), Error);
  CHECK_THROWS_AS(encrypt(kp.pub, 5, rng, Int(0)), Error);
  try {
    decrypt(kp, {0, 5});
    FAIL("expected invalid ciphertext");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_invertible);
  }
}

TEST_CASE("round trip at 65537 and p98") {
  SeededRandom rng(8);
  for (const char* name : {"test65537", "p98"}) {
    auto kp = keygen(named_params(name).prime, rng);
    for (int i = 0; i < 100; ++i) {
      Int m = rng.uniform(0, kp.pub.p() - 1);
      CHECK(decrypt(kp, encrypt(kp.pub, m, rng)) == m);
    }
  }
}

TEST_CASE("ciphertext is exactly two group elements wide") {
  SeededRandom rng(9);
  for (const char* name : {"test65537", "p98", "p251"}) {
    const auto& pp = named_params(name).prime;
    auto kp = keygen(pp, rng);
    auto c = encrypt(kp.pub, rng.uniform(0, pp.p - 1), rng);
    auto bytes = serialize_ciphertext(pp.p, c);
    CHECK(bytes.size() == 2 * element_width(pp.p));
    CHECK(element_width(pp.p) == byte_length(pp.p - 1));
    CHECK(parse_ciphertext(pp.p, bytes) == c);
  }
}

TEST_CASE("key files round trip and reject tampering") {
  auto kp = keypair_from_private(small(), 10307);
  auto pub_bytes = serialize_public_key(kp.pub);
  auto priv_bytes = serialize_private_key(kp);
  CHECK(std::string(pub_bytes.begin(), pub_bytes.begin() + 4) == "QGEK");
  CHECK(pub_bytes[4] == kKeyFileVersion);

  auto pub = parse_key_file(pub_bytes);
  CHECK_FALSE(pub.a.has_value());
  CHECK(pub.pub.alpha_a == 29656);
  CHECK(pub.pub.p() == 65537);
  CHECK_FALSE(pub.pub.params.generator_verified);
  CHECK_THROWS_AS(require_private(pub), Error);

  auto priv = parse_key_file(priv_bytes);
  REQUIRE(priv.a.has_value());
  CHECK(*priv.a == 10307);

  auto bad = priv_bytes;
  bad.back() ^= 1;  // a no longer matches alpha^a
  CHECK_THROWS_AS(parse_key_file(bad), Error);
  auto bad_magic = pub_bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(parse_key_file(bad_magic), Error);
  auto truncated = pub_bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(parse_key_file(truncated), Error);

  CHECK(fingerprint(kp.pub).size() == 64);
  CHECK(fingerprint(kp.pub) == fingerprint(pub.pub));
  CHECK(fingerprint(kp.pub) != fingerprint(keypair_from_private(small(), 10308).pub));
}
