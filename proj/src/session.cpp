#include "qgc/session.hpp"

#include <string>

#include "qgc/error.hpp"

namespace qgc {

namespace {

void require_leader_count(std::size_t k, bool allow_unsafe) {
  if (k == 0) throw Error(Errc::invalid_argument, "at least one leader is required");
  if (k < kMinSessionLeaders && !allow_unsafe)
    throw Error(Errc::invalid_argument,
                "k = " + std::to_string(k) + " leaders is breakable; at least 3 are required");
}

Int open(const elgamal::KeyPair& kp, const elgamal::Ciphertext& c) {
  try {
    return elgamal::decrypt(kp, c);
  } catch (const Error& e) {
    throw Error(Errc::handshake_rejected, std::string("malformed offer: ") + e.what());
  }
}

}  // namespace

std::pair<SessionOffer, StreamState> make_offer(const elgamal::PublicKey& pub, std::size_t k, RandomSource& rng,
                                                const OfferOptions& options) {
  require_leader_count(k, options.allow_unsafe);
  const Int& p = pub.p();

  Int key;
  std::vector<Int> leaders;
  std::vector<std::optional<Int>> exponents(k + 1);
  if (options.overrides) {
    const auto& o = *options.overrides;
    if (o.leaders.size() != k || o.exponents.size() != k + 1)
      throw Error(Errc::invalid_argument, "session overrides need k leaders and k+1 exponents");
    key = o.key;
    leaders = o.leaders;
    for (std::size_t i = 0; i <= k; ++i) exponents[i] = o.exponents[i];
    for (const auto& a : leaders)
      if (a < 1 || a > p - 2) throw Error(Errc::out_of_domain, "leader must lie in [1, p-2]");
  } else {
    key = rng.uniform(1, p - 2);
    leaders.reserve(k);
    for (std::size_t i = 0; i < k; ++i) leaders.push_back(rng.uniform(1, p - 2));
  }

  SessionOffer offer;
  offer.c_key = elgamal::encrypt(pub, key, rng, exponents[0]);
  offer.c_leaders.reserve(k);
  for (std::size_t i = 0; i < k; ++i) offer.c_leaders.push_back(elgamal::encrypt(pub, leaders[i], rng, exponents[i + 1]));

  StreamState state(QuasigroupZp(p, std::move(key)), std::move(leaders));
  return {std::move(offer), std::move(state)};
}

StreamState accept_offer(const elgamal::KeyPair& kp, const SessionOffer& offer, const AcceptOptions& options) {
  try {
    require_leader_count(offer.k(), options.allow_unsafe);
  } catch (const Error& e) {
    throw Error(Errc::handshake_rejected, e.what());
  }
  const Int& p = kp.pub.p();
  Int key = open(kp, offer.c_key);
  if (key < 1 || key > p - 2) throw Error(Errc::handshake_rejected, "decrypted session key outside [1, p-2]");

  std::vector<Int> leaders;
  leaders.reserve(offer.k());
  for (const auto& c : offer.c_leaders) {
    Int a = open(kp, c);
    if (a < 1 || a > p - 1) throw Error(Errc::handshake_rejected, "decrypted leader outside [1, p-1]");
    leaders.push_back(std::move(a));
  }
  return StreamState(QuasigroupZp(p, std::move(key)), std::move(leaders));
}

}  // namespace qgc
