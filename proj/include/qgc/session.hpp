#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qgc/elgamal.hpp"
#include "qgc/random.hpp"
#include "qgc/stream.hpp"

namespace qgc {

// What the initiator sends: K and each leader under its own ElGamal exponent.
struct SessionOffer {
  elgamal::Ciphertext c_key;
  std::vector<elgamal::Ciphertext> c_leaders;

  std::size_t k() const { return c_leaders.size(); }
  friend bool operator==(const SessionOffer&, const SessionOffer&) = default;
};

// Fixed session secrets, for reproducing known transcripts in tests.
struct SessionOverrides {
  Int key;
  std::vector<Int> leaders;
  // One exponent for K followed by one per leader.
  std::vector<Int> exponents;
};

struct OfferOptions {
  // Permit k < 3. Only the attack demonstrations need this.
  bool allow_unsafe = false;
  std::optional<SessionOverrides> overrides;
};

struct AcceptOptions {
  bool allow_unsafe = false;
};

// K and leaders are drawn uniformly from [1, p-2]. Returns the offer and the
// initiator's encrypting state.
std::pair<SessionOffer, StreamState> make_offer(const elgamal::PublicKey& pub, std::size_t k, RandomSource& rng,
                                                const OfferOptions& options = {});

// Decrypts the offer and builds the responder's decrypting state. Rejects any
// decrypted K outside [1, p-2] or leader outside [1, p-1] with handshake_rejected.
StreamState accept_offer(const elgamal::KeyPair& kp, const SessionOffer& offer, const AcceptOptions& options = {});

}  // namespace qgc
