#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgc/bigint.hpp"
#include "qgc/polyring.hpp"
#include "qgc/random.hpp"

namespace qgc::attacks {

// Known plaintext/ciphertext block pairs from one stream, starting at block 0.
struct KnownPlaintextSample {
  Int p;
  std::vector<Int> m;
  std::vector<Int> c;
};

struct K1Recovery {
  Int key;
  Int leader;
};

// Encrypts `plaintext` with the real cipher from (key, leaders).
KnownPlaintextSample real_cipher_sample(const Int& p, const Int& key, const std::vector<Int>& leaders,
                                        const std::vector<Int>& plaintext);

/// Recovers (K, a_1) from a single-leader stream.
///
/// After block 1 the leader is 1 + (c_1 mod (p-1)), known to the attacker, so
/// block 2 gives 1 + ((K + m_2) mod (p-1)) = leader * c_2^(-1) mod p and K follows
/// linearly; a_1 = c_1 * (1 + (K + m_1) mod (p-1)) mod p. The candidate is replayed
/// over the whole sample; a mismatch throws attack_failed.
K1Recovery attack_k1(const KnownPlaintextSample& sample);

// Chosen-plaintext analysis model: every block is p-2, the first quasigroup step is
// exact (a_1 / K) and later steps use a_i / (1 + K + x) mod p, ignoring the mod (p-1)
// wrap. The last leader becomes the plain sum of the block's intermediates mod p.
struct SimplifiedModelParams {
  Int p;
  Int key;
  std::vector<Int> leaders;
};

// Throws degenerate_instance when a denominator vanishes mod p.
std::vector<Int> simplified_encrypt(const SimplifiedModelParams& params, std::size_t blocks);

// c3 K^3 + (-2 c2 + c3 - c2 c3) K^2 + (c1 - c2 + c2^2) K + (c2 c3 - c1 c3) over Z_p.
PolyZp k2_cubic(const Int& c1, const Int& c2, const Int& c3, const Int& p);

// Roots of the cubic that reproduce (c1, c2, c3) once a_1 and a_2 are solved for.
// Throws attack_failed if none does.
std::vector<Int> attack_k2_simplified(const Int& c1, const Int& c2, const Int& c3, const Int& p, RandomSource& rng);

struct K3Instance {
  std::array<Int, 4> c;
  // a_1 / K and a_2 / (1 + a_1/K + K).
  Int A1;
  Int A2;

  std::string to_string() const;
};

K3Instance emit_k3_instance(const SimplifiedModelParams& params);

// One seeded trial for the attack report.
struct TrialReport {
  std::uint64_t seed = 0;
  std::size_t p_bits = 0;
  bool success = false;
  std::optional<Int> key;
  double wall_ms = 0;

  std::string line() const;
};

TrialReport run_k1_trial(const Int& p, std::uint64_t seed, std::size_t blocks = 4);
// Non-degenerate instances only; degenerate draws are resampled.
TrialReport run_k2_trial(const Int& p, std::uint64_t seed);

}  // namespace qgc::attacks
