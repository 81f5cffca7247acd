#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qgc/bigint.hpp"
#include "qgc/random.hpp"

namespace qgc {

inline constexpr int kMillerRabinRounds = 40;

/// Public group context: a prime modulus and a base for the multiplicative group.
///
/// `generator_verified` is true only when `p_minus_1_factors` lists every distinct
/// prime factor of p-1 and alpha has passed the order test against all of them.
/// For the 2^(8l)+3 primes p-1 cannot be fully factored, so alpha is carried as
/// unverified rather than claimed to be a generator.
struct PrimeParams {
  Int p;
  Int alpha;
  std::optional<std::vector<Int>> p_minus_1_factors;
  bool generator_verified = false;
};

// Throws invalid_modulus unless p passes Miller-Rabin and alpha lies in [2, p-1].
// A set marked generator_verified must carry factors that alpha passes against.
void validate(const PrimeParams& params, int rounds = kMillerRabinRounds);

Int mod_pow(const Int& base, const Int& exp, const Int& modulus);
Int mod_inv(const Int& x, const Int& modulus);

bool is_probable_prime(const Int& n, int rounds = kMillerRabinRounds);

// 2^(8l)+3 when it is prime.
std::optional<Int> gen_pl_prime(unsigned l);

// alpha^((p-1)/q) != 1 for every q. Throws cannot_verify if the factor list does not
// account for every prime factor of p-1.
bool is_generator(const Int& p, const std::vector<Int>& p_minus_1_factors, const Int& alpha);
Int find_generator(const Int& p, const std::vector<Int>& p_minus_1_factors, RandomSource& rng);

// Both square roots of a modulo an odd prime, smaller first; nullopt for non-residues.
std::optional<std::pair<Int, Int>> tonelli_shanks(const Int& a, const Int& p);

}  // namespace qgc
