#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qgc/numtheory.hpp"

namespace qgc {

// Shipped parameter sets: test65537 (l = 2, alpha = 13, p-1 fully factored) and the
// 2^(8l)+3 primes p98, p213, p251.
struct NamedParams {
  std::string name;
  unsigned l;
  PrimeParams prime;
};

std::vector<std::string> param_set_names();
// Throws invalid_argument for unknown names.
const NamedParams& named_params(std::string_view name);

// Distinct prime factors of p-1 below `bound`, found by trial division.
std::vector<Int> small_factors_of_p_minus_1(const Int& p, unsigned bound = 10000);

// Smallest alpha >= 2 that passes the order test for every small factor of p-1.
// The result is a generator candidate only; the set's generator_verified stays false.
Int default_alpha(const Int& p);

// Replaces alpha. The generator check is re-run when the set carries a full factorization.
PrimeParams with_alpha(const PrimeParams& params, const Int& alpha);

}  // namespace qgc
