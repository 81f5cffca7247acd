#pragma once

#include <cstdint>

#include "qgc/elgamal.hpp"

namespace qgc {

struct BenchResult {
  std::size_t blocks = 0;
  std::size_t k = 0;
  double stream_ns_per_block = 0;
  double elgamal_ns_per_block = 0;

  double ratio() const { return elgamal_ns_per_block / stream_ns_per_block; }
};

// Median over `repeats` timed passes of encrypt_block on `blocks` random blocks.
double measure_stream_ns(const Int& p, std::size_t k, std::size_t blocks, std::uint64_t seed, int repeats = 5);
// Same for one ElGamal encryption per block under `pub`.
double measure_elgamal_ns(const elgamal::PublicKey& pub, std::size_t blocks, std::uint64_t seed, int repeats = 5);

BenchResult run_bench(const PrimeParams& params, std::size_t k, std::size_t blocks, std::uint64_t seed);

}  // namespace qgc
