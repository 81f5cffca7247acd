#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "qgc/bigint.hpp"

namespace qgc {

// Injected randomness. Seeded sources make every protocol run reproducible.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  // Uniform integer in [lo, hi] by rejection sampling.
  Int uniform(const Int& lo, const Int& hi);
};

class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
};

// Operating-system entropy (getrandom / /dev/urandom through std::random_device).
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::random_device device_;
};

}  // namespace qgc
