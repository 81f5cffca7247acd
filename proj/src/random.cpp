#include "qgc/random.hpp"

#include "qgc/error.hpp"

namespace qgc {

std::uint64_t RandomSource::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (auto b : buf) v = (v << 8) | b;
  return v;
}

Int RandomSource::uniform(const Int& lo, const Int& hi) {
  if (hi < lo) throw Error(Errc::invalid_argument, "empty range for uniform sampling");
  const Int span = hi - lo;
  if (span == 0) return lo;
  const std::size_t bits = bit_length(span);
  Bytes buf((bits + 7) / 8);
  const unsigned excess = static_cast<unsigned>(buf.size() * 8 - bits);
  const std::uint8_t top_mask = static_cast<std::uint8_t>(0xFFu >> excess);
  for (;;) {
    fill(buf);
    buf[0] &= top_mask;
    Int candidate = from_bytes_be(buf);
    if (candidate <= span) return lo + candidate;
  }
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xFF);
      word >>= 8;
    }
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    auto word = device_();
    for (std::size_t b = 0; b < sizeof(word) && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xFF);
      word >>= 8;
    }
  }
}

}  // namespace qgc
