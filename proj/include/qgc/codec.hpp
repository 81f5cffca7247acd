#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgc/bigint.hpp"

namespace qgc {

/// Byte framing for primes with 2^(8l) <= p-1 < 2^(8(l+1)).
///
/// A plaintext block of l bytes with big-endian value B encodes as B + 1, which
/// lies in [1, 2^(8l)] and therefore never hits the excluded element 0. Cipher
/// blocks are serialized at l + 1 bytes, so framing costs exactly one byte per block.
struct BlockCodecParams {
  unsigned l;
  Int p;

  // Validates the width invariants for an explicit (l, p).
  static BlockCodecParams make(unsigned l, Int p);
  // Largest l with 2^(8l) <= p-1.
  static BlockCodecParams for_prime(const Int& p);

  std::size_t cipher_width() const { return l + 1; }
};

Int encode_block(const BlockCodecParams& params, std::span<const std::uint8_t> bytes);
Bytes decode_block(const BlockCodecParams& params, const Int& v);

Bytes serialize_cipher_block(const BlockCodecParams& params, const Int& c);
Int parse_cipher_block(const BlockCodecParams& params, std::span<const std::uint8_t> bytes);

// Final-block padding: 0x80 then zeros up to l bytes. tail.size() must be < l.
Bytes pad_final(const BlockCodecParams& params, std::span<const std::uint8_t> tail);
// Strips the padding of a final block; throws padding_malformed.
Bytes unpad_final(std::span<const std::uint8_t> block);

// ceil((n+1)/l) blocks for n input bytes.
std::vector<Int> encode_stream(const BlockCodecParams& params, std::span<const std::uint8_t> bytes);
Bytes decode_stream(const BlockCodecParams& params, std::span<const Int> blocks);

// QGSD ciphertext files: "QGSD", version 0x01, l (2 bytes), block count (8 bytes),
// then block count fixed-width cipher blocks.
inline constexpr std::uint8_t kCipherFileVersion = 0x01;
inline constexpr std::size_t kCipherFileHeader = 4 + 1 + 2 + 8;

Bytes write_cipher_file(const BlockCodecParams& params, std::span<const Int> blocks);
// Throws corrupt_block naming the first block index that is missing or out of range.
std::vector<Int> read_cipher_file(const BlockCodecParams& params, std::span<const std::uint8_t> bytes);

}  // namespace qgc
