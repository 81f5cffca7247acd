#include "qgc/codec.hpp"

#include <string>

#include "qgc/error.hpp"
#include "qgc/serial.hpp"

namespace qgc {

namespace {

constexpr std::uint8_t kPadMarker = 0x80;
constexpr std::string_view kCipherMagic = "QGSD";

}  // namespace

BlockCodecParams BlockCodecParams::make(unsigned l, Int p) {
  if (l < 1 || l > 0xFFFF) throw Error(Errc::invalid_argument, "block size l must lie in [1, 65535]");
  if (pow2(8UL * l) > p - 1) throw Error(Errc::invalid_argument, "2^(8l) must not exceed p-1");
  if (pow2(8UL * (l + 1)) <= p) throw Error(Errc::invalid_argument, "p must fit in l+1 bytes");
  return BlockCodecParams{l, std::move(p)};
}

BlockCodecParams BlockCodecParams::for_prime(const Int& p) {
  if (p < 257) throw Error(Errc::invalid_modulus, "modulus too small for byte framing");
  return make(static_cast<unsigned>((bit_length(p - 1) - 1) / 8), p);
}

Int encode_block(const BlockCodecParams& params, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != params.l)
    throw Error(Errc::invalid_argument, "block must be exactly " + std::to_string(params.l) + " bytes");
  return from_bytes_be(bytes) + 1;
}

Bytes decode_block(const BlockCodecParams& params, const Int& v) {
  if (v < 1 || v > pow2(8UL * params.l))
    throw Error(Errc::corrupt_block, "decoded value " + v.get_str() + " outside [1, 2^(8l)]");
  return to_bytes_be(v - 1, params.l);
}

Bytes serialize_cipher_block(const BlockCodecParams& params, const Int& c) {
  if (c < 1 || c >= params.p) throw Error(Errc::out_of_domain, "cipher block must lie in [1, p-1]");
  return to_bytes_be(c, params.cipher_width());
}

Int parse_cipher_block(const BlockCodecParams& params, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != params.cipher_width()) throw Error(Errc::corrupt_block, "cipher block has the wrong width");
  Int c = from_bytes_be(bytes);
  if (c < 1 || c >= params.p) throw Error(Errc::corrupt_block, "cipher block value outside [1, p-1]");
  return c;
}

Bytes pad_final(const BlockCodecParams& params, std::span<const std::uint8_t> tail) {
  if (tail.size() >= params.l) throw Error(Errc::invalid_argument, "final tail must be shorter than a block");
  Bytes block(tail.begin(), tail.end());
  block.push_back(kPadMarker);
  block.resize(params.l, 0);
  return block;
}

Bytes unpad_final(std::span<const std::uint8_t> block) {
  std::size_t end = block.size();
  while (end > 0 && block[end - 1] == 0) --end;
  if (end == 0 || block[end - 1] != kPadMarker) throw Error(Errc::padding_malformed, "final block padding is malformed");
  return Bytes(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(end - 1));
}

std::vector<Int> encode_stream(const BlockCodecParams& params, std::span<const std::uint8_t> bytes) {
  const std::size_t l = params.l;
  std::vector<Int> blocks;
  blocks.reserve(bytes.size() / l + 1);
  std::size_t pos = 0;
  for (; bytes.size() - pos >= l; pos += l) blocks.push_back(encode_block(params, bytes.subspan(pos, l)));
  blocks.push_back(encode_block(params, pad_final(params, bytes.subspan(pos))));
  return blocks;
}

Bytes decode_stream(const BlockCodecParams& params, std::span<const Int> blocks) {
  if (blocks.empty()) throw Error(Errc::padding_malformed, "stream has no final block");
  Bytes out;
  out.reserve(blocks.size() * params.l);
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    Bytes b = decode_block(params, blocks[i]);
    out.insert(out.end(), b.begin(), b.end());
  }
  Bytes last = unpad_final(decode_block(params, blocks.back()));
  out.insert(out.end(), last.begin(), last.end());
  return out;
}

Bytes write_cipher_file(const BlockCodecParams& params, std::span<const Int> blocks) {
  Bytes out;
  out.reserve(kCipherFileHeader + blocks.size() * params.cipher_width());
  put_magic(out, kCipherMagic);
  out.push_back(kCipherFileVersion);
  put_be(out, params.l, 2);
  put_be(out, blocks.size(), 8);
  for (const auto& c : blocks) {
    Bytes b = serialize_cipher_block(params, c);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<Int> read_cipher_file(const BlockCodecParams& params, std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic(kCipherMagic);
  if (r.get_be(1) != kCipherFileVersion) throw Error(Errc::bad_format, "unsupported ciphertext file version");
  if (r.get_be(2) != params.l) throw Error(Errc::bad_format, "ciphertext block size does not match the key");
  const std::uint64_t count = r.get_be(8);
  const std::size_t w = params.cipher_width();

  std::vector<Int> blocks;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (r.remaining() < w) throw Error(Errc::corrupt_block, "block " + std::to_string(i) + " is truncated");
    try {
      blocks.push_back(parse_cipher_block(params, r.take(w)));
    } catch (const Error& e) {
      throw Error(Errc::corrupt_block, "block " + std::to_string(i) + ": " + e.what());
    }
  }
  if (r.remaining() != 0) throw Error(Errc::corrupt_block, "block " + std::to_string(count) + ": trailing bytes");
  return blocks;
}

}  // namespace qgc
