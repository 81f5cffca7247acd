#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "qgc/bigint.hpp"
#include "qgc/codec.hpp"
#include "qgc/elgamal.hpp"
#include "qgc/error.hpp"
#include "qgc/session.hpp"

namespace qgc::wire {

// Frame layout: "QGSC" | version (1) | type (1) | payload length (4, big-endian) | payload.
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 10;
inline constexpr std::uint32_t kMaxPayload = 1u << 24;

enum class FrameType : std::uint8_t {
  pubkey_req = 0x01,
  pubkey = 0x02,
  offer = 0x03,
  data = 0x04,
  close = 0x05,
  error = 0x7F,
};

struct Frame {
  FrameType type;
  Bytes payload;
  friend bool operator==(const Frame&, const Frame&) = default;
};

Bytes encode_frame(const Frame& frame);

// Incremental decoding: if `frame` is empty, at least `needed` more bytes must arrive.
struct DecodeResult {
  std::optional<Frame> frame;
  std::size_t consumed = 0;
  std::size_t needed = 0;
};
// Throws protocol on bad magic, version, unknown type or oversized payload.
DecodeResult decode_frame(std::span<const std::uint8_t> bytes);

// Payload codecs. Integers are 4-byte-length-prefixed big-endian.
Bytes encode_pubkey(const elgamal::PublicKey& pub);
elgamal::PublicKey decode_pubkey(std::span<const std::uint8_t> payload);
// k (4 bytes), then gamma/delta of K, then gamma/delta of each leader.
Bytes encode_offer(const SessionOffer& offer);
SessionOffer decode_offer(std::span<const std::uint8_t> payload);

struct DataPayload {
  std::uint64_t seq;
  Int block;
};
Bytes encode_data(const BlockCodecParams& params, std::uint64_t seq, const Int& block);
DataPayload decode_data(const BlockCodecParams& params, std::span<const std::uint8_t> payload);

// Error payload: error code byte followed by a UTF-8 message.
Bytes encode_error(Errc code, std::string_view message);
Error decode_error(std::span<const std::uint8_t> payload);

// Reliable, in-order byte duplex. read_some returns 0 at end of stream.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void write_all(std::span<const std::uint8_t> bytes) = 0;
  virtual std::size_t read_some(std::span<std::uint8_t> buffer) = 0;
  // Signals end of stream to the peer; reading remains possible.
  virtual void close_write() = 0;
};

// Connected pair of in-process transports, usable from two threads.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe_pair();

class FrameChannel {
 public:
  explicit FrameChannel(Transport& transport) : transport_(transport) {}

  void send(const Frame& frame);
  // nullopt on clean end of stream between frames.
  std::optional<Frame> receive();
  Frame receive_required();

 private:
  Transport& transport_;
  Bytes buffer_;
};

struct SessionSummary {
  std::uint64_t blocks = 0;
  std::uint64_t plaintext_bytes = 0;
  std::optional<Int> first_cipher_block;
  std::string peer_fingerprint;
};

struct InitiatorConfig {
  std::size_t k = kMinSessionLeaders;
  OfferOptions offer;
  // Authentic public key obtained out of band; the received PUBKEY must match it.
  std::optional<elgamal::PublicKey> pinned_key;
  // Fault injection: encrypt but do not transmit the DATA frame with this sequence number.
  std::optional<std::uint64_t> drop_data_seq;
};

struct ResponderConfig {
  elgamal::KeyPair keypair;
  AcceptOptions accept;
};

// Bob: PUBKEY_REQ -> PUBKEY -> OFFER -> DATA* -> CLOSE, then waits for the peer's CLOSE.
SessionSummary run_initiator(Transport& transport, const InitiatorConfig& config, RandomSource& rng,
                             std::istream& source);
// Alice: answers the key request, accepts the offer, decrypts DATA into `sink` and
// acknowledges CLOSE. Failures are reported to the peer as an ERROR frame and rethrown.
SessionSummary run_responder(Transport& transport, const ResponderConfig& config, std::ostream& sink);

}  // namespace qgc::wire
