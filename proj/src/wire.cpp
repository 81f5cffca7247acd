#include "qgc/wire.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>

#include "qgc/serial.hpp"

namespace qgc::wire {

namespace {

constexpr std::string_view kMagic = "QGSC";
constexpr std::size_t kReadChunkBlocks = 4096;
constexpr std::size_t kDrainLimit = std::size_t{1} << 30;

bool known_type(std::uint8_t t) {
  switch (static_cast<FrameType>(t)) {
    case FrameType::pubkey_req:
    case FrameType::pubkey:
    case FrameType::offer:
    case FrameType::data:
    case FrameType::close:
    case FrameType::error:
      return true;
  }
  return false;
}

struct PipeBuffer {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> bytes;
  bool writer_closed = false;
  bool reader_closed = false;
};

class PipeEnd final : public Transport {
 public:
  PipeEnd(std::shared_ptr<PipeBuffer> in, std::shared_ptr<PipeBuffer> out) : in_(std::move(in)), out_(std::move(out)) {}

  ~PipeEnd() override {
    close_write();
    std::lock_guard lock(in_->mu);
    in_->reader_closed = true;
  }

  void write_all(std::span<const std::uint8_t> bytes) override {
    {
      std::lock_guard lock(out_->mu);
      if (out_->reader_closed) throw Error(Errc::io, "peer closed the pipe");
      if (out_->writer_closed) throw Error(Errc::io, "write after close");
      out_->bytes.insert(out_->bytes.end(), bytes.begin(), bytes.end());
    }
    out_->cv.notify_all();
  }

  std::size_t read_some(std::span<std::uint8_t> buffer) override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->bytes.empty() || in_->writer_closed; });
    std::size_t n = std::min(buffer.size(), in_->bytes.size());
    std::copy_n(in_->bytes.begin(), n, buffer.begin());
    in_->bytes.erase(in_->bytes.begin(), in_->bytes.begin() + static_cast<std::ptrdiff_t>(n));
    return n;
  }

  void close_write() override {
    {
      std::lock_guard lock(out_->mu);
      out_->writer_closed = true;
    }
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<PipeBuffer> in_;
  std::shared_ptr<PipeBuffer> out_;
};

Frame expect(FrameChannel& ch, FrameType type) {
  Frame f = ch.receive_required();
  if (f.type == FrameType::error) throw decode_error(f.payload);
  if (f.type != type)
    throw Error(Errc::protocol, "unexpected frame type " + std::to_string(static_cast<int>(f.type)));
  return f;
}

void report(FrameChannel& ch, const Error& e) {
  try {
    ch.send(Frame{FrameType::error, encode_error(e.code(), e.what())});
  } catch (const Error&) {
    // The peer may already be gone; the local error is what matters.
  }
}

// After a fatal error, half-close and swallow whatever the peer still sends, so that
// closing the socket with unread data does not reset the connection before the
// ERROR frame is read.
void drain(Transport& transport) {
  try {
    transport.close_write();
    std::uint8_t sink[4096];
    std::size_t total = 0;
    while (total < kDrainLimit) {
      const std::size_t n = transport.read_some(sink);
      if (n == 0) break;
      total += n;
    }
  } catch (const Error&) {
  }
}

bool same_key(const elgamal::PublicKey& a, const elgamal::PublicKey& b) {
  return a.p() == b.p() && a.alpha() == b.alpha() && a.alpha_a == b.alpha_a;
}

}  // namespace

Bytes encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) throw Error(Errc::protocol, "frame payload too large");
  Bytes out;
  out.reserve(kHeaderSize + frame.payload.size());
  put_magic(out, kMagic);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(frame.type));
  put_be(out, frame.payload.size(), 4);
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

DecodeResult decode_frame(std::span<const std::uint8_t> bytes) {
  const std::size_t magic_seen = std::min(bytes.size(), kMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(magic_seen), kMagic.begin()))
    throw Error(Errc::protocol, "bad frame magic");
  if (bytes.size() > 4 && bytes[4] != kVersion) throw Error(Errc::protocol, "unsupported frame version");
  if (bytes.size() > 5 && !known_type(bytes[5])) throw Error(Errc::protocol, "unknown frame type");
  if (bytes.size() < kHeaderSize) return DecodeResult{std::nullopt, 0, kHeaderSize - bytes.size()};

  ByteReader r(bytes.subspan(6, 4));
  const std::uint64_t len = r.get_be(4);
  if (len > kMaxPayload) throw Error(Errc::protocol, "frame payload length exceeds 2^24");
  const std::size_t total = kHeaderSize + len;
  if (bytes.size() < total) return DecodeResult{std::nullopt, 0, total - bytes.size()};
  Frame f{static_cast<FrameType>(bytes[5]), Bytes(bytes.begin() + kHeaderSize, bytes.begin() + static_cast<std::ptrdiff_t>(total))};
  return DecodeResult{std::move(f), total, 0};
}

Bytes encode_pubkey(const elgamal::PublicKey& pub) {
  Bytes out;
  out.push_back(pub.params.generator_verified ? 1 : 0);
  put_int(out, pub.p());
  put_int(out, pub.alpha());
  put_int(out, pub.alpha_a);
  return out;
}

elgamal::PublicKey decode_pubkey(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  elgamal::PublicKey pub;
  pub.params.generator_verified = r.get_be(1) != 0;
  pub.params.p = r.get_int();
  pub.params.alpha = r.get_int();
  pub.alpha_a = r.get_int();
  r.expect_end();
  if (pub.p() < 5 || pub.alpha() < 2 || pub.alpha() >= pub.p() || pub.alpha_a < 1 || pub.alpha_a >= pub.p())
    throw Error(Errc::protocol, "public key values out of range");
  return pub;
}

Bytes encode_offer(const SessionOffer& offer) {
  Bytes out;
  put_be(out, offer.k(), 4);
  put_int(out, offer.c_key.gamma);
  put_int(out, offer.c_key.delta);
  for (const auto& c : offer.c_leaders) {
    put_int(out, c.gamma);
    put_int(out, c.delta);
  }
  return out;
}

SessionOffer decode_offer(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  const std::uint64_t k = r.get_be(4);
  // Every ciphertext takes at least 8 bytes of length prefixes.
  if (k == 0 || k > r.remaining() / 8) throw Error(Errc::protocol, "implausible leader count in offer");
  SessionOffer offer;
  offer.c_key.gamma = r.get_int();
  offer.c_key.delta = r.get_int();
  offer.c_leaders.resize(k);
  for (auto& c : offer.c_leaders) {
    c.gamma = r.get_int();
    c.delta = r.get_int();
  }
  r.expect_end();
  return offer;
}

Bytes encode_data(const BlockCodecParams& params, std::uint64_t seq, const Int& block) {
  Bytes out;
  out.reserve(8 + params.cipher_width());
  put_be(out, seq, 8);
  Bytes b = serialize_cipher_block(params, block);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

DataPayload decode_data(const BlockCodecParams& params, std::span<const std::uint8_t> payload) {
  if (payload.size() != 8 + params.cipher_width()) throw Error(Errc::protocol, "DATA payload has the wrong size");
  ByteReader r(payload);
  DataPayload d;
  d.seq = r.get_be(8);
  d.block = parse_cipher_block(params, r.take(params.cipher_width()));
  return d;
}

Bytes encode_error(Errc code, std::string_view message) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(code));
  out.insert(out.end(), message.begin(), message.end());
  return out;
}

Error decode_error(std::span<const std::uint8_t> payload) {
  if (payload.empty()) return Error(Errc::protocol, "peer reported an error");
  auto code = static_cast<Errc>(payload[0]);
  if (payload[0] > static_cast<std::uint8_t>(Errc::io)) code = Errc::protocol;
  return Error(code, "peer: " + std::string(payload.begin() + 1, payload.end()));
}

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe_pair() {
  auto a_to_b = std::make_shared<PipeBuffer>();
  auto b_to_a = std::make_shared<PipeBuffer>();
  return {std::make_unique<PipeEnd>(b_to_a, a_to_b), std::make_unique<PipeEnd>(a_to_b, b_to_a)};
}

void FrameChannel::send(const Frame& frame) { transport_.write_all(encode_frame(frame)); }

std::optional<Frame> FrameChannel::receive() {
  std::uint8_t chunk[16384];
  for (;;) {
    DecodeResult res = decode_frame(buffer_);
    if (res.frame) {
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(res.consumed));
      return std::move(res.frame);
    }
    std::size_t n = transport_.read_some(chunk);
    if (n == 0) {
      if (buffer_.empty()) return std::nullopt;
      throw Error(Errc::io, "stream ended inside a frame");
    }
    buffer_.insert(buffer_.end(), chunk, chunk + n);
  }
}

Frame FrameChannel::receive_required() {
  auto f = receive();
  if (!f) throw Error(Errc::io, "peer closed the connection");
  return std::move(*f);
}

namespace {

SessionSummary initiate(Transport& transport, const InitiatorConfig& config, RandomSource& rng, std::istream& source) {
  FrameChannel ch(transport);
  SessionSummary summary;

  ch.send(Frame{FrameType::pubkey_req, {}});
  const elgamal::PublicKey pub = decode_pubkey(expect(ch, FrameType::pubkey).payload);
  if (config.pinned_key && !same_key(pub, *config.pinned_key)) {
    Error e(Errc::handshake_rejected, "peer public key does not match the pinned key");
    report(ch, e);
    throw e;
  }
  summary.peer_fingerprint = elgamal::fingerprint(pub);
  const BlockCodecParams codec = BlockCodecParams::for_prime(pub.p());

  auto [offer, state] = make_offer(pub, config.k, rng, config.offer);
  ch.send(Frame{FrameType::offer, encode_offer(offer)});

  auto send_block = [&](std::span<const std::uint8_t> block) {
    const std::uint64_t seq = state.blocks_processed();
    Int c = state.encrypt_block(encode_block(codec, block));
    if (!summary.first_cipher_block) summary.first_cipher_block = c;
    ++summary.blocks;
    if (config.drop_data_seq && *config.drop_data_seq == seq) return;
    ch.send(Frame{FrameType::data, encode_data(codec, seq, c)});
  };

  const std::size_t l = codec.l;
  Bytes buf;
  Bytes chunk(l * kReadChunkBlocks);
  for (;;) {
    source.read(reinterpret_cast<char*>(chunk.data()), static_cast<std::streamsize>(chunk.size()));
    const auto got = static_cast<std::size_t>(source.gcount());
    if (got == 0) break;
    summary.plaintext_bytes += got;
    buf.insert(buf.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(got));
    std::size_t pos = 0;
    for (; buf.size() - pos >= l; pos += l) send_block(std::span(buf).subspan(pos, l));
    buf.erase(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  if (source.bad()) throw Error(Errc::io, "failed reading plaintext source");
  send_block(pad_final(codec, buf));

  ch.send(Frame{FrameType::close, {}});
  expect(ch, FrameType::close);
  return summary;
}

}  // namespace

SessionSummary run_initiator(Transport& transport, const InitiatorConfig& config, RandomSource& rng,
                             std::istream& source) {
  try {
    return initiate(transport, config, rng, source);
  } catch (const Error&) {
    // Lets a draining responder see end of stream.
    try {
      transport.close_write();
    } catch (const Error&) {
    }
    throw;
  }
}

SessionSummary run_responder(Transport& transport, const ResponderConfig& config, std::ostream& sink) {
  FrameChannel ch(transport);
  SessionSummary summary;
  try {
    expect(ch, FrameType::pubkey_req);
    ch.send(Frame{FrameType::pubkey, encode_pubkey(config.keypair.pub)});
    summary.peer_fingerprint = elgamal::fingerprint(config.keypair.pub);
    const BlockCodecParams codec = BlockCodecParams::for_prime(config.keypair.pub.p());

    SessionOffer offer;
    try {
      offer = decode_offer(expect(ch, FrameType::offer).payload);
    } catch (const Error& e) {
      if (e.code() == Errc::protocol || e.code() == Errc::bad_format) throw Error(Errc::handshake_rejected, e.what());
      throw;
    }
    StreamState state = accept_offer(config.keypair, offer, config.accept);

    std::optional<Bytes> pending;
    for (;;) {
      Frame f = ch.receive_required();
      if (f.type == FrameType::close) break;
      if (f.type == FrameType::error) throw decode_error(f.payload);
      if (f.type != FrameType::data) throw Error(Errc::protocol, "unexpected frame during data phase");

      const std::uint64_t expected = state.blocks_processed();
      DataPayload d = decode_data(codec, f.payload);
      if (d.seq != expected)
        throw Error(Errc::desync, "sequence gap: expected block " + std::to_string(expected) + ", got " +
                                      std::to_string(d.seq) + "; leader states cannot resynchronize");
      Int m = state.decrypt_block(d.block);
      if (!summary.first_cipher_block) summary.first_cipher_block = d.block;
      Bytes plain;
      try {
        plain = decode_block(codec, m);
      } catch (const Error& e) {
        throw Error(Errc::desync, "block " + std::to_string(d.seq) + ": " + e.what());
      }
      if (pending) {
        sink.write(reinterpret_cast<const char*>(pending->data()), static_cast<std::streamsize>(pending->size()));
        summary.plaintext_bytes += pending->size();
      }
      pending = std::move(plain);
      ++summary.blocks;
    }
    if (!pending) throw Error(Errc::protocol, "CLOSE before any DATA frame");
    Bytes last = unpad_final(*pending);
    sink.write(reinterpret_cast<const char*>(last.data()), static_cast<std::streamsize>(last.size()));
    summary.plaintext_bytes += last.size();
    sink.flush();
    if (!sink) throw Error(Errc::io, "failed writing plaintext sink");
    ch.send(Frame{FrameType::close, {}});
    return summary;
  } catch (const Error& e) {
    report(ch, e);
    drain(transport);
    throw;
  }
}

}  // namespace qgc::wire
