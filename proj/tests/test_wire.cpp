#include <doctest.h>

#include <sstream>
#include <thread>

#include "qgc/error.hpp"
#include "qgc/net.hpp"
#include "qgc/params.hpp"
#include "qgc/wire.hpp"

using namespace qgc;
using namespace qgc::wire;

namespace {

elgamal::KeyPair example_keys() { return elgamal::keypair_from_private(named_params("test65537").prime, 10307); }

SessionOverrides example_overrides() { return SessionOverrides{35469, {41866, 44005, 27025}, {53882, 19495, 7737, 4256}}; }

Bytes random_bytes(std::size_t n, RandomSource& rng) {
  Bytes b(n);
  rng.fill(b);
  return b;
}

std::string as_string(const Bytes& b) { return std::string(b.begin(), b.end()); }

struct Outcome {
  std::optional<SessionSummary> summary;
  std::optional<Errc> error;
  std::string output;
};

// Runs both roles over `a`/`b`; exceptions are captured per side.
std::pair<Outcome, Outcome> run_pair(Transport& a, Transport& b, const InitiatorConfig& icfg, const ResponderConfig& rcfg,
                                     const std::string& input, std::uint64_t seed) {
  Outcome init, resp;
  std::thread responder([&] {
    std::ostringstream sink;
    try {
      resp.summary = run_responder(b, rcfg, sink);
    } catch (const Error& e) {
      resp.error = e.code();
    }
    resp.output = sink.str();
    b.close_write();
  });
  std::istringstream source(input);
  SeededRandom rng(seed);
  try {
    init.summary = run_initiator(a, icfg, rng, source);
  } catch (const Error& e) {
    init.error = e.code();
  }
  a.close_write();
  responder.join();
  return {init, resp};
}

}  // namespace

TEST_CASE("frame encoding") {
  CHECK(encode_frame(Frame{FrameType::close, {}}) == Bytes{0x51, 0x47, 0x53, 0x43, 0x01, 0x05, 0x00, 0x00, 0x00, 0x00});
  const Bytes data = encode_frame(Frame{FrameType::data, {0xAA, 0xBB}});
  CHECK(data == Bytes{0x51, 0x47, 0x53, 0x43, 0x01, 0x04, 0x00, 0x00, 0x00, 0x02, 0xAA, 0xBB});

  SeededRandom rng(1);
  const FrameType types[] = {FrameType::pubkey_req, FrameType::pubkey, FrameType::offer,
                             FrameType::data,       FrameType::close,  FrameType::error};
  for (int i = 0; i < 200; ++i) {
    Frame f{types[rng.next_u64() % 6], random_bytes(rng.next_u64() % 300, rng)};
    Bytes enc = encode_frame(f);
    CHECK(enc.size() == kHeaderSize + f.payload.size());
    enc.push_back(0x99);  // start of a following frame
    auto r = decode_frame(enc);
    REQUIRE(r.frame);
    CHECK(*r.frame == f);
    CHECK(r.consumed == enc.size() - 1);
  }
}

TEST_CASE("incomplete frames ask for more bytes") {
  const Bytes full = encode_frame(Frame{FrameType::data, Bytes(20, 7)});
  for (std::size_t n = 0; n < full.size(); ++n) {
    auto r = decode_frame(std::span(full).first(n));
    CHECK_FALSE(r.frame);
    CHECK(r.needed > 0);
    CHECK(r.needed <= full.size() - n);
  }
}

TEST_CASE("malformed headers are protocol errors") {
  const Bytes good = encode_frame(Frame{FrameType::close, {}});
  auto expect_protocol = [](const Bytes& b) {
    try {
      decode_frame(b);
      FAIL("expected protocol error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::protocol);
    }
  };
  Bytes bad_magic = good;
  bad_magic[0] = 'X';
  expect_protocol(bad_magic);
  Bytes bad_version = good;
  bad_version[4] = 0x02;
  expect_protocol(bad_version);
  Bytes bad_type = good;
  bad_type[5] = 0x06;
  expect_protocol(bad_type);
  Bytes too_long = good;
  too_long[6] = 0x01;
  too_long[9] = 0x01;  // 2^24 + 1
  expect_protocol(too_long);
  // Magic is checked before the whole header arrives.
  expect_protocol(Bytes{'Q', 'X'});
}

TEST_CASE("payload codecs") {
  const auto kp = example_keys();
  auto pub = decode_pubkey(encode_pubkey(kp.pub));
  CHECK(pub.p() == 65537);
  CHECK(pub.alpha_a == kp.pub.alpha_a);
  CHECK(elgamal::fingerprint(pub) == elgamal::fingerprint(kp.pub));

  SeededRandom rng(2);
  for (std::size_t k : {1u, 3u, 6u}) {
    OfferOptions opts;
    opts.allow_unsafe = true;
    auto offer = make_offer(kp.pub, k, rng, opts).first;
    CHECK(decode_offer(encode_offer(offer)) == offer);
  }
  Bytes offer = encode_offer(make_offer(kp.pub, 3, rng).first);
  offer.pop_back();
  CHECK_THROWS_AS(decode_offer(offer), Error);

  const auto codec = BlockCodecParams::for_prime(65537);
  Bytes data = encode_data(codec, 5, 19753);
  CHECK(data == Bytes{0, 0, 0, 0, 0, 0, 0, 5, 0x00, 0x4D, 0x29});
  auto d = decode_data(codec, data);
  CHECK(d.seq == 5);
  CHECK(d.block == 19753);
  data.push_back(0);
  CHECK_THROWS_AS(decode_data(codec, data), Error);

  Error e = decode_error(encode_error(Errc::desync, "gap"));
  CHECK(e.code() == Errc::desync);
  CHECK(std::string(e.what()).find("gap") != std::string::npos);
}

TEST_CASE("loopback session with the worked example secrets") {
  auto [a, b] = make_pipe_pair();
  InitiatorConfig icfg;
  icfg.offer.overrides = example_overrides();
  ResponderConfig rcfg{example_keys(), {}};
  const std::string input = "\xFD\x2F" "further plaintext";
  auto [init, resp] = run_pair(*a, *b, icfg, rcfg, input, 3);
  REQUIRE_FALSE(init.error);
  REQUIRE_FALSE(resp.error);
  CHECK(init.summary->first_cipher_block == Int(19753));
  CHECK(resp.summary->first_cipher_block == Int(19753));
  CHECK(resp.output == input);
  CHECK(init.summary->blocks == resp.summary->blocks);
  CHECK(init.summary->peer_fingerprint == resp.summary->peer_fingerprint);
}

TEST_CASE("random sessions over the pipe") {
  SeededRandom rng(4);
  const auto kp = elgamal::keypair_from_private(named_params("p98").prime, 0x5eed);
  for (std::size_t len : {0u, 1u, 97u, 98u, 99u, 5000u}) {
    auto [a, b] = make_pipe_pair();
    const std::string input = as_string(random_bytes(len, rng));
    auto [init, resp] = run_pair(*a, *b, InitiatorConfig{}, ResponderConfig{kp, {}}, input, len);
    REQUIRE_FALSE(init.error);
    REQUIRE_FALSE(resp.error);
    CHECK(resp.output == input);
    CHECK(resp.summary->blocks == (len + 1 + 97) / 98);
  }
}

TEST_CASE("a dropped data frame is detected as desync") {
  auto [a, b] = make_pipe_pair();
  InitiatorConfig icfg;
  icfg.drop_data_seq = 5;
  SeededRandom rng(5);
  const std::string input = as_string(random_bytes(40, rng));
  auto [init, resp] = run_pair(*a, *b, icfg, ResponderConfig{example_keys(), {}}, input, 5);
  REQUIRE(resp.error);
  CHECK(*resp.error == Errc::desync);
  CHECK(init.error);
  CHECK(resp.output.size() < input.size());
}

TEST_CASE("pinned key mismatch aborts before the offer") {
  auto [a, b] = make_pipe_pair();
  InitiatorConfig icfg;
  icfg.pinned_key = elgamal::keypair_from_private(named_params("test65537").prime, 777).pub;
  auto [init, resp] = run_pair(*a, *b, icfg, ResponderConfig{example_keys(), {}}, "hello", 6);
  REQUIRE(init.error);
  CHECK(*init.error == Errc::handshake_rejected);
  CHECK(resp.error);
  CHECK(resp.output.empty());
}

TEST_CASE("responder rejects an offer with too few leaders") {
  auto [a, b] = make_pipe_pair();
  InitiatorConfig icfg;
  icfg.k = 2;
  icfg.offer.allow_unsafe = true;
  auto [init, resp] = run_pair(*a, *b, icfg, ResponderConfig{example_keys(), {}}, "hello", 7);
  REQUIRE(resp.error);
  CHECK(*resp.error == Errc::handshake_rejected);
  CHECK(init.error);
}

TEST_CASE("responder rejects a crafted offer") {
  const auto kp = example_keys();
  auto [a, b] = make_pipe_pair();
  std::thread responder_side([&, &bb = *b] {
    std::ostringstream sink;
    CHECK_THROWS_AS(run_responder(bb, ResponderConfig{kp, {}}, sink), Error);
    bb.close_write();
  });
  FrameChannel ch(*a);
  ch.send(Frame{FrameType::pubkey_req, {}});
  CHECK(ch.receive_required().type == FrameType::pubkey);
  // K decrypts to 0, outside the key range.
  SeededRandom rng(8);
  SessionOffer offer;
  offer.c_key = elgamal::encrypt(kp.pub, 0, rng);
  for (int i = 0; i < 3; ++i) offer.c_leaders.push_back(elgamal::encrypt(kp.pub, 5, rng));
  ch.send(Frame{FrameType::offer, encode_offer(offer)});
  Frame reply = ch.receive_required();
  CHECK(reply.type == FrameType::error);
  CHECK(decode_error(reply.payload).code() == Errc::handshake_rejected);
  a->close_write();
  responder_side.join();
}

TEST_CASE("tcp loopback") {
  net::TcpListener listener(net::parse_endpoint("127.0.0.1:0"));
  REQUIRE(listener.port() != 0);
  const auto kp = elgamal::keypair_from_private(named_params("p98").prime, 0xabc);
  SeededRandom rng(9);
  const std::string input = as_string(random_bytes(100000, rng));
  std::string output;
  std::thread server([&] {
    auto t = listener.accept();
    std::ostringstream sink;
    run_responder(t, ResponderConfig{kp, {}}, sink);
    output = sink.str();
  });
  auto client = net::tcp_connect(net::Endpoint{"127.0.0.1", listener.port()});
  std::istringstream source(input);
  InitiatorConfig icfg;
  icfg.pinned_key = kp.pub;
  auto summary = run_initiator(client, icfg, rng, source);
  server.join();
  CHECK(output == input);
  CHECK(summary.plaintext_bytes == input.size());
}

TEST_CASE("endpoint parsing") {
  auto e = net::parse_endpoint("localhost:8080");
  CHECK(e.host == "localhost");
  CHECK(e.port == 8080);
  CHECK_THROWS_AS(net::parse_endpoint("nocolon"), Error);
  CHECK_THROWS_AS(net::parse_endpoint("h:99999"), Error);
  CHECK_THROWS_AS(net::parse_endpoint("h:"), Error);
}
