// qgc: key management, file encryption, a live channel, attack demos and a benchmark.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "qgc/attacks.hpp"
#include "qgc/benchmark.hpp"
#include "qgc/codec.hpp"
#include "qgc/error.hpp"
#include "qgc/net.hpp"
#include "qgc/params.hpp"
#include "qgc/session.hpp"
#include "qgc/wire.hpp"

using namespace qgc;

namespace {

enum Exit { kOk = 0, kUsage = 2, kCrypto = 3, kIo = 4 };

struct Globals {
  std::string params = "p98";
  std::size_t k = kMinSessionLeaders;
  std::optional<std::uint64_t> seed;
  bool unsafe_demo = false;
  int verbose = 0;
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::invalid_argument:
      return kUsage;
    case Errc::io:
      return kIo;
    default:
      return kCrypto;
  }
}

std::unique_ptr<RandomSource> make_rng(const Globals& g) {
  if (g.seed) return std::make_unique<SeededRandom>(*g.seed);
  return std::make_unique<SystemRandom>();
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io, "failed reading " + path);
  return out;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) throw Error(Errc::io, "failed writing " + path);
}

void check_k(const Globals& g) {
  if (g.k < kMinSessionLeaders && !g.unsafe_demo)
    throw Error(Errc::invalid_argument, "k < 3 is not safe; pass --unsafe-demo to allow it");
  if (g.k == 0) throw Error(Errc::invalid_argument, "k must be at least 1");
}

void log(const Globals& g, const std::string& msg) {
  if (g.verbose > 0) std::cerr << msg << '\n';
}

// ---- keygen

struct KeygenOpts {
  std::string out_pub, out_priv;
  std::optional<std::string> alpha;
};

int cmd_keygen(const Globals& g, const KeygenOpts& o) {
  PrimeParams params = named_params(g.params).prime;
  if (o.alpha) params = with_alpha(params, Int(*o.alpha));
  validate(params);
  auto rng = make_rng(g);
  const auto kp = elgamal::keygen(params, *rng);
  write_file(o.out_pub, elgamal::serialize_public_key(kp.pub));
  write_file(o.out_priv, elgamal::serialize_private_key(kp));
  if (!params.generator_verified)
    std::cerr << "warning: alpha=" << params.alpha.get_str()
              << " is not verified to generate Z_p* (p-1 is not fully factored or alpha failed the check)\n";
  std::cout << "fingerprint " << elgamal::fingerprint(kp.pub) << '\n';
  return kOk;
}

// ---- encrypt / decrypt

struct FileOpts {
  std::string key, in, out, offer;
};

int cmd_encrypt(const Globals& g, const FileOpts& o) {
  check_k(g);
  const auto kf = elgamal::parse_key_file(read_file(o.key));
  const Bytes plain = read_file(o.in);
  auto rng = make_rng(g);
  OfferOptions opts;
  opts.allow_unsafe = g.unsafe_demo;
  auto [offer, state] = make_offer(kf.pub, g.k, *rng, opts);
  const auto codec = BlockCodecParams::for_prime(kf.pub.p());
  auto blocks = encode_stream(codec, plain);
  for (auto& m : blocks) m = state.encrypt_block(m);
  write_file(o.offer, wire::encode_frame(wire::Frame{wire::FrameType::offer, wire::encode_offer(offer)}));
  write_file(o.out, write_cipher_file(codec, blocks));
  log(g, "encrypted " + std::to_string(plain.size()) + " bytes into " + std::to_string(blocks.size()) + " blocks");
  return kOk;
}

int cmd_decrypt(const Globals& g, const FileOpts& o) {
  const auto kp = elgamal::require_private(elgamal::parse_key_file(read_file(o.key)));
  const Bytes offer_bytes = read_file(o.offer);
  auto decoded = wire::decode_frame(offer_bytes);
  if (!decoded.frame || decoded.frame->type != wire::FrameType::offer || decoded.consumed != offer_bytes.size())
    throw Error(Errc::bad_format, o.offer + ": not an offer file");
  StreamState state = accept_offer(kp, wire::decode_offer(decoded.frame->payload), AcceptOptions{g.unsafe_demo});

  const auto codec = BlockCodecParams::for_prime(kp.pub.p());
  auto blocks = read_cipher_file(codec, read_file(o.in));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i] = state.decrypt_block(blocks[i]);
    if (blocks[i] > pow2(8 * codec.l))
      throw Error(Errc::desync, "block " + std::to_string(i) + ": decrypted value outside the plaintext range");
  }
  write_file(o.out, decode_stream(codec, blocks));
  log(g, "decrypted " + std::to_string(blocks.size()) + " blocks");
  return kOk;
}

// ---- serve / connect

struct ServeOpts {
  std::string priv;
  std::optional<std::string> listen;
  bool stdio = false;
  std::string out = "-";
  std::optional<std::string> port_file;
  std::size_t max_sessions = 0;
};

void write_port_file(const std::string& path, std::uint16_t port) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    f << port << '\n';
    if (!f.flush()) throw Error(Errc::io, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

int cmd_serve(const Globals& g, const ServeOpts& o) {
  const auto kp = elgamal::require_private(elgamal::parse_key_file(read_file(o.priv)));
  std::cerr << "fingerprint " << elgamal::fingerprint(kp.pub) << '\n';
  const wire::ResponderConfig cfg{kp, AcceptOptions{g.unsafe_demo}};

  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (o.out != "-") {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::io, "cannot create " + o.out);
    sink = &file;
  }
  if (o.stdio) {
    if (o.out == "-") throw Error(Errc::invalid_argument, "--stdio needs --out: stdout carries the frames");
    net::FdTransport t(0, 1, false);
    auto s = wire::run_responder(t, cfg, *sink);
    log(g, "received " + std::to_string(s.plaintext_bytes) + " bytes");
    return kOk;
  }

  net::TcpListener listener(net::parse_endpoint(*o.listen));
  if (o.port_file) write_port_file(*o.port_file, listener.port());
  log(g, "listening on port " + std::to_string(listener.port()));
  int result = kOk;
  for (std::size_t n = 0; o.max_sessions == 0 || n < o.max_sessions; ++n) {
    auto t = listener.accept();
    try {
      auto s = wire::run_responder(t, cfg, *sink);
      log(g, "session " + std::to_string(n) + ": received " + std::to_string(s.plaintext_bytes) + " bytes");
    } catch (const Error& e) {
      std::cerr << "session " << n << ": " << errc_name(e.code()) << ": " << e.what() << '\n';
      result = exit_code(e.code());
    }
  }
  return result;
}

struct ConnectOpts {
  std::optional<std::string> peer;
  bool stdio = false;
  std::optional<std::string> pub;
  std::string in = "-";
  std::optional<std::uint64_t> drop_frame;
};

int cmd_connect(const Globals& g, const ConnectOpts& o) {
  check_k(g);
  wire::InitiatorConfig cfg;
  cfg.k = g.k;
  cfg.offer.allow_unsafe = g.unsafe_demo;
  if (o.pub) cfg.pinned_key = elgamal::parse_key_file(read_file(*o.pub)).pub;
  cfg.drop_data_seq = o.drop_frame;

  std::ifstream file;
  std::istream* source = &std::cin;
  if (o.in != "-") {
    file.open(o.in, std::ios::binary);
    if (!file) throw Error(Errc::io, "cannot open " + o.in);
    source = &file;
  }
  auto rng = make_rng(g);
  wire::SessionSummary s;
  if (o.stdio) {
    if (o.in == "-") throw Error(Errc::invalid_argument, "--stdio needs --in: stdin carries the frames");
    net::FdTransport t(0, 1, false);
    s = wire::run_initiator(t, cfg, *rng, *source);
  } else {
    auto t = net::tcp_connect(net::parse_endpoint(*o.peer));
    s = wire::run_initiator(t, cfg, *rng, *source);
  }
  std::cerr << "peer fingerprint " << s.peer_fingerprint << '\n';
  log(g, "sent " + std::to_string(s.plaintext_bytes) + " bytes in " + std::to_string(s.blocks) + " blocks");
  return kOk;
}

// ---- attack / bench

struct AttackOpts {
  bool k1 = false, k2 = false, k3 = false;
  std::size_t trials = 100;
};

int cmd_attack(const Globals& g, const AttackOpts& o) {
  if (!g.unsafe_demo) throw Error(Errc::invalid_argument, "attack demos run k < 3 streams; pass --unsafe-demo");
  if (o.k1 + o.k2 + o.k3 != 1) throw Error(Errc::invalid_argument, "choose exactly one of --k1, --k2, --k3");
  const Int& p = named_params(g.params).prime.p;
  const std::uint64_t base = g.seed.value_or(0);

  if (o.k3) {
    SeededRandom rng(base);
    for (;;) {
      attacks::SimplifiedModelParams params{p, rng.uniform(1, p - 2),
                                            {rng.uniform(1, p - 2), rng.uniform(1, p - 2), rng.uniform(1, p - 2)}};
      try {
        std::cout << "K=" << params.key.get_str() << ' ' << attacks::emit_k3_instance(params).to_string() << '\n';
        return kOk;
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_instance) throw;
      }
    }
  }

  std::size_t ok = 0;
  for (std::size_t i = 0; i < o.trials; ++i) {
    const auto rep = o.k1 ? attacks::run_k1_trial(p, base + i) : attacks::run_k2_trial(p, base + i);
    std::cout << rep.line() << '\n';
    ok += rep.success;
  }
  std::cout << (o.k1 ? "k1" : "k2") << " success " << ok << '/' << o.trials << '\n';
  return ok == o.trials ? kOk : kCrypto;
}

int cmd_bench(const Globals& g, std::size_t blocks) {
  check_k(g);
  const auto r = run_bench(named_params(g.params).prime, g.k, blocks, g.seed.value_or(1));
  std::printf("params=%s k=%zu blocks=%zu stream_ns_per_block=%.1f elgamal_ns_per_block=%.1f ratio=%.2f\n",
              g.params.c_str(), r.k, r.blocks, r.stream_ns_per_block, r.elgamal_ns_per_block, r.ratio());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGPIPE, SIG_IGN);

  CLI::App app{"Quasigroup stream cipher over Z_p* with ElGamal key transport"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--params", g.params, "Parameter set")
      ->check(CLI::IsMember(param_set_names()))
      ->capture_default_str();
  app.add_option("--k", g.k, "Number of leaders")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for reproducible randomness");
  app.add_flag("--unsafe-demo", g.unsafe_demo, "Allow k < 3 (attack demonstrations)");
  app.add_flag("-v,--verbose", g.verbose, "Report progress on stderr");

  KeygenOpts kg;
  auto* keygen = app.add_subcommand("keygen", "Generate an ElGamal key pair");
  keygen->add_option("--out-pub", kg.out_pub, "Public key file")->required();
  keygen->add_option("--out-priv", kg.out_priv, "Private key file")->required();
  keygen->add_option("--alpha", kg.alpha, "Generator to use instead of the parameter set's");

  FileOpts enc_o, dec_o;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file under a public key");
  encrypt->add_option("--pub", enc_o.key, "Recipient public key")->required();
  encrypt->add_option("--in", enc_o.in, "Plaintext file")->required();
  encrypt->add_option("--out", enc_o.out, "Ciphertext file")->required();
  encrypt->add_option("--offer-out", enc_o.offer, "Session offer file")->required();
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a file with a private key");
  decrypt->add_option("--priv", dec_o.key, "Private key")->required();
  decrypt->add_option("--in", dec_o.in, "Ciphertext file")->required();
  decrypt->add_option("--out", dec_o.out, "Plaintext file")->required();
  decrypt->add_option("--offer-in", dec_o.offer, "Session offer file")->required();

  ServeOpts sv;
  auto* serve = app.add_subcommand("serve", "Receive streams and write the plaintext");
  serve->add_option("--priv", sv.priv, "Private key")->required();
  auto* listen = serve->add_option("--listen", sv.listen, "host:port to listen on (port 0 picks one)");
  auto* sv_stdio = serve->add_flag("--stdio", sv.stdio, "Speak the protocol on stdin/stdout");
  listen->excludes(sv_stdio);
  serve->add_option("--out", sv.out, "Plaintext output, - for stdout")->capture_default_str();
  serve->add_option("--port-file", sv.port_file, "Write the bound port here");
  serve->add_option("--max-sessions", sv.max_sessions, "Stop after this many connections (0: no limit)");

  ConnectOpts cn;
  auto* connect = app.add_subcommand("connect", "Send a stream to a server");
  auto* peer = connect->add_option("--peer", cn.peer, "host:port of the server");
  auto* cn_stdio = connect->add_flag("--stdio", cn.stdio, "Speak the protocol on stdin/stdout");
  peer->excludes(cn_stdio);
  connect->add_option("--pub", cn.pub, "Expected server public key");
  connect->add_option("--in", cn.in, "Plaintext input, - for stdin")->capture_default_str();
  connect->add_option("--test-drop-frame", cn.drop_frame)->group("");

  AttackOpts at;
  auto* attack = app.add_subcommand("attack", "Run the k=1 / k=2 attacks or emit a k=3 system");
  attack->add_flag("--k1", at.k1, "Known-plaintext attack on one leader");
  attack->add_flag("--k2", at.k2, "Chosen-plaintext attack on two leaders, simplified model");
  attack->add_flag("--k3", at.k3, "Emit one k=3 simplified-model instance");
  attack->add_option("--trials", at.trials, "Number of seeded trials")->check(CLI::PositiveNumber)->capture_default_str();

  std::size_t bench_blocks = 1000;
  auto* bench = app.add_subcommand("bench", "Per-block stream cipher vs ElGamal encryption time");
  bench->add_option("--blocks", bench_blocks, "Blocks per pass")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) return cmd_keygen(g, kg);
    if (*encrypt) return cmd_encrypt(g, enc_o);
    if (*decrypt) return cmd_decrypt(g, dec_o);
    if (*serve) {
      if (!sv.listen && !sv.stdio) throw Error(Errc::invalid_argument, "serve needs --listen or --stdio");
      return cmd_serve(g, sv);
    }
    if (*connect) {
      if (!cn.peer && !cn.stdio) throw Error(Errc::invalid_argument, "connect needs --peer or --stdio");
      return cmd_connect(g, cn);
    }
    if (*attack) return cmd_attack(g, at);
    if (*bench) return cmd_bench(g, bench_blocks);
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
