#include "qgc/attacks.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "qgc/error.hpp"
#include "qgc/numtheory.hpp"
#include "qgc/stream.hpp"

namespace qgc::attacks {

namespace {

Int inv_or_degenerate(const Int& x, const Int& p) {
  Int r = mod(x, p);
  if (r == 0) throw Error(Errc::degenerate_instance, "zero denominator in the simplified model");
  return mod_inv(r, p);
}

template <typename Fn>
TrialReport timed_trial(const Int& p, std::uint64_t seed, Fn&& body) {
  TrialReport rep;
  rep.seed = seed;
  rep.p_bits = bit_length(p);
  const auto t0 = std::chrono::steady_clock::now();
  body(rep);
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

KnownPlaintextSample real_cipher_sample(const Int& p, const Int& key, const std::vector<Int>& leaders,
                                        const std::vector<Int>& plaintext) {
  StreamState st(QuasigroupZp(p, key), leaders);
  KnownPlaintextSample s{p, plaintext, {}};
  s.c.reserve(plaintext.size());
  for (const auto& m : plaintext) s.c.push_back(st.encrypt_block(m));
  return s;
}

K1Recovery attack_k1(const KnownPlaintextSample& sample) {
  const Int& p = sample.p;
  if (sample.m.size() != sample.c.size() || sample.m.size() < 2)
    throw Error(Errc::invalid_argument, "need at least two aligned plaintext/ciphertext blocks");
  for (const auto* v : {&sample.m, &sample.c})
    for (const auto& x : *v)
      if (x < 1 || x > p - 1) throw Error(Errc::out_of_domain, "sample values must lie in [1, p-1]");

  const Int order = p - 1;
  const Int next_leader = 1 + sample.c[0] % order;
  const Int t = next_leader * mod_inv(sample.c[1], p) % p;
  const Int key = mod(t - 1 - sample.m[1], order);
  if (key < 1) throw Error(Errc::attack_failed, "derived K is outside [1, p-2]; not a single-leader stream");

  const Int leader = sample.c[0] * (1 + (key + sample.m[0]) % order) % p;
  if (leader < 1) throw Error(Errc::attack_failed, "derived leader is zero");

  if (real_cipher_sample(p, key, {leader}, sample.m).c != sample.c)
    throw Error(Errc::attack_failed, "candidate (K, a_1) does not reproduce the ciphertext");
  return K1Recovery{key, leader};
}

std::vector<Int> simplified_encrypt(const SimplifiedModelParams& params, std::size_t blocks) {
  const Int& p = params.p;
  if (params.leaders.empty()) throw Error(Errc::invalid_argument, "at least one leader is required");
  if (params.key < 1 || params.key > p - 2) throw Error(Errc::out_of_domain, "K must lie in [1, p-2]");

  const Int key_inv = mod_inv(params.key, p);
  std::vector<Int> a = params.leaders;
  std::vector<Int> x(a.size());
  std::vector<Int> out;
  out.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    x[0] = a[0] * key_inv % p;
    for (std::size_t i = 1; i < a.size(); ++i) x[i] = a[i] * inv_or_degenerate(1 + params.key + x[i - 1], p) % p;
    out.push_back(x.back());
    Int sum = 0;
    for (const auto& v : x) sum += v;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] = x[i];
    a.back() = mod(sum, p);
  }
  return out;
}

PolyZp k2_cubic(const Int& c1, const Int& c2, const Int& c3, const Int& p) {
  return PolyZp(p, {c2 * c3 - c1 * c3, c1 - c2 + c2 * c2, -2 * c2 + c3 - c2 * c3, c3});
}

std::vector<Int> attack_k2_simplified(const Int& c1, const Int& c2, const Int& c3, const Int& p, RandomSource& rng) {
  const PolyZp cubic = k2_cubic(c1, c2, c3, p);
  if (cubic.is_zero()) throw Error(Errc::attack_failed, "cubic vanishes identically; instance is degenerate");

  const std::vector<Int> observed{mod(c1, p), mod(c2, p), mod(c3, p)};
  std::vector<Int> verified;
  for (const Int& key : roots_mod_p(cubic, rng)) {
    if (key < 1 || key > p - 2) continue;
    try {
      // From the second equation: a_1 = K^2 (c1 - c2 - c2 K) / (c2 - K); then a_2 from the first.
      const Int a1 = mod(key * key % p * (c1 - c2 - c2 * key), p) * inv_or_degenerate(c2 - key, p) % p;
      const Int a2 = mod(c1 * (1 + a1 * mod_inv(key, p) + key), p);
      if (simplified_encrypt({p, key, {a1, a2}}, 3) == observed) verified.push_back(key);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_instance) throw;
    }
  }
  if (verified.empty()) throw Error(Errc::attack_failed, "no root of the cubic reproduces the ciphertext");
  return verified;
}

std::string K3Instance::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) os << "c" << (i + 1) << "=" << c[i].get_str() << ' ';
  os << "A1=" << A1.get_str() << " A2=" << A2.get_str();
  return os.str();
}

K3Instance emit_k3_instance(const SimplifiedModelParams& params) {
  if (params.leaders.size() != 3) throw Error(Errc::invalid_argument, "k=3 instances need exactly three leaders");
  const Int& p = params.p;
  const auto c = simplified_encrypt(params, 4);
  K3Instance inst;
  std::copy(c.begin(), c.end(), inst.c.begin());
  inst.A1 = params.leaders[0] * mod_inv(params.key, p) % p;
  inst.A2 = params.leaders[1] * inv_or_degenerate(1 + inst.A1 + params.key, p) % p;
  return inst;
}

std::string TrialReport::line() const {
  char ms[32];
  std::snprintf(ms, sizeof(ms), "%.3f", wall_ms);
  std::ostringstream os;
  os << "seed=" << seed << " p_bits=" << p_bits << " success=" << (success ? 1 : 0)
     << " K=" << (key ? key->get_str() : std::string("-")) << " wall_ms=" << ms;
  return os.str();
}

TrialReport run_k1_trial(const Int& p, std::uint64_t seed, std::size_t blocks) {
  return timed_trial(p, seed, [&](TrialReport& rep) {
    SeededRandom rng(seed);
    const Int key = rng.uniform(1, p - 2);
    const Int leader = rng.uniform(1, p - 2);
    std::vector<Int> m;
    for (std::size_t i = 0; i < std::max<std::size_t>(blocks, 2); ++i) m.push_back(rng.uniform(1, p - 1));
    const auto sample = real_cipher_sample(p, key, {leader}, m);
    try {
      const auto rec = attack_k1(sample);
      rep.key = rec.key;
      rep.success = rec.key == key && rec.leader == leader;
    } catch (const Error& e) {
      if (e.code() != Errc::attack_failed) throw;
    }
  });
}

TrialReport run_k2_trial(const Int& p, std::uint64_t seed) {
  return timed_trial(p, seed, [&](TrialReport& rep) {
    SeededRandom rng(seed);
    for (;;) {
      SimplifiedModelParams params{p, rng.uniform(1, p - 2), {rng.uniform(1, p - 2), rng.uniform(1, p - 2)}};
      std::vector<Int> c;
      try {
        c = simplified_encrypt(params, 3);
      } catch (const Error& e) {
        if (e.code() == Errc::degenerate_instance) continue;
        throw;
      }
      // c2 = K blocks the a_1 back-substitution; treat it like any other degeneracy.
      if (c[1] == params.key) continue;
      try {
        const auto keys = attack_k2_simplified(c[0], c[1], c[2], p, rng);
        rep.success = std::find(keys.begin(), keys.end(), params.key) != keys.end();
        if (rep.success) rep.key = params.key;
        else rep.key = keys.front();
      } catch (const Error& e) {
        if (e.code() != Errc::attack_failed) throw;
      }
      return;
    }
  });
}

}  // namespace qgc::attacks
