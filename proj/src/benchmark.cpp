#include "qgc/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "qgc/error.hpp"
#include "qgc/stream.hpp"

namespace qgc {

namespace {

template <typename Fn>
double median_ns_per_item(std::size_t items, int repeats, Fn&& pass) {
  std::vector<double> samples;
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    pass();
    const auto dt = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count();
    samples.push_back(dt / static_cast<double>(items));
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

std::vector<Int> random_blocks(const Int& p, std::size_t n, RandomSource& rng) {
  std::vector<Int> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(1, p - 1));
  return v;
}

}  // namespace

double measure_stream_ns(const Int& p, std::size_t k, std::size_t blocks, std::uint64_t seed, int repeats) {
  if (blocks == 0) throw Error(Errc::invalid_argument, "benchmark needs at least one block");
  SeededRandom rng(seed);
  std::vector<Int> leaders;
  for (std::size_t i = 0; i < k; ++i) leaders.push_back(rng.uniform(1, p - 2));
  const QuasigroupZp qg(p, rng.uniform(1, p - 2));
  const auto msgs = random_blocks(p, blocks, rng);
  Int sink = 0;
  double ns = median_ns_per_item(blocks, repeats, [&] {
    StreamState st(qg, leaders);
    for (const auto& m : msgs) sink += st.encrypt_block(m);
  });
  if (sink < 0) throw Error(Errc::invalid_argument, "unreachable");
  return ns;
}

double measure_elgamal_ns(const elgamal::PublicKey& pub, std::size_t blocks, std::uint64_t seed, int repeats) {
  if (blocks == 0) throw Error(Errc::invalid_argument, "benchmark needs at least one block");
  SeededRandom rng(seed);
  const auto msgs = random_blocks(pub.p(), blocks, rng);
  Int sink = 0;
  double ns = median_ns_per_item(blocks, repeats, [&] {
    for (const auto& m : msgs) sink += elgamal::encrypt(pub, m, rng).delta;
  });
  if (sink < 0) throw Error(Errc::invalid_argument, "unreachable");
  return ns;
}

BenchResult run_bench(const PrimeParams& params, std::size_t k, std::size_t blocks, std::uint64_t seed) {
  SeededRandom rng(seed);
  const auto kp = elgamal::keygen(params, rng);
  BenchResult r;
  r.blocks = blocks;
  r.k = k;
  r.stream_ns_per_block = measure_stream_ns(params.p, k, blocks, seed);
  r.elgamal_ns_per_block = measure_elgamal_ns(kp.pub, blocks, seed);
  return r;
}

}  // namespace qgc
