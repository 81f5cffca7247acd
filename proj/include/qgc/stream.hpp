#pragma once

#include <cstdint>
#include <vector>

#include "qgc/bigint.hpp"
#include "qgc/quasigroup.hpp"

namespace qgc {

inline constexpr std::size_t kMinSessionLeaders = 3;

// Per-block cipher state: the quasigroup plus k leaders that are rewritten after
// every block. Encryptor and decryptor states started from the same (K, leaders)
// stay identical as long as they see the same block sequence.
class StreamState {
 public:
  StreamState(QuasigroupZp qg, std::vector<Int> leaders);

  const QuasigroupZp& quasigroup() const { return qg_; }
  const std::vector<Int>& leaders() const { return leaders_; }
  std::size_t k() const { return leaders_.size(); }
  std::uint64_t blocks_processed() const { return blocks_processed_; }

  // m^(0) = m, m^(i) = a_i * m^(i-1); returns m^(k). Afterwards a_i = m^(i) for i < k
  // and a_k = 1 + (sum of all m^(i)) mod (p-1).
  Int encrypt_block(const Int& m);
  // c^(k) = a_k \ c, c^(i) = a_i \ c^(i+1); returns c^(1). Applies the same update.
  Int decrypt_block(const Int& c);

  friend bool operator==(const StreamState& a, const StreamState& b) {
    return a.qg_ == b.qg_ && a.leaders_ == b.leaders_ && a.blocks_processed_ == b.blocks_processed_;
  }

 private:
  void update_leaders();

  QuasigroupZp qg_;
  std::vector<Int> leaders_;
  std::uint64_t blocks_processed_ = 0;
  // Intermediate values m^(1..k) of the current block (index i-1).
  std::vector<Int> scratch_;
};

}  // namespace qgc
