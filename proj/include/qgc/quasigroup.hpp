#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgc/bigint.hpp"

namespace qgc {

/// Quasigroup of order p-1 on Q = {1, ..., p-1}, defined by a key K in [1, p-2].
///
/// The column permutation is f_K(j) = (1 + (K + j) mod (p-1))^(-1) mod p and the
/// operation is i * j = i * f_K(j) mod p. Its left parastrophe solves i * x = j:
///
///   g = ((i * j^(-1) mod p) - 1 - K) mod (p-1),   i \ j = g, or p-1 when g = 0.
///
/// Nothing is tabulated, so p may be thousands of bits. p is assumed prime.
class QuasigroupZp {
 public:
  QuasigroupZp(Int p, Int key);

  const Int& p() const { return p_; }
  const Int& key() const { return key_; }
  const Int& order() const { return p_minus_1_; }

  bool in_domain(const Int& x) const { return x >= 1 && x <= p_minus_1_; }

  Int f(const Int& j) const;
  Int star(const Int& i, const Int& j) const;
  Int left_div(const Int& i, const Int& j) const;

  // Unchecked variants writing into `out`, for the per-block hot path.
  void star_into(Int& out, const Int& i, const Int& j) const;
  void left_div_into(Int& out, const Int& i, const Int& j) const;

  friend bool operator==(const QuasigroupZp&, const QuasigroupZp&) = default;

 private:
  void require_domain(const Int& x, const char* what) const;

  Int p_;
  Int key_;
  Int p_minus_1_;
};

using Word = std::vector<Int>;

// e_a: b_1 = a * w_1, b_{i+1} = b_i * w_{i+1}.
Word e_transform(const QuasigroupZp& qg, const Int& leader, std::span<const Int> word);
// Inverse of e_a with the same leader: c_1 = a \ w_1, c_{i+1} = w_i \ w_{i+1}.
Word d_transform(const QuasigroupZp& qg, const Int& leader, std::span<const Int> word);
// e_{a_1} o e_{a_2} o ... o e_{a_k}; e_{a_k} is applied first.
Word multi_e_transform(const QuasigroupZp& qg, std::span<const Int> leaders, std::span<const Int> word);
// d_{a_1} o d_{a_2} o ... o d_{a_k}. multi_d_transform(reversed leaders) inverts multi_e_transform.
Word multi_d_transform(const QuasigroupZp& qg, std::span<const Int> leaders, std::span<const Int> word);

inline constexpr unsigned kSmallTableMaxPrime = 257;

// Materialized table i * j = i * row[j] mod p, used to check quasigroup laws exhaustively.
class SmallQuasigroupTable {
 public:
  // row[j-1] is the image of column j; must be a permutation of {1..p-1}.
  SmallQuasigroupTable(unsigned p, std::vector<std::uint16_t> row);
  static SmallQuasigroupTable from_quasigroup(const QuasigroupZp& qg);

  unsigned p() const { return p_; }
  unsigned order() const { return p_ - 1; }
  const std::vector<std::uint16_t>& row() const { return row_; }
  // Both operands in [1, p-1].
  std::uint16_t at(unsigned i, unsigned j) const { return table_[(i - 1) * order() + (j - 1)]; }

  bool is_latin_square() const;

 private:
  unsigned p_;
  std::vector<std::uint16_t> row_;
  std::vector<std::uint16_t> table_;
};

}  // namespace qgc
