#include "qgc/quasigroup.hpp"

#include <string>

#include "qgc/error.hpp"
#include "qgc/numtheory.hpp"

namespace qgc {

QuasigroupZp::QuasigroupZp(Int p, Int key) : p_(std::move(p)), key_(std::move(key)), p_minus_1_(p_ - 1) {
  if (p_ < 3) throw Error(Errc::invalid_modulus, "quasigroup modulus must be an odd prime");
  if (key_ < 1 || key_ > p_ - 2) throw Error(Errc::out_of_domain, "quasigroup key K must lie in [1, p-2]");
}

void QuasigroupZp::require_domain(const Int& x, const char* what) const {
  if (!in_domain(x)) throw Error(Errc::out_of_domain, std::string(what) + " must lie in [1, p-1]");
}

Int QuasigroupZp::f(const Int& j) const {
  require_domain(j, "f_K argument");
  Int denom = (key_ + j) % p_minus_1_ + 1;
  return mod_inv(denom, p_);
}

void QuasigroupZp::star_into(Int& out, const Int& i, const Int& j) const {
  Int denom = key_ + j;
  mpz_mod(denom.get_mpz_t(), denom.get_mpz_t(), p_minus_1_.get_mpz_t());
  denom += 1;
  mpz_invert(denom.get_mpz_t(), denom.get_mpz_t(), p_.get_mpz_t());
  mpz_mul(out.get_mpz_t(), i.get_mpz_t(), denom.get_mpz_t());
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), p_.get_mpz_t());
}

void QuasigroupZp::left_div_into(Int& out, const Int& i, const Int& j) const {
  Int q;
  mpz_invert(q.get_mpz_t(), j.get_mpz_t(), p_.get_mpz_t());
  mpz_mul(q.get_mpz_t(), q.get_mpz_t(), i.get_mpz_t());
  mpz_mod(q.get_mpz_t(), q.get_mpz_t(), p_.get_mpz_t());
  q -= 1;
  q -= key_;
  mpz_mod(out.get_mpz_t(), q.get_mpz_t(), p_minus_1_.get_mpz_t());
  if (out == 0) out = p_minus_1_;
}

Int QuasigroupZp::star(const Int& i, const Int& j) const {
  require_domain(i, "left operand");
  require_domain(j, "right operand");
  Int out;
  star_into(out, i, j);
  return out;
}

Int QuasigroupZp::left_div(const Int& i, const Int& j) const {
  require_domain(i, "left operand");
  require_domain(j, "right operand");
  Int out;
  left_div_into(out, i, j);
  return out;
}

Word e_transform(const QuasigroupZp& qg, const Int& leader, std::span<const Int> word) {
  Word out;
  out.reserve(word.size());
  Int prev = leader;
  for (const auto& w : word) {
    prev = qg.star(prev, w);
    out.push_back(prev);
  }
  return out;
}

Word d_transform(const QuasigroupZp& qg, const Int& leader, std::span<const Int> word) {
  Word out;
  out.reserve(word.size());
  const Int* prev = &leader;
  for (const auto& w : word) {
    out.push_back(qg.left_div(*prev, w));
    prev = &w;
  }
  return out;
}

Word multi_e_transform(const QuasigroupZp& qg, std::span<const Int> leaders, std::span<const Int> word) {
  if (leaders.empty()) throw Error(Errc::invalid_argument, "at least one leader is required");
  Word w(word.begin(), word.end());
  for (auto it = leaders.rbegin(); it != leaders.rend(); ++it) w = e_transform(qg, *it, w);
  return w;
}

Word multi_d_transform(const QuasigroupZp& qg, std::span<const Int> leaders, std::span<const Int> word) {
  if (leaders.empty()) throw Error(Errc::invalid_argument, "at least one leader is required");
  Word w(word.begin(), word.end());
  for (auto it = leaders.rbegin(); it != leaders.rend(); ++it) w = d_transform(qg, *it, w);
  return w;
}

SmallQuasigroupTable::SmallQuasigroupTable(unsigned p, std::vector<std::uint16_t> row) : p_(p), row_(std::move(row)) {
  if (p < 3 || p > kSmallTableMaxPrime || !is_probable_prime(Int(p)))
    throw Error(Errc::invalid_modulus, "small table needs an odd prime p <= 257");
  const unsigned n = p - 1;
  if (row_.size() != n) throw Error(Errc::invalid_argument, "row length must be p-1");
  std::vector<bool> seen(n + 1, false);
  for (auto v : row_) {
    if (v < 1 || v > n || seen[v]) throw Error(Errc::invalid_argument, "row is not a permutation of {1..p-1}");
    seen[v] = true;
  }
  table_.resize(static_cast<std::size_t>(n) * n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      table_[(i - 1) * n + (j - 1)] = static_cast<std::uint16_t>(i * row_[j - 1] % p);
}

SmallQuasigroupTable SmallQuasigroupTable::from_quasigroup(const QuasigroupZp& qg) {
  if (qg.p() > kSmallTableMaxPrime) throw Error(Errc::invalid_modulus, "quasigroup too large to tabulate");
  const unsigned p = static_cast<unsigned>(qg.p().get_ui());
  std::vector<std::uint16_t> row(p - 1);
  for (unsigned j = 1; j < p; ++j) row[j - 1] = static_cast<std::uint16_t>(qg.f(j).get_ui());
  return SmallQuasigroupTable(p, std::move(row));
}

bool SmallQuasigroupTable::is_latin_square() const {
  const unsigned n = order();
  std::vector<unsigned> seen(n + 1, 0);
  unsigned stamp = 0;
  for (unsigned i = 1; i <= n; ++i) {
    ++stamp;
    for (unsigned j = 1; j <= n; ++j) {
      auto v = at(i, j);
      if (v < 1 || v > n || seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  for (unsigned j = 1; j <= n; ++j) {
    ++stamp;
    for (unsigned i = 1; i <= n; ++i) {
      auto v = at(i, j);
      if (seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  return true;
}

}  // namespace qgc
