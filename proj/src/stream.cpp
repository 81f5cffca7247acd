#include "qgc/stream.hpp"

#include "qgc/error.hpp"

namespace qgc {

StreamState::StreamState(QuasigroupZp qg, std::vector<Int> leaders)
    : qg_(std::move(qg)), leaders_(std::move(leaders)), scratch_(leaders_.size()) {
  if (leaders_.empty()) throw Error(Errc::invalid_argument, "stream needs at least one leader");
  for (const auto& a : leaders_)
    if (!qg_.in_domain(a)) throw Error(Errc::out_of_domain, "leader must lie in [1, p-1]");
}

void StreamState::update_leaders() {
  const std::size_t k = leaders_.size();
  Int sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += scratch_[i];
  for (std::size_t i = 0; i + 1 < k; ++i) mpz_swap(leaders_[i].get_mpz_t(), scratch_[i].get_mpz_t());
  mpz_mod(leaders_[k - 1].get_mpz_t(), sum.get_mpz_t(), qg_.order().get_mpz_t());
  leaders_[k - 1] += 1;
  ++blocks_processed_;
}

Int StreamState::encrypt_block(const Int& m) {
  if (!qg_.in_domain(m)) throw Error(Errc::out_of_domain, "plaintext block must lie in [1, p-1]");
  const std::size_t k = leaders_.size();
  const Int* prev = &m;
  for (std::size_t i = 0; i < k; ++i) {
    qg_.star_into(scratch_[i], leaders_[i], *prev);
    prev = &scratch_[i];
  }
  Int c = scratch_[k - 1];
  update_leaders();
  return c;
}

Int StreamState::decrypt_block(const Int& c) {
  if (!qg_.in_domain(c)) throw Error(Errc::out_of_domain, "ciphertext block must lie in [1, p-1]");
  const std::size_t k = leaders_.size();
  // scratch_[i] holds c^(i+2) = m^(i+1); scratch_[k-1] is c itself.
  scratch_[k - 1] = c;
  for (std::size_t i = k; i-- > 1;) qg_.left_div_into(scratch_[i - 1], leaders_[i], scratch_[i]);
  Int m;
  qg_.left_div_into(m, leaders_[0], scratch_[0]);
  update_leaders();
  return m;
}

}  // namespace qgc
