#include "qgc/polyring.hpp"

#include <algorithm>

#include "qgc/error.hpp"
#include "qgc/numtheory.hpp"

namespace qgc {

namespace {

void require_same_modulus(const PolyZp& f, const PolyZp& g) {
  if (f.modulus() != g.modulus()) throw Error(Errc::modulus_mismatch, "polynomials over different moduli");
}

// Splits a squarefree product of distinct linear factors into its roots.
void split_linear(const PolyZp& g, RandomSource& rng, std::vector<Int>& roots) {
  const Int& p = g.modulus();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    const PolyZp m = g.monic();
    roots.push_back(mod(-m.coeff(0), p));
    return;
  }
  const Int half = (p - 1) / 2;
  for (int attempt = 0; attempt < kSplitAttempts; ++attempt) {
    const Int delta = rng.uniform(0, p - 1);
    PolyZp h = powmod(PolyZp(p, {delta, 1}), half, g) - PolyZp::constant(p, 1);
    h = gcd(h, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, roots);
      split_linear(divmod(g, h).first, rng, roots);
      return;
    }
  }
  throw Error(Errc::attack_failed, "equal-degree splitting did not converge");
}

}  // namespace

PolyZp::PolyZp(Int p, std::vector<Int> coeffs) : p_(std::move(p)), coeffs_(std::move(coeffs)) {
  if (p_ < 2) throw Error(Errc::invalid_modulus, "polynomial modulus must be at least 2");
  for (auto& c : coeffs_) c = mod(c, p_);
  trim();
}

void PolyZp::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& PolyZp::lead() const {
  if (coeffs_.empty()) throw Error(Errc::invalid_argument, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Int PolyZp::operator()(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % p_;
  return mod(acc, p_);
}

PolyZp PolyZp::monic() const {
  if (is_zero()) return *this;
  const Int inv = mod_inv(lead(), p_);
  std::vector<Int> c = coeffs_;
  for (auto& v : c) v = v * inv;
  return PolyZp(p_, std::move(c));
}

PolyZp operator+(const PolyZp& f, const PolyZp& g) {
  require_same_modulus(f, g);
  std::vector<Int> c(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(i) + g.coeff(i);
  return PolyZp(f.p_, std::move(c));
}

PolyZp operator-(const PolyZp& f, const PolyZp& g) {
  require_same_modulus(f, g);
  std::vector<Int> c(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(i) - g.coeff(i);
  return PolyZp(f.p_, std::move(c));
}

PolyZp operator*(const PolyZp& f, const PolyZp& g) {
  require_same_modulus(f, g);
  if (f.is_zero() || g.is_zero()) return PolyZp::zero(f.p_);
  std::vector<Int> c(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) c[i + j] += f.coeffs_[i] * g.coeffs_[j];
  return PolyZp(f.p_, std::move(c));
}

std::pair<PolyZp, PolyZp> divmod(const PolyZp& f, const PolyZp& g) {
  require_same_modulus(f, g);
  if (g.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  const Int& p = f.modulus();
  if (f.degree() < g.degree()) return {PolyZp::zero(p), f};

  const Int lead_inv = mod_inv(g.lead(), p);
  std::vector<Int> rem = f.coeffs();
  std::vector<Int> quot(f.coeffs().size() - g.coeffs().size() + 1, 0);
  const std::size_t dg = g.coeffs().size() - 1;
  for (std::size_t i = quot.size(); i-- > 0;) {
    Int t = mod(rem[i + dg] * lead_inv, p);
    quot[i] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) rem[i + j] = mod(rem[i + j] - t * g.coeffs()[j], p);
  }
  rem.resize(dg);
  return {PolyZp(p, std::move(quot)), PolyZp(p, std::move(rem))};
}

PolyZp gcd(PolyZp f, PolyZp g) {
  require_same_modulus(f, g);
  while (!g.is_zero()) {
    PolyZp r = divmod(f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

PolyZp powmod(const PolyZp& base, const Int& exp, const PolyZp& m) {
  require_same_modulus(base, m);
  if (sgn(exp) < 0) throw Error(Errc::invalid_argument, "negative exponent");
  if (m.degree() < 1) throw Error(Errc::invalid_argument, "modulus polynomial must have degree >= 1");
  PolyZp result = divmod(PolyZp::constant(m.modulus(), 1), m).second;
  PolyZp b = divmod(base, m).second;
  for (std::size_t i = bit_length(exp); i-- > 0;) {
    result = divmod(result * result, m).second;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = divmod(result * b, m).second;
  }
  return result;
}

PolyZp powmod_x(const Int& p, const PolyZp& f) {
  if (f.modulus() != p) throw Error(Errc::modulus_mismatch, "f is not over Z_p");
  if (f.degree() < 1) throw Error(Errc::invalid_argument, "X^p mod f needs deg f >= 1");
  return powmod(PolyZp::x(p), p, f);
}

std::vector<Int> roots_mod_p(const PolyZp& f, RandomSource& rng) {
  const Int& p = f.modulus();
  if (p == 2) throw Error(Errc::invalid_modulus, "root finding is not supported for p = 2");
  if (f.is_zero()) throw Error(Errc::invalid_argument, "every element is a root of the zero polynomial");
  if (f.degree() == 0) return {};

  // gcd(X^p - X, f) keeps exactly the distinct linear factors of f.
  const PolyZp g = gcd(powmod_x(p, f) - PolyZp::x(p), f);
  std::vector<Int> roots;
  split_linear(g, rng, roots);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace qgc
