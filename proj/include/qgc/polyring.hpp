#pragma once

#include <utility>
#include <vector>

#include "qgc/bigint.hpp"
#include "qgc/random.hpp"

namespace qgc {

// Dense univariate polynomial over Z_p, coefficients in ascending degree.
// Coefficients are always reduced into [0, p-1] and trailing zeros trimmed,
// so the zero polynomial has an empty coefficient list and degree -1.
class PolyZp {
 public:
  PolyZp(Int p, std::vector<Int> coeffs);

  static PolyZp zero(const Int& p) { return PolyZp(p, {}); }
  static PolyZp constant(const Int& p, const Int& c) { return PolyZp(p, {c}); }
  static PolyZp x(const Int& p) { return PolyZp(p, {0, 1}); }

  const Int& modulus() const { return p_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Int& lead() const;
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

  Int operator()(const Int& x) const;
  PolyZp monic() const;

  friend PolyZp operator+(const PolyZp& f, const PolyZp& g);
  friend PolyZp operator-(const PolyZp& f, const PolyZp& g);
  friend PolyZp operator*(const PolyZp& f, const PolyZp& g);
  friend bool operator==(const PolyZp& f, const PolyZp& g) = default;

 private:
  void trim();

  Int p_;
  std::vector<Int> coeffs_;
};

// f = q*g + r with deg r < deg g.
std::pair<PolyZp, PolyZp> divmod(const PolyZp& f, const PolyZp& g);
// Monic gcd; gcd(0, 0) = 0.
PolyZp gcd(PolyZp f, PolyZp g);
// base^exp mod m in Z_p[X]/(m).
PolyZp powmod(const PolyZp& base, const Int& exp, const PolyZp& m);
// X^p mod f.
PolyZp powmod_x(const Int& p, const PolyZp& f);

inline constexpr int kSplitAttempts = 64;

// All distinct roots of f in Z_p, ascending. Throws invalid_modulus for p = 2 and
// invalid_argument for the zero polynomial.
std::vector<Int> roots_mod_p(const PolyZp& f, RandomSource& rng);

}  // namespace qgc
