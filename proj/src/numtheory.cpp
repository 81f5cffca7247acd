#include "qgc/numtheory.hpp"

#include <array>
#include <string>

#include "qgc/error.hpp"

namespace qgc {

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

void require_factor_cover(const Int& p, const std::vector<Int>& factors) {
  if (factors.empty()) throw Error(Errc::cannot_verify, "no factorization of p-1 supplied");
  Int rest = p - 1;
  for (const auto& q : factors) {
    if (q < 2 || !is_probable_prime(q)) throw Error(Errc::cannot_verify, "factor " + q.get_str() + " is not prime");
    if ((p - 1) % q != 0) throw Error(Errc::cannot_verify, "factor " + q.get_str() + " does not divide p-1");
    while (rest % q == 0) rest /= q;
  }
  if (rest != 1) throw Error(Errc::cannot_verify, "factor list does not cover p-1 (cofactor " + rest.get_str() + ")");
}

}  // namespace

void validate(const PrimeParams& params, int rounds) {
  if (!is_probable_prime(params.p, rounds)) throw Error(Errc::invalid_modulus, "p is not prime");
  if (params.alpha < 2 || params.alpha > params.p - 1)
    throw Error(Errc::invalid_argument, "alpha must lie in [2, p-1]");
  if (params.generator_verified) {
    if (!params.p_minus_1_factors)
      throw Error(Errc::cannot_verify, "generator marked verified without a factorization of p-1");
    if (!is_generator(params.p, *params.p_minus_1_factors, params.alpha))
      throw Error(Errc::invalid_argument, "alpha is not a generator of Z_p*");
  }
}

Int mod_pow(const Int& base, const Int& exp, const Int& modulus) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be at least 2");
  if (sgn(exp) < 0) throw Error(Errc::invalid_argument, "negative exponent");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int mod_inv(const Int& x, const Int& modulus) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be at least 2");
  Int r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw Error(Errc::not_invertible, x.get_str() + " has no inverse modulo " + modulus.get_str());
  return r;
}

bool is_probable_prime(const Int& n, int rounds) {
  if (rounds < 1) throw Error(Errc::invalid_argument, "Miller-Rabin needs at least one round");
  if (n < 2) return false;
  for (unsigned q : kSmallPrimes) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }

  const Int n_minus_1 = n - 1;
  Int d = n_minus_1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // Bases are derived from n itself so the test is deterministic for a given input.
  SeededRandom rng(mpz_get_ui(n.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL);
  for (int round = 0; round < rounds; ++round) {
    Int a = rng.uniform(2, n - 2);
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<Int> gen_pl_prime(unsigned l) {
  if (l < 1) throw Error(Errc::invalid_argument, "l must be at least 1");
  Int p = pow2(8UL * l) + 3;
  if (!is_probable_prime(p)) return std::nullopt;
  return p;
}

bool is_generator(const Int& p, const std::vector<Int>& factors, const Int& alpha) {
  require_factor_cover(p, factors);
  Int a = mod(alpha, p);
  if (a == 0) return false;
  for (const auto& q : factors)
    if (mod_pow(a, (p - 1) / q, p) == 1) return false;
  return true;
}

Int find_generator(const Int& p, const std::vector<Int>& factors, RandomSource& rng) {
  require_factor_cover(p, factors);
  if (p == 2) return 1;
  for (;;) {
    Int candidate = rng.uniform(2, p - 1);
    if (is_generator(p, factors, candidate)) return candidate;
  }
}

std::optional<std::pair<Int, Int>> tonelli_shanks(const Int& a_in, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
    throw Error(Errc::invalid_modulus, "Tonelli-Shanks needs an odd prime modulus");
  const Int a = mod(a_in, p);
  if (a == 0) return std::pair<Int, Int>{0, 0};
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;

  // p - 1 = q * 2^s with q odd.
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);

  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

  unsigned long m = s;
  Int c = mod_pow(z, q, p);
  Int t = mod_pow(a, q, p);
  Int r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned long i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  Int other = p - r;
  if (other < r) std::swap(r, other);
  return std::pair<Int, Int>{r, other};
}

}  // namespace qgc
