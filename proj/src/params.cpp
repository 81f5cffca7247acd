#include "qgc/params.hpp"

#include <map>
#include <mutex>

#include "qgc/error.hpp"

namespace qgc {

namespace {

NamedParams make_pl(const std::string& name, unsigned l) {
  auto p = gen_pl_prime(l);
  if (!p) throw Error(Errc::invalid_modulus, "2^(8l)+3 is not prime for l=" + std::to_string(l));
  PrimeParams prime{*p, default_alpha(*p), std::nullopt, false};
  return NamedParams{name, l, std::move(prime)};
}

// alpha = 13 reproduces the published session transcript, but its order is 8192,
// so it is carried as unverified even though p-1 = 2^16 is fully factored.
NamedParams make_test65537() {
  PrimeParams prime{65537, 13, std::vector<Int>{2}, false};
  prime.generator_verified = is_generator(prime.p, *prime.p_minus_1_factors, prime.alpha);
  validate(prime);
  return NamedParams{"test65537", 2, std::move(prime)};
}

}  // namespace

std::vector<std::string> param_set_names() { return {"test65537", "p98", "p213", "p251"}; }

const NamedParams& named_params(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, NamedParams, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;

  NamedParams np = [&] {
    if (name == "test65537") return make_test65537();
    if (name == "p98") return make_pl("p98", 98);
    if (name == "p213") return make_pl("p213", 213);
    if (name == "p251") return make_pl("p251", 251);
    throw Error(Errc::invalid_argument, "unknown parameter set '" + std::string(name) + "'");
  }();
  return cache.emplace(std::string(name), std::move(np)).first->second;
}

std::vector<Int> small_factors_of_p_minus_1(const Int& p, unsigned bound) {
  std::vector<Int> out;
  Int rest = p - 1;
  for (unsigned q = 2; q < bound && rest > 1; ++q) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), q)) continue;
    out.emplace_back(q);
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
  }
  return out;
}

Int default_alpha(const Int& p) {
  const auto factors = small_factors_of_p_minus_1(p);
  for (Int alpha = 2; alpha < p; ++alpha) {
    bool ok = true;
    for (const auto& q : factors)
      if (mod_pow(alpha, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return alpha;
  }
  throw Error(Errc::invalid_modulus, "no generator candidate found");
}

PrimeParams with_alpha(const PrimeParams& params, const Int& alpha) {
  PrimeParams out = params;
  out.alpha = alpha;
  out.generator_verified = false;
  if (alpha < 2 || alpha > params.p - 1) throw Error(Errc::invalid_argument, "alpha must lie in [2, p-1]");
  if (out.p_minus_1_factors) {
    if (!is_generator(out.p, *out.p_minus_1_factors, alpha))
      throw Error(Errc::invalid_argument, "alpha is not a generator of Z_p*");
    out.generator_verified = true;
  }
  return out;
}

}  // namespace qgc
