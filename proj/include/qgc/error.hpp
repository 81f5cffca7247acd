#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgc {

enum class Errc {
  invalid_argument,
  invalid_modulus,
  not_invertible,
  cannot_verify,
  out_of_domain,
  modulus_mismatch,
  division_by_zero,
  degenerate_instance,
  attack_failed,
  handshake_rejected,
  corrupt_block,
  padding_malformed,
  bad_format,
  protocol,
  desync,
  io,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure in the library surfaces as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qgc
