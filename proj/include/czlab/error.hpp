#pragma once

#include <stdexcept>
#include <string>

namespace czlab {

/// Failure categories surfaced by the library. Tests and the CLI branch on
/// the code, messages are for humans.
enum class errc {
  invalid_argument,
  invalid_exponent,
  invalid_truncation,
  singularity,
  out_of_window,
  resample_required,
  cancellation,
  degenerate_denominator,
  construction_failed,
  witness_unavailable,
  no_contraction,
  not_two_bump,
  config_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace czlab
