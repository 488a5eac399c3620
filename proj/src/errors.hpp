#pragma once

#include <stdexcept>
#include <string>

namespace lps {

// Error taxonomy shared by the core library and the C API layer.
enum class ErrorCode {
  invalid_argument = 1,
  p_equals_minus_n,
  t_out_of_range,
  unsupported_dimension,
  nonconvex_detected,
  nonfinite_integrand,
  overflow,
  underflow,
  nonpositive_mass,
  alpha_one,
  truncation_too_large,
  io_error,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace lps
