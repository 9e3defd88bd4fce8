#pragma once

#include <stdexcept>
#include <string>

namespace wns {

// Failure categories. The CLI maps them onto distinct exit codes.
enum class ErrorCode {
  invalid_argument,   // precondition violated by the caller
  shape_mismatch,     // grids, time grids or sample counts disagree
  symmetry_violation, // field is not Hermitian / not mean-zero
  overflow,           // exponential weight or Cole-Hopf range exceeded
  blow_up,            // time stepper amplitude guard tripped
  smallness_violated, // data too large for a guaranteed estimate
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace wns
