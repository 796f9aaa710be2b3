#pragma once
#include <stdexcept>
#include <string>

namespace epsum {

enum class ErrCode {
  Parse,         // malformed input
  Domain,        // value outside the supported class (bad Gamma argument, ...)
  Pole,          // substitution/evaluation hit a zero denominator
  Truncation,    // requested series order not available
  GammaResidue,  // EulerGamma survived into a final coefficient
  Unsupported,   // summand/recurrence outside the implemented class
  Abort,         // solver signalled ABORT (no closed form in the solution space)
  Incomplete,    // pipeline could not finish (missing initial values, ...)
  Verify,        // a certificate or cross-check failed
  Internal
};

class Error : public std::runtime_error {
public:
  Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  ErrCode code;
};

[[noreturn]] inline void fail(ErrCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace epsum
