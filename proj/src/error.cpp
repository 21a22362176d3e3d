// SPDX-License-Identifier: Apache-2.0
#include "lambdap/error.hpp"

namespace lambdap {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "invalid input";
    case Errc::space_mismatch: return "space mismatch";
    case Errc::configuration: return "configuration error";
    case Errc::io: return "I/O error";
    case Errc::parse: return "parse error";
    case Errc::verification: return "verification failure";
  }
  return "unknown error";
}

}  // namespace lambdap
