// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lambdap {

enum class Errc {
  invalid_input,   // bad weights, values, levels, exponents
  space_mismatch,  // function evaluated on a space it was not built for
  configuration,   // inconsistent run parameters or grids
  io,
  parse,
  verification,    // a certificate failed re-verification
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lambdap
