// SPDX-License-Identifier: Apache-2.0
#include "lambdap/truncation.hpp"

#include <algorithm>
#include <cmath>

#include "lambdap/error.hpp"

namespace lambdap {

TruncationLevel::TruncationLevel(double m) : m_(m) {
  if (!std::isfinite(m) || !(m > 0.0)) throw Error(Errc::invalid_input, "truncation level must be positive and finite");
}

double truncate(double t, TruncationLevel m) noexcept { return std::max(-m.value(), std::min(t, m.value())); }

SimpleFunction truncate(const SimpleFunction& f, TruncationLevel m) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v = truncate(v, m);
  return f.with_values(std::move(out));
}

SimpleFunction truncation_excess(const SimpleFunction& f, TruncationLevel m) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v = std::max(std::abs(v) - m.value(), 0.0);
  return f.with_values(std::move(out));
}

double truncation_error_fnorm_pow(const MeasureSpace& space, const SimpleFunction& f, TruncationLevel m, Exponent p) {
  return fnorm_pow(space, truncation_excess(f, m), p);
}

double truncation_error_fnorm(const MeasureSpace& space, const SimpleFunction& f, TruncationLevel m, Exponent p) {
  return root(truncation_error_fnorm_pow(space, f, m, p), p);
}

double lipschitz_constant_cm(TruncationLevel m) noexcept { return std::max(1.0, 2.0 * m.value()); }

SimpleFunction compose_truncations(const SimpleFunction& f, TruncationLevel outer, TruncationLevel inner) {
  return truncate(truncate(f, inner), outer);
}

}  // namespace lambdap
