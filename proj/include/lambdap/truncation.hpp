// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lambdap/measure.hpp"
#include "lambdap/metrics.hpp"

namespace lambdap {

/// Truncation height M > 0.
class TruncationLevel {
 public:
  explicit TruncationLevel(double m);
  double value() const noexcept { return m_; }
  friend auto operator<=>(TruncationLevel, TruncationLevel) = default;

 private:
  double m_;
};

/// T_M(t) = max(-M, min(t, M)).
double truncate(double t, TruncationLevel m) noexcept;

/// Atomwise T_M. The result satisfies sup_norm <= M.
SimpleFunction truncate(const SimpleFunction& f, TruncationLevel m);

/// (|f| - M)_+, which equals |f - T_M f| atom for atom.
SimpleFunction truncation_excess(const SimpleFunction& f, TruncationLevel m);

/// ||min(|f - T_M f|, 1)||_p, evaluated through (|f| - M)_+.
double truncation_error_fnorm(const MeasureSpace& space, const SimpleFunction& f, TruncationLevel m, Exponent p);
double truncation_error_fnorm_pow(const MeasureSpace& space, const SimpleFunction& f, TruncationLevel m, Exponent p);

/// C_M = max(1, 2M): for |u|,|v| <= M, ||u - v||_p <= C_M * fnorm(u - v).
double lipschitz_constant_cm(TruncationLevel m) noexcept;

/// T_{outer}(T_{inner} f), identical to T_{min(outer, inner)} f.
SimpleFunction compose_truncations(const SimpleFunction& f, TruncationLevel outer, TruncationLevel inner);

}  // namespace lambdap
