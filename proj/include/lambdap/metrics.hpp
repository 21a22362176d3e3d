// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lambdap/measure.hpp"

namespace lambdap {

/// Integrability exponent, 1 <= p < infinity. Non-integer p is allowed.
class Exponent {
 public:
  explicit Exponent(double p);
  double value() const noexcept { return p_; }
  friend bool operator==(Exponent, Exponent) = default;

 private:
  double p_;
};

/// t^p for t >= 0, with exact shortcuts for p = 1 and p = 2.
double power(double t, Exponent p) noexcept;
/// s^(1/p) for s >= 0.
double root(double s, Exponent p) noexcept;

/// (sum_i w_i |f_i|^p)^(1/p)
double lp_norm(const MeasureSpace& space, const SimpleFunction& f, Exponent p);
double lp_distance(const MeasureSpace& space, const SimpleFunction& f, const SimpleFunction& g, Exponent p);

/// The F-norm ||min(|f|,1)||_p. Not homogeneous: fnorm(2f) != 2 fnorm(f)
/// in general, and it never exceeds mu(X)^(1/p).
double fnorm(const MeasureSpace& space, const SimpleFunction& f, Exponent p);
/// fnorm(f)^p, summed directly without taking a root.
double fnorm_pow(const MeasureSpace& space, const SimpleFunction& f, Exponent p);

/// fnorm(f - g); the translation-invariant metric of the asymptotic space.
double lambda_distance(const MeasureSpace& space, const SimpleFunction& f, const SimpleFunction& g, Exponent p);

struct BridgeBounds {
  double lower;
  double upper;
};

/// With m = mu(|g| > delta):  delta^p * m <= fnorm(g)^p <= m + delta^p * mu(X).
/// Together these tie F-norm convergence to convergence in measure on a
/// finite space. delta must lie in (0, 1].
BridgeBounds measure_bridge_bounds(const MeasureSpace& space, const SimpleFunction& g, Exponent p, double delta);

/// Relative comparison slack shared by the property checks: 1e-12 relative
/// with a 1e-15 absolute floor.
inline constexpr double kRelTol = 1e-12;
inline constexpr double kAbsTol = 1e-15;

/// a <= b up to the shared slack.
bool leq_tol(double a, double b) noexcept;

}  // namespace lambdap
