// SPDX-License-Identifier: Apache-2.0
#include "lambdap/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "lambdap/error.hpp"

namespace lambdap {

Exponent::Exponent(double p) : p_(p) {
  if (!std::isfinite(p) || !(p >= 1.0)) throw Error(Errc::invalid_input, "exponent p must satisfy 1 <= p < inf");
}

double power(double t, Exponent p) noexcept {
  const double e = p.value();
  if (e == 1.0) return t;
  if (e == 2.0) return t * t;
  return std::pow(t, e);
}

double root(double s, Exponent p) noexcept {
  const double e = p.value();
  if (e == 1.0) return s;
  if (e == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / e);
}

namespace {

template <class Integrand>
double integrate(const MeasureSpace& space, const SimpleFunction& f, Integrand&& g) {
  require_on(space, f);
  CompensatedSum sum;
  const auto w = space.weights();
  for (std::size_t i = 0; i < w.size(); ++i) sum.add(w[i] * g(f[i]));
  return sum.value();
}

}  // namespace

double lp_norm(const MeasureSpace& space, const SimpleFunction& f, Exponent p) {
  return root(integrate(space, f, [p](double v) { return power(std::abs(v), p); }), p);
}

double lp_distance(const MeasureSpace& space, const SimpleFunction& f, const SimpleFunction& g, Exponent p) {
  return lp_norm(space, difference(f, g), p);
}

double fnorm_pow(const MeasureSpace& space, const SimpleFunction& f, Exponent p) {
  return integrate(space, f, [p](double v) { return power(std::min(std::abs(v), 1.0), p); });
}

double fnorm(const MeasureSpace& space, const SimpleFunction& f, Exponent p) { return root(fnorm_pow(space, f, p), p); }

double lambda_distance(const MeasureSpace& space, const SimpleFunction& f, const SimpleFunction& g, Exponent p) {
  return fnorm(space, difference(f, g), p);
}

BridgeBounds measure_bridge_bounds(const MeasureSpace& space, const SimpleFunction& g, Exponent p, double delta) {
  if (!(delta > 0.0) || !(delta <= 1.0)) throw Error(Errc::invalid_input, "delta must lie in (0, 1]");
  const double tail = level_set_measure(space, g, delta);
  const double dp = power(std::min(delta, 1.0), p);
  return {dp * tail, tail + dp * space.total_measure()};
}

bool leq_tol(double a, double b) noexcept {
  return a <= b + kRelTol * std::max(std::abs(a), std::abs(b)) + kAbsTol;
}

}  // namespace lambdap
