// SPDX-License-Identifier: Apache-2.0
#include "lambdap/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "lambdap/error.hpp"
#include "lambdap/families.hpp"

namespace lambdap {

const char* to_string(MetricKind kind) noexcept { return kind == MetricKind::lambda ? "lambda" : "lp"; }

DistanceOracle::DistanceOracle(MetricKind kind, const MeasureSpace& space, std::vector<SimpleFunction> points,
                               Exponent p, std::optional<TruncationLevel> level)
    : kind_(kind), space_(space), points_(std::move(points)), p_(p), level_(level) {}

DistanceOracle DistanceOracle::lambda(const FunctionFamily& family, Exponent p) {
  return {MetricKind::lambda, family.space(), {family.members().begin(), family.members().end()}, p, std::nullopt};
}

DistanceOracle DistanceOracle::lp(const FunctionFamily& family, Exponent p, std::optional<TruncationLevel> level) {
  std::vector<SimpleFunction> points;
  points.reserve(family.size());
  for (const auto& f : family.members()) points.push_back(level ? truncate(f, *level) : f);
  return {MetricKind::lp, family.space(), std::move(points), p, level};
}

double DistanceOracle::operator()(std::size_t i, std::size_t j) const {
  if (i >= points_.size() || j >= points_.size()) {
    throw Error(Errc::invalid_input, "index " + std::to_string(std::max(i, j)) + " outside a family of " +
                                         std::to_string(points_.size()) + " members");
  }
  if (i == j) return 0.0;
  // Order the operands so d(i,j) and d(j,i) are bitwise identical.
  const auto& a = points_[std::min(i, j)];
  const auto& b = points_[std::max(i, j)];
  return kind_ == MetricKind::lambda ? lambda_distance(space_, a, b, p_) : lp_distance(space_, a, b, p_);
}

unsigned worker_threads() noexcept {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAMBDAP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

DistanceMatrix::DistanceMatrix(const DistanceOracle& oracle) : n_(oracle.size()), d_(n_ * n_, 0.0) {
  auto fill_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n_; i += stride) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d = oracle(i, j);
        d_[i * n_ + j] = d;
        d_[j * n_ + i] = d;
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(n_ / 8, 1));
  if (workers <= 1) {
    fill_rows(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(fill_rows, w, workers);
}

double DistanceMatrix::diameter() const noexcept { return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end()); }

bool spot_check_metric(const DistanceOracle& oracle, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = oracle.size();
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = rng.below(n), j = rng.below(n), k = rng.below(n);
    if (oracle(i, i) != 0.0) return false;
    const double ij = oracle(i, j), ji = oracle(j, i);
    if (ij != ji || ij < 0.0) return false;
    if (!leq_tol(oracle(i, k), ij + oracle(j, k))) return false;
  }
  return true;
}

namespace {

void require_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) throw Error(Errc::invalid_input, "epsilon must be positive and finite");
}

}  // namespace

CoveringCertificate greedy_cover(const DistanceMatrix& d, double epsilon) {
  require_epsilon(epsilon);
  const std::size_t n = d.size();
  CoveringCertificate cert{epsilon, {}, std::vector<Assignment>(n)};
  std::vector<bool> covered(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    if (covered[c]) continue;
    cert.centers.push_back(c);
    for (std::size_t j = c; j < n; ++j) {
      if (!covered[j] && d(c, j) <= epsilon) {
        covered[j] = true;
        cert.assignment[j] = {j, c, d(c, j)};
      }
    }
  }
  return cert;
}

CoveringCertificate greedy_cover(const DistanceOracle& oracle, double epsilon) {
  require_epsilon(epsilon);
  return greedy_cover(DistanceMatrix(oracle), epsilon);
}

PackingWitness greedy_packing(const DistanceMatrix& d, double epsilon) {
  require_epsilon(epsilon);
  PackingWitness witness{epsilon, {}};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool separated =
        std::all_of(witness.points.begin(), witness.points.end(), [&](std::size_t k) { return d(i, k) > epsilon; });
    if (separated) witness.points.push_back(i);
  }
  return witness;
}

PackingWitness greedy_packing(const DistanceOracle& oracle, double epsilon) {
  require_epsilon(epsilon);
  return greedy_packing(DistanceMatrix(oracle), epsilon);
}

namespace {

void require_index(std::size_t index, const DistanceOracle& oracle) {
  if (index >= oracle.size()) {
    throw Error(Errc::invalid_input, "certificate references member " + std::to_string(index) + " of a family with " +
                                         std::to_string(oracle.size()) + " members");
  }
}

}  // namespace

bool verify_certificate(const CoveringCertificate& cert, const DistanceOracle& oracle) {
  for (std::size_t c : cert.centers) require_index(c, oracle);
  for (const auto& a : cert.assignment) {
    require_index(a.member, oracle);
    require_index(a.center, oracle);
  }
  if (!(cert.epsilon > 0.0) || !std::isfinite(cert.epsilon)) return false;
  if (cert.assignment.size() != oracle.size()) return false;

  std::vector<bool> is_center(oracle.size(), false);
  for (std::size_t c : cert.centers) is_center[c] = true;
  std::vector<bool> seen(oracle.size(), false);
  for (const auto& a : cert.assignment) {
    if (seen[a.member] || !is_center[a.center]) return false;
    seen[a.member] = true;
    const double actual = oracle(a.member, a.center);
    if (!std::isfinite(a.distance)) return false;
    if (!leq_tol(a.distance, actual) || !leq_tol(actual, a.distance)) return false;
    if (!leq_tol(actual, cert.epsilon) || !leq_tol(a.distance, cert.epsilon)) return false;
  }
  return true;
}

bool verify_certificate(const PackingWitness& witness, const DistanceOracle& oracle) {
  for (std::size_t i : witness.points) require_index(i, oracle);
  if (!(witness.epsilon > 0.0) || !std::isfinite(witness.epsilon)) return false;
  for (std::size_t a = 0; a < witness.points.size(); ++a) {
    for (std::size_t b = a + 1; b < witness.points.size(); ++b) {
      if (!(oracle(witness.points[a], witness.points[b]) > witness.epsilon)) return false;
    }
  }
  return true;
}

}  // namespace lambdap
