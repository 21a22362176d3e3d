// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lambdap/measure.hpp"
#include "lambdap/metrics.hpp"
#include "lambdap/truncation.hpp"

namespace lambdap {

enum class MetricKind {
  lambda,  // fnorm(f - g)
  lp,      // ||f - g||_p, optionally on the family truncated at a level
};

const char* to_string(MetricKind kind) noexcept;

/// Pairwise distance between the members of one family, by index.
///
/// An L^p oracle built with a truncation level measures distances between
/// the truncated members T_M f, so its points differ from the family's.
class DistanceOracle {
 public:
  static DistanceOracle lambda(const FunctionFamily& family, Exponent p);
  static DistanceOracle lp(const FunctionFamily& family, Exponent p,
                           std::optional<TruncationLevel> level = std::nullopt);

  double operator()(std::size_t i, std::size_t j) const;

  std::size_t size() const noexcept { return points_.size(); }
  MetricKind kind() const noexcept { return kind_; }
  Exponent exponent() const noexcept { return p_; }
  std::optional<TruncationLevel> level() const noexcept { return level_; }
  const MeasureSpace& space() const noexcept { return space_; }
  const std::vector<SimpleFunction>& points() const noexcept { return points_; }

 private:
  DistanceOracle(MetricKind kind, const MeasureSpace& space, std::vector<SimpleFunction> points, Exponent p,
                 std::optional<TruncationLevel> level);

  MetricKind kind_;
  MeasureSpace space_;
  std::vector<SimpleFunction> points_;
  Exponent p_;
  std::optional<TruncationLevel> level_;
};

/// Symmetric matrix of all oracle distances, filled once per engine run.
/// Rows are evaluated in parallel; see worker_threads().
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const DistanceOracle& oracle);

  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  std::size_t size() const noexcept { return n_; }
  double diameter() const noexcept;

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Worker count for distance evaluation: hardware concurrency, capped by
/// the LAMBDAP_THREADS environment variable when it holds a positive integer.
unsigned worker_threads() noexcept;

/// Samples up to `samples` index triples and checks d(i,k) <= d(i,j) + d(j,k)
/// (with the shared slack), plus symmetry and d(i,i) = 0.
bool spot_check_metric(const DistanceOracle& oracle, std::size_t samples, std::uint64_t seed);

struct Assignment {
  std::size_t member;
  std::size_t center;
  double distance;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Evidence that every member lies within `epsilon` of a center.
/// Centers are member indices; `assignment` holds one entry per member.
struct CoveringCertificate {
  double epsilon = 0.0;
  std::vector<std::size_t> centers;
  std::vector<Assignment> assignment;

  std::size_t size() const noexcept { return centers.size(); }
  friend bool operator==(const CoveringCertificate&, const CoveringCertificate&) = default;
};

/// Members whose pairwise distances all exceed `epsilon`. Any covering by
/// balls of radius epsilon/2 needs at least size() centers.
struct PackingWitness {
  double epsilon = 0.0;
  std::vector<std::size_t> points;

  std::size_t size() const noexcept { return points.size(); }
  friend bool operator==(const PackingWitness&, const PackingWitness&) = default;
};

/// Lowest uncovered index becomes the next center and claims every
/// uncovered member within epsilon. Deterministic.
CoveringCertificate greedy_cover(const DistanceOracle& oracle, double epsilon);
CoveringCertificate greedy_cover(const DistanceMatrix& distances, double epsilon);

/// Scans members by index and keeps each one farther than epsilon from all
/// kept members. The result is maximal.
PackingWitness greedy_packing(const DistanceOracle& oracle, double epsilon);
PackingWitness greedy_packing(const DistanceMatrix& distances, double epsilon);

/// Recomputes every distance from the oracle. A cover is valid when each
/// member appears exactly once, its center is listed, the recorded distance
/// matches the recomputed one and neither exceeds epsilon (shared slack).
/// A packing is valid when every pair is strictly farther than epsilon.
/// Indices outside the oracle throw Error(invalid_input).
bool verify_certificate(const CoveringCertificate& cert, const DistanceOracle& oracle);
bool verify_certificate(const PackingWitness& witness, const DistanceOracle& oracle);

}  // namespace lambdap
