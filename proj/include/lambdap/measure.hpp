// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lambdap {

/// Neumaier-compensated running sum. Keeps the rounding error of every
/// addition in a separate term so long sums of mixed magnitudes stay
/// within a few ulps of the exact value.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// A finite discrete measure: atoms with strictly positive finite weights.
///
/// Infinite or merely sigma-finite spaces are emulated by ladders of
/// growing atom sets; a single MeasureSpace always has finite total mass.
class MeasureSpace {
 public:
  /// Throws Error(invalid_input) on an empty list or a weight that is
  /// nonpositive or not finite. An empty `id` is replaced by a content
  /// hash of the weights, so equal weight lists get equal ids.
  explicit MeasureSpace(std::vector<double> weights, std::string id = {});

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double total_measure() const noexcept { return total_; }
  const std::string& id() const noexcept { return id_; }

  friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

 private:
  std::vector<double> weights_;
  double total_;
  std::string id_;
};

MeasureSpace make_space(std::vector<double> weights);

/// Real function that is constant on each atom of a MeasureSpace.
///
/// Every such function lies in the asymptotic L_p space of its (finite)
/// space: min(|f|,1) is bounded by 1 and the total measure is finite.
class SimpleFunction {
 public:
  /// Throws Error(invalid_input) if the value count differs from the atom
  /// count or a value is NaN/infinite.
  SimpleFunction(const MeasureSpace& space, std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::string& space_id() const noexcept { return space_id_; }

  /// A function on the same space with new values (same validation).
  SimpleFunction with_values(std::vector<double> values) const;

  friend bool operator==(const SimpleFunction&, const SimpleFunction&) = default;

 private:
  SimpleFunction(std::string space_id, std::vector<double> values);

  std::vector<double> values_;
  std::string space_id_;
};

/// Throws Error(space_mismatch) unless `f` was built on `space`.
void require_on(const MeasureSpace& space, const SimpleFunction& f);

/// Atomwise f - g; both must live on the same space.
SimpleFunction difference(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction absolute(const SimpleFunction& f);
double sup_norm(const SimpleFunction& f) noexcept;

/// mu({x : |f(x)| > threshold}). Strict inequality: atoms with
/// |f| == threshold are excluded.
double level_set_measure(const MeasureSpace& space, const SimpleFunction& f, double threshold);

/// Non-empty list of functions over one space.
class FunctionFamily {
 public:
  FunctionFamily(MeasureSpace space, std::vector<SimpleFunction> members, std::string label = {},
                 std::optional<std::uint64_t> growth_index = std::nullopt);

  const MeasureSpace& space() const noexcept { return space_; }
  std::span<const SimpleFunction> members() const noexcept { return members_; }
  const SimpleFunction& operator[](std::size_t i) const noexcept { return members_[i]; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::string& label() const noexcept { return label_; }
  std::optional<std::uint64_t> growth_index() const noexcept { return growth_index_; }

  friend bool operator==(const FunctionFamily&, const FunctionFamily&) = default;

 private:
  MeasureSpace space_;
  std::vector<SimpleFunction> members_;
  std::string label_;
  std::optional<std::uint64_t> growth_index_;
};

}  // namespace lambdap
