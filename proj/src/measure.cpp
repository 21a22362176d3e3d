// SPDX-License-Identifier: Apache-2.0
#include "lambdap/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <utility>

#include "lambdap/error.hpp"

namespace lambdap {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

// FNV-1a over the atom count and the bit patterns of the weights.
std::string content_id(std::span<const double> weights) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(weights.size());
  for (double w : weights) mix(std::bit_cast<std::uint64_t>(w));
  char buf[24];
  std::snprintf(buf, sizeof buf, "w%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

MeasureSpace::MeasureSpace(std::vector<double> weights, std::string id) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(Errc::invalid_input, "measure space needs at least one atom");
  CompensatedSum total;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw Error(Errc::invalid_input, "atom " + std::to_string(i) + " has non-positive or non-finite weight");
    }
    total.add(w);
  }
  total_ = total.value();
  if (!std::isfinite(total_)) throw Error(Errc::invalid_input, "total measure overflows");
  id_ = id.empty() ? content_id(weights_) : std::move(id);
}

MeasureSpace make_space(std::vector<double> weights) { return MeasureSpace(std::move(weights)); }

SimpleFunction::SimpleFunction(std::string space_id, std::vector<double> values)
    : values_(std::move(values)), space_id_(std::move(space_id)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(Errc::invalid_input, "value at atom " + std::to_string(i) + " is not finite");
    }
  }
}

SimpleFunction::SimpleFunction(const MeasureSpace& space, std::vector<double> values)
    : SimpleFunction(space.id(), std::move(values)) {
  if (values_.size() != space.size()) {
    throw Error(Errc::invalid_input, "function has " + std::to_string(values_.size()) + " values but space has " +
                                         std::to_string(space.size()) + " atoms");
  }
}

SimpleFunction SimpleFunction::with_values(std::vector<double> values) const {
  if (values.size() != values_.size()) throw Error(Errc::invalid_input, "value count does not match the space");
  return SimpleFunction(space_id_, std::move(values));
}

void require_on(const MeasureSpace& space, const SimpleFunction& f) {
  if (f.space_id() != space.id() || f.size() != space.size()) {
    throw Error(Errc::space_mismatch, "function on space '" + f.space_id() + "' used with space '" + space.id() + "'");
  }
}

SimpleFunction difference(const SimpleFunction& f, const SimpleFunction& g) {
  if (f.space_id() != g.space_id() || f.size() != g.size()) {
    throw Error(Errc::space_mismatch, "difference of functions on different spaces");
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - g[i];
  return f.with_values(std::move(out));
}

SimpleFunction absolute(const SimpleFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v = std::abs(v);
  return f.with_values(std::move(out));
}

double sup_norm(const SimpleFunction& f) noexcept {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double level_set_measure(const MeasureSpace& space, const SimpleFunction& f, double threshold) {
  require_on(space, f);
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(Errc::invalid_input, "level-set threshold must be positive and finite");
  }
  CompensatedSum mass;
  const auto w = space.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(f[i]) > threshold) mass.add(w[i]);
  }
  return mass.value();
}

FunctionFamily::FunctionFamily(MeasureSpace space, std::vector<SimpleFunction> members, std::string label,
                               std::optional<std::uint64_t> growth_index)
    : space_(std::move(space)), members_(std::move(members)), label_(std::move(label)), growth_index_(growth_index) {
  if (members_.empty()) throw Error(Errc::invalid_input, "function family must have at least one member");
  for (const auto& f : members_) require_on(space_, f);
  if (growth_index_ && *growth_index_ == 0) throw Error(Errc::invalid_input, "growth index must be positive");
}

}  // namespace lambdap
