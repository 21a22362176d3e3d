// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lambdap/measure.hpp"

namespace lambdap {

/// SplitMix64 (Steele, Lea, Flood 2014). The pinned generator for every
/// seeded fixture; its output sequence is fully specified, so families are
/// reproducible across platforms and languages. Doubles are derived by hand
/// rather than through <random> distributions, whose algorithms vary
/// between standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent stream keyed by `salt`.
  SplitMix64 split(std::uint64_t salt) noexcept { return SplitMix64((*this)() ^ (salt * 0xd1b54a32d192ed03ULL)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t below(std::size_t n) noexcept { return static_cast<std::size_t>((*this)() % n); }

 private:
  std::uint64_t state_;
};

enum class GeneratorKind { vanishing_spike, escaping_indicator, constants, bounded_random, custom_json };

const char* to_string(GeneratorKind kind) noexcept;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::vanishing_spike;
  std::uint64_t growth_index = 1;
  std::uint64_t seed = 0x5eed;
  /// bounded-random: values uniform in [-bound, bound].
  double bound = 2.0;
  /// bounded-random: number of atoms; weights uniform in [0.25, 1.25).
  std::size_t atoms = 16;
  /// constants: weights of the fixed finite-measure space.
  std::vector<double> constant_weights{1.0, 1.0};
  /// custom-json: input file; "{n}" is replaced by the growth index.
  std::string path;
};

/// Parses "kind[:key=value,...]", e.g. "bounded-random:atoms=8,bound=2"
/// or "custom-json:path=fam_{n}.json". Throws Error(configuration).
GeneratorSpec parse_generator(std::string_view text);

/// Deterministic family described by `spec`:
///  - vanishing-spike:    weights 2^-i (i = 1..n), f_k = k * chi_k
///  - escaping-indicator: n unit atoms, f_k = chi_k
///  - constants:          f_k = k on constant_weights, k = 1..n
///  - bounded-random:     n members with seeded values in [-bound, bound]
///  - custom-json:        loaded from `path`
FunctionFamily generate(const GeneratorSpec& spec);

/// Random space with 1..max_atoms atoms, for property trials.
MeasureSpace random_space(SplitMix64& rng, std::size_t max_atoms);

/// Random function on `space` mixing several magnitudes, exact dyadic
/// values, zeros and values on either side of 1.
SimpleFunction random_function(SplitMix64& rng, const MeasureSpace& space);

/// Random function with every value in [-bound, bound].
SimpleFunction random_bounded_function(SplitMix64& rng, const MeasureSpace& space, double bound);

}  // namespace lambdap
