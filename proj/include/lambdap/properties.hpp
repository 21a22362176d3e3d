// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lambdap/io.hpp"

namespace lambdap {

/// Deliberate defects for mutation-testing the suite itself.
enum class Fault {
  none,
  negated_cm,  // uses -C_M in the bounded-pair upper bound
};

struct PropertyConfig {
  std::size_t trials = 10'000;
  std::uint64_t seed = 0x5eed;
  Fault fault = Fault::none;
};

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  Json counterexample;  // first failing input, null when all passed

  bool passed() const noexcept { return failures == 0; }
};

/// Runs every randomized inequality check of the library for
/// `config.trials` trials each (covering-level checks use trials / 10).
/// Inputs: spaces of up to 32 atoms, levels M in [0.1, 10], p in {1, 1.5, 2}.
/// Throws Error(configuration) when trials is zero.
std::vector<PropertyResult> run_property_suite(const PropertyConfig& config);

Json to_json(const PropertyResult& result);

}  // namespace lambdap
