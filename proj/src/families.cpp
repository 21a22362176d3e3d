// SPDX-License-Identifier: Apache-2.0
#include "lambdap/families.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lambdap/error.hpp"
#include "lambdap/io.hpp"

namespace lambdap {

const char* to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::vanishing_spike: return "vanishing-spike";
    case GeneratorKind::escaping_indicator: return "escaping-indicator";
    case GeneratorKind::constants: return "constants";
    case GeneratorKind::bounded_random: return "bounded-random";
    case GeneratorKind::custom_json: return "custom-json";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad_spec(const std::string& what) { throw Error(Errc::configuration, "generator: " + what); }

double parse_double(std::string_view s, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) bad_spec("bad number for '" + std::string(key) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view s, std::string_view key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) bad_spec("bad integer for '" + std::string(key) + "'");
  return v;
}

}  // namespace

GeneratorSpec parse_generator(std::string_view text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  if (name == "vanishing-spike") {
    spec.kind = GeneratorKind::vanishing_spike;
  } else if (name == "escaping-indicator") {
    spec.kind = GeneratorKind::escaping_indicator;
  } else if (name == "constants") {
    spec.kind = GeneratorKind::constants;
  } else if (name == "bounded-random") {
    spec.kind = GeneratorKind::bounded_random;
  } else if (name == "custom-json") {
    spec.kind = GeneratorKind::custom_json;
  } else {
    bad_spec("unknown kind '" + std::string(name) + "'");
  }
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad_spec("expected key=value, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "seed") {
      spec.seed = parse_uint(value, key);
    } else if (key == "bound") {
      spec.bound = parse_double(value, key);
    } else if (key == "atoms") {
      spec.atoms = parse_uint(value, key);
    } else if (key == "mass") {
      // constants: space of two equal atoms with this total mass
      const double m = parse_double(value, key);
      spec.constant_weights = {m / 2, m / 2};
    } else if (key == "path") {
      spec.path = std::string(value);
    } else {
      bad_spec("unknown parameter '" + std::string(key) + "'");
    }
  }
  if (spec.kind == GeneratorKind::custom_json && spec.path.empty()) bad_spec("custom-json needs path=<file>");
  if (spec.kind == GeneratorKind::bounded_random && (spec.atoms == 0 || !(spec.bound > 0.0) || !std::isfinite(spec.bound))) {
    bad_spec("bounded-random needs atoms >= 1 and a positive finite bound");
  }
  return spec;
}

FunctionFamily generate(const GeneratorSpec& spec) {
  const std::uint64_t n = spec.growth_index;
  if (n == 0) bad_spec("growth index must be >= 1");
  const std::string label = std::string(to_string(spec.kind)) + "-" + std::to_string(n);
  std::vector<SimpleFunction> members;

  switch (spec.kind) {
    case GeneratorKind::vanishing_spike: {
      std::vector<double> w(n);
      for (std::uint64_t i = 0; i < n; ++i) w[i] = std::ldexp(1.0, -static_cast<int>(i + 1));
      MeasureSpace space(std::move(w));
      for (std::uint64_t k = 0; k < n; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = static_cast<double>(k + 1);
        members.emplace_back(space, std::move(v));
      }
      return FunctionFamily(std::move(space), std::move(members), label, n);
    }
    case GeneratorKind::escaping_indicator: {
      MeasureSpace space(std::vector<double>(n, 1.0));
      for (std::uint64_t k = 0; k < n; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = 1.0;
        members.emplace_back(space, std::move(v));
      }
      return FunctionFamily(std::move(space), std::move(members), label, n);
    }
    case GeneratorKind::constants: {
      MeasureSpace space(spec.constant_weights);
      for (std::uint64_t k = 1; k <= n; ++k) {
        members.emplace_back(space, std::vector<double>(space.size(), static_cast<double>(k)));
      }
      return FunctionFamily(std::move(space), std::move(members), label, n);
    }
    case GeneratorKind::bounded_random: {
      SplitMix64 rng = SplitMix64(spec.seed).split(n);
      std::vector<double> w(spec.atoms);
      for (double& x : w) x = rng.uniform(0.25, 1.25);
      MeasureSpace space(std::move(w));
      for (std::uint64_t k = 0; k < n; ++k) members.push_back(random_bounded_function(rng, space, spec.bound));
      return FunctionFamily(std::move(space), std::move(members), label, n);
    }
    case GeneratorKind::custom_json: {
      std::string path = spec.path;
      if (const auto at = path.find("{n}"); at != std::string::npos) path.replace(at, 3, std::to_string(n));
      FunctionFamily loaded = read_family_file(path);
      return FunctionFamily(loaded.space(), {loaded.members().begin(), loaded.members().end()},
                            loaded.label().empty() ? label : loaded.label(), n);
    }
  }
  bad_spec("unhandled kind");
}

MeasureSpace random_space(SplitMix64& rng, std::size_t max_atoms) {
  const std::size_t atoms = 1 + rng.below(max_atoms);
  std::vector<double> w(atoms);
  const bool dyadic = rng.below(4) == 0;
  for (double& x : w) {
    x = dyadic ? std::ldexp(1.0, -static_cast<int>(rng.below(6))) : rng.uniform(0.01, 2.0);
  }
  return MeasureSpace(std::move(w));
}

SimpleFunction random_function(SplitMix64& rng, const MeasureSpace& space) {
  static constexpr double kScales[] = {0.5, 1.5, 4.0, 20.0};
  const double scale = kScales[rng.below(4)];
  std::vector<double> v(space.size());
  for (double& x : v) {
    switch (rng.below(10)) {
      case 0: x = 0.0; break;
      case 1: x = static_cast<double>(static_cast<long>(rng.below(65)) - 32) / 4.0; break;
      default: x = rng.uniform(-scale, scale); break;
    }
  }
  return SimpleFunction(space, std::move(v));
}

SimpleFunction random_bounded_function(SplitMix64& rng, const MeasureSpace& space, double bound) {
  std::vector<double> v(space.size());
  for (double& x : v) x = rng.uniform(-bound, bound);
  return SimpleFunction(space, std::move(v));
}

}  // namespace lambdap
