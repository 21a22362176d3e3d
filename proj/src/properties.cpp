// SPDX-License-Identifier: Apache-2.0
#include "lambdap/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lambdap/compactness.hpp"
#include "lambdap/error.hpp"
#include "lambdap/families.hpp"
#include "lambdap/truncation.hpp"

namespace lambdap {

namespace {

constexpr std::size_t kMaxAtoms = 32;
constexpr double kExponents[] = {1.0, 1.5, 2.0};

struct Trial {
  SplitMix64& rng;
  MeasureSpace space;
  Exponent p;
  TruncationLevel level;

  explicit Trial(SplitMix64& r)
      : rng(r), space(random_space(r, kMaxAtoms)), p(kExponents[r.below(3)]), level(r.uniform(0.1, 10.0)) {}

  SimpleFunction function() { return random_function(rng, space); }
  Json context() const { return {{"space", to_json(space)}, {"p", p.value()}, {"M", level.value()}}; }
};

// A check returns null on success and a counterexample otherwise.
using Check = std::function<Json(Trial&)>;

PropertyResult run(const std::string& name, std::size_t trials, SplitMix64 rng, const Check& check) {
  PropertyResult result{name, trials, 0, nullptr};
  for (std::size_t t = 0; t < trials; ++t) {
    Trial trial(rng);
    Json failure = check(trial);
    if (!failure.is_null()) {
      if (result.failures++ == 0) {
        failure["trial"] = t;
        result.counterexample = std::move(failure);
      }
    }
  }
  return result;
}

Json fail(const Trial& t, Json extra) {
  Json j = t.context();
  j.update(extra);
  return j;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const PropertyConfig& config) {
  if (config.trials == 0) throw Error(Errc::configuration, "property suite needs at least one trial");
  const std::size_t n = config.trials;
  const std::size_t n_cover = std::max<std::size_t>(1, n / 10);
  SplitMix64 streams(config.seed);
  std::vector<PropertyResult> out;
  std::uint64_t stream = 0;
  auto add = [&](const std::string& name, std::size_t trials, const Check& check) {
    out.push_back(run(name, trials, streams.split(++stream), check));
  };

  add("fnorm_below_lp_norm", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const double a = fnorm(t.space, f, t.p), b = lp_norm(t.space, f, t.p);
    return leq_tol(a, b) ? Json() : fail(t, {{"f", to_json(f)}, {"fnorm", a}, {"lp_norm", b}});
  });

  add("fnorm_below_mass_root", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const double a = fnorm(t.space, f, t.p), b = root(t.space.total_measure(), t.p);
    return leq_tol(a, b) ? Json() : fail(t, {{"f", to_json(f)}, {"fnorm", a}, {"bound", b}});
  });

  add("lambda_triangle_inequality", n, [](Trial& t) -> Json {
    const auto f = t.function(), g = t.function(), h = t.function();
    const double fh = lambda_distance(t.space, f, h, t.p);
    const double via = lambda_distance(t.space, f, g, t.p) + lambda_distance(t.space, g, h, t.p);
    return leq_tol(fh, via) ? Json() : fail(t, {{"f", to_json(f)}, {"g", to_json(g)}, {"h", to_json(h)}});
  });

  add("lambda_distance_below_lp_distance", n, [](Trial& t) -> Json {
    const auto f = t.function(), g = t.function();
    const double a = lambda_distance(t.space, f, g, t.p), b = lp_distance(t.space, f, g, t.p);
    return leq_tol(a, b) ? Json() : fail(t, {{"f", to_json(f)}, {"g", to_json(g)}});
  });

  add("truncation_contraction", n, [](Trial& t) -> Json {
    const auto f = t.function(), g = t.function();
    const double after = lambda_distance(t.space, truncate(f, t.level), truncate(g, t.level), t.p);
    const double before = lambda_distance(t.space, f, g, t.p);
    return leq_tol(after, before) ? Json()
                                  : fail(t, {{"f", to_json(f)}, {"g", to_json(g)}, {"after", after}, {"before", before}});
  });

  const Fault fault = config.fault;
  add("bounded_pair_equivalence", n, [fault](Trial& t) -> Json {
    const double m = t.level.value();
    const auto u = random_bounded_function(t.rng, t.space, m), v = random_bounded_function(t.rng, t.space, m);
    double cm = lipschitz_constant_cm(t.level);
    if (fault == Fault::negated_cm) cm = -cm;
    const double lam = lambda_distance(t.space, u, v, t.p), lp = lp_distance(t.space, u, v, t.p);
    const bool ok = leq_tol(lam, lp) && leq_tol(lp, cm * lam);
    return ok ? Json() : fail(t, {{"u", to_json(u)}, {"v", to_json(v)}, {"C_M", cm}, {"lambda", lam}, {"lp", lp}});
  });

  add("truncation_membership_bound", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const double lhs = lp_norm(t.space, truncate(f, t.level), t.p);
    const double rhs = std::max(1.0, t.level.value()) * fnorm(t.space, f, t.p);
    return leq_tol(lhs, rhs) ? Json() : fail(t, {{"f", to_json(f)}, {"lhs", lhs}, {"rhs", rhs}});
  });

  add("truncation_level_set_sandwich", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const double m = t.level.value();
    const double err_p = power(truncation_error_fnorm(t.space, f, t.level, t.p), t.p);
    const double lo = level_set_measure(t.space, f, m + 1.0), hi = level_set_measure(t.space, f, m);
    const bool ok = leq_tol(lo, err_p) && leq_tol(err_p, hi);
    return ok ? Json() : fail(t, {{"f", to_json(f)}, {"lower", lo}, {"error_p", err_p}, {"upper", hi}});
  });

  add("truncation_error_routes_agree", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const auto excess = truncation_excess(f, t.level);
    const auto generic = absolute(difference(f, truncate(f, t.level)));
    const bool ok = excess == generic &&
                    truncation_error_fnorm(t.space, f, t.level, t.p) == fnorm(t.space, difference(f, truncate(f, t.level)), t.p);
    return ok ? Json() : fail(t, {{"f", to_json(f)}});
  });

  add("truncation_error_monotone_vanishing", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const TruncationLevel higher(t.level.value() * (1.0 + t.rng.uniform01()));
    const double e1 = truncation_error_fnorm(t.space, f, t.level, t.p);
    const double e2 = truncation_error_fnorm(t.space, f, higher, t.p);
    const double top = sup_norm(f);
    const double e_top = top > 0.0 ? truncation_error_fnorm(t.space, f, TruncationLevel(top), t.p) : 0.0;
    return (e2 <= e1 && e_top == 0.0) ? Json() : fail(t, {{"f", to_json(f)}, {"higher_M", higher.value()}});
  });

  add("compose_truncations_exact", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const TruncationLevel other(t.rng.uniform(0.1, 10.0));
    const auto composed = compose_truncations(f, t.level, other);
    return composed == truncate(f, std::min(t.level, other)) ? Json()
                                                             : fail(t, {{"f", to_json(f)}, {"M2", other.value()}});
  });

  add("measure_bridge_sandwich", n, [](Trial& t) -> Json {
    const auto g = t.function();
    const double delta = std::max(t.rng.uniform01(), 1e-3);
    const auto b = measure_bridge_bounds(t.space, g, t.p, delta);
    const double mid = fnorm_pow(t.space, g, t.p);
    const bool ok = leq_tol(b.lower, mid) && leq_tol(mid, b.upper);
    return ok ? Json() : fail(t, {{"g", to_json(g)}, {"delta", delta}, {"lower", b.lower}, {"upper", b.upper}});
  });

  add("level_set_measure_bounds", n, [](Trial& t) -> Json {
    const auto f = t.function();
    const double m = t.level.value();
    const double a = level_set_measure(t.space, f, m), b = level_set_measure(t.space, f, 2.0 * m);
    const bool ok = b <= a && a >= 0.0 && leq_tol(a, t.space.total_measure()) &&
                    a == level_set_measure(t.space, absolute(f), m);
    return ok ? Json() : fail(t, {{"f", to_json(f)}});
  });

  add("cover_packing_duality", n_cover, [](Trial& t) -> Json {
    std::vector<SimpleFunction> members;
    const std::size_t count = 1 + t.rng.below(24);
    for (std::size_t i = 0; i < count; ++i) members.push_back(t.function());
    const FunctionFamily family(t.space, std::move(members));
    const double eps = t.rng.uniform(0.02, 2.0);
    for (const auto& oracle : {DistanceOracle::lambda(family, t.p), DistanceOracle::lp(family, t.p, t.level)}) {
      const auto cover = greedy_cover(oracle, eps);
      const auto packing = greedy_packing(oracle, 2.0 * eps);
      if (!verify_certificate(cover, oracle) || !verify_certificate(packing, oracle) || packing.size() > cover.size()) {
        return fail(t, {{"family", to_json(family)}, {"epsilon", eps}, {"metric", metric_json(oracle)}});
      }
    }
    return {};
  });

  add("almost_equibounded_equivalence", n_cover, [](Trial& t) -> Json {
    std::vector<SimpleFunction> members;
    const std::size_t count = 1 + t.rng.below(16);
    for (std::size_t i = 0; i < count; ++i) members.push_back(t.function());
    const FunctionFamily family(t.space, std::move(members));
    const auto profile = condition_i_profile(family, t.p, LevelGrid::geometric(32.0));
    return check_almost_equibounded_equivalence(profile) ? Json() : fail(t, {{"family", to_json(family)}});
  });

  return out;
}

Json to_json(const PropertyResult& r) {
  return {{"name", r.name},
          {"trials", r.trials},
          {"failures", r.failures},
          {"passed", r.passed()},
          {"counterexample", r.counterexample}};
}

}  // namespace lambdap
