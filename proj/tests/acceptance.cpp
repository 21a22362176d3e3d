// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [path-to-lambdap-cli]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lambdap/compactness.hpp"
#include "lambdap/families.hpp"
#include "lambdap/io.hpp"
#include "test_oracles.hpp"

namespace {

using namespace lambdap;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kTrials = 10'000;
constexpr std::size_t kMaxAtoms = 32;
constexpr double kTol = 1e-12;
constexpr double kExponents[] = {1.0, 1.5, 2.0};
const std::vector<std::uint64_t> kLadder{8, 16, 32};

// a <= b within 1e-12 relative to the larger magnitude (floor 1e-15).
bool within(double a, double b) { return a <= b + kTol * std::max({std::abs(a), std::abs(b), 0.0}) + 1e-15; }

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
  double time_limit_s = 0;  // 0: none
};

Exponent pick_p(SplitMix64& rng) { return Exponent(kExponents[rng.below(3)]); }

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

FunctionFamily spikes(std::uint64_t n) { return generate({GeneratorKind::vanishing_spike, n}); }
FunctionFamily indicators(std::uint64_t n) { return generate({GeneratorKind::escaping_indicator, n}); }
FunctionFamily constants(std::uint64_t n) { return generate({GeneratorKind::constants, n}); }
FunctionFamily bounded(std::uint64_t n, std::uint64_t seed, std::size_t atoms, double bound) {
  GeneratorSpec spec{GeneratorKind::bounded_random, n, seed};
  spec.atoms = atoms;
  spec.bound = bound;
  return generate(spec);
}

Outcome contraction() {
  SplitMix64 rng(101);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    const auto f = random_function(rng, s), g = random_function(rng, s);
    const TruncationLevel m(rng.uniform(0.1, 10.0));
    const Exponent p = pick_p(rng);
    if (!within(lambda_distance(s, truncate(f, m), truncate(g, m), p), lambda_distance(s, f, g, p))) ++bad;
  }
  return {bad == 0, std::to_string(kTrials) + " trials, " + std::to_string(bad) + " violations"};
}

Outcome bounded_pairs() {
  SplitMix64 rng(202);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    const TruncationLevel m(rng.uniform(0.1, 10.0));
    const Exponent p = pick_p(rng);
    const auto u = random_bounded_function(rng, s, m.value()), v = random_bounded_function(rng, s, m.value());
    const double lam = lambda_distance(s, u, v, p), lp = lp_distance(s, u, v, p);
    const double cm = std::max(1.0, 2.0 * m.value());
    if (lipschitz_constant_cm(m) != cm || !within(lam, lp) || !within(lp, cm * lam)) ++bad;
  }
  return {bad == 0, std::to_string(kTrials) + " trials, " + std::to_string(bad) + " violations"};
}

Outcome sandwich() {
  SplitMix64 rng(303);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    const auto f = random_function(rng, s);
    const TruncationLevel m(rng.uniform(0.1, 10.0));
    const Exponent p = pick_p(rng);
    const double err_p = power(truncation_error_fnorm(s, f, m, p), p);
    if (!within(level_set_measure(s, f, m.value() + 1.0), err_p) || !within(err_p, level_set_measure(s, f, m.value()))) {
      ++bad;
    }
  }
  // Exact binary inputs: dyadic values and levels.
  std::size_t mismatched = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    std::vector<double> v(s.size());
    for (double& x : v) x = std::ldexp(static_cast<double>(static_cast<long>(rng.below(2049)) - 1024), -static_cast<int>(rng.below(8)));
    const SimpleFunction f(s, std::move(v));
    const TruncationLevel m(std::ldexp(static_cast<double>(1 + rng.below(64)), -static_cast<int>(rng.below(5))));
    const auto excess = truncation_excess(f, m);
    const auto generic = absolute(difference(f, truncate(f, m)));
    const Exponent p = pick_p(rng);
    if (excess != generic || truncation_error_fnorm(s, f, m, p) != fnorm(s, difference(f, truncate(f, m)), p)) {
      ++mismatched;
    }
  }
  return {bad == 0 && mismatched == 0, std::to_string(kTrials) + " sandwich trials, " + std::to_string(bad) +
                                           " violations; " + std::to_string(mismatched) + " route mismatches"};
}

Outcome almost_equibounded() {
  const auto grid = LevelGrid::geometric(64);
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t n : kLadder) {
    for (const auto& fam : {spikes(n), indicators(n), constants(n), bounded(n, 0x5eed, 16, 2.0)}) {
      for (double p : kExponents) {
        ++checked;
        if (!check_almost_equibounded_equivalence(condition_i_profile(fam, Exponent(p), grid))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " profiles, " + std::to_string(bad) + " failures"};
}

Outcome converse_construction() {
  std::ostringstream detail;
  bool ok = true;
  for (std::uint64_t n : kLadder) {
    const auto start = Clock::now();
    const auto fam = spikes(n);
    const auto report = assemble_lambda_net(fam, Exponent(1), 0.2, LevelGrid::geometric(64));
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool confirmed = report.net.has_value();
    if (report.net) {
      const auto w = vec(fam.space().weights());
      for (const auto& a : report.net->assignment) {
        const double d = oracle::fnorm(w, oracle::minus(vec(fam[a.member].values()), vec(fam[a.center].values())), 1.0);
        confirmed = confirmed && d <= 0.2;
      }
    }
    const bool pass = report.verdict == Verdict::certified_net && confirmed && secs < 5.0;
    ok = ok && pass;
    detail << "n=" << n << ": " << to_string(report.verdict) << ", net " << (report.net ? report.net->size() : 0)
           << ", " << secs << " s; ";
  }
  return {ok, detail.str()};
}

Outcome forward_construction() {
  SplitMix64 rng(606);
  const auto grid = LevelGrid::geometric(64);
  std::size_t transfers = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double pv : {1.0, 2.0}) {
      const Exponent p(pv);
      const auto fam = bounded(8 + rng.below(40), seed, 1 + rng.below(kMaxAtoms), 2.0);
      const double eps = rng.uniform(0.1, 3.0);
      for (double m : grid.levels()) {
        if (m > 4.0) break;
        const TruncationLevel level(m);
        const auto net = greedy_cover(DistanceOracle::lambda(fam, p), eps / lipschitz_constant_cm(level));
        auto out = transfer_net_to_truncations(fam, net, level, p);
        out.epsilon = eps;
        ++transfers;
        if (!verify_certificate(out, DistanceOracle::lp(fam, p, level))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(transfers) + " transfers at M in {1,2,3,4}, " + std::to_string(bad) + " failures"};
}

Outcome negative_instances() {
  std::ostringstream detail;
  bool ok = true;
  for (std::uint64_t n : kLadder) {
    const auto fam = indicators(n);
    const auto report = assemble_lambda_net(fam, Exponent(1), 1.0, LevelGrid::geometric(64));
    bool pairwise = true;
    const auto w = vec(fam.space().weights());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pairwise = pairwise && oracle::fnorm(w, oracle::minus(vec(fam[i].values()), vec(fam[j].values())), 1.0) == 2.0;
    ok = ok && pairwise && report.packing.size() == n;
    detail << "packing(" << n << ")=" << report.packing.size() << "; ";
  }
  const auto trend = ladder_trend(indicators, kLadder, Exponent(1), 1.0, LevelGrid::geometric(64));
  ok = ok && trend.verdict == TrendVerdict::tb_refuting;
  detail << "ladder " << to_string(trend.verdict) << "; ";

  bool pinned = true;
  for (std::uint64_t n : kLadder) {
    const auto fam = constants(n);
    for (const auto& rec : condition_i_profile(fam, Exponent(1), LevelGrid::geometric(64)).records) {
      if (rec.level < static_cast<double>(n)) pinned = pinned && rec.sup_level_set_measure == fam.space().total_measure();
    }
  }
  ok = ok && pinned;
  detail << "constants pinned at mu(X): " << (pinned ? "yes" : "no");
  return {ok, detail.str()};
}

Outcome compose_exact() {
  SplitMix64 rng(808);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    const auto f = random_function(rng, s);
    const TruncationLevel a(rng.uniform(0.1, 10.0)), b(rng.uniform(0.1, 10.0));
    if (compose_truncations(f, a, b) != truncate(f, std::min(a, b))) ++bad;
  }
  return {bad == 0, std::to_string(kTrials) + " trials, " + std::to_string(bad) + " mismatches"};
}

Outcome bounded_equivalence() {
  SplitMix64 rng(909);
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto fam = bounded(1 + rng.below(64), seed, 1 + rng.below(kMaxAtoms), 2.0);
    const Exponent p = pick_p(rng);
    if (!bounded_family_equivalence(fam, 2.0, p, rng.uniform(0.1, 3.0)).holds) ++bad;
  }
  return {bad == 0, "100 families, " + std::to_string(bad) + " failures"};
}

Outcome measure_bridge() {
  SplitMix64 rng(1010);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    const auto g = random_function(rng, s);
    const Exponent p = pick_p(rng);
    const double delta = 1.0 - rng.uniform01();  // (0, 1]
    const auto b = measure_bridge_bounds(s, g, p, delta);
    const double mid = fnorm_pow(s, g, p);
    if (!within(b.lower, mid) || !within(mid, b.upper)) ++bad;
  }
  return {bad == 0, std::to_string(kTrials) + " pairs, " + std::to_string(bad) + " violations"};
}

Outcome duality() {
  SplitMix64 rng(1111);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const auto s = random_space(rng, kMaxAtoms);
    std::vector<SimpleFunction> members;
    for (std::size_t i = 0; i < 1 + rng.below(40); ++i) members.push_back(random_function(rng, s));
    const FunctionFamily fam(s, std::move(members));
    const Exponent p = pick_p(rng);
    const double eps = rng.uniform(0.02, 2.0);
    for (const auto& d : {DistanceOracle::lambda(fam, p), DistanceOracle::lp(fam, p, TruncationLevel(rng.uniform(0.1, 10.0)))}) {
      const auto cover = greedy_cover(d, eps);
      const auto packing = greedy_packing(d, 2 * eps);
      if (!verify_certificate(cover, d) || !verify_certificate(packing, d) || packing.size() > cover.size()) ++bad;
    }
  }
  return {bad == 0, "1000 families x 2 metrics, " + std::to_string(bad) + " violations"};
}

int run_cli(const std::string& cli, const std::string& args) {
  const int status = std::system((cli + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome round_trip(const std::string& cli) {
  std::size_t certs = 0, bad = 0;
  auto check_report = [&](const CompactnessReport& report, const FunctionFamily& fam) {
    const auto lambda = oracle_from_json(Json::parse(R"({"kind":"lambda","p":)" + Json(report.p).dump() + R"(,"level":null})"), fam);
    const Json j = Json::parse(to_json(report).dump());
    if (!j["net"].is_null()) {
      ++certs;
      if (!verify_certificate(cover_from_json(j["net"]["certificate"]), lambda)) ++bad;
    }
    ++certs;
    if (!verify_certificate(packing_from_json(j["packing"]["certificate"]), lambda)) ++bad;
  };
  const auto grid = LevelGrid::geometric(64);
  for (std::uint64_t n : kLadder) {
    for (double p : kExponents) {
      for (const auto& fam : {spikes(n), indicators(n), constants(n), bounded(n, 7, 16, 2.0)}) {
        check_report(assemble_lambda_net(fam, Exponent(p), 0.2, grid), fam);
        check_report(assemble_lambda_net(fam, Exponent(p), 1.0, grid), fam);
        for (double m : {1.0, 4.0}) {
          const auto r = condition_ii_check(fam, TruncationLevel(m), Exponent(p), 0.3);
          const auto d = oracle_from_json(Json::parse(metric_json(DistanceOracle::lp(fam, Exponent(p), TruncationLevel(m))).dump()), fam);
          ++certs;
          if (!verify_certificate(cover_from_json(Json::parse(to_json(r.certificate).dump())), d)) ++bad;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << certs << " certificates, " << bad << " failed after round trip";
  if (cli.empty()) return {false, detail.str() + "; CLI path not given"};

  const auto out = (std::filesystem::temp_directory_path() / "lambdap_acceptance").string();
  struct Case {
    const char* generator;
    const char* epsilon;
    int expected;
  };
  bool exits = true;
  for (const Case c : {Case{"vanishing-spike", "0.2", 0}, Case{"escaping-indicator", "1", 1}, Case{"constants", "1", 1}}) {
    const std::string dir = out + "/" + c.generator;
    const int code = run_cli(cli, std::string("--generator ") + c.generator + " --ladder 8,16,32 --p 1 --epsilon " +
                                      c.epsilon + " --out " + dir + " --format json,csv");
    const int verify = run_cli(cli, "--verify-only " + dir + "/report.json");
    exits = exits && code == c.expected && verify == 0;
    detail << "; " << c.generator << " exit " << code << " (want " << c.expected << "), verify-only exit " << verify;
  }
  return {bad == 0 && exits, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {"AC01", "truncation contraction in the lambda metric", contraction, 10.0},
      {"AC02", "bounded-pair two-sided bound with C_M = max(1, 2M)", bounded_pairs},
      {"AC03", "level-set sandwich and bitwise excess routes", sandwich},
      {"AC04", "almost-equibounded equivalence on built-in generators", almost_equibounded},
      {"AC05", "converse construction certifies vanishing spikes", converse_construction},
      {"AC06", "forward construction transfers nets to truncations", forward_construction},
      {"AC07", "negative instances: packings, ladder verdict, pinned tails", negative_instances},
      {"AC08", "composed truncations equal truncation at the minimum level", compose_exact},
      {"AC09", "bounded-family equivalence on 100 seeded families", bounded_equivalence},
      {"AC10", "measure bridge sandwich", measure_bridge},
      {"AC11", "cover-packing duality under lambda and L^p", duality},
      {"AC12", "JSON round trip and CLI exit codes", [&cli] { return round_trip(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += "; over time limit";
    }
    failed += outcome.pass ? 0 : 1;
    std::printf("[%s] %s %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str(), secs);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
