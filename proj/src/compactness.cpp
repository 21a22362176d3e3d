// SPDX-License-Identifier: Apache-2.0
#include "lambdap/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "lambdap/error.hpp"

namespace lambdap {

LevelGrid::LevelGrid(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(Errc::configuration, "level grid is empty");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i]) || !(levels_[i] > 0.0)) {
      throw Error(Errc::configuration, "level grid entries must be positive and finite");
    }
    if (i > 0 && !(levels_[i] > levels_[i - 1])) throw Error(Errc::configuration, "level grid must be strictly increasing");
  }
}

LevelGrid LevelGrid::geometric(double max_level) {
  if (!std::isfinite(max_level) || !(max_level >= 1.0)) throw Error(Errc::configuration, "grid maximum must be >= 1");
  std::vector<double> levels;
  for (double m = 1.0; m <= max_level; m *= 2.0) {
    levels.push_back(m);
    levels.push_back(m + 1.0);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return LevelGrid(std::move(levels));
}

ConditionProfile condition_i_profile(const FunctionFamily& family, Exponent p, const LevelGrid& grid) {
  ConditionProfile profile{family.label(), p.value(), {}};
  profile.records.reserve(grid.size());
  for (double m : grid.levels()) {
    const TruncationLevel level(m);
    ProfileRecord rec{m, 0.0, 0.0};
    for (const auto& f : family.members()) {
      rec.sup_truncation_error = std::max(rec.sup_truncation_error, truncation_error_fnorm(family.space(), f, level, p));
      rec.sup_level_set_measure = std::max(rec.sup_level_set_measure, level_set_measure(family.space(), f, m));
    }
    profile.records.push_back(rec);
  }
  return profile;
}

namespace {

// Index of the record at level + 1, if the profile has one.
std::optional<std::size_t> companion(const std::vector<ProfileRecord>& records, double level) {
  const double target = level + 1.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (std::abs(records[k].level - target) <= kRelTol * target) return k;
  }
  return std::nullopt;
}

bool has_unit_pairs(const LevelGrid& grid) {
  const auto& l = grid.levels();
  return std::any_of(l.begin(), l.end(), [&](double m) {
    return std::any_of(l.begin(), l.end(), [&](double k) { return std::abs(k - (m + 1.0)) <= kRelTol * (m + 1.0); });
  });
}

}  // namespace

bool check_almost_equibounded_equivalence(const ConditionProfile& profile) {
  const Exponent p(profile.p);
  bool any_pair = false;
  bool holds = true;
  for (const auto& rec : profile.records) {
    const double err_p = power(rec.sup_truncation_error, p);
    if (!leq_tol(err_p, rec.sup_level_set_measure)) holds = false;
    if (const auto k = companion(profile.records, rec.level)) {
      any_pair = true;
      if (!leq_tol(profile.records[*k].sup_level_set_measure, err_p)) holds = false;
    }
  }
  if (!any_pair) throw Error(Errc::configuration, "profile has no (M, M+1) level pair");
  return holds;
}

ConditionIiResult condition_ii_check(const FunctionFamily& family, TruncationLevel level, Exponent p, double epsilon) {
  const auto oracle = DistanceOracle::lp(family, p, level);
  auto cert = greedy_cover(oracle, epsilon);
  if (!verify_certificate(cert, oracle)) throw Error(Errc::verification, "greedy L^p cover failed re-verification");
  const std::size_t size = cert.size();
  return {std::move(cert), size};
}

CoveringCertificate transfer_net_to_truncations(const FunctionFamily& family, const CoveringCertificate& net,
                                                TruncationLevel level, Exponent p) {
  if (!verify_certificate(net, DistanceOracle::lambda(family, p))) {
    throw Error(Errc::verification, "input lambda-net does not verify");
  }
  const auto oracle = DistanceOracle::lp(family, p, level);
  CoveringCertificate out{lipschitz_constant_cm(level) * net.epsilon, net.centers, {}};
  out.assignment.reserve(net.assignment.size());
  for (const auto& a : net.assignment) out.assignment.push_back({a.member, a.center, oracle(a.member, a.center)});
  if (!verify_certificate(out, oracle)) {
    throw Error(Errc::verification, "transferred net exceeds C_M times the input radius");
  }
  return out;
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::certified_net: return "certified-net";
    case Verdict::refuted_at_scale: return "refuted-at-scale";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Lift {
  LiftRecord record;
  CoveringCertificate net;
};

// Truncate at the first level whose uniform error is below `split`, cover
// the truncations in L^p at `split`, then reuse that assignment with member
// centers under the lambda metric.
std::optional<Lift> lift_from_truncations(const FunctionFamily& family, Exponent p, double epsilon, double split,
                                          const ConditionProfile& profile, const DistanceMatrix& lambda) {
  const auto rec = std::find_if(profile.records.begin(), profile.records.end(),
                                [&](const ProfileRecord& r) { return r.sup_truncation_error < split; });
  if (rec == profile.records.end()) return std::nullopt;
  const TruncationLevel level(rec->level);
  const auto lp_cover = condition_ii_check(family, level, p, split);

  Lift lift{{rec->level, split, lp_cover.size, 0.0}, {epsilon, lp_cover.certificate.centers, {}}};
  lift.net.assignment.reserve(family.size());
  for (const auto& a : lp_cover.certificate.assignment) {
    const double ambient =
        lambda_distance(family.space(), family[a.member], truncate(family[a.center], level), p);
    lift.record.ambient_max_distance = std::max(lift.record.ambient_max_distance, ambient);
    lift.net.assignment.push_back({a.member, a.center, lambda(a.member, a.center)});
  }
  // fnorm(f - T_M f_c) <= fnorm(f - T_M f) + ||T_M f - T_M f_c||_p < 2 * split
  if (!leq_tol(lift.record.ambient_max_distance, 2.0 * split)) {
    throw Error(Errc::verification, "lifted net with truncated centers exceeds its triangle bound");
  }
  return lift;
}

CoveringCertificate single_center(const DistanceMatrix& d, double epsilon) {
  CoveringCertificate cert{epsilon, {0}, {}};
  for (std::size_t j = 0; j < d.size(); ++j) cert.assignment.push_back({j, 0, d(j, 0)});
  return cert;
}

}  // namespace

CompactnessReport assemble_lambda_net(const FunctionFamily& family, Exponent p, double epsilon, const LevelGrid& grid) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) throw Error(Errc::invalid_input, "epsilon must be positive and finite");

  CompactnessReport report;
  report.label = family.label();
  report.growth_index = family.growth_index();
  report.p = p.value();
  report.epsilon = epsilon;
  report.family_size = family.size();
  report.profile = condition_i_profile(family, p, grid);
  if (has_unit_pairs(grid)) report.almost_equibounded_check = check_almost_equibounded_equivalence(report.profile);

  for (const auto& rec : report.profile.records) {
    if (!report.min_level_for_half_epsilon && rec.sup_truncation_error < epsilon / 2) {
      report.min_level_for_half_epsilon = rec.level;
    }
    const auto cover = condition_ii_check(family, TruncationLevel(rec.level), p, epsilon / 2);
    report.level_covers.push_back({rec.level, epsilon / 2, cover.size});
  }

  const auto oracle = DistanceOracle::lambda(family, p);
  const DistanceMatrix lambda(oracle);
  report.packing = greedy_packing(lambda, epsilon);
  if (!verify_certificate(report.packing, oracle)) throw Error(Errc::verification, "lambda packing failed re-verification");

  const std::size_t n = family.size();
  if (n == 1 || lambda.diameter() <= epsilon) {
    report.net = single_center(lambda, epsilon);
  } else {
    auto lift = lift_from_truncations(family, p, epsilon, epsilon / 2, report.profile, lambda);
    if (lift && !verify_certificate(lift->net, oracle)) {
      lift = lift_from_truncations(family, p, epsilon, epsilon / 4, report.profile, lambda);
      // Each lifted distance is below three quarters of epsilon here.
      if (lift && !verify_certificate(lift->net, oracle)) {
        throw Error(Errc::verification, "member-centered lift at epsilon/4 failed to verify");
      }
    }
    if (lift) {
      report.lift = lift->record;
      report.net = std::move(lift->net);
    }
  }
  if (report.net && !verify_certificate(*report.net, oracle)) {
    throw Error(Errc::verification, "lambda-net failed re-verification");
  }

  if (report.net && (n == 1 || report.net->size() < n)) {
    report.verdict = Verdict::certified_net;
  } else if (n > 1 && report.packing.size() == n) {
    report.verdict = Verdict::refuted_at_scale;
  } else if (!report.min_level_for_half_epsilon && report.packing.size() > 1) {
    report.verdict = Verdict::refuted_at_scale;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

BoundedEquivalence bounded_family_equivalence(const FunctionFamily& family, double bound, Exponent p, double epsilon) {
  if (!std::isfinite(bound) || !(bound > 0.0)) throw Error(Errc::invalid_input, "bound must be positive and finite");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (sup_norm(family[i]) > bound) {
      throw Error(Errc::invalid_input, "member " + std::to_string(i) + " exceeds the uniform bound");
    }
  }
  const TruncationLevel level(bound);
  const auto lambda = DistanceOracle::lambda(family, p);
  const auto lp = DistanceOracle::lp(family, p);

  BoundedEquivalence result;
  // L^p cover read as a lambda cover: fnorm(f - g) <= ||f - g||_p.
  const auto lp_cover = greedy_cover(lp, epsilon);
  result.lp_as_lambda = {epsilon, lp_cover.centers, {}};
  for (const auto& a : lp_cover.assignment) result.lp_as_lambda.assignment.push_back({a.member, a.center, lambda(a.member, a.center)});

  // Lambda cover at epsilon / C_M; T_M is the identity on this family.
  const auto lambda_cover = greedy_cover(lambda, epsilon / lipschitz_constant_cm(level));
  result.lambda_to_lp = transfer_net_to_truncations(family, lambda_cover, level, p);
  result.lambda_to_lp.epsilon = epsilon;

  result.holds = verify_certificate(lp_cover, lp) && verify_certificate(result.lp_as_lambda, lambda) &&
                 verify_certificate(result.lambda_to_lp, lp);
  return result;
}

const char* to_string(TrendVerdict verdict) noexcept {
  switch (verdict) {
    case TrendVerdict::tb_consistent: return "TB-consistent";
    case TrendVerdict::tb_refuting: return "TB-refuting";
    case TrendVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

TrendVerdict judge(const LadderTrend& trend, double epsilon) {
  const auto& rows = trend.rows;
  const auto& reports = trend.reports;
  if (rows.size() == 1) {
    switch (reports.front().verdict) {
      case Verdict::certified_net: return TrendVerdict::tb_consistent;
      case Verdict::refuted_at_scale: return TrendVerdict::tb_refuting;
      case Verdict::inconclusive: return TrendVerdict::inconclusive;
    }
  }

  bool growing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) growing = growing && rows[i].packing_size > rows[i - 1].packing_size;
  if (growing) return TrendVerdict::tb_refuting;

  const bool all_certified = std::all_of(reports.begin(), reports.end(),
                                         [](const CompactnessReport& r) { return r.verdict == Verdict::certified_net; });
  const auto& last = rows[rows.size() - 1];
  const auto& prev = rows[rows.size() - 2];
  const bool stable = last.cover_size && prev.cover_size && *last.cover_size == *prev.cover_size;

  // Uniform-in-index error profile.
  const std::size_t levels = reports.front().profile.records.size();
  std::vector<double> uniform(levels, 0.0);
  for (const auto& r : reports) {
    for (std::size_t k = 0; k < levels; ++k) uniform[k] = std::max(uniform[k], r.profile.records[k].sup_truncation_error);
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < levels; ++k) decreasing = decreasing && uniform[k] <= uniform[k - 1];
  const bool reaches = std::any_of(uniform.begin(), uniform.end(), [&](double u) { return u < epsilon / 2; });

  if (all_certified && stable && decreasing && reaches) return TrendVerdict::tb_consistent;
  return TrendVerdict::inconclusive;
}

}  // namespace

LadderTrend ladder_trend(const FamilyGenerator& generator, const std::vector<std::uint64_t>& indices, Exponent p,
                         double epsilon, const LevelGrid& grid) {
  if (indices.empty()) throw Error(Errc::configuration, "ladder needs at least one growth index");
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (!(indices[i] > indices[i - 1])) throw Error(Errc::configuration, "ladder indices must be strictly increasing");
  }

  auto run_one = [&](std::uint64_t index) {
    std::optional<FunctionFamily> family;
    try {
      family.emplace(generator(index));
    } catch (const Error& e) {
      throw Error(e.code(), "generator failed at index " + std::to_string(index) + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(Errc::configuration, "generator failed at index " + std::to_string(index) + ": " + e.what());
    }
    return assemble_lambda_net(*family, p, epsilon, grid);
  };

  LadderTrend trend;
  trend.reports.resize(indices.size());
  const std::size_t batch = std::max(1U, worker_threads());
  for (std::size_t first = 0; first < indices.size(); first += batch) {
    const std::size_t last = std::min(indices.size(), first + batch);
    std::vector<std::future<CompactnessReport>> running;
    for (std::size_t i = first; i < last; ++i) running.push_back(std::async(std::launch::async, run_one, indices[i]));
    for (std::size_t i = first; i < last; ++i) trend.reports[i] = running[i - first].get();
  }

  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto& r = trend.reports[i];
    trend.rows.push_back({indices[i], r.family_size,
                          r.net ? std::optional<std::size_t>(r.net->size()) : std::nullopt, r.packing.size(),
                          r.min_level_for_half_epsilon});
  }
  trend.verdict = judge(trend, epsilon);
  return trend;
}

}  // namespace lambdap
