// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lambdap/covering.hpp"
#include "lambdap/measure.hpp"
#include "lambdap/metrics.hpp"
#include "lambdap/truncation.hpp"

namespace lambdap {

/// Strictly increasing positive truncation levels.
class LevelGrid {
 public:
  /// Throws Error(configuration) on an empty, unsorted or nonpositive list.
  explicit LevelGrid(std::vector<double> levels);

  /// Powers of two 1, 2, 4, ..., up to `max_level`, each followed by its
  /// companion M + 1 so that (M, M + 1) pairs are always present.
  static LevelGrid geometric(double max_level);

  const std::vector<double>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }

 private:
  std::vector<double> levels_;
};

struct ProfileRecord {
  double level;
  double sup_truncation_error;   // max over members of ||min(|f - T_M f|, 1)||_p
  double sup_level_set_measure;  // max over members of mu(|f| > M)
};

struct ConditionProfile {
  std::string label;
  double p = 1.0;
  std::vector<ProfileRecord> records;
};

/// Uniform truncation error and uniform tail measure of the family at each
/// grid level. Over a finite family both suprema are exact maxima.
ConditionProfile condition_i_profile(const FunctionFamily& family, Exponent p, const LevelGrid& grid);

/// Checks, on every record, sup_err(M)^p <= sup_measure(M), and on every
/// grid pair (M, M + 1), sup_measure(M + 1) <= sup_err(M)^p. Throws
/// Error(configuration) when the profile has no (M, M + 1) pair.
bool check_almost_equibounded_equivalence(const ConditionProfile& profile);

struct ConditionIiResult {
  CoveringCertificate certificate;
  std::size_t size;
};

/// Greedy L^p cover of the truncated family T_M(F) at radius epsilon,
/// verified before it is returned.
ConditionIiResult condition_ii_check(const FunctionFamily& family, TruncationLevel level, Exponent p, double epsilon);

/// Maps a verified lambda-net at radius r onto the truncated family: same
/// centers, L^p distances between truncations, radius C_M * r. Throws
/// Error(verification) if the input net does not verify or the output does
/// not (the latter would mean the C_M bound failed).
CoveringCertificate transfer_net_to_truncations(const FunctionFamily& family, const CoveringCertificate& net,
                                                TruncationLevel level, Exponent p);

enum class Verdict { certified_net, refuted_at_scale, inconclusive };
const char* to_string(Verdict verdict) noexcept;

struct LevelCover {
  double level;
  double epsilon;
  std::size_t cover_size;
};

/// How the lambda-net was obtained from a truncation level.
struct LiftRecord {
  double level;               // truncation level M that met the threshold
  double split;               // threshold and L^p radius, epsilon / 2 or epsilon / 4
  std::size_t lp_cover_size;  // size of the L^p cover of T_M(F)
  double ambient_max_distance;  // max_f fnorm(f - T_M f_center): the net with truncated centers
};

struct CompactnessReport {
  std::string label;
  std::optional<std::uint64_t> growth_index;
  double p = 1.0;
  double epsilon = 0.0;
  std::size_t family_size = 0;
  ConditionProfile profile;
  /// Tail-measure sandwich over (M, M + 1) pairs; empty when the grid has none.
  std::optional<bool> almost_equibounded_check;
  /// Per grid level, the L^p cover size of T_M(F) at epsilon / 2.
  std::vector<LevelCover> level_covers;
  /// Smallest grid level with sup truncation error < epsilon / 2.
  std::optional<double> min_level_for_half_epsilon;
  std::optional<LiftRecord> lift;
  /// Verified lambda-net at epsilon, centered on members.
  std::optional<CoveringCertificate> net;
  /// Greedy lambda-packing at epsilon, always computed.
  PackingWitness packing;
  Verdict verdict = Verdict::inconclusive;
};

/// Builds a lambda-net at radius epsilon from the truncation criterion:
/// pick the smallest grid level M with uniform truncation error below
/// epsilon/2, cover T_M(F) in L^p at epsilon/2, and lift the centers.
///
/// Centers are family members rather than the truncations T_M f_c, which
/// adds the center's own truncation error to the lifted bound. When the
/// member-centered lift does not verify at epsilon the construction is
/// rerun with an epsilon/4 split, whose lift is always within epsilon.
///
/// Verdicts: certified-net when a verified net with fewer centers than
/// members exists (or the family has one member); refuted-at-scale when
/// no level meets the threshold and a packing of size > 1 exists, or when
/// every member is epsilon-separated from every other; else inconclusive.
CompactnessReport assemble_lambda_net(const FunctionFamily& family, Exponent p, double epsilon, const LevelGrid& grid);

struct BoundedEquivalence {
  bool holds = false;
  /// L^p cover at epsilon, re-verified as a lambda cover at epsilon.
  CoveringCertificate lp_as_lambda;
  /// Lambda cover at epsilon / C_{M0}, transferred to an L^p cover at epsilon.
  CoveringCertificate lambda_to_lp;
};

/// For a family with sup_norm <= bound, checks both directions of the
/// bounded-family equivalence between lambda- and L^p-total boundedness.
/// Throws Error(invalid_input) if some member exceeds the bound.
BoundedEquivalence bounded_family_equivalence(const FunctionFamily& family, double bound, Exponent p, double epsilon);

enum class TrendVerdict { tb_consistent, tb_refuting, inconclusive };
const char* to_string(TrendVerdict verdict) noexcept;

struct TrendRow {
  std::uint64_t index;
  std::size_t family_size;
  std::optional<std::size_t> cover_size;
  std::size_t packing_size;
  std::optional<double> min_level_for_half_epsilon;
};

struct LadderTrend {
  std::vector<TrendRow> rows;
  std::vector<CompactnessReport> reports;
  TrendVerdict verdict = TrendVerdict::inconclusive;
};

using FamilyGenerator = std::function<FunctionFamily(std::uint64_t growth_index)>;

/// Runs assemble_lambda_net at each growth index (concurrently) and judges
/// the trend: TB-consistent when the net size is equal at the last two
/// indices, every index is certified and the uniform error profile
/// max_n sup_err_n(M) falls below epsilon/2 on the grid; TB-refuting when
/// packing sizes grow strictly; otherwise inconclusive. Generator failures
/// propagate as Error(configuration).
LadderTrend ladder_trend(const FamilyGenerator& generator, const std::vector<std::uint64_t>& indices, Exponent p,
                         double epsilon, const LevelGrid& grid);

}  // namespace lambdap
