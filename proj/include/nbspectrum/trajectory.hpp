#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nbspectrum/history.hpp"
#include "nbspectrum/metrics.hpp"
#include "nbspectrum/scoring.hpp"

namespace nbspectrum {

struct ScorePoint {
  std::size_t version_index = 0;  // 0-based over parseable versions
  std::int64_t timestamp = 0;
  double raw_score = 0.0;
  double score = 0.0;  // clamped to [0, 1]
};

struct ScoreSeries {
  std::string notebook_id;
  std::vector<ScorePoint> points;
  std::vector<std::string> skipped_commits;  // versions that failed to parse
};

enum class ShiftGroup { ExploreExplore, ExplainExplain, ExploreExplain, ExplainExplore };
enum class SlopeSign { Positive, Negative, Neutral };

/// Group rows in report order.
inline constexpr std::array<ShiftGroup, 4> kGroupOrder = {
    ShiftGroup::ExploreExplore, ShiftGroup::ExplainExplain,
    ShiftGroup::ExploreExplain, ShiftGroup::ExplainExplore};

std::string_view group_name(ShiftGroup g) noexcept;        // "Explore-Explore", ...
std::string_view slope_sign_name(SlopeSign s) noexcept;    // "positive", ...

/// A score at the 0.5 boundary counts as exploratory under LessEqual (the
/// default); LessThan moves the boundary to the explanatory side.
enum class ThresholdComparison { LessEqual, LessThan };

struct TrajectoryOptions {
  ThresholdComparison comparison = ThresholdComparison::LessEqual;
  double slope_epsilon = 1e-12;  // |slope| <= epsilon counts as neutral
};

struct TrajectoryFit {
  double slope = 0.0;  // per version step
  double intercept = 0.0;
  double first_score = 0.0;  // raw series endpoints, not fitted values
  double last_score = 0.0;
  std::size_t version_count = 0;
  ShiftGroup group = ShiftGroup::ExploreExplore;
  SlopeSign slope_sign = SlopeSign::Neutral;
};

/// Score every parseable version with the model; unparseable versions are
/// skipped and recorded, with version indices advancing over scored points
/// only. Throws Error{NoParseableVersions} when nothing scores.
ScoreSeries build_series(const NotebookHistory& h, const CoefficientSet& model,
                         const FeatureOptions& fopts = {});

/// Ordinary least squares of score on version index.
/// Throws Error{TooFewPoints} below 2 points.
std::pair<double, double> fit_linear(const ScoreSeries& s);  // {slope, intercept}

bool is_exploratory(double score, ThresholdComparison cmp) noexcept;

std::pair<ShiftGroup, SlopeSign> classify_group(double first_score, double last_score,
                                                double slope,
                                                const TrajectoryOptions& opts = {});

TrajectoryFit fit_trajectory(const ScoreSeries& s, const TrajectoryOptions& opts = {});

struct GroupStats {
  ShiftGroup group = ShiftGroup::ExploreExplore;
  std::uint64_t notebook_count = 0;
  double percent_of_sample = 0.0;
  double avg_version_count = 0.0;
  double avg_first_score = 0.0;
  double avg_last_score = 0.0;
  double avg_slope = 0.0;
  double percent_positive_slope = 0.0;
  double percent_negative_slope = 0.0;
  double percent_neutral_slope = 0.0;
};

struct CohortStats {
  std::array<GroupStats, 4> groups;  // kGroupOrder
  std::uint64_t total = 0;
};

/// Per-group aggregates. Throws Error{EmptyInput} on an empty cohort.
CohortStats cohort_stats(const std::vector<TrajectoryFit>& fits);

/// CSV with one row per group in report order; columns carry the group label,
/// count, share of sample, averages, and slope-sign shares.
std::string cohort_csv(const CohortStats& stats);

/// Plot-ready series data: versionIndex,score rows.
std::string series_csv(const ScoreSeries& s);

}  // namespace nbspectrum
