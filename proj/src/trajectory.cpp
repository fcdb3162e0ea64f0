#include "nbspectrum/trajectory.hpp"

#include <cmath>
#include <cstdio>

#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::size_t group_slot(ShiftGroup g) {
  for (std::size_t i = 0; i < kGroupOrder.size(); ++i) {
    if (kGroupOrder[i] == g) return i;
  }
  return 0;
}

}  // namespace

std::string_view group_name(ShiftGroup g) noexcept {
  switch (g) {
    case ShiftGroup::ExploreExplore: return "Explore-Explore";
    case ShiftGroup::ExplainExplain: return "Explain-Explain";
    case ShiftGroup::ExploreExplain: return "Explore-Explain";
    case ShiftGroup::ExplainExplore: return "Explain-Explore";
  }
  return "Explore-Explore";
}

std::string_view slope_sign_name(SlopeSign s) noexcept {
  switch (s) {
    case SlopeSign::Positive: return "positive";
    case SlopeSign::Negative: return "negative";
    case SlopeSign::Neutral: return "neutral";
  }
  return "neutral";
}

ScoreSeries build_series(const NotebookHistory& h, const CoefficientSet& model,
                         const FeatureOptions& fopts) {
  ScoreSeries series;
  series.notebook_id = h.repo_path + ":" + h.notebook_path;
  for (const VersionRecord& version : h.versions) {
    if (!version.parseable()) {
      series.skipped_commits.push_back(version.commit_id);
      continue;
    }
    FeatureVector features = compute_features(*version.notebook, fopts);
    ScoreResult result = score(features, model);
    ScorePoint point;
    point.version_index = series.points.size();
    point.timestamp = version.timestamp;
    point.raw_score = result.raw;
    point.score = result.clamped;
    series.points.push_back(point);
  }
  if (series.points.empty()) {
    throw Error(ErrorCode::NoParseableVersions, series.notebook_id);
  }
  return series;
}

std::pair<double, double> fit_linear(const ScoreSeries& s) {
  const std::size_t n = s.points.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewPoints,
                "linear fit needs at least 2 points, got " + std::to_string(n));
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const ScorePoint& p : s.points) {
    mean_x += static_cast<double>(p.version_index);
    mean_y += p.score;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double cov = 0.0;
  double var = 0.0;
  for (const ScorePoint& p : s.points) {
    double dx = static_cast<double>(p.version_index) - mean_x;
    cov += dx * (p.score - mean_y);
    var += dx * dx;
  }
  double slope = cov / var;  // var > 0: indices are strictly increasing
  double intercept = mean_y - slope * mean_x;
  return {slope, intercept};
}

bool is_exploratory(double score, ThresholdComparison cmp) noexcept {
  return cmp == ThresholdComparison::LessEqual ? score <= 0.5 : score < 0.5;
}

std::pair<ShiftGroup, SlopeSign> classify_group(double first_score, double last_score,
                                                double slope, const TrajectoryOptions& opts) {
  bool first_explore = is_exploratory(first_score, opts.comparison);
  bool last_explore = is_exploratory(last_score, opts.comparison);
  ShiftGroup group;
  if (first_explore) {
    group = last_explore ? ShiftGroup::ExploreExplore : ShiftGroup::ExploreExplain;
  } else {
    group = last_explore ? ShiftGroup::ExplainExplore : ShiftGroup::ExplainExplain;
  }
  SlopeSign sign;
  if (std::abs(slope) <= opts.slope_epsilon) {
    sign = SlopeSign::Neutral;
  } else {
    sign = slope > 0.0 ? SlopeSign::Positive : SlopeSign::Negative;
  }
  return {group, sign};
}

TrajectoryFit fit_trajectory(const ScoreSeries& s, const TrajectoryOptions& opts) {
  auto [slope, intercept] = fit_linear(s);
  TrajectoryFit fit;
  fit.slope = slope;
  fit.intercept = intercept;
  fit.first_score = s.points.front().score;
  fit.last_score = s.points.back().score;
  fit.version_count = s.points.size();
  auto [group, sign] = classify_group(fit.first_score, fit.last_score, slope, opts);
  fit.group = group;
  fit.slope_sign = sign;
  return fit;
}

CohortStats cohort_stats(const std::vector<TrajectoryFit>& fits) {
  if (fits.empty()) {
    throw Error(ErrorCode::EmptyInput, "cohort_stats over zero fits");
  }
  CohortStats stats;
  stats.total = fits.size();

  struct Accumulator {
    std::uint64_t count = 0;
    double versions = 0.0;
    double first = 0.0;
    double last = 0.0;
    double slope = 0.0;
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t neutral = 0;
  };
  std::array<Accumulator, 4> acc;

  for (const TrajectoryFit& fit : fits) {
    Accumulator& a = acc[group_slot(fit.group)];
    ++a.count;
    a.versions += static_cast<double>(fit.version_count);
    a.first += fit.first_score;
    a.last += fit.last_score;
    a.slope += fit.slope;
    switch (fit.slope_sign) {
      case SlopeSign::Positive: ++a.positive; break;
      case SlopeSign::Negative: ++a.negative; break;
      case SlopeSign::Neutral: ++a.neutral; break;
    }
  }

  for (std::size_t i = 0; i < kGroupOrder.size(); ++i) {
    GroupStats& g = stats.groups[i];
    const Accumulator& a = acc[i];
    g.group = kGroupOrder[i];
    g.notebook_count = a.count;
    g.percent_of_sample = 100.0 * static_cast<double>(a.count) / static_cast<double>(stats.total);
    if (a.count > 0) {
      const double n = static_cast<double>(a.count);
      g.avg_version_count = a.versions / n;
      g.avg_first_score = a.first / n;
      g.avg_last_score = a.last / n;
      g.avg_slope = a.slope / n;
      g.percent_positive_slope = 100.0 * static_cast<double>(a.positive) / n;
      g.percent_negative_slope = 100.0 * static_cast<double>(a.negative) / n;
      g.percent_neutral_slope = 100.0 * static_cast<double>(a.neutral) / n;
    }
  }
  return stats;
}

std::string cohort_csv(const CohortStats& stats) {
  std::string csv =
      "group,notebookCount,percentOfSample,avgVersionCount,avgFirstScore,"
      "avgLastScore,avgSlope,percentPositiveSlope,percentNegativeSlope,"
      "percentNeutralSlope\n";
  for (const GroupStats& g : stats.groups) {
    csv += std::string(group_name(g.group)) + "," + std::to_string(g.notebook_count) + "," +
           format_double(g.percent_of_sample) + "," + format_double(g.avg_version_count) + "," +
           format_double(g.avg_first_score) + "," + format_double(g.avg_last_score) + "," +
           format_double(g.avg_slope) + "," + format_double(g.percent_positive_slope) + "," +
           format_double(g.percent_negative_slope) + "," +
           format_double(g.percent_neutral_slope) + "\n";
  }
  return csv;
}

std::string series_csv(const ScoreSeries& s) {
  std::string csv = "versionIndex,score\n";
  for (const ScorePoint& p : s.points) {
    csv += std::to_string(p.version_index) + "," + format_double(p.score) + "\n";
  }
  return csv;
}

}  // namespace nbspectrum
