#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbspectrum/filters.hpp"
#include "nbspectrum/metrics.hpp"
#include "nbspectrum/scoring.hpp"
#include "nbspectrum/trajectory.hpp"

namespace nbspectrum {

inline constexpr std::string_view kToolVersion = "nbspectrum 1.0.0";

struct RunConfig {
  std::vector<std::string> corpus_roots;
  std::string notebook_glob = "**/*.ipynb";
  FilterConfig filter = FilterConfig::defaults();
  std::string model_name = "hybrid";  // bundled name or path to a model JSON file
  std::string output_dir = "nbspectrum-out";
  std::uint64_t seed = 42;
  ThresholdComparison threshold_comparison = ThresholdComparison::LessEqual;
  CvSplit cv_split = CvSplit::PaperTrain20;
  CommentDensityMode comment_density = CommentDensityMode::PerNotebook;
  std::string branch = "HEAD";
  std::uint32_t workers = 1;
  double slope_epsilon = 1e-12;

  TrajectoryOptions trajectory_options() const {
    return {threshold_comparison, slope_epsilon};
  }
  FeatureOptions feature_options() const { return {comment_density}; }
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json run_config_to_json(const RunConfig& cfg);

/// FNV-1a 64 over the canonical JSON form; hex string.
std::string config_hash(const RunConfig& cfg);

/// Resolve `name` as a bundled model or, failing that, a model JSON file.
CoefficientSet resolve_model(const std::string& name);

/// Shell-style glob with `**` crossing directory separators.
bool glob_match(std::string_view pattern, std::string_view path);

/// Tracked files of a repository matching the glob, sorted.
std::vector<std::string> discover_notebooks(const std::string& repo_root,
                                            const std::string& glob);

/// Everything recorded for one notebook during an analyze run.
struct ResultRecord {
  std::string notebook_id;  // "<repo>:<path>"
  std::string repo_path;
  std::string notebook_path;
  std::optional<FilterReport> filter;
  std::optional<ScoreSeries> series;
  std::optional<TrajectoryFit> trajectory;
  std::string error;  // per-notebook failure, recorded instead of thrown
};

nlohmann::ordered_json result_record_to_json(const ResultRecord& record,
                                             const RunConfig& cfg);

struct AnalyzeSummary {
  std::size_t discovered = 0;
  std::size_t accepted = 0;
  std::size_t failed = 0;  // records carrying an error
  std::string output_dir;
};

/// Run the full corpus pipeline: discover -> history -> filters -> series ->
/// fit; write results.jsonl, cohort.csv, and series/<id>.csv under the
/// configured output directory. Per-notebook failures become records, never
/// aborts; only an unusable output directory throws.
AnalyzeSummary analyze(const RunConfig& cfg);

/// Filesystem-safe identifier for per-notebook artifacts, stable across runs.
std::string notebook_slug(const std::string& notebook_id);

/// Load `<features..., label>` rows for training. Throws Error{ConfigError}
/// on a missing column.
std::vector<LabeledExample> load_labeled_csv(const std::string& csv_text,
                                             const std::vector<std::string>& feature_names);

}  // namespace nbspectrum
