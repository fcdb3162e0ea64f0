#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbspectrum/metrics.hpp"

namespace nbspectrum {

/// Named linear model over a subset of FeatureVector fields. Weights and
/// intercept are optional so that feature combinations whose coefficients
/// are not published can ship untrained.
struct CoefficientSet {
  struct Term {
    std::string feature;
    std::optional<double> weight;
  };

  std::string name;
  std::vector<Term> terms;
  std::optional<double> intercept;

  bool trained() const;
  std::vector<std::string> feature_names() const;
};

struct ScoreResult {
  double raw = 0.0;      // intercept + sum(weight * feature), unclamped
  double clamped = 0.0;  // raw clamped to [0, 1]
};

/// Evaluate a model on a feature vector.
/// Throws Error{UnknownFeature} for a term naming no feature and
/// Error{UntrainedModel} when any weight or the intercept is missing.
ScoreResult score(const FeatureVector& features, const CoefficientSet& model);

struct LabeledExample {
  FeatureVector features;
  double label = 0.0;  // manual scores use the 0.1..1.0 rubric grid
};

/// Ordinary least squares with an intercept column, solved by column-pivoted
/// Householder QR. Throws Error{TooFewExamples} when rows < features + 1 and
/// Error{RankDeficient} when the design matrix loses column rank.
CoefficientSet ols_fit(const std::vector<LabeledExample>& examples,
                       const std::vector<std::string>& feature_names,
                       const std::string& model_name = "fitted");

/// Which side of each fold is trained on. PaperTrain20 trains on the fold
/// (about 20% of the data) and tests on the rest; ConventionalTrain80 is the
/// usual k-fold orientation.
enum class CvSplit { PaperTrain20, ConventionalTrain80 };

struct CvReport {
  std::vector<double> fold_r2;  // one entry per fold, in fold order
  double mean_r2 = 0.0;
  double median_r2 = 0.0;
  CoefficientSet fitted_model;  // fit on the full data
};

/// 5-fold cross-validation with a seeded deterministic shuffle.
/// Requires at least 10 examples; fold-level fit errors are rethrown with the
/// fold index attached.
CvReport cross_validate(const std::vector<LabeledExample>& examples,
                        const std::vector<std::string>& feature_names,
                        std::uint64_t seed = 42,
                        CvSplit split = CvSplit::PaperTrain20,
                        const std::string& model_name = "fitted");

/// 1 - SS_res/SS_tot with SS_tot about the mean of `actual`; 0 when `actual`
/// has zero variance.
double r_squared(std::span<const double> actual, std::span<const double> predicted);

/// The deterministic partition cross_validate uses: 5 disjoint near-equal
/// folds over a seeded shuffle of [0, n).
std::vector<std::vector<std::size_t>> cv_folds(std::size_t n, std::uint64_t seed);

/// Deterministic Fisher-Yates permutation of [0, n). Identical output for a
/// given (n, seed) on every platform.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

// ordered_json keeps term order stable through round trips
nlohmann::ordered_json coefficient_set_to_json(const CoefficientSet& model);
CoefficientSet coefficient_set_from_json(const nlohmann::ordered_json& j);

/// Models bundled with the tool: "hybrid" (evaluable), "output-focused" and
/// "organization-focused" (feature sets only; train before use).
CoefficientSet bundled_model(std::string_view name);
std::vector<std::string> bundled_model_names();

}  // namespace nbspectrum
