#include "nbspectrum/scoring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include <Eigen/QR>

#include "bundled_models_data.hpp"
#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

// Unbiased draw in [0, bound) via masked rejection; avoids the
// implementation-defined std::uniform_int_distribution.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0};
  mask >>= std::countl_zero(bound - 1);
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

std::vector<double> predict_unclamped(const CoefficientSet& model,
                                      const std::vector<LabeledExample>& examples,
                                      const std::vector<std::size_t>& indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    out.push_back(score(examples[i].features, model).raw);
  }
  return out;
}

}  // namespace

bool CoefficientSet::trained() const {
  if (!intercept.has_value()) return false;
  return std::all_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.weight.has_value(); });
}

std::vector<std::string> CoefficientSet::feature_names() const {
  std::vector<std::string> names;
  names.reserve(terms.size());
  for (const auto& t : terms) names.push_back(t.feature);
  return names;
}

ScoreResult score(const FeatureVector& features, const CoefficientSet& model) {
  if (!model.trained()) {
    throw Error(ErrorCode::UntrainedModel,
                "model \"" + model.name + "\" has no fitted coefficients");
  }
  double value = *model.intercept;
  for (const auto& term : model.terms) {
    value += *term.weight * features.field(term.feature);  // throws UnknownFeature
  }
  ScoreResult r;
  r.raw = value;
  r.clamped = std::clamp(value, 0.0, 1.0);
  return r;
}

CoefficientSet ols_fit(const std::vector<LabeledExample>& examples,
                       const std::vector<std::string>& feature_names,
                       const std::string& model_name) {
  const std::size_t n = examples.size();
  const std::size_t k = feature_names.size();
  if (n < k + 1) {
    throw Error(ErrorCode::TooFewExamples,
                std::to_string(n) + " examples for " + std::to_string(k) +
                    " features (+ intercept)");
  }

  Eigen::MatrixXd design(n, k + 1);
  Eigen::VectorXd labels(n);
  for (std::size_t row = 0; row < n; ++row) {
    design(row, 0) = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
      design(row, col + 1) = examples[row].features.field(feature_names[col]);
    }
    labels(row) = examples[row].label;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(k + 1)) {
    throw Error(ErrorCode::RankDeficient,
                "design matrix rank " + std::to_string(qr.rank()) + " < " +
                    std::to_string(k + 1));
  }
  Eigen::VectorXd coef = qr.solve(labels);

  CoefficientSet model;
  model.name = model_name;
  model.intercept = coef(0);
  model.terms.reserve(k);
  for (std::size_t col = 0; col < k; ++col) {
    model.terms.push_back({feature_names[col], coef(col + 1)});
  }
  return model;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

std::vector<std::vector<std::size_t>> cv_folds(std::size_t n, std::uint64_t seed) {
  constexpr std::size_t kFolds = 5;
  std::vector<std::size_t> order = shuffled_indices(n, seed);

  // Contiguous chunks of the shuffled order; the first n % 5 folds get one extra.
  std::vector<std::vector<std::size_t>> folds(kFolds);
  std::size_t base = n / kFolds;
  std::size_t extra = n % kFolds;
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < kFolds; ++f) {
    std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + cursor, order.begin() + cursor + size);
    cursor += size;
  }
  return folds;
}

CvReport cross_validate(const std::vector<LabeledExample>& examples,
                        const std::vector<std::string>& feature_names,
                        std::uint64_t seed, CvSplit split,
                        const std::string& model_name) {
  constexpr std::size_t kFolds = 5;
  const std::size_t n = examples.size();
  if (n < 10) {
    throw Error(ErrorCode::TooFewExamples,
                "cross-validation needs at least 10 examples, got " + std::to_string(n));
  }

  std::vector<std::vector<std::size_t>> folds = cv_folds(n, seed);

  CvReport report;
  report.fold_r2.resize(kFolds);
  for (std::size_t f = 0; f < kFolds; ++f) {
    std::vector<std::size_t> rest;
    rest.reserve(n - folds[f].size());
    for (std::size_t g = 0; g < kFolds; ++g) {
      if (g != f) rest.insert(rest.end(), folds[g].begin(), folds[g].end());
    }
    const std::vector<std::size_t>& train = (split == CvSplit::PaperTrain20) ? folds[f] : rest;
    const std::vector<std::size_t>& test = (split == CvSplit::PaperTrain20) ? rest : folds[f];

    std::vector<LabeledExample> train_set;
    train_set.reserve(train.size());
    for (std::size_t i : train) train_set.push_back(examples[i]);

    CoefficientSet fold_model;
    try {
      fold_model = ols_fit(train_set, feature_names, model_name);
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f) + ": " + e.message());
    }

    std::vector<double> actual;
    actual.reserve(test.size());
    for (std::size_t i : test) actual.push_back(examples[i].label);
    std::vector<double> predicted = predict_unclamped(fold_model, examples, test);
    report.fold_r2[f] = r_squared(actual, predicted);
  }

  double sum = std::accumulate(report.fold_r2.begin(), report.fold_r2.end(), 0.0);
  report.mean_r2 = sum / static_cast<double>(kFolds);
  std::vector<double> sorted = report.fold_r2;
  std::sort(sorted.begin(), sorted.end());
  report.median_r2 = sorted[kFolds / 2];
  report.fitted_model = ols_fit(examples, feature_names, model_name);
  return report;
}

double r_squared(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(actual.size()) + " vs " + std::to_string(predicted.size()));
  }
  if (actual.empty()) {
    throw Error(ErrorCode::EmptyInput, "r_squared over zero points");
  }
  double mean = std::accumulate(actual.begin(), actual.end(), 0.0) /
                static_cast<double>(actual.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    double res = actual[i] - predicted[i];
    double dev = actual[i] - mean;
    ss_res += res * res;
    ss_tot += dev * dev;
  }
  if (ss_tot == 0.0) return 0.0;
  return 1.0 - ss_res / ss_tot;
}

nlohmann::ordered_json coefficient_set_to_json(const CoefficientSet& model) {
  nlohmann::ordered_json terms;
  for (const auto& t : model.terms) {
    if (t.weight.has_value()) {
      terms[t.feature] = *t.weight;
    } else {
      terms[t.feature] = nullptr;
    }
  }
  nlohmann::ordered_json j;
  j["name"] = model.name;
  if (model.intercept.has_value()) {
    j["intercept"] = *model.intercept;
  } else {
    j["intercept"] = nullptr;
  }
  j["terms"] = terms;
  return j;
}

CoefficientSet coefficient_set_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_object()) {
    throw Error(ErrorCode::ConfigError, "coefficient set needs a `terms` object");
  }
  CoefficientSet model;
  model.name = j.value("name", std::string{});
  if (j.contains("intercept") && j["intercept"].is_number()) {
    model.intercept = j["intercept"].get<double>();
  }
  for (const auto& [feature, weight] : j["terms"].items()) {
    CoefficientSet::Term term;
    term.feature = feature;
    if (weight.is_number()) term.weight = weight.get<double>();
    model.terms.push_back(std::move(term));
  }
  // reject names that resolve to no FeatureVector field up front
  FeatureVector probe;
  for (const auto& t : model.terms) probe.field(t.feature);
  return model;
}

CoefficientSet bundled_model(std::string_view name) {
  std::string_view raw;
  if (name == "hybrid") {
    raw = detail::kHybridModelJson;
  } else if (name == "output-focused" || name == "output") {
    raw = detail::kOutputFocusedModelJson;
  } else if (name == "organization-focused" || name == "organization") {
    raw = detail::kOrganizationFocusedModelJson;
  } else {
    throw Error(ErrorCode::ConfigError, "no bundled model named \"" + std::string(name) + "\"");
  }
  return coefficient_set_from_json(nlohmann::ordered_json::parse(raw));
}

std::vector<std::string> bundled_model_names() {
  return {"hybrid", "output-focused", "organization-focused"};
}

}  // namespace nbspectrum
