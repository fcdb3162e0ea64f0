// nbspectrum: score Jupyter notebooks on the exploration-explanation
// spectrum, mine their git histories, and classify how they shift over time.
//
// Subcommands:
//   score    <notebook.ipynb> [--model M]         print metrics, features, score
//   filter   <repo> <path> [--config C]           print the inclusion-filter report
//   analyze  --config C [--workers N]             run the corpus pipeline
//   train    <labeled.csv> --features F [--seed S] fit a model with 5-fold CV
//
// Exit codes: 0 success, 1 usage, 2 input error, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nbspectrum/errors.hpp"
#include "nbspectrum/filters.hpp"
#include "nbspectrum/history.hpp"
#include "nbspectrum/metrics.hpp"
#include "nbspectrum/notebook.hpp"
#include "nbspectrum/pipeline.hpp"
#include "nbspectrum/scoring.hpp"
#include "nbspectrum/trajectory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw nbspectrum::Error(nbspectrum::ErrorCode::IoError, "cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --config beats NBSPECTRUM_CONFIG; absent both yields defaults.
nbspectrum::RunConfig load_run_config(const std::string& config_path) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("NBSPECTRUM_CONFIG"); env && *env) path = env;
  }
  if (path.empty()) return nbspectrum::RunConfig{};
  try {
    return nbspectrum::run_config_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw nbspectrum::Error(nbspectrum::ErrorCode::ConfigError,
                            "config " + path + ": " + e.what());
  }
}

int run_score(const std::string& notebook_path, const std::string& model_name,
              const nbspectrum::RunConfig& cfg) {
  nbspectrum::Notebook nb =
      nbspectrum::parse_notebook(read_file(notebook_path), notebook_path);
  nbspectrum::CoefficientSet model = nbspectrum::resolve_model(
      model_name.empty() ? cfg.model_name : model_name);
  nbspectrum::MetricVector metrics = nbspectrum::extract_metrics(nb);
  nbspectrum::FeatureVector features =
      nbspectrum::compute_features(nb, cfg.feature_options());
  nbspectrum::ScoreResult result = nbspectrum::score(features, model);

  nlohmann::ordered_json out;
  out["path"] = notebook_path;
  out["model"] = model.name;
  out["kernelLanguage"] = nb.kernel_language;
  out["metrics"] = nbspectrum::metric_vector_to_json(metrics);
  out["features"] = nbspectrum::feature_vector_to_json(features);
  out["rawScore"] = result.raw;
  out["score"] = result.clamped;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_filter(const std::string& repo, const std::string& path,
               const nbspectrum::RunConfig& cfg) {
  nbspectrum::HistoryOptions hopts;
  hopts.branch = cfg.branch;
  hopts.owner_identity = cfg.filter.owner_identity;
  nbspectrum::NotebookHistory history = nbspectrum::extract_history(repo, path, hopts);
  nbspectrum::FilterReport report = nbspectrum::apply_filters(history, cfg.filter);

  nlohmann::ordered_json out = nbspectrum::filter_report_to_json(report, cfg.filter);
  out["notebookId"] = repo + ":" + path;
  out["versions"] = history.versions.size();
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_analyze(nbspectrum::RunConfig cfg, unsigned workers) {
  if (workers > 0) cfg.workers = workers;
  nbspectrum::AnalyzeSummary summary = nbspectrum::analyze(cfg);
  if (summary.discovered == 0) {
    std::cerr << "warning: no notebooks matched " << cfg.notebook_glob << " under "
              << cfg.corpus_roots.size() << " corpus root(s)\n";
  }
  std::cout << "analyzed " << summary.discovered << " notebook(s), accepted "
            << summary.accepted << ", failures " << summary.failed << "\n"
            << "results: " << summary.output_dir << "/results.jsonl\n"
            << "cohort:  " << summary.output_dir << "/cohort.csv\n";
  return kExitOk;
}

int run_train(const std::string& csv_path, const std::string& feature_set,
              std::uint64_t seed, const std::string& out_path,
              const nbspectrum::RunConfig& cfg) {
  nbspectrum::CoefficientSet combination = nbspectrum::bundled_model(feature_set);
  std::vector<std::string> features = combination.feature_names();
  std::vector<nbspectrum::LabeledExample> examples =
      nbspectrum::load_labeled_csv(read_file(csv_path), features);
  nbspectrum::CvReport report =
      nbspectrum::cross_validate(examples, features, seed, cfg.cv_split, combination.name);

  nlohmann::ordered_json out;
  out["model"] = nbspectrum::coefficient_set_to_json(report.fitted_model);
  out["cv"] = {
      {"foldR2", report.fold_r2},
      {"meanR2", report.mean_r2},
      {"medianR2", report.median_r2},
      {"split", cfg.cv_split == nbspectrum::CvSplit::PaperTrain20 ? "paperTrain20"
                                                                  : "conventionalTrain80"},
      {"seed", seed},
      {"examples", examples.size()},
  };
  std::cout << out.dump(2) << "\n";
  if (!out_path.empty()) {
    std::ofstream model_out(out_path, std::ios::binary | std::ios::trunc);
    if (!model_out) {
      throw nbspectrum::Error(nbspectrum::ErrorCode::IoError, "cannot write " + out_path);
    }
    model_out << nbspectrum::coefficient_set_to_json(report.fitted_model).dump(2) << "\n";
  }
  return kExitOk;
}

int input_error(const nbspectrum::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantify where Jupyter notebooks sit between exploration and "
               "explanation, and how that position moves across git history"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (falls back to $NBSPECTRUM_CONFIG)");

  auto* score_cmd = app.add_subcommand("score", "Score a single notebook file");
  std::string score_file;
  std::string score_model;
  score_cmd->add_option("notebook", score_file, "path to an .ipynb file")->required();
  score_cmd->add_option("--model", score_model, "bundled model name or model JSON path");

  auto* filter_cmd = app.add_subcommand("filter", "Report inclusion criteria for one notebook");
  std::string filter_repo;
  std::string filter_path;
  filter_cmd->add_option("repo", filter_repo, "path to a git repository")->required();
  filter_cmd->add_option("notebook", filter_path, "notebook path inside the repository")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the corpus pipeline");
  unsigned analyze_workers = 0;
  analyze_cmd->add_option("--workers", analyze_workers, "parallel notebook workers");

  auto* train_cmd = app.add_subcommand("train", "Fit a model from labeled examples");
  std::string train_csv;
  std::string train_features = "hybrid";
  std::uint64_t train_seed = 42;
  std::string train_out;
  train_cmd->add_option("labeled", train_csv, "CSV of feature columns plus `label`")->required();
  train_cmd->add_option("--features", train_features,
                        "feature combination: hybrid, output, organization");
  train_cmd->add_option("--seed", train_seed, "fold shuffle seed");
  train_cmd->add_option("--out", train_out, "also write the fitted model JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    nbspectrum::RunConfig cfg = load_run_config(config_path);
    if (score_cmd->parsed()) return run_score(score_file, score_model, cfg);
    if (filter_cmd->parsed()) return run_filter(filter_repo, filter_path, cfg);
    if (analyze_cmd->parsed()) return run_analyze(cfg, analyze_workers);
    if (train_cmd->parsed()) return run_train(train_csv, train_features, train_seed, train_out, cfg);
    return kExitUsage;
  } catch (const nbspectrum::Error& e) {
    return input_error(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
