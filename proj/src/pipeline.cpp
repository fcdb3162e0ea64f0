#include "nbspectrum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <thread>

#include "gitio.hpp"
#include "nbspectrum/csv.hpp"
#include "nbspectrum/errors.hpp"

namespace fs = std::filesystem;

namespace nbspectrum {

namespace {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// Glob -> anchored regex-free matcher, recursive on `*` and `**`.
bool glob_match_impl(std::string_view pat, std::string_view path) {
  if (pat.empty()) return path.empty();
  if (pat[0] == '*') {
    bool double_star = pat.size() > 1 && pat[1] == '*';
    std::string_view rest = pat.substr(double_star ? 2 : 1);
    if (double_star && !rest.empty() && rest[0] == '/') {
      // `**/` also matches zero directories
      if (glob_match_impl(rest.substr(1), path)) return true;
    }
    for (std::size_t skip = 0; skip <= path.size(); ++skip) {
      if (glob_match_impl(rest, path.substr(skip))) return true;
      if (skip < path.size() && !double_star && path[skip] == '/') break;
    }
    return false;
  }
  if (path.empty()) return false;
  if (pat[0] == '?') {
    return path[0] != '/' && glob_match_impl(pat.substr(1), path.substr(1));
  }
  return pat[0] == path[0] && glob_match_impl(pat.substr(1), path.substr(1));
}

std::string write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << content;
  return path.string();
}

std::string comparison_name(ThresholdComparison c) {
  return c == ThresholdComparison::LessEqual ? "lessEqual" : "lessThan";
}

std::string cv_split_name(CvSplit s) {
  return s == CvSplit::PaperTrain20 ? "paperTrain20" : "conventionalTrain80";
}

std::string density_name(CommentDensityMode m) {
  return m == CommentDensityMode::PerNotebook ? "perNotebook" : "perCellMean";
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  if (!j.is_object()) {
    throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  }
  if (auto it = j.find("corpusRoots"); it != j.end() && it->is_array()) {
    for (const auto& root : *it) {
      if (root.is_string()) cfg.corpus_roots.push_back(root.get<std::string>());
    }
  }
  cfg.notebook_glob = j.value("notebookGlob", cfg.notebook_glob);
  if (auto it = j.find("filters"); it != j.end()) {
    cfg.filter = filter_config_from_json(*it);
  }
  cfg.model_name = j.value("model", cfg.model_name);
  cfg.output_dir = j.value("outputDir", cfg.output_dir);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.branch = j.value("branch", cfg.branch);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.slope_epsilon = j.value("slopeEpsilon", cfg.slope_epsilon);

  std::string cmp = j.value("thresholdComparison", std::string("lessEqual"));
  if (cmp == "lessEqual") {
    cfg.threshold_comparison = ThresholdComparison::LessEqual;
  } else if (cmp == "lessThan") {
    cfg.threshold_comparison = ThresholdComparison::LessThan;
  } else {
    throw Error(ErrorCode::ConfigError, "thresholdComparison must be lessEqual or lessThan");
  }

  std::string split = j.value("cvSplit", std::string("paperTrain20"));
  if (split == "paperTrain20") {
    cfg.cv_split = CvSplit::PaperTrain20;
  } else if (split == "conventionalTrain80") {
    cfg.cv_split = CvSplit::ConventionalTrain80;
  } else {
    throw Error(ErrorCode::ConfigError, "cvSplit must be paperTrain20 or conventionalTrain80");
  }

  std::string density = j.value("commentDensity", std::string("perNotebook"));
  if (density == "perNotebook") {
    cfg.comment_density = CommentDensityMode::PerNotebook;
  } else if (density == "perCellMean") {
    cfg.comment_density = CommentDensityMode::PerCellMean;
  } else {
    throw Error(ErrorCode::ConfigError, "commentDensity must be perNotebook or perCellMean");
  }

  if (cfg.workers == 0) cfg.workers = 1;
  return cfg;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& cfg) {
  return nlohmann::ordered_json{
      {"corpusRoots", cfg.corpus_roots},
      {"notebookGlob", cfg.notebook_glob},
      {"filters", filter_config_to_json(cfg.filter)},
      {"model", cfg.model_name},
      {"outputDir", cfg.output_dir},
      {"seed", cfg.seed},
      {"thresholdComparison", comparison_name(cfg.threshold_comparison)},
      {"cvSplit", cv_split_name(cfg.cv_split)},
      {"commentDensity", density_name(cfg.comment_density)},
      {"branch", cfg.branch},
      {"workers", cfg.workers},
      {"slopeEpsilon", cfg.slope_epsilon},
  };
}

std::string config_hash(const RunConfig& cfg) {
  return hex64(fnv1a64(run_config_to_json(cfg).dump()));
}

CoefficientSet resolve_model(const std::string& name) {
  for (const std::string& bundled : bundled_model_names()) {
    if (name == bundled) return bundled_model(name);
  }
  if (name == "output" || name == "organization") return bundled_model(name);
  if (fs::exists(name)) {
    std::ifstream in(name, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      return coefficient_set_from_json(nlohmann::ordered_json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ConfigError, "model file " + name + ": " + e.what());
    }
  }
  throw Error(ErrorCode::ConfigError,
              "model \"" + name + "\" is neither bundled nor a readable file");
}

bool glob_match(std::string_view pattern, std::string_view path) {
  return glob_match_impl(pattern, path);
}

std::vector<std::string> discover_notebooks(const std::string& repo_root,
                                            const std::string& glob) {
  auto ls = detail::run_git(repo_root, {"ls-files"});
  if (ls.exit_code != 0) {
    throw Error(ErrorCode::RepoNotFound, repo_root + ": " + ls.err);
  }
  std::vector<std::string> matches;
  std::size_t start = 0;
  while (start < ls.out.size()) {
    std::size_t nl = ls.out.find('\n', start);
    if (nl == std::string::npos) nl = ls.out.size();
    std::string path = ls.out.substr(start, nl - start);
    if (!path.empty() && glob_match(glob, path)) matches.push_back(std::move(path));
    start = nl + 1;
  }
  // ls-files is already sorted; keep that order for determinism
  return matches;
}

std::string notebook_slug(const std::string& notebook_id) {
  std::string slug;
  for (char c : notebook_id) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_') {
      slug += c;
    } else {
      slug += '_';
    }
  }
  if (slug.size() > 120) slug.resize(120);
  return slug + "-" + hex64(fnv1a64(notebook_id)).substr(0, 8);
}

nlohmann::ordered_json result_record_to_json(const ResultRecord& record,
                                             const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["notebookId"] = record.notebook_id;
  j["repo"] = record.repo_path;
  j["path"] = record.notebook_path;
  j["filter"] = record.filter ? filter_report_to_json(*record.filter, cfg.filter)
                              : nlohmann::ordered_json(nullptr);
  if (record.series) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const ScorePoint& p : record.series->points) {
      points.push_back({{"versionIndex", p.version_index},
                        {"timestamp", p.timestamp},
                        {"rawScore", p.raw_score},
                        {"score", p.score}});
    }
    j["scores"] = points;
    j["skippedCommits"] = record.series->skipped_commits;
  } else {
    j["scores"] = nullptr;
    j["skippedCommits"] = nlohmann::ordered_json::array();
  }
  if (record.trajectory) {
    const TrajectoryFit& fit = *record.trajectory;
    j["trajectory"] = {
        {"slope", fit.slope},
        {"intercept", fit.intercept},
        {"firstScore", fit.first_score},
        {"lastScore", fit.last_score},
        {"versionCount", fit.version_count},
        {"group", std::string(group_name(fit.group))},
        {"slopeSign", std::string(slope_sign_name(fit.slope_sign))},
    };
  } else {
    j["trajectory"] = nullptr;
  }
  j["error"] = record.error;
  j["toolVersion"] = std::string(kToolVersion);
  j["configHash"] = config_hash(cfg);
  return j;
}

AnalyzeSummary analyze(const RunConfig& cfg) {
  fs::path out_dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  fs::create_directories(out_dir / "series", ec);
  if (!fs::is_directory(out_dir) || !fs::is_directory(out_dir / "series")) {
    throw Error(ErrorCode::IoError, "output directory not writable: " + cfg.output_dir);
  }

  struct Job {
    std::string repo;
    std::string path;
  };
  std::vector<Job> jobs;
  for (const std::string& root : cfg.corpus_roots) {
    for (std::string& path : discover_notebooks(root, cfg.notebook_glob)) {
      jobs.push_back({root, std::move(path)});
    }
  }

  CoefficientSet model = resolve_model(cfg.model_name);
  std::vector<ResultRecord> records(jobs.size());

  auto process = [&](std::size_t index) {
    const Job& job = jobs[index];
    ResultRecord record;
    record.repo_path = job.repo;
    record.notebook_path = job.path;
    record.notebook_id = job.repo + ":" + job.path;
    try {
      HistoryOptions hopts;
      hopts.branch = cfg.branch;
      hopts.owner_identity = cfg.filter.owner_identity;
      NotebookHistory history = extract_history(job.repo, job.path, hopts);
      record.filter = apply_filters(history, cfg.filter);
      if (record.filter->accepted) {
        ScoreSeries series = build_series(history, model, cfg.feature_options());
        if (series.points.size() >= 2) {
          record.trajectory = fit_trajectory(series, cfg.trajectory_options());
        }
        record.series = std::move(series);
      }
    } catch (const Error& e) {
      record.error = e.what();
    } catch (const std::exception& e) {
      record.error = std::string("internal: ") + e.what();
    }
    records[index] = std::move(record);
  };

  const std::size_t worker_count = std::min<std::size_t>(cfg.workers, std::max<std::size_t>(jobs.size(), 1));
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          process(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  // single serialized writer, records in discovery order
  std::string jsonl;
  std::vector<TrajectoryFit> accepted_fits;
  AnalyzeSummary summary;
  summary.discovered = jobs.size();
  summary.output_dir = out_dir.string();
  for (const ResultRecord& record : records) {
    jsonl += result_record_to_json(record, cfg).dump();
    jsonl += '\n';
    if (!record.error.empty()) ++summary.failed;
    if (record.filter && record.filter->accepted) {
      ++summary.accepted;
      if (record.trajectory) accepted_fits.push_back(*record.trajectory);
      if (record.series) {
        write_text_file(out_dir / "series" / (notebook_slug(record.notebook_id) + ".csv"),
                        series_csv(*record.series));
      }
    }
  }
  write_text_file(out_dir / "results.jsonl", jsonl);

  if (!accepted_fits.empty()) {
    write_text_file(out_dir / "cohort.csv", cohort_csv(cohort_stats(accepted_fits)));
  } else {
    // header-only table so downstream readers see a stable schema
    write_text_file(out_dir / "cohort.csv",
                    "group,notebookCount,percentOfSample,avgVersionCount,avgFirstScore,"
                    "avgLastScore,avgSlope,percentPositiveSlope,percentNegativeSlope,"
                    "percentNeutralSlope\n");
  }
  return summary;
}

std::vector<LabeledExample> load_labeled_csv(const std::string& csv_text,
                                             const std::vector<std::string>& feature_names) {
  std::vector<std::vector<std::string>> rows = parse_csv(csv_text);
  if (rows.empty()) {
    throw Error(ErrorCode::ConfigError, "labeled CSV is empty");
  }
  const std::vector<std::string>& header = rows.front();
  auto column_of = [&header](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(ErrorCode::ConfigError, "labeled CSV is missing column \"" + name + "\"");
  };

  std::vector<std::size_t> feature_cols;
  feature_cols.reserve(feature_names.size());
  for (const std::string& name : feature_names) feature_cols.push_back(column_of(name));
  std::size_t label_col = column_of("label");

  auto parse_number = [](const std::string& text, std::size_t row_index) {
    double value = 0.0;
    auto [ptr, err] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (err != std::errc{} || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::ConfigError,
                  "labeled CSV row " + std::to_string(row_index) + ": \"" + text +
                      "\" is not a number");
    }
    return value;
  };

  std::vector<LabeledExample> examples;
  examples.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorCode::ConfigError,
                  "labeled CSV row " + std::to_string(r) + " has " +
                      std::to_string(row.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    LabeledExample example;
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
      example.features.set_field(feature_names[i], parse_number(row[feature_cols[i]], r));
    }
    example.label = parse_number(row[label_col], r);
    examples.push_back(example);
  }
  return examples;
}

}  // namespace nbspectrum
