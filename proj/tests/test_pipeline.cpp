#include "nbspectrum/pipeline.hpp"

#include <doctest.h>

#include "nbspectrum/errors.hpp"
#include "testutil.hpp"

using namespace nbspectrum;
using namespace testutil;

TEST_CASE("glob matching, including ** across directories") {
  CHECK(glob_match("**/*.ipynb", "a.ipynb"));
  CHECK(glob_match("**/*.ipynb", "d/a.ipynb"));
  CHECK(glob_match("**/*.ipynb", "d/e/f/a.ipynb"));
  CHECK_FALSE(glob_match("**/*.ipynb", "a.txt"));
  CHECK_FALSE(glob_match("**/*.ipynb", "a.ipynb.bak"));

  CHECK(glob_match("*.ipynb", "a.ipynb"));
  CHECK_FALSE(glob_match("*.ipynb", "d/a.ipynb"));  // single star stays in one segment

  CHECK(glob_match("nb/*.ipynb", "nb/a.ipynb"));
  CHECK_FALSE(glob_match("nb/*.ipynb", "nb/sub/a.ipynb"));
  CHECK(glob_match("nb/**", "nb/sub/a.ipynb"));
  CHECK(glob_match("?.ipynb", "a.ipynb"));
  CHECK_FALSE(glob_match("?.ipynb", "ab.ipynb"));
}

TEST_CASE("run config parses, round-trips, and hashes deterministically") {
  nlohmann::json j = {
      {"corpusRoots", {"/tmp/r1", "/tmp/r2"}},
      {"notebookGlob", "**/*.ipynb"},
      {"filters", {{"ownerIdentity", "casey@example.com"}, {"minRevisions", 5}}},
      {"model", "hybrid"},
      {"outputDir", "/tmp/out"},
      {"seed", 7},
      {"thresholdComparison", "lessThan"},
      {"cvSplit", "conventionalTrain80"},
      {"commentDensity", "perCellMean"},
      {"workers", 3},
  };
  RunConfig cfg = run_config_from_json(j);
  CHECK(cfg.corpus_roots.size() == 2);
  CHECK(cfg.filter.owner_identity == "casey@example.com");
  CHECK(cfg.filter.min_revisions == 5);
  CHECK(cfg.seed == 7);
  CHECK(cfg.threshold_comparison == ThresholdComparison::LessThan);
  CHECK(cfg.cv_split == CvSplit::ConventionalTrain80);
  CHECK(cfg.comment_density == CommentDensityMode::PerCellMean);
  CHECK(cfg.workers == 3);

  RunConfig round = run_config_from_json(run_config_to_json(cfg));
  CHECK(config_hash(round) == config_hash(cfg));

  RunConfig other = cfg;
  other.seed = 8;
  CHECK(config_hash(other) != config_hash(cfg));

  nlohmann::json bad = {{"thresholdComparison", "sometimes"}};
  CHECK_THROWS_AS(run_config_from_json(bad), Error);
}

TEST_CASE("model resolution: bundled names, files, and failures") {
  CHECK(resolve_model("hybrid").trained());
  CHECK_FALSE(resolve_model("output-focused").trained());

  auto dir = fresh_temp_dir("model-file");
  auto path = dir / "custom.json";
  {
    std::ofstream out(path);
    out << R"({"name":"custom","intercept":0.5,"terms":{"totalCodeCells":-0.1}})";
  }
  CoefficientSet custom = resolve_model(path.string());
  CHECK(custom.name == "custom");
  CHECK(custom.trained());

  CHECK_THROWS_AS(resolve_model("no-such-model"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("notebook slugs are filesystem safe and collision resistant") {
  std::string a = notebook_slug("/repo/x:nb/analysis.ipynb");
  std::string b = notebook_slug("/repo/x:nb_analysis.ipynb");
  CHECK(a != b);
  CHECK(a.find('/') == std::string::npos);
  CHECK(a.find(':') == std::string::npos);
  CHECK(notebook_slug("/repo/x:nb/analysis.ipynb") == a);
}

TEST_CASE("labeled csv loading checks the schema") {
  std::string good =
      "totalMarkdownCells,totalCodeCells,label\n"
      "0.5,0.5,0.6\n"
      "0.1,0.9,0.2\n";
  auto examples = load_labeled_csv(good, {"totalMarkdownCells", "totalCodeCells"});
  REQUIRE(examples.size() == 2);
  CHECK(examples[0].features.total_markdown_cells == 0.5);
  CHECK(examples[1].label == 0.2);

  CHECK_THROWS_AS(load_labeled_csv(good, {"totalVisualizations"}), Error);
  CHECK_THROWS_AS(load_labeled_csv("a,b\n1,2\n", {"totalCodeCells"}), Error);
  CHECK_THROWS_AS(load_labeled_csv("totalCodeCells,label\nx,0.5\n", {"totalCodeCells"}), Error);
  CHECK_THROWS_AS(load_labeled_csv("", {"totalCodeCells"}), Error);
}

TEST_CASE("analyze on a small fixture corpus writes the three artifacts") {
  auto dir = fresh_temp_dir("pipeline-analyze");
  FixtureRepo repo(dir / "repo");

  std::string imports = "import numpy as np\nnp.mean([1, 2])";
  repo.write("nb.ipynb", make_ipynb({{"code", imports, {}}}));
  repo.commit("v1");
  repo.write("nb.ipynb", make_ipynb({{"code", imports, {}},
                                     {"code", "a = 1\nb = 2\nc = 3\nd = 4\ne = 5", {}}}));
  repo.commit("v2");
  repo.write("nb.ipynb",
             make_ipynb({{"code", imports, {}},
                         {"code", "a = 1\nb = 2\nc = 3\nd = 4\ne = 5", {}},
                         {"markdown", "# Findings\n\nThe mean looks stable.", {}},
                         {"code", "f = 6\ng = 7\nh = 8\ni = 9\nj = 10", {}}}));
  repo.commit("v3");
  repo.write("nb.ipynb",
             make_ipynb({{"markdown", "# Report\n\nAll of the analysis, explained.", {}},
                         {"code", imports, {}},
                         {"markdown", "## Details\n\nMore prose here.", {}},
                         {"markdown", "Closing thoughts, at length.", {}}}));
  repo.commit("v4");

  RunConfig cfg;
  cfg.corpus_roots = {repo.path()};
  cfg.output_dir = (dir / "out").string();
  cfg.filter.owner_identity = "casey@example.com";

  AnalyzeSummary summary = analyze(cfg);
  CHECK(summary.discovered == 1);
  CHECK(summary.accepted == 1);
  CHECK(summary.failed == 0);

  std::string jsonl = slurp(dir / "out" / "results.jsonl");
  REQUIRE_FALSE(jsonl.empty());
  auto record = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
  CHECK(record["filter"]["accepted"] == true);
  CHECK(record["scores"].size() == 4);
  CHECK(record["trajectory"]["group"] == "Explore-Explain");
  CHECK(record["toolVersion"] == std::string(kToolVersion));

  std::string cohort = slurp(dir / "out" / "cohort.csv");
  CHECK(cohort.find("Explore-Explain,1,100") != std::string::npos);

  std::string slug = notebook_slug(record["notebookId"].get<std::string>());
  CHECK(std::filesystem::exists(dir / "out" / "series" / (slug + ".csv")));

  // empty corpus: zero records, stable header, exit path without throwing
  RunConfig empty_cfg;
  empty_cfg.output_dir = (dir / "out-empty").string();
  AnalyzeSummary empty_summary = analyze(empty_cfg);
  CHECK(empty_summary.discovered == 0);
  CHECK(slurp(dir / "out-empty" / "results.jsonl").empty());
  CHECK(slurp(dir / "out-empty" / "cohort.csv").rfind("group,", 0) == 0);

  std::filesystem::remove_all(dir);
}
