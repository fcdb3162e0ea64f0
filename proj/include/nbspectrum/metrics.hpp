#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nbspectrum/notebook.hpp"

namespace nbspectrum {

/// Raw per-notebook counts.
struct MetricVector {
  std::uint64_t code_cells = 0;
  std::uint64_t markdown_cells = 0;
  std::uint64_t total_cells = 0;
  std::uint64_t code_lines = 0;
  std::uint64_t markdown_lines = 0;
  std::uint64_t text_outputs = 0;
  std::uint64_t table_outputs = 0;
  std::uint64_t visualization_outputs = 0;
  std::uint64_t total_outputs = 0;
  std::uint64_t code_comments = 0;
  std::uint64_t code_spacing = 0;      // whitespace chars in code-cell sources
  std::uint64_t markdown_spacing = 0;  // whitespace chars in markdown-cell sources
  std::uint64_t total_spacing = 0;     // whitespace chars across all cells
};

/// Normalized [0,1] features. Field names double as the stable JSON keys and
/// the feature names referenced by coefficient sets.
struct FeatureVector {
  double total_code_cells = 0.0;      // codeCells / totalCells
  double total_markdown_cells = 0.0;  // markdownCells / totalCells
  double total_markdown_lines = 0.0;  // markdownLines / (codeLines + markdownLines)
  double total_markdown_space = 0.0;  // markdownSpacing / totalSpacing
  double total_code_space = 0.0;      // codeSpacing / totalSpacing
  double total_text_outputs = 0.0;    // textOutputs / totalOutputs
  double total_table_outputs = 0.0;   // tableOutputs / totalOutputs
  double total_visualizations = 0.0;  // visualizationOutputs / totalOutputs
  double comment_density = 0.0;       // codeComments / codeLines

  /// Lookup by serialized feature name; throws Error{UnknownFeature}.
  double field(std::string_view name) const;
  void set_field(std::string_view name, double value);
};

inline constexpr std::array<std::string_view, 9> kFeatureNames = {
    "totalCodeCells",    "totalMarkdownCells", "totalMarkdownLines",
    "totalMarkdownSpace", "totalCodeSpace",    "totalTextOutputs",
    "totalTableOutputs", "totalVisualizations", "commentDensity",
};

MetricVector extract_metrics(const Notebook& nb);

/// Normalize raw counts into [0,1] features. Zero denominators yield 0.
FeatureVector normalize(const MetricVector& m);

/// Mean over code cells of (cell comments / cell lines); empty cells count 0.
double per_cell_comment_density(const Notebook& nb);

enum class CommentDensityMode { PerNotebook, PerCellMean };

struct FeatureOptions {
  CommentDensityMode comment_density = CommentDensityMode::PerNotebook;
};

/// extract_metrics + normalize, with the comment-density variant applied.
FeatureVector compute_features(const Notebook& nb, const FeatureOptions& opts = {});

nlohmann::ordered_json metric_vector_to_json(const MetricVector& m);
nlohmann::ordered_json feature_vector_to_json(const FeatureVector& f);
FeatureVector feature_vector_from_json(const nlohmann::json& j);

}  // namespace nbspectrum
