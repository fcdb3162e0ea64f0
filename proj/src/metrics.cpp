#include "nbspectrum/metrics.hpp"

#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

struct FeatureField {
  std::string_view name;
  double FeatureVector::*member;
};

constexpr std::array<FeatureField, 9> kFeatureFields = {{
    {"totalCodeCells", &FeatureVector::total_code_cells},
    {"totalMarkdownCells", &FeatureVector::total_markdown_cells},
    {"totalMarkdownLines", &FeatureVector::total_markdown_lines},
    {"totalMarkdownSpace", &FeatureVector::total_markdown_space},
    {"totalCodeSpace", &FeatureVector::total_code_space},
    {"totalTextOutputs", &FeatureVector::total_text_outputs},
    {"totalTableOutputs", &FeatureVector::total_table_outputs},
    {"totalVisualizations", &FeatureVector::total_visualizations},
    {"commentDensity", &FeatureVector::comment_density},
}};

// Spaces, tabs, and one newline per boundary between consecutive lines.
std::uint64_t whitespace_chars(const std::vector<std::string>& lines) {
  std::uint64_t n = 0;
  for (const auto& line : lines) {
    for (char c : line) {
      if (c == ' ' || c == '\t') ++n;
    }
  }
  if (!lines.empty()) n += lines.size() - 1;
  return n;
}

double div0(double numerator, double denominator) {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

}  // namespace

double FeatureVector::field(std::string_view name) const {
  for (const auto& f : kFeatureFields) {
    if (f.name == name) return this->*(f.member);
  }
  throw Error(ErrorCode::UnknownFeature, std::string(name));
}

void FeatureVector::set_field(std::string_view name, double value) {
  for (const auto& f : kFeatureFields) {
    if (f.name == name) {
      this->*(f.member) = value;
      return;
    }
  }
  throw Error(ErrorCode::UnknownFeature, std::string(name));
}

MetricVector extract_metrics(const Notebook& nb) {
  MetricVector m;
  for (const Cell& cell : nb.cells) {
    ++m.total_cells;
    std::uint64_t ws = whitespace_chars(cell.source_lines);
    m.total_spacing += ws;
    switch (cell.kind) {
      case CellKind::Code:
        ++m.code_cells;
        m.code_lines += cell.source_lines.size();
        m.code_spacing += ws;
        m.code_comments += cell.comment_count;
        for (const Output& out : cell.outputs) {
          ++m.total_outputs;
          switch (out.kind) {
            case OutputKind::Text: ++m.text_outputs; break;
            case OutputKind::Table: ++m.table_outputs; break;
            case OutputKind::Visualization: ++m.visualization_outputs; break;
            case OutputKind::Error:
            case OutputKind::Other: break;
          }
        }
        break;
      case CellKind::Markdown:
        ++m.markdown_cells;
        m.markdown_lines += cell.source_lines.size();
        m.markdown_spacing += ws;
        break;
      case CellKind::Raw:
        // counted in totals only
        break;
    }
  }
  return m;
}

FeatureVector normalize(const MetricVector& m) {
  FeatureVector f;
  const auto cells = static_cast<double>(m.total_cells);
  const auto outputs = static_cast<double>(m.total_outputs);
  const auto spacing = static_cast<double>(m.total_spacing);
  const auto source_lines = static_cast<double>(m.code_lines + m.markdown_lines);
  f.total_code_cells = div0(static_cast<double>(m.code_cells), cells);
  f.total_markdown_cells = div0(static_cast<double>(m.markdown_cells), cells);
  f.total_markdown_lines = div0(static_cast<double>(m.markdown_lines), source_lines);
  f.total_markdown_space = div0(static_cast<double>(m.markdown_spacing), spacing);
  f.total_code_space = div0(static_cast<double>(m.code_spacing), spacing);
  f.total_text_outputs = div0(static_cast<double>(m.text_outputs), outputs);
  f.total_table_outputs = div0(static_cast<double>(m.table_outputs), outputs);
  f.total_visualizations = div0(static_cast<double>(m.visualization_outputs), outputs);
  f.comment_density = div0(static_cast<double>(m.code_comments), static_cast<double>(m.code_lines));
  return f;
}

double per_cell_comment_density(const Notebook& nb) {
  double sum = 0.0;
  std::uint64_t code_cells = 0;
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code) continue;
    ++code_cells;
    sum += div0(static_cast<double>(cell.comment_count),
                static_cast<double>(cell.source_lines.size()));
  }
  return div0(sum, static_cast<double>(code_cells));
}

FeatureVector compute_features(const Notebook& nb, const FeatureOptions& opts) {
  FeatureVector f = normalize(extract_metrics(nb));
  if (opts.comment_density == CommentDensityMode::PerCellMean) {
    f.comment_density = per_cell_comment_density(nb);
  }
  return f;
}

nlohmann::ordered_json metric_vector_to_json(const MetricVector& m) {
  return nlohmann::ordered_json{
      {"codeCells", m.code_cells},
      {"markdownCells", m.markdown_cells},
      {"totalCells", m.total_cells},
      {"codeLines", m.code_lines},
      {"markdownLines", m.markdown_lines},
      {"textOutputs", m.text_outputs},
      {"tableOutputs", m.table_outputs},
      {"visualizationOutputs", m.visualization_outputs},
      {"totalOutputs", m.total_outputs},
      {"codeComments", m.code_comments},
      {"codeSpacing", m.code_spacing},
      {"markdownSpacing", m.markdown_spacing},
      {"totalSpacing", m.total_spacing},
  };
}

nlohmann::ordered_json feature_vector_to_json(const FeatureVector& f) {
  nlohmann::ordered_json j;
  for (const auto& field : kFeatureFields) {
    j[std::string(field.name)] = f.*(field.member);
  }
  return j;
}

FeatureVector feature_vector_from_json(const nlohmann::json& j) {
  FeatureVector f;
  for (const auto& field : kFeatureFields) {
    if (auto it = j.find(field.name); it != j.end() && it->is_number()) {
      f.*(field.member) = it->get<double>();
    }
  }
  return f;
}

}  // namespace nbspectrum
