#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace nbspectrum {

enum class CellKind { Code, Markdown, Raw };
enum class OutputKind { Text, Table, Visualization, Error, Other };

std::string_view cell_kind_name(CellKind kind) noexcept;
std::string_view output_kind_name(OutputKind kind) noexcept;

struct Output {
  OutputKind kind = OutputKind::Other;
  std::size_t byte_size = 0;  // bytes of payload content (data bundle / stream text / error text)
};

struct Cell {
  CellKind kind = CellKind::Code;
  std::vector<std::string> source_lines;  // split on '\n', terminators excluded
  std::vector<Output> outputs;            // empty unless kind == Code
  std::size_t comment_count = 0;          // comment lines; 0 for non-code cells
};

struct Notebook {
  std::string path;             // repository-relative location of the document
  std::string kernel_language;  // lowercased; "unknown" when kernelspec is absent
  std::pair<int, int> format_version{0, 0};
  std::vector<Cell> cells;
};

/// Parse nbformat-4 JSON bytes into a Notebook.
/// Throws Error{MalformedJson} on unparseable input, Error{UnsupportedFormat}
/// when the major format version is not 4, Error{NotANotebook} when the
/// document has no `cells` array.
Notebook parse_notebook(std::string_view raw_json, std::string path);

/// Classify one nbformat output object into exactly one category.
/// Precedence: image/* or application/vnd.plotly* mime key -> Visualization;
/// text/html payload containing "<table" (case-insensitive) -> Table;
/// text/plain present or output_type == "stream" -> Text;
/// output_type == "error" -> Error; anything else -> Other.
/// Total and deterministic: never throws on object input.
Output classify_output(const nlohmann::json& raw_output);

/// Number of lines containing a '#' outside single-/double-quoted spans.
/// Each line contributes at most 1.
std::size_t count_comments(const std::vector<std::string>& source_lines);

/// True when the line carries a '#' outside quoted string spans.
bool line_has_comment(std::string_view line);

/// Copy of `line` with quoted span contents blanked to spaces and everything
/// from an unquoted '#' onward removed. Used by import scanning so string
/// literals and comments never register as code.
std::string mask_strings_and_comment(std::string_view line);

/// nbformat sources come either as one string or a list of line fragments;
/// both forms are joined and split on '\n' with a trailing empty segment
/// after a terminal newline dropped.
std::vector<std::string> split_source_lines(const nlohmann::json& source);

}  // namespace nbspectrum
