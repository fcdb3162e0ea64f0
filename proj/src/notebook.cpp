#include "nbspectrum/notebook.hpp"

#include <algorithm>
#include <cctype>

#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it != haystack.end();
}

// Flatten an nbformat text value (string or list of strings) into one string.
std::string join_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  std::string joined;
  if (value.is_array()) {
    for (const auto& part : value) {
      if (part.is_string()) joined += part.get<std::string>();
    }
  }
  return joined;
}

std::size_t payload_bytes(const nlohmann::json& output) {
  std::size_t bytes = 0;
  if (auto it = output.find("data"); it != output.end() && it->is_object()) {
    for (const auto& [mime, value] : it->items()) {
      (void)mime;
      if (value.is_string()) {
        bytes += value.get_ref<const std::string&>().size();
      } else {
        bytes += value.dump().size();
      }
    }
  }
  if (auto it = output.find("text"); it != output.end()) {
    bytes += join_text(*it).size();
  }
  for (const char* key : {"ename", "evalue"}) {
    if (auto it = output.find(key); it != output.end() && it->is_string()) {
      bytes += it->get_ref<const std::string&>().size();
    }
  }
  if (auto it = output.find("traceback"); it != output.end()) {
    bytes += join_text(*it).size();
  }
  return bytes;
}

// Scans a line with quote tracking. Returns the index of the first '#'
// outside quoted spans, or npos. When `masked` is non-null it receives the
// line with in-string characters blanked.
std::size_t scan_line(std::string_view line, std::string* masked) {
  if (masked) masked->assign(line.size(), ' ');
  bool in_single = false;
  bool in_double = false;
  bool escaped = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (escaped) {
      escaped = false;
      continue;
    }
    if ((in_single || in_double) && c == '\\') {
      escaped = true;
      continue;
    }
    if (!in_double && c == '\'') {
      in_single = !in_single;
      continue;
    }
    if (!in_single && c == '"') {
      in_double = !in_double;
      continue;
    }
    if (!in_single && !in_double) {
      if (c == '#') return i;
      if (masked) (*masked)[i] = c;
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::string_view cell_kind_name(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Code: return "code";
    case CellKind::Markdown: return "markdown";
    case CellKind::Raw: return "raw";
  }
  return "raw";
}

std::string_view output_kind_name(OutputKind kind) noexcept {
  switch (kind) {
    case OutputKind::Text: return "text";
    case OutputKind::Table: return "table";
    case OutputKind::Visualization: return "visualization";
    case OutputKind::Error: return "error";
    case OutputKind::Other: return "other";
  }
  return "other";
}

bool line_has_comment(std::string_view line) {
  return scan_line(line, nullptr) != std::string_view::npos;
}

std::string mask_strings_and_comment(std::string_view line) {
  std::string masked;
  std::size_t hash = scan_line(line, &masked);
  if (hash != std::string_view::npos) masked.resize(hash);
  return masked;
}

std::size_t count_comments(const std::vector<std::string>& source_lines) {
  std::size_t n = 0;
  for (const auto& line : source_lines) {
    if (line_has_comment(line)) ++n;
  }
  return n;
}

std::vector<std::string> split_source_lines(const nlohmann::json& source) {
  std::string text = join_text(source);
  std::vector<std::string> lines;
  if (text.empty()) return lines;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
    if (start == text.size()) break;  // trailing newline: drop the empty tail
  }
  return lines;
}

Output classify_output(const nlohmann::json& raw_output) {
  Output out;
  out.byte_size = payload_bytes(raw_output);

  std::string output_type;
  if (auto it = raw_output.find("output_type"); it != raw_output.end() && it->is_string()) {
    output_type = it->get<std::string>();
  }

  bool has_text_plain = false;
  bool is_table = false;
  if (auto it = raw_output.find("data"); it != raw_output.end() && it->is_object()) {
    for (const auto& [mime, value] : it->items()) {
      if (mime.rfind("image/", 0) == 0 || mime.rfind("application/vnd.plotly", 0) == 0) {
        out.kind = OutputKind::Visualization;
        return out;
      }
      if (mime == "text/html" && contains_ci(join_text(value), "<table")) {
        is_table = true;
      }
      if (mime == "text/plain") has_text_plain = true;
    }
  }
  if (is_table) {
    out.kind = OutputKind::Table;
  } else if (has_text_plain || output_type == "stream") {
    out.kind = OutputKind::Text;
  } else if (output_type == "error") {
    out.kind = OutputKind::Error;
  } else {
    out.kind = OutputKind::Other;
  }
  return out;
}

Notebook parse_notebook(std::string_view raw_json, std::string path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, std::string(e.what()) + " in " + path);
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::NotANotebook, "top-level JSON is not an object: " + path);
  }

  int major = 0;
  int minor = 0;
  if (auto it = doc.find("nbformat"); it != doc.end() && it->is_number_integer()) {
    major = it->get<int>();
  }
  if (auto it = doc.find("nbformat_minor"); it != doc.end() && it->is_number_integer()) {
    minor = it->get<int>();
  }
  if (major != 4) {
    throw Error(ErrorCode::UnsupportedFormat,
                "nbformat major version " + std::to_string(major) + " (need 4): " + path);
  }

  auto cells_it = doc.find("cells");
  if (cells_it == doc.end() || !cells_it->is_array()) {
    throw Error(ErrorCode::NotANotebook, "missing `cells` array: " + path);
  }

  Notebook nb;
  nb.path = std::move(path);
  nb.format_version = {major, minor};

  nb.kernel_language = "unknown";
  if (auto meta = doc.find("metadata"); meta != doc.end() && meta->is_object()) {
    if (auto ks = meta->find("kernelspec"); ks != meta->end() && ks->is_object()) {
      if (auto lang = ks->find("language"); lang != ks->end() && lang->is_string()) {
        nb.kernel_language = to_lower(lang->get<std::string>());
      }
    }
  }

  for (const auto& raw_cell : *cells_it) {
    if (!raw_cell.is_object()) continue;
    Cell cell;
    std::string type;
    if (auto it = raw_cell.find("cell_type"); it != raw_cell.end() && it->is_string()) {
      type = it->get<std::string>();
    }
    if (type == "code") {
      cell.kind = CellKind::Code;
    } else if (type == "markdown") {
      cell.kind = CellKind::Markdown;
    } else {
      cell.kind = CellKind::Raw;
    }
    if (auto it = raw_cell.find("source"); it != raw_cell.end()) {
      cell.source_lines = split_source_lines(*it);
    }
    if (cell.kind == CellKind::Code) {
      if (auto it = raw_cell.find("outputs"); it != raw_cell.end() && it->is_array()) {
        for (const auto& raw_output : *it) {
          if (raw_output.is_object()) cell.outputs.push_back(classify_output(raw_output));
        }
      }
      cell.comment_count = count_comments(cell.source_lines);
    }
    nb.cells.push_back(std::move(cell));
  }
  return nb;
}

}  // namespace nbspectrum
