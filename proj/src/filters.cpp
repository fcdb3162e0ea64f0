#include "nbspectrum/filters.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Token {
  enum Kind { Ident, Dot, Comma, Star, Other } kind;
  std::string text;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      tokens.push_back({Token::Ident, line.substr(i, j - i)});
      i = j;
    } else if (c == '.') {
      tokens.push_back({Token::Dot, "."});
      ++i;
    } else if (c == ',') {
      tokens.push_back({Token::Comma, ","});
      ++i;
    } else if (c == '*') {
      tokens.push_back({Token::Star, "*"});
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      tokens.push_back({Token::Other, std::string(1, c)});
      ++i;
    }
  }
  return tokens;
}

struct ImportBinding {
  std::string root;   // first component of the imported module path
  std::string alias;  // name the import binds in scope
};

// Consume a dotted module path starting at `i`; returns the first component
// or empty when tokens[i] is not an identifier.
std::string parse_dotted(const std::vector<Token>& tokens, std::size_t& i) {
  if (i >= tokens.size() || tokens[i].kind != Token::Ident) return {};
  std::string root = tokens[i].text;
  ++i;
  while (i + 1 < tokens.size() && tokens[i].kind == Token::Dot &&
         tokens[i + 1].kind == Token::Ident) {
    i += 2;
  }
  return root;
}

// Recognizes `import a.b as x, c` and `from a.b import x as y, z` in a
// masked source line. Returns the bindings introduced.
std::vector<ImportBinding> scan_import_statements(const std::string& masked_line) {
  std::vector<ImportBinding> bindings;
  std::vector<Token> tokens = tokenize(masked_line);
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].kind != Token::Ident) {
      ++i;
      continue;
    }
    if (tokens[i].text == "from") {
      std::size_t j = i + 1;
      std::string root = parse_dotted(tokens, j);
      if (root.empty() || j >= tokens.size() || tokens[j].kind != Token::Ident ||
          tokens[j].text != "import") {
        ++i;
        continue;
      }
      ++j;  // past `import`
      while (j < tokens.size()) {
        if (tokens[j].kind == Token::Comma ||
            (tokens[j].kind == Token::Other &&
             (tokens[j].text == "(" || tokens[j].text == ")"))) {
          ++j;  // parenthesized or comma-separated name lists
          continue;
        }
        if (tokens[j].kind == Token::Star) {
          bindings.push_back({root, ""});  // star import binds nothing trackable
          ++j;
          continue;
        }
        if (tokens[j].kind == Token::Ident) {
          std::string name = tokens[j].text;
          ++j;
          if (j + 1 < tokens.size() && tokens[j].kind == Token::Ident &&
              tokens[j].text == "as" && tokens[j + 1].kind == Token::Ident) {
            name = tokens[j + 1].text;
            j += 2;
          }
          bindings.push_back({root, name});
          continue;
        }
        break;
      }
      i = j;
    } else if (tokens[i].text == "import") {
      std::size_t j = i + 1;
      while (j < tokens.size()) {
        std::string root = parse_dotted(tokens, j);
        if (root.empty()) break;
        std::string alias = root;
        if (j + 1 < tokens.size() && tokens[j].kind == Token::Ident &&
            tokens[j].text == "as" && tokens[j + 1].kind == Token::Ident) {
          alias = tokens[j + 1].text;
          j += 2;
        }
        bindings.push_back({root, alias});
        if (j < tokens.size() && tokens[j].kind == Token::Comma) {
          ++j;
          continue;
        }
        break;
      }
      i = j;
    } else {
      ++i;
    }
  }
  return bindings;
}

// Occurrences of `<alias>.` with a non-identifier, non-dot boundary before.
std::uint64_t count_alias_refs(const std::string& masked_line,
                               const std::set<std::string>& aliases) {
  std::uint64_t count = 0;
  std::size_t i = 0;
  while (i < masked_line.size()) {
    if (!ident_start(masked_line[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < masked_line.size() && ident_char(masked_line[j])) ++j;
    bool bounded = (i == 0) || (!ident_char(masked_line[i - 1]) && masked_line[i - 1] != '.');
    if (bounded && j < masked_line.size() && masked_line[j] == '.' &&
        aliases.count(masked_line.substr(i, j - i)) > 0) {
      ++count;
    }
    i = j;
  }
  return count;
}

const Notebook* latest_parseable(const NotebookHistory& h) {
  for (auto it = h.versions.rbegin(); it != h.versions.rend(); ++it) {
    if (it->parseable()) return &*it->notebook;
  }
  return nullptr;
}

}  // namespace

FilterConfig FilterConfig::defaults() {
  FilterConfig cfg;
  cfg.libraries = {"numpy", "scipy",   "pandas",    "scikit-learn",
                   "matplotlib", "pytorch", "tensorflow"};
  cfg.library_aliases = {{"sklearn", "scikit-learn"}, {"torch", "pytorch"}};
  return cfg;
}

DataScienceCheck detect_data_science(const Notebook& nb, const FilterConfig& cfg) {
  DataScienceCheck check;
  std::set<std::string> detected;
  std::set<std::string> ds_aliases;

  auto canonical = [&cfg](const std::string& root) {
    auto it = cfg.library_aliases.find(root);
    return it != cfg.library_aliases.end() ? it->second : root;
  };
  auto is_library = [&cfg](const std::string& name) {
    return std::find(cfg.libraries.begin(), cfg.libraries.end(), name) != cfg.libraries.end();
  };

  std::vector<std::string> masked_lines;
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code) continue;
    for (const std::string& line : cell.source_lines) {
      std::string masked = mask_strings_and_comment(line);
      for (const ImportBinding& binding : scan_import_statements(masked)) {
        std::string name = canonical(binding.root);
        if (is_library(name)) {
          detected.insert(name);
          if (!binding.alias.empty()) ds_aliases.insert(binding.alias);
        }
      }
      masked_lines.push_back(std::move(masked));
    }
  }

  if (!ds_aliases.empty()) {
    for (const std::string& masked : masked_lines) {
      check.api_call_count += count_alias_refs(masked, ds_aliases);
    }
  }

  check.detected_libraries.assign(detected.begin(), detected.end());
  check.pass = detected.size() >= cfg.min_libraries &&
               check.api_call_count >= cfg.min_api_calls;
  return check;
}

VersionedCheck check_versioned(const NotebookHistory& h, const FilterConfig& cfg) {
  VersionedCheck check;
  check.revision_count = static_cast<std::uint32_t>(h.versions.size());
  for (const VersionRecord& v : h.versions) {
    if (!v.delta) continue;
    check.total_cell_changes += v.delta->cells_added + v.delta->cells_deleted;
    check.total_line_changes += v.delta->lines_added + v.delta->lines_deleted;
  }
  check.pass = check.revision_count >= cfg.min_revisions &&
               check.total_cell_changes >= cfg.min_cell_changes &&
               check.total_line_changes >= cfg.min_line_changes;
  return check;
}

OriginalContentCheck check_original_content(const NotebookHistory& h, const FilterConfig& cfg) {
  std::string owner = !cfg.owner_identity.empty() ? cfg.owner_identity : h.owner_identity;
  if (owner.empty()) {
    throw Error(ErrorCode::MissingOwnerIdentity,
                "no owner identity configured for " + h.notebook_path);
  }
  std::string owner_lc = lower(owner);
  OriginalContentCheck check;
  for (const VersionRecord& v : h.versions) {
    if (lower(v.author_name) != owner_lc && lower(v.author_email) != owner_lc) {
      check.offending_commits.push_back(v.commit_id);
    }
  }
  check.pass = check.offending_commits.empty();
  return check;
}

FilterReport apply_filters(const NotebookHistory& h, const FilterConfig& cfg) {
  FilterReport report;
  const Notebook* latest = latest_parseable(h);

  if (latest != nullptr) {
    report.data_science = detect_data_science(*latest, cfg);
    report.kernel_is_python.kernel_language = latest->kernel_language;
    report.kernel_is_python.pass = latest->kernel_language == "python";
  }

  report.versioned = check_versioned(h, cfg);
  try {
    report.original_content = check_original_content(h, cfg);
  } catch (const Error&) {
    // unset owner identity: the criterion cannot pass, but the report stays total
    report.original_content.pass = false;
  }

  report.accepted = report.data_science.pass && report.versioned.pass &&
                    report.original_content.pass && report.kernel_is_python.pass;
  return report;
}

FilterConfig filter_config_from_json(const nlohmann::json& j) {
  FilterConfig cfg = FilterConfig::defaults();
  if (!j.is_object()) return cfg;
  if (auto it = j.find("libraries"); it != j.end() && it->is_array()) {
    cfg.libraries.clear();
    for (const auto& lib : *it) {
      if (lib.is_string()) cfg.libraries.push_back(lib.get<std::string>());
    }
  }
  if (auto it = j.find("libraryAliases"); it != j.end() && it->is_object()) {
    cfg.library_aliases.clear();
    for (const auto& [root, name] : it->items()) {
      if (name.is_string()) cfg.library_aliases[root] = name.get<std::string>();
    }
  }
  cfg.min_libraries = j.value("minLibraries", cfg.min_libraries);
  cfg.min_api_calls = j.value("minApiCalls", cfg.min_api_calls);
  cfg.min_revisions = j.value("minRevisions", cfg.min_revisions);
  cfg.min_cell_changes = j.value("minCellChanges", cfg.min_cell_changes);
  cfg.min_line_changes = j.value("minLineChanges", cfg.min_line_changes);
  cfg.owner_identity = j.value("ownerIdentity", cfg.owner_identity);
  if (cfg.libraries.empty()) {
    throw Error(ErrorCode::ConfigError, "filter library list must be non-empty");
  }
  return cfg;
}

nlohmann::ordered_json filter_config_to_json(const FilterConfig& cfg) {
  nlohmann::ordered_json aliases;
  for (const auto& [root, name] : cfg.library_aliases) aliases[root] = name;
  return nlohmann::ordered_json{
      {"libraries", cfg.libraries},
      {"libraryAliases", aliases},
      {"minLibraries", cfg.min_libraries},
      {"minApiCalls", cfg.min_api_calls},
      {"minRevisions", cfg.min_revisions},
      {"minCellChanges", cfg.min_cell_changes},
      {"minLineChanges", cfg.min_line_changes},
      {"ownerIdentity", cfg.owner_identity},
  };
}

nlohmann::ordered_json filter_report_to_json(const FilterReport& report, const FilterConfig& cfg) {
  return nlohmann::ordered_json{
      {"dataScience",
       {{"pass", report.data_science.pass},
        {"detectedLibraries", report.data_science.detected_libraries},
        {"apiCallCount", report.data_science.api_call_count},
        {"minLibraries", cfg.min_libraries},
        {"minApiCalls", cfg.min_api_calls}}},
      {"versioned",
       {{"pass", report.versioned.pass},
        {"revisionCount", report.versioned.revision_count},
        {"minRevisions", cfg.min_revisions},
        {"totalCellChanges", report.versioned.total_cell_changes},
        {"minCellChanges", cfg.min_cell_changes},
        {"totalLineChanges", report.versioned.total_line_changes},
        {"minLineChanges", cfg.min_line_changes}}},
      {"originalContent",
       {{"pass", report.original_content.pass},
        {"offendingCommits", report.original_content.offending_commits},
        {"ownerIdentity", cfg.owner_identity}}},
      {"kernelIsPython",
       {{"pass", report.kernel_is_python.pass},
        {"kernelLanguage", report.kernel_is_python.kernel_language}}},
      {"accepted", report.accepted},
  };
}

}  // namespace nbspectrum
