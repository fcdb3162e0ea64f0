#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbspectrum/history.hpp"
#include "nbspectrum/notebook.hpp"

namespace nbspectrum {

struct FilterConfig {
  std::vector<std::string> libraries;                    // canonical package names
  std::map<std::string, std::string> library_aliases;   // import root -> canonical name
  std::uint32_t min_libraries = 1;
  std::uint64_t min_api_calls = 0;   // optional extra gate; 0 disables it
  std::uint32_t min_revisions = 4;
  std::uint64_t min_cell_changes = 2;
  std::uint64_t min_line_changes = 20;
  std::string owner_identity;        // name or email, matched case-insensitively

  static FilterConfig defaults();
};

struct DataScienceCheck {
  bool pass = false;
  std::vector<std::string> detected_libraries;  // canonical names, sorted
  std::uint64_t api_call_count = 0;
};

struct VersionedCheck {
  bool pass = false;
  std::uint32_t revision_count = 0;
  std::uint64_t total_cell_changes = 0;
  std::uint64_t total_line_changes = 0;
};

struct OriginalContentCheck {
  bool pass = false;
  std::vector<std::string> offending_commits;
};

struct KernelCheck {
  bool pass = false;
  std::string kernel_language;
};

struct FilterReport {
  DataScienceCheck data_science;
  VersionedCheck versioned;
  OriginalContentCheck original_content;
  KernelCheck kernel_is_python;
  bool accepted = false;
};

/// Scan code cells for import statements of configured data-science
/// libraries and count attribute references through the bound aliases.
/// Comments and string literals never register.
DataScienceCheck detect_data_science(const Notebook& nb, const FilterConfig& cfg);

/// Revision count and summed cell/line deltas against the configured minimums.
VersionedCheck check_versioned(const NotebookHistory& h, const FilterConfig& cfg);

/// Every version must be authored by the configured owner (name or email,
/// case-insensitive). Throws Error{MissingOwnerIdentity} when no identity is
/// configured on either the config or the history.
OriginalContentCheck check_original_content(const NotebookHistory& h, const FilterConfig& cfg);

/// Evaluate all criteria; nothing short-circuits. Content checks run on the
/// latest parseable version; history checks on the full series.
FilterReport apply_filters(const NotebookHistory& h, const FilterConfig& cfg);

FilterConfig filter_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json filter_config_to_json(const FilterConfig& cfg);
nlohmann::ordered_json filter_report_to_json(const FilterReport& report, const FilterConfig& cfg);

}  // namespace nbspectrum
