#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbspectrum/notebook.hpp"

namespace nbspectrum {

/// Cell- and line-level additions/deletions between two consecutive versions.
struct Delta {
  std::uint64_t cells_added = 0;
  std::uint64_t cells_deleted = 0;
  std::uint64_t lines_added = 0;
  std::uint64_t lines_deleted = 0;
};

struct VersionRecord {
  std::string commit_id;
  std::string author_name;
  std::string author_email;
  std::int64_t timestamp = 0;  // committer time, seconds since epoch
  std::string message;
  std::string path_at_commit;        // follows renames
  std::optional<Notebook> notebook;  // empty when the blob failed to read/parse
  std::string parse_error;           // set when notebook is empty
  std::optional<Delta> delta;        // absent for the first version or across unparseable gaps

  bool parseable() const { return notebook.has_value(); }
};

struct NotebookHistory {
  std::string repo_path;
  std::string notebook_path;
  std::string owner_identity;          // configured, not derived from the repo
  std::vector<VersionRecord> versions; // oldest -> newest, first-parent order
};

struct HistoryOptions {
  std::string branch = "HEAD";  // rev whose first-parent chain is walked
  std::string owner_identity;
};

/// Walk the first-parent history of `repo_path` and collect every commit that
/// changes the blob at `notebook_path` (renames followed at git's default
/// similarity threshold). Versions are returned oldest-first with parsed
/// notebooks; read/parse failures are recorded per version, never fatal.
/// Throws Error{RepoNotFound} and Error{PathNeverExisted}.
NotebookHistory extract_history(const std::string& repo_path,
                                const std::string& notebook_path,
                                const HistoryOptions& opts = {});

/// LCS alignment over cell fingerprints (kind + exact source text).
/// Returns {cells_added, cells_deleted} = {|b| - |LCS|, |a| - |LCS|}.
std::pair<std::uint64_t, std::uint64_t> cell_diff(const Notebook& a, const Notebook& b);

/// LCS over all source lines in cell order with a synthetic boundary sentinel
/// between cells (the sentinel contains '\n', which no split line can).
/// Returns {lines_added, lines_deleted}.
std::pair<std::uint64_t, std::uint64_t> line_diff(const Notebook& a, const Notebook& b);

Delta notebook_delta(const Notebook& a, const Notebook& b);

/// Sequences the diffs operate on, exposed for oracle-style verification.
std::vector<std::string> cell_fingerprints(const Notebook& nb);
std::vector<std::string> line_sequence(const Notebook& nb);

/// Length of the longest common subsequence of two string sequences.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace nbspectrum
