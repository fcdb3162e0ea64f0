#include "nbspectrum/history.hpp"

#include <algorithm>
#include <cstdlib>

#include "gitio.hpp"
#include "nbspectrum/errors.hpp"

namespace nbspectrum {

namespace {

constexpr char kRecordStart = '\x01';
constexpr char kHeaderEnd = '\x02';
constexpr char kFieldSep = '\x1f';

struct LogEntry {
  std::string commit_id;
  std::string author_name;
  std::string author_email;
  std::int64_t timestamp = 0;
  std::string message;
  char status = '\0';        // A, M, D, R, ...
  std::string path_before;   // for renames: the older name
  std::string path_after;    // path as of this commit
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

// One record per commit: header fields up to \x02, then name-status lines.
std::vector<LogEntry> parse_log(const std::string& raw) {
  std::vector<LogEntry> entries;
  std::size_t pos = 0;
  while ((pos = raw.find(kRecordStart, pos)) != std::string::npos) {
    std::size_t next = raw.find(kRecordStart, pos + 1);
    std::string record = raw.substr(pos + 1, (next == std::string::npos ? raw.size() : next) - pos - 1);
    pos = (next == std::string::npos) ? raw.size() : next;

    std::size_t header_end = record.find(kHeaderEnd);
    if (header_end == std::string::npos) continue;
    std::vector<std::string> fields = split(record.substr(0, header_end), kFieldSep);
    if (fields.size() < 5) continue;

    LogEntry entry;
    entry.commit_id = fields[0];
    entry.author_name = fields[1];
    entry.author_email = fields[2];
    entry.timestamp = std::strtoll(fields[3].c_str(), nullptr, 10);
    entry.message = fields[4];

    for (const std::string& line : split(record.substr(header_end + 1), '\n')) {
      if (line.empty()) continue;
      std::vector<std::string> cols = split(line, '\t');
      if (cols.empty() || cols[0].empty()) continue;
      char status = cols[0][0];
      if (status == 'R' || status == 'C') {
        if (cols.size() < 3) continue;
        entry.status = status;
        entry.path_before = cols[1];
        entry.path_after = cols[2];
      } else {
        if (cols.size() < 2) continue;
        entry.status = status;
        entry.path_before = cols[1];
        entry.path_after = cols[1];
      }
      break;  // --follow limits output to the tracked file; one entry per commit
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

NotebookHistory extract_history(const std::string& repo_path,
                                const std::string& notebook_path,
                                const HistoryOptions& opts) {
  auto probe = detail::run_git(repo_path, {"rev-parse", "--git-dir"});
  if (!probe.ok()) {
    throw Error(ErrorCode::RepoNotFound, repo_path + ": " + probe.err);
  }

  std::string format = std::string("--format=") + kRecordStart + "%H" + kFieldSep + "%an" +
                       kFieldSep + "%ae" + kFieldSep + "%ct" + kFieldSep + "%s" + kHeaderEnd;
  auto log = detail::run_git(repo_path, {"log", "--first-parent", "--follow", "--name-status",
                                         format, opts.branch, "--", notebook_path});
  if (!log.ok() || log.out.empty()) {
    std::string detail = notebook_path + " has no history on " + opts.branch + " in " + repo_path;
    if (!log.err.empty()) detail += " (" + log.err + ")";
    throw Error(ErrorCode::PathNeverExisted, detail);
  }

  std::vector<LogEntry> entries = parse_log(log.out);
  std::reverse(entries.begin(), entries.end());  // oldest first

  NotebookHistory history;
  history.repo_path = repo_path;
  history.notebook_path = notebook_path;
  history.owner_identity = opts.owner_identity;

  for (const LogEntry& entry : entries) {
    if (entry.status == 'D') continue;  // deletion leaves no blob to version

    VersionRecord record;
    record.commit_id = entry.commit_id;
    record.author_name = entry.author_name;
    record.author_email = entry.author_email;
    record.timestamp = entry.timestamp;
    record.message = entry.message;
    record.path_at_commit = entry.path_after.empty() ? notebook_path : entry.path_after;

    auto blob = detail::run_git(repo_path,
                                {"show", entry.commit_id + ":" + record.path_at_commit});
    if (!blob.ok()) {
      record.parse_error = std::string(error_code_name(ErrorCode::UnreadableBlob)) + ": " + blob.err;
    } else {
      try {
        record.notebook = parse_notebook(blob.out, record.path_at_commit);
      } catch (const Error& e) {
        record.parse_error = e.what();
      }
    }

    if (record.parseable() && !history.versions.empty() &&
        history.versions.back().parseable()) {
      record.delta = notebook_delta(*history.versions.back().notebook, *record.notebook);
    }
    history.versions.push_back(std::move(record));
  }

  if (history.versions.empty()) {
    throw Error(ErrorCode::PathNeverExisted,
                notebook_path + " never present in walked history of " + repo_path);
  }
  return history;
}

}  // namespace nbspectrum
