#include <algorithm>

#include "nbspectrum/history.hpp"

namespace nbspectrum {

namespace {

constexpr char kFieldSep = '\x1f';
constexpr const char* kCellBoundary = "\n";  // split lines never contain '\n'

}  // namespace

std::vector<std::string> cell_fingerprints(const Notebook& nb) {
  std::vector<std::string> prints;
  prints.reserve(nb.cells.size());
  for (const Cell& cell : nb.cells) {
    std::string fp(cell_kind_name(cell.kind));
    fp += kFieldSep;
    for (std::size_t i = 0; i < cell.source_lines.size(); ++i) {
      if (i > 0) fp += '\n';
      fp += cell.source_lines[i];
    }
    prints.push_back(std::move(fp));
  }
  return prints;
}

std::vector<std::string> line_sequence(const Notebook& nb) {
  std::vector<std::string> seq;
  for (std::size_t c = 0; c < nb.cells.size(); ++c) {
    if (c > 0) seq.emplace_back(kCellBoundary);
    for (const std::string& line : nb.cells[c].source_lines) {
      seq.push_back(line);
    }
  }
  return seq;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  // Trim the common prefix and suffix, then run the two-row DP on the core.
  std::size_t lo = 0;
  std::size_t a_hi = a.size();
  std::size_t b_hi = b.size();
  while (lo < a_hi && lo < b_hi && a[lo] == b[lo]) ++lo;
  while (a_hi > lo && b_hi > lo && a[a_hi - 1] == b[b_hi - 1]) {
    --a_hi;
    --b_hi;
  }
  const std::size_t n = a_hi - lo;
  const std::size_t m = b_hi - lo;
  std::size_t common = lo + (a.size() - a_hi);
  if (n == 0 || m == 0) return common;

  std::vector<std::size_t> prev(m + 1, 0);
  std::vector<std::size_t> curr(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (a[lo + i - 1] == b[lo + j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  return common + prev[m];
}

std::pair<std::uint64_t, std::uint64_t> cell_diff(const Notebook& a, const Notebook& b) {
  auto fa = cell_fingerprints(a);
  auto fb = cell_fingerprints(b);
  std::size_t lcs = lcs_length(fa, fb);
  return {fb.size() - lcs, fa.size() - lcs};
}

std::pair<std::uint64_t, std::uint64_t> line_diff(const Notebook& a, const Notebook& b) {
  auto la = line_sequence(a);
  auto lb = line_sequence(b);
  std::size_t lcs = lcs_length(la, lb);
  return {lb.size() - lcs, la.size() - lcs};
}

Delta notebook_delta(const Notebook& a, const Notebook& b) {
  Delta d;
  auto [ca, cd] = cell_diff(a, b);
  auto [la, ld] = line_diff(a, b);
  d.cells_added = ca;
  d.cells_deleted = cd;
  d.lines_added = la;
  d.lines_deleted = ld;
  return d;
}

}  // namespace nbspectrum
