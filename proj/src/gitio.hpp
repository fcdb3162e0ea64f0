#pragma once

#include <string>
#include <vector>

namespace nbspectrum::detail {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;

  bool ok() const { return exit_code == 0; }
};

/// Run `git -C <repo> <args...>` and capture stdout/stderr. No shell involved.
CommandResult run_git(const std::string& repo, const std::vector<std::string>& args);

}  // namespace nbspectrum::detail
