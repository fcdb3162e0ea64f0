#include "gitio.hpp"

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "nbspectrum/errors.hpp"

namespace nbspectrum::detail {

namespace {

void read_available(int fd, std::string& sink, bool& open) {
  char buf[4096];
  ssize_t n = ::read(fd, buf, sizeof(buf));
  if (n > 0) {
    sink.append(buf, static_cast<std::size_t>(n));
  } else if (n == 0) {
    open = false;
  } else if (errno != EINTR && errno != EAGAIN) {
    open = false;
  }
}

}  // namespace

CommandResult run_git(const std::string& repo, const std::vector<std::string>& args) {
  int out_pipe[2];
  int err_pipe[2];
  if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
    throw Error(ErrorCode::IoError, std::string("pipe: ") + std::strerror(errno));
  }

  pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorCode::IoError, std::string("fork: ") + std::strerror(errno));
  }

  if (pid == 0) {  // child
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    ::close(err_pipe[1]);

    std::vector<std::string> argv_store = {"git", "-C", repo};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_store.size() + 1);
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);
    ::execvp("git", argv.data());
    ::_exit(127);
  }

  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  CommandResult result;
  bool out_open = true;
  bool err_open = true;
  while (out_open || err_open) {
    pollfd fds[2];
    nfds_t nfds = 0;
    int out_slot = -1;
    int err_slot = -1;
    if (out_open) {
      out_slot = static_cast<int>(nfds);
      fds[nfds++] = {out_pipe[0], POLLIN, 0};
    }
    if (err_open) {
      err_slot = static_cast<int>(nfds);
      fds[nfds++] = {err_pipe[0], POLLIN, 0};
    }
    int rc = ::poll(fds, nfds, -1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP))) {
      read_available(out_pipe[0], result.out, out_open);
    }
    if (err_slot >= 0 && (fds[err_slot].revents & (POLLIN | POLLHUP))) {
      read_available(err_pipe[0], result.err, err_open);
    }
  }
  ::close(out_pipe[0]);
  ::close(err_pipe[0]);

  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) {
    throw Error(ErrorCode::IoError, std::string("waitpid: ") + std::strerror(errno));
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace nbspectrum::detail
