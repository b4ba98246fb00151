#include "smt/subprocess.h"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "smt/exceptions.h"

extern char ** environ;

namespace smt {

namespace {

constexpr std::size_t kStderrKeep = 4096;

[[noreturn]] void sys_fail(const std::string & what)
{
  throw InternalSolverException(what + ": " + std::strerror(errno));
}

}  // namespace

Subprocess::Subprocess(const std::vector<std::string> & argv)
{
  if (argv.empty() || argv[0].empty()) {
    throw IncorrectUsageException("empty solver command line");
  }
  int in_sock[2], out_pipe[2], err_pipe[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_sock) != 0) {
    sys_fail("socketpair");
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) sys_fail("pipe");
  if (pipe2(err_pipe, O_CLOEXEC) != 0) sys_fail("pipe");

  // the child's write end of stdin is not needed
  shutdown(in_sock[1], SHUT_WR);

  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_adddup2(&fa, in_sock[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&fa, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&fa, err_pipe[1], STDERR_FILENO);

  std::vector<char *> args;
  for (const std::string & a : argv) args.push_back(const_cast<char *>(a.c_str()));
  args.push_back(nullptr);

  const int rc = posix_spawnp(&pid_, argv[0].c_str(), &fa, nullptr,
                              args.data(), environ);
  posix_spawn_file_actions_destroy(&fa);
  ::close(in_sock[1]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  in_fd_ = in_sock[0];
  out_fd_ = out_pipe[0];
  err_fd_ = err_pipe[0];
  if (rc != 0) {
    close_fds();
    pid_ = -1;
    throw InternalSolverException("cannot start '" + argv[0]
                                  + "': " + std::strerror(rc));
  }
  fcntl(err_fd_, F_SETFL, fcntl(err_fd_, F_GETFL) | O_NONBLOCK);
}

Subprocess::~Subprocess()
{
  kill();
  close_fds();
}

void Subprocess::close_fds()
{
  for (int * fd : { &in_fd_, &out_fd_, &err_fd_ }) {
    if (*fd >= 0) ::close(*fd);
    *fd = -1;
  }
}

bool Subprocess::write(const std::string & data)
{
  if (in_fd_ < 0) return false;
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n =
        ::send(in_fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

void Subprocess::drain_stderr()
{
  if (err_fd_ < 0) return;
  char tmp[1024];
  for (;;) {
    const ssize_t n = ::read(err_fd_, tmp, sizeof tmp);
    if (n > 0) {
      err_.append(tmp, static_cast<std::size_t>(n));
      if (err_.size() > 2 * kStderrKeep) {
        err_.erase(0, err_.size() - kStderrKeep);
      }
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    if (n == 0) {
      ::close(err_fd_);
      err_fd_ = -1;
    }
    return;
  }
}

int Subprocess::read_char(Clock::time_point deadline)
{
  if (buf_pos_ < buf_len_) return static_cast<unsigned char>(buf_[buf_pos_++]);
  if (out_fd_ < 0) return -1;
  for (;;) {
    const auto now = Clock::now();
    if (now >= deadline) return -2;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - now)
                        .count();
    pollfd fds[2] = { { out_fd_, POLLIN, 0 }, { err_fd_, POLLIN, 0 } };
    const nfds_t nfds = err_fd_ >= 0 ? 2 : 1;
    const int rc = ::poll(fds, nfds, static_cast<int>(std::max<long long>(ms, 1)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      sys_fail("poll");
    }
    if (nfds == 2 && fds[1].revents) drain_stderr();
    if (fds[0].revents) {
      const ssize_t n = ::read(out_fd_, buf_, sizeof buf_);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        return -1;
      }
      if (n == 0) {
        ::close(out_fd_);
        out_fd_ = -1;
        return -1;
      }
      buf_pos_ = 1;
      buf_len_ = static_cast<std::size_t>(n);
      return static_cast<unsigned char>(buf_[0]);
    }
  }
}

std::string Subprocess::stderr_tail()
{
  drain_stderr();
  if (err_.size() > kStderrKeep) return err_.substr(err_.size() - kStderrKeep);
  return err_;
}

void Subprocess::kill()
{
  if (pid_ <= 0 || reaped_) return;
  ::kill(pid_, SIGKILL);
  int status = 0;
  while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
  }
  reaped_ = true;
}

bool Subprocess::running()
{
  if (pid_ <= 0 || reaped_) return false;
  int status = 0;
  const pid_t r = ::waitpid(pid_, &status, WNOHANG);
  if (r == pid_) reaped_ = true;
  return !reaped_;
}

}  // namespace smt
