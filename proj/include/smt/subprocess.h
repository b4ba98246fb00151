#pragma once

#include <chrono>
#include <string>
#include <sys/types.h>
#include <vector>

namespace smt {

/** A child process with its stdin, stdout and stderr connected to us.
 *
 *  stdin is a socket so that writes to a dead child fail with EPIPE instead
 *  of raising SIGPIPE. stderr is drained whenever we wait on stdout, so a
 *  chatty child cannot block on a full pipe.
 */
class Subprocess
{
 public:
  using Clock = std::chrono::steady_clock;

  /** Starts argv[0] (looked up in PATH). Throws InternalSolverException if
   *  the process cannot be created. */
  explicit Subprocess(const std::vector<std::string> & argv);
  ~Subprocess();
  Subprocess(const Subprocess &) = delete;
  Subprocess & operator=(const Subprocess &) = delete;

  /** Writes all of `data`; false if the child is gone. */
  bool write(const std::string & data);

  /** Next byte of stdout; -1 at end of stream, -2 on timeout. */
  int read_char(Clock::time_point deadline);

  /** Collected stderr output (last few kilobytes). */
  std::string stderr_tail();

  /** Sends SIGKILL and reaps the child. Idempotent. */
  void kill();
  /** True while the child has not been observed to exit. */
  bool running();
  pid_t pid() const { return pid_; }

 private:
  void drain_stderr();
  void close_fds();

  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  int err_fd_ = -1;
  bool reaped_ = false;
  char buf_[4096];
  std::size_t buf_pos_ = 0;
  std::size_t buf_len_ = 0;
  std::string err_;
};

}  // namespace smt
