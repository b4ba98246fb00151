#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "smt/solver.h"

namespace smt {

/** Split a command line on whitespace; single and double quotes group. */
std::vector<std::string> split_command_line(const std::string & line);

/** Solver backed by an external SMT-LIB solver over pipes.
 *
 *  Every command is framed by (set-option :print-success true): each one is
 *  answered by exactly one response. Symbols and uninterpreted sorts are
 *  declared on first use and again after a pop removed the declaration.
 *  Values of uninterpreted sorts have no SMT-LIB syntax and are rejected
 *  with NotImplementedException. After a timeout, a crash or a
 *  garbled reply the child is killed and every later call raises
 *  InternalSolverException.
 *
 *  Local options (never forwarded):
 *    proc.timeout-ms    per check-sat limit, default 60000
 *    proc.transcript    file receiving every byte sent to the child
 *    incremental        accepted and ignored; the session is always
 *                       incremental
 *    print-success      framing depends on it, so it cannot be changed
 */
class ProcessSolver : public AbsSmtSolver
{
 public:
  ProcessSolver(std::vector<std::string> argv);
  ~ProcessSolver() override;

  std::string name() const override;

  /** Everything written to the child so far. */
  const std::string & transcript() const;
  /** True once the session was lost (crash, timeout, garbage). */
  bool dead() const;
  /** The child's process id, for tests that need to kill it. */
  long child_pid() const;

 protected:
  void do_set_opt(const std::string & option,
                  const std::string & value) override;
  void do_set_logic(const std::string & logic) override;
  void do_assert(const Term & t) override;
  Result do_check_sat() override;
  CheckOutcome do_check_sat_assuming(const TermVec & assumptions) override;
  void do_push(uint64_t n) override;
  void do_pop(uint64_t n) override;
  Term do_get_value(const Term & t) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class ProcessSolverFactory
{
 public:
  /** Starts `command args...`, performs the handshake and applies
   *  `options` in order. */
  static SmtSolver create(
      const std::string & command,
      const std::vector<std::string> & args,
      const std::vector<std::pair<std::string, std::string>> & options = {},
      bool logging = true);
};

}  // namespace smt
