#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "smt/result.h"
#include "smt/term_manager.h"

namespace smt {

/** Assertions grouped by push frame. Frame 0 always exists. */
class AssertionStack
{
 public:
  AssertionStack() : frames_(1) {}

  void add(const Term & t) { frames_.back().push_back(t); }
  void push(uint64_t n = 1);
  /** Throws IncorrectUsageException when popping past frame 0. */
  void pop(uint64_t n = 1);

  /** Number of pushed frames, not counting frame 0. */
  std::size_t depth() const { return frames_.size() - 1; }
  const std::vector<TermVec> & frames() const { return frames_; }
  /** All assertions, frame by frame in insertion order. */
  TermVec all() const;

 private:
  std::vector<TermVec> frames_;
};

/** Uniform solver contract. Method names follow SMT-LIB commands with "-"
 *  replaced by "_"; `(assert t)` is assert_formula.
 *
 *  Terms are built through the solver's own TermManager (the canonical term
 *  DAG); backends only see finished terms. The public methods check the
 *  contract and keep the assertion stack, then hand over to the backend via
 *  the protected do_* hooks.
 *
 *  A model is available from a SAT answer until the next assert_formula,
 *  push, pop or set_opt.
 */
class AbsSmtSolver
{
 public:
  virtual ~AbsSmtSolver() = default;
  AbsSmtSolver(const AbsSmtSolver &) = delete;
  AbsSmtSolver & operator=(const AbsSmtSolver &) = delete;

  /** Short backend description, e.g. "ref" or "proc:z3 -in". */
  virtual std::string name() const = 0;

  void set_opt(const std::string & option, const std::string & value);
  void set_logic(const std::string & logic);
  void assert_formula(const Term & t);
  Result check_sat();
  Result check_sat_assuming(const TermVec & assumptions);
  void push(uint64_t n = 1);
  void pop(uint64_t n = 1);
  Term get_value(const Term & t);

  const AssertionStack & assertion_stack() const { return stack_; }
  TermVec assertions() const { return stack_.all(); }
  std::size_t context_depth() const { return stack_.depth(); }
  const std::string & logic() const { return logic_; }
  bool has_model() const { return model_valid_; }

  TermManager & term_manager() { return mgr_; }
  const TermManager & term_manager() const { return mgr_; }

  Sort make_sort(SortKind sk) const { return mgr_.make_sort(sk); }
  Sort make_sort(SortKind sk, uint64_t width) const
  {
    return mgr_.make_sort(sk, width);
  }
  Sort make_sort(SortKind sk, const SortVec & sorts) const
  {
    return mgr_.make_sort(sk, sorts);
  }
  Sort make_sort(SortKind sk, const Sort & s0, const Sort & s1) const
  {
    return mgr_.make_sort(sk, s0, s1);
  }
  Sort make_sort(const std::string & name, uint64_t arity) const
  {
    return mgr_.make_sort(name, arity);
  }
  Term make_symbol(const std::string & name, const Sort & sort)
  {
    return mgr_.make_symbol(name, sort);
  }
  Term make_term(bool b) { return mgr_.make_term(b); }
  Term make_value(const Value & v) { return mgr_.make_value(v); }
  Term make_term(const Op & op, const TermVec & children)
  {
    return mgr_.make_term(op, children);
  }
  Term make_term(const Op & op, const Term & t0)
  {
    return mgr_.make_term(op, t0);
  }
  Term make_term(const Op & op, const Term & t0, const Term & t1)
  {
    return mgr_.make_term(op, t0, t1);
  }
  Term make_term(const Op & op,
                 const Term & t0,
                 const Term & t1,
                 const Term & t2)
  {
    return mgr_.make_term(op, t0, t1, t2);
  }

 protected:
  AbsSmtSolver() = default;

  struct CheckOutcome
  {
    Result result;
    /** Whether get_value may be answered afterwards. */
    bool model_available;
  };

  virtual void do_set_opt(const std::string & option,
                          const std::string & value) = 0;
  virtual void do_set_logic(const std::string & logic) = 0;
  virtual void do_assert(const Term & t) = 0;
  virtual Result do_check_sat() = 0;
  /** Default: push, assert every assumption, check, pop. */
  virtual CheckOutcome do_check_sat_assuming(const TermVec & assumptions);
  virtual void do_push(uint64_t n) = 0;
  virtual void do_pop(uint64_t n) = 0;
  virtual Term do_get_value(const Term & t) = 0;

  TermManager mgr_;

 private:
  void check_formula(const Term & t, const char * context) const;

  AssertionStack stack_;
  std::string logic_;
  bool model_valid_ = false;
};

using SmtSolver = std::shared_ptr<AbsSmtSolver>;

struct SolverConfig
{
  enum class Backend
  {
    REFERENCE,
    PROCESS
  };

  Backend backend = Backend::REFERENCE;
  /** Executable and arguments for PROCESS. */
  std::string command;
  std::vector<std::string> args;
  /** Accepted for interface compatibility; the term DAG is always kept. */
  bool logging = true;
  /** Applied with set_opt, in order. */
  std::vector<std::pair<std::string, std::string>> options;
};

/** Creates a fresh solver with an empty assertion stack and its own
 *  TermManager. Throws IncorrectUsageException for an empty PROCESS command
 *  and InternalSolverException if the process cannot be started. */
SmtSolver create_solver(const SolverConfig & config);

}  // namespace smt
