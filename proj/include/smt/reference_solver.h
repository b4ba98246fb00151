#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smt/solver.h"

namespace smt {

/** Finite interpretation of a function symbol: explicit entries plus a value
 *  for every other argument tuple. */
struct FunctionTable
{
  std::map<std::vector<Value>, Value> entries;
  Value otherwise;

  const Value & lookup(const std::vector<Value> & args) const;
};

/** Values for symbols and, optionally, tables for function symbols. */
struct Assignment
{
  std::map<Term, Value, TermIdLess> values;
  std::map<Term, FunctionTable, TermIdLess> functions;

  /** Throws IncorrectUsageException unless `symbol` is a symbol of the
   *  value's sort. */
  void set(const Term & symbol, const Value & v);
};

/** Non-function symbols occurring in `roots`, sorted by name. */
TermVec free_symbols(const TermVec & roots);
/** Function symbols occurring in `roots` (as Apply heads), sorted by name. */
TermVec function_symbols(const TermVec & roots);

/** Evaluates a fixed set of terms under many assignments.
 *
 *  The DAG below the roots is flattened once into evaluation order, so each
 *  evaluation is a single linear pass with every shared node computed once.
 *
 *  Semantics follow SMT-LIB: bit-vector arithmetic is modulo 2^w,
 *  (bvudiv x 0) is all ones, (bvurem x 0) is x, shifts by >= w give 0 (or
 *  the sign fill for bvashr). Apply needs a table for its head symbol in the
 *  assignment. Integer/real division or mod by zero raises
 *  NotImplementedException.
 */
class Evaluator
{
 public:
  explicit Evaluator(const TermVec & roots);
  ~Evaluator();
  Evaluator(Evaluator &&) noexcept;
  Evaluator & operator=(Evaluator &&) noexcept;

  const TermVec & roots() const;
  /** Same as free_symbols(roots()). */
  const TermVec & symbols() const;

  Value eval(std::size_t root, const Assignment & a);
  /** True iff every root evaluates to true; stops at the first false. */
  bool all_true(const Assignment & a);

  /** Positional variants: `symbol_values[i]` is the value of symbols()[i]. */
  bool all_true(std::span<const Value> symbol_values,
                const std::map<Term, FunctionTable, TermIdLess> & functions);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/** Value of `t` under `a`. Throws IncorrectUsageException when a free
 *  symbol of `t` has no value in `a`. */
Value eval_term(const Term & t, const Assignment & a);

struct AckermannResult
{
  /** Rewritten assertions followed by the functional-consistency
   *  constraints. */
  TermVec assertions;
  /** Original Apply term -> fresh symbol that replaces it. */
  std::map<Term, Term, TermIdLess> app_map;
  std::size_t num_constraints = 0;
};

/** Replaces every Apply by a fresh symbol of the codomain sort and adds, for
 *  each pair of applications of the same function, the constraint
 *  (args pairwise equal) => (results equal). Equisatisfiable with the input.
 *
 *  Fresh symbols are declared in `mgr`. Pass the same `cache` across calls to
 *  reuse fresh symbols for Apply terms already seen.
 *
 *  Throws NotImplementedException if an Apply head is not a symbol.
 */
AckermannResult ackermannize(const TermVec & assertions,
                             TermManager & mgr,
                             std::map<Term, Term, TermIdLess> * cache = nullptr);

struct SearchBudget
{
  uint64_t max_states = uint64_t(1) << 20;
  uint64_t max_bv_width = 16;
};

struct EnumerationResult
{
  Result result;
  /** Present iff result is SAT; covers the Ackermann fresh symbols too. */
  std::optional<Assignment> model;
  AckermannResult ackermann;
};

/** Decides a set of Bool assertions by exhaustive search.
 *
 *  Returns UNKNOWN (with the cause as explanation) when a free symbol has an
 *  INT or REAL sort, a bit-vector wider than budget.max_bv_width, an array
 *  over more than 16 indices, or when the number of candidate assignments
 *  exceeds budget.max_states. Otherwise assignments are tried in a fixed
 *  order (symbols sorted by name, the last varying fastest, values
 *  ascending) and the first model found is returned.
 */
EnumerationResult enumerate_check_sat(
    const TermVec & assertions,
    const SearchBudget & budget,
    TermManager & mgr,
    std::map<Term, Term, TermIdLess> * ackermann_cache = nullptr);

/** Number of assignments enumerate_check_sat would have to consider, without
 *  declaring anything; nullopt if some symbol has an infinite carrier.
 *  Each distinct Apply term counts as one symbol of its codomain sort. */
std::optional<BigInt> search_space_size(const TermVec & assertions);

/** Reconstructs an assignment from a solver's get_value answers for every
 *  free symbol and every Apply subterm of `assertions`. */
Assignment assignment_from_model(AbsSmtSolver & solver,
                                 const TermVec & assertions);

struct SoundnessReport
{
  bool ok = true;
  std::string detail;
};

/** Re-evaluates `assertions` under the solver's current model (obtained via
 *  get_value) with the reference evaluator. */
SoundnessReport check_model_soundness(AbsSmtSolver & solver,
                                      const TermVec & assertions);

/** Self-contained backend: Ackermann expansion plus bounded exhaustive
 *  search. Intended as an oracle for small problems, not as a fast solver.
 *
 *  Options: "ref.max-states" and "ref.max-bv-width" set the search budget;
 *  "incremental" and "produce-models" are accepted (both always on); any
 *  other key is recorded and ignored.
 */
class ReferenceSolver : public AbsSmtSolver
{
 public:
  ReferenceSolver() = default;

  std::string name() const override { return "ref"; }
  const SearchBudget & budget() const { return budget_; }
  const std::map<std::string, std::string> & options() const
  {
    return options_;
  }

 protected:
  void do_set_opt(const std::string & option,
                  const std::string & value) override;
  void do_set_logic(const std::string &) override {}
  void do_assert(const Term &) override {}
  Result do_check_sat() override;
  CheckOutcome do_check_sat_assuming(const TermVec & assumptions) override;
  void do_push(uint64_t) override {}
  void do_pop(uint64_t) override {}
  Term do_get_value(const Term & t) override;

 private:
  Result run(const TermVec & assertions);

  SearchBudget budget_;
  std::map<std::string, std::string> options_;
  std::map<Term, Term, TermIdLess> ackermann_cache_;
  Assignment model_;
};

class ReferenceSolverFactory
{
 public:
  /** `logging` is accepted for interface fidelity and ignored. */
  static SmtSolver create(bool logging);
};

}  // namespace smt
