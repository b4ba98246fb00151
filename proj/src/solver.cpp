#include "smt/solver.h"

#include "smt/exceptions.h"
#include "smt/process_solver.h"
#include "smt/reference_solver.h"

namespace smt {

void AssertionStack::push(uint64_t n)
{
  for (uint64_t i = 0; i < n; ++i) frames_.emplace_back();
}

void AssertionStack::pop(uint64_t n)
{
  if (n > depth()) {
    throw IncorrectUsageException("cannot pop " + std::to_string(n)
                                  + " frame(s) at depth "
                                  + std::to_string(depth()));
  }
  frames_.resize(frames_.size() - n);
}

TermVec AssertionStack::all() const
{
  TermVec out;
  for (const TermVec & f : frames_) out.insert(out.end(), f.begin(), f.end());
  return out;
}

void AbsSmtSolver::check_formula(const Term & t, const char * context) const
{
  mgr_.check_owned(t, context);
  if (!t->get_sort().is(SortKind::BOOL)) {
    throw IncorrectUsageException(std::string(context)
                                  + " expects a Bool term, got sort "
                                  + t->get_sort().to_string());
  }
}

void AbsSmtSolver::set_opt(const std::string & option, const std::string & value)
{
  model_valid_ = false;
  do_set_opt(option, value);
}

void AbsSmtSolver::set_logic(const std::string & logic)
{
  do_set_logic(logic);
  logic_ = logic;
}

void AbsSmtSolver::assert_formula(const Term & t)
{
  check_formula(t, "assert_formula");
  model_valid_ = false;
  do_assert(t);
  stack_.add(t);
}

Result AbsSmtSolver::check_sat()
{
  model_valid_ = false;
  Result r = do_check_sat();
  model_valid_ = r.is_sat();
  return r;
}

Result AbsSmtSolver::check_sat_assuming(const TermVec & assumptions)
{
  for (const Term & a : assumptions) check_formula(a, "check_sat_assuming");
  model_valid_ = false;
  CheckOutcome out = do_check_sat_assuming(assumptions);
  model_valid_ = out.result.is_sat() && out.model_available;
  return out.result;
}

AbsSmtSolver::CheckOutcome AbsSmtSolver::do_check_sat_assuming(
    const TermVec & assumptions)
{
  do_push(1);
  try {
    for (const Term & a : assumptions) do_assert(a);
    Result r = do_check_sat();
    do_pop(1);
    return { r, false };
  }
  catch (...) {
    do_pop(1);
    throw;
  }
}

void AbsSmtSolver::push(uint64_t n)
{
  if (n == 0) throw IncorrectUsageException("push expects a positive count");
  model_valid_ = false;
  do_push(n);
  stack_.push(n);
}

void AbsSmtSolver::pop(uint64_t n)
{
  if (n == 0) throw IncorrectUsageException("pop expects a positive count");
  if (n > stack_.depth()) {
    throw IncorrectUsageException("cannot pop " + std::to_string(n)
                                  + " frame(s) at depth "
                                  + std::to_string(stack_.depth()));
  }
  model_valid_ = false;
  do_pop(n);
  stack_.pop(n);
}

Term AbsSmtSolver::get_value(const Term & t)
{
  mgr_.check_owned(t, "get_value");
  if (!model_valid_) {
    throw IncorrectUsageException(
        "get_value needs a preceding sat answer with no assert, push, pop or "
        "set_opt since");
  }
  if (t->get_sort().is(SortKind::FUNCTION)) {
    throw NotImplementedException("get_value on a function-sorted term: "
                                  + t->to_string());
  }
  return do_get_value(t);
}

SmtSolver create_solver(const SolverConfig & config)
{
  switch (config.backend) {
    case SolverConfig::Backend::REFERENCE: {
      SmtSolver s = ReferenceSolverFactory::create(config.logging);
      for (const auto & [k, v] : config.options) s->set_opt(k, v);
      return s;
    }
    case SolverConfig::Backend::PROCESS:
      return ProcessSolverFactory::create(
          config.command, config.args, config.options, config.logging);
  }
  throw IncorrectUsageException("unknown backend kind");
}

}  // namespace smt
