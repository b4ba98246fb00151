#include "smt/reference_solver.h"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "smt/exceptions.h"

namespace smt {

namespace {

uint64_t parse_positive(const std::string & option, const std::string & value)
{
  uint64_t n = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || p != value.data() + value.size() || n == 0) {
    throw IncorrectUsageException("option " + option
                                  + " expects a positive integer, got '"
                                  + value + "'");
  }
  return n;
}

bool is_apply(const Term & t)
{
  return !t->get_op().is_null() && *t->get_op().prim == Apply;
}

TermVec apply_terms(const TermVec & roots)
{
  TermVec apps;
  std::unordered_set<const TermNode *> seen;
  std::vector<Term> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (!seen.insert(t.get()).second) continue;
    if (is_apply(t)) apps.push_back(t);
    for (const Term & c : *t) stack.push_back(c);
  }
  // Inner applications have smaller ids than the ones built on top of them.
  std::sort(apps.begin(), apps.end(), TermIdLess());
  return apps;
}

// Fills in missing symbols and function tables of `model` for `t` with
// default values.
void complete_model(Assignment & model, const Term & t)
{
  for (const Term & s : free_symbols({ t })) {
    if (!model.values.count(s)) {
      model.values.emplace(s, default_value(s->get_sort()));
    }
  }
  for (const Term & f : function_symbols({ t })) {
    if (!model.functions.count(f)) {
      model.functions.emplace(
          f, FunctionTable{ {}, default_value(f->get_sort().codomain()) });
    }
  }
}

}  // namespace

void ReferenceSolver::do_set_opt(const std::string & option,
                                 const std::string & value)
{
  if (option == "ref.max-states") {
    budget_.max_states = parse_positive(option, value);
  } else if (option == "ref.max-bv-width") {
    budget_.max_bv_width = parse_positive(option, value);
  }
  options_.insert_or_assign(option, value);
}

Result ReferenceSolver::run(const TermVec & assertions)
{
  model_ = Assignment();
  EnumerationResult er =
      enumerate_check_sat(assertions, budget_, mgr_, &ackermann_cache_);
  if (!er.result.is_sat()) return er.result;

  // Turn the values of the Ackermann symbols back into function tables.
  Assignment model = std::move(*er.model);
  Assignment fresh_values;
  for (const auto & [app, fresh] : er.ackermann.app_map) {
    // an application that only occurs under another application leaves no
    // trace in the rewritten formula, so its result is unconstrained
    auto v = model.values.find(fresh);
    fresh_values.values.emplace(fresh, v != model.values.end()
                                           ? v->second
                                           : default_value(fresh->get_sort()));
  }
  for (const auto & [app, fresh] : er.ackermann.app_map) {
    model.values.erase(fresh);
  }
  for (const Term & app : apply_terms(assertions)) {
    const Term & f = app->children()[0];
    auto [it, inserted] = model.functions.try_emplace(
        f, FunctionTable{ {}, default_value(f->get_sort().codomain()) });
    std::vector<Value> args;
    for (std::size_t i = 1; i < app->num_children(); ++i) {
      complete_model(model, app->children()[i]);
      args.push_back(eval_term(app->children()[i], model));
    }
    it->second.entries.emplace(std::move(args),
                               fresh_values.values.at(er.ackermann.app_map.at(app)));
  }
  model_ = std::move(model);
  return er.result;
}

Result ReferenceSolver::do_check_sat() { return run(assertions()); }

AbsSmtSolver::CheckOutcome ReferenceSolver::do_check_sat_assuming(
    const TermVec & assumptions)
{
  TermVec all = assertions();
  all.insert(all.end(), assumptions.begin(), assumptions.end());
  Result r = run(all);
  return { r, true };
}

Term ReferenceSolver::do_get_value(const Term & t)
{
  complete_model(model_, t);
  return mgr_.make_value(eval_term(t, model_));
}

SmtSolver ReferenceSolverFactory::create(bool /*logging*/)
{
  return std::make_shared<ReferenceSolver>();
}

Assignment assignment_from_model(AbsSmtSolver & solver,
                                 const TermVec & assertions)
{
  Assignment a;
  const Assignment empty;
  for (const Term & s : free_symbols(assertions)) {
    a.set(s, eval_term(solver.get_value(s), empty));
  }
  for (const Term & app : apply_terms(assertions)) {
    const Term & f = app->children()[0];
    if (!f->is_symbol()) {
      throw NotImplementedException("cannot rebuild a table for head "
                                    + f->to_string());
    }
    std::vector<Value> args;
    for (std::size_t i = 1; i < app->num_children(); ++i) {
      args.push_back(eval_term(solver.get_value(app->children()[i]), empty));
    }
    Value result = eval_term(solver.get_value(app), empty);
    auto [it, inserted] =
        a.functions.try_emplace(f, FunctionTable{ {}, result });
    auto [e, fresh] = it->second.entries.emplace(args, result);
    if (!fresh && !(e->second == result)) {
      throw InternalSolverException("model gives two values to "
                                    + app->to_string()
                                    + " for the same arguments");
    }
  }
  return a;
}

SoundnessReport check_model_soundness(AbsSmtSolver & solver,
                                      const TermVec & assertions)
{
  SoundnessReport rep;
  Assignment a;
  try {
    a = assignment_from_model(solver, assertions);
  }
  catch (const InternalSolverException & e) {
    rep.ok = false;
    rep.detail = e.what();
    return rep;
  }
  for (const Term & t : assertions) {
    Value v = eval_term(t, a);
    if (!v.as_bool()) {
      rep.ok = false;
      rep.detail = "assertion evaluates to false under the model: "
                   + t->to_string();
      return rep;
    }
  }
  return rep;
}

}  // namespace smt
