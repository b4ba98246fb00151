#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "smt/exceptions.h"
#include "smt/reference_solver.h"

namespace smt {

namespace {

std::string fresh_name(const TermManager & mgr, const Term & app)
{
  std::string base = "@ack_" + std::to_string(app->id());
  std::string name = base;
  for (int k = 1; mgr.lookup_symbol(name); ++k) {
    name = base + "_" + std::to_string(k);
  }
  return name;
}

// Apply terms reachable from roots, children before parents.
TermVec applications_in(const TermVec & roots)
{
  TermVec apps;
  std::unordered_set<const TermNode *> seen;
  std::vector<std::pair<Term, bool>> stack;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    stack.emplace_back(*it, false);
  }
  while (!stack.empty()) {
    auto [t, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      if (!t->get_op().is_null() && *t->get_op().prim == Apply) {
        apps.push_back(t);
      }
      continue;
    }
    if (!seen.insert(t.get()).second) continue;
    stack.emplace_back(t, true);
    for (auto it = t->children().rbegin(); it != t->children().rend(); ++it) {
      stack.emplace_back(*it, false);
    }
  }
  return apps;
}

}  // namespace

AckermannResult ackermannize(const TermVec & assertions,
                             TermManager & mgr,
                             std::map<Term, Term, TermIdLess> * cache)
{
  AckermannResult out;
  std::unordered_map<const TermNode *, Term> rewritten;

  // One application record per distinct Apply term, grouped by head symbol
  // in order of first appearance.
  struct Application
  {
    TermVec args;
    Term fresh;
  };
  std::map<Term, std::vector<Application>, TermIdLess> by_function;

  auto rewrite = [&](const Term & root) {
    std::vector<std::pair<Term, bool>> stack{ { root, false } };
    while (!stack.empty()) {
      auto [t, expanded] = stack.back();
      stack.pop_back();
      if (rewritten.count(t.get())) continue;
      if (!expanded) {
        stack.emplace_back(t, true);
        for (const Term & c : *t) {
          if (!rewritten.count(c.get())) stack.emplace_back(c, false);
        }
        continue;
      }
      if (t->get_op().is_null()) {
        rewritten.emplace(t.get(), t);
        continue;
      }
      TermVec kids;
      kids.reserve(t->num_children());
      for (const Term & c : *t) kids.push_back(rewritten.at(c.get()));

      if (*t->get_op().prim != Apply) {
        rewritten.emplace(t.get(), mgr.make_term(t->get_op(), kids));
        continue;
      }
      const Term & head = t->children()[0];
      if (!head->is_symbol()) {
        throw NotImplementedException(
            "Ackermann expansion needs a function symbol as Apply head, got "
            + head->to_string());
      }
      Term fresh;
      if (cache) {
        if (auto it = cache->find(t); it != cache->end()) fresh = it->second;
      }
      if (!fresh) {
        fresh = mgr.make_symbol(fresh_name(mgr, t), t->get_sort());
        if (cache) cache->emplace(t, fresh);
      }
      out.app_map.emplace(t, fresh);
      by_function[head].push_back(
          Application{ TermVec(kids.begin() + 1, kids.end()), fresh });
      rewritten.emplace(t.get(), fresh);
    }
  };

  for (const Term & a : assertions) {
    rewrite(a);
    out.assertions.push_back(rewritten.at(a.get()));
  }

  for (const auto & [f, apps] : by_function) {
    for (std::size_t i = 0; i < apps.size(); ++i) {
      for (std::size_t j = i + 1; j < apps.size(); ++j) {
        TermVec eqs;
        for (std::size_t k = 0; k < apps[i].args.size(); ++k) {
          eqs.push_back(mgr.make_term(Equal, apps[i].args[k], apps[j].args[k]));
        }
        Term same_args = eqs.size() == 1 ? eqs[0] : mgr.make_term(And, eqs);
        Term same_result = mgr.make_term(Equal, apps[i].fresh, apps[j].fresh);
        out.assertions.push_back(mgr.make_term(Implies, same_args, same_result));
        ++out.num_constraints;
      }
    }
  }
  return out;
}

namespace {

// Either a carrier size or the reason the symbol cannot be enumerated.
struct Carrier
{
  std::optional<BigInt> size;
  std::string why;
};

Carrier symbol_carrier(const Sort & s, const SearchBudget * budget)
{
  switch (s.kind()) {
    case SortKind::INT: return { std::nullopt, "unbounded domain: INT" };
    case SortKind::REAL: return { std::nullopt, "unbounded domain: REAL" };
    case SortKind::BV:
      if (budget && s.width() > budget->max_bv_width) {
        return { std::nullopt,
                 "bit-vector width " + std::to_string(s.width())
                     + " exceeds ref.max-bv-width="
                     + std::to_string(budget->max_bv_width) };
      }
      break;
    case SortKind::ARRAY: {
      Carrier idx = symbol_carrier(s.index_sort(), budget);
      if (!idx.size) return idx;
      if (*idx.size > 16) {
        return { std::nullopt,
                 "array index sort " + s.index_sort().to_string()
                     + " has more than 16 elements" };
      }
      Carrier el = symbol_carrier(s.element_sort(), budget);
      if (!el.size) return el;
      break;
    }
    default: break;
  }
  auto n = carrier_size(s);
  if (!n) return { std::nullopt, "unbounded domain: " + s.to_string() };
  return { n, "" };
}

}  // namespace

std::optional<BigInt> search_space_size(const TermVec & assertions)
{
  BigInt total = 1;
  for (const Term & s : free_symbols(assertions)) {
    auto n = carrier_size(s->get_sort());
    if (!n) return std::nullopt;
    total *= *n;
  }
  for (const Term & app : applications_in(assertions)) {
    auto n = carrier_size(app->get_sort());
    if (!n) return std::nullopt;
    total *= *n;
  }
  return total;
}

EnumerationResult enumerate_check_sat(
    const TermVec & assertions,
    const SearchBudget & budget,
    TermManager & mgr,
    std::map<Term, Term, TermIdLess> * ackermann_cache)
{
  for (const Term & a : assertions) {
    if (!a->get_sort().is(SortKind::BOOL)) {
      throw IncorrectUsageException("assertion is not Bool: "
                                    + a->to_string());
    }
  }

  EnumerationResult out{ Result(UNKNOWN), std::nullopt, {} };
  out.ackermann = ackermannize(assertions, mgr, ackermann_cache);
  Evaluator ev(out.ackermann.assertions);
  const TermVec & syms = ev.symbols();

  std::vector<BigInt> sizes;
  BigInt total = 1;
  for (const Term & s : syms) {
    Carrier c = symbol_carrier(s->get_sort(), &budget);
    if (!c.size) {
      out.result = Result(UNKNOWN, c.why);
      return out;
    }
    sizes.push_back(*c.size);
    total *= *c.size;
  }
  if (total > budget.max_states) {
    out.result = Result(UNKNOWN,
                        "search space of " + total.str()
                            + " assignments exceeds ref.max-states="
                            + std::to_string(budget.max_states));
    return out;
  }

  // Small carriers are tabulated up front; larger ones are generated as the
  // odometer turns.
  constexpr unsigned kTabulate = 4096;
  std::vector<std::vector<Value>> tables(syms.size());
  std::vector<BigInt> digit(syms.size(), 0);
  std::vector<Value> current;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (sizes[i] <= kTabulate) {
      for (BigInt k = 0; k < sizes[i]; ++k) {
        tables[i].push_back(carrier_value(syms[i]->get_sort(), k));
      }
      current.push_back(tables[i][0]);
    } else {
      current.push_back(carrier_value(syms[i]->get_sort(), 0));
    }
  }

  const std::map<Term, FunctionTable, TermIdLess> no_functions;
  while (true) {
    if (ev.all_true(current, no_functions)) {
      Assignment model;
      for (std::size_t i = 0; i < syms.size(); ++i) {
        model.values.emplace(syms[i], current[i]);
      }
      out.result = Result(SAT);
      out.model = std::move(model);
      return out;
    }
    // Advance: the last symbol varies fastest.
    std::size_t i = syms.size();
    while (i > 0) {
      --i;
      digit[i] += 1;
      if (digit[i] < sizes[i]) {
        current[i] = tables[i].empty()
                         ? carrier_value(syms[i]->get_sort(), digit[i])
                         : tables[i][static_cast<std::size_t>(digit[i])];
        break;
      }
      digit[i] = 0;
      current[i] = tables[i].empty() ? carrier_value(syms[i]->get_sort(), 0)
                                     : tables[i][0];
      if (i == 0) {
        out.result = Result(UNSAT);
        return out;
      }
    }
    if (syms.empty()) {
      out.result = Result(UNSAT);
      return out;
    }
  }
}

}  // namespace smt
