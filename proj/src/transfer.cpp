#include "smt/transfer.h"

#include "smt/exceptions.h"

namespace smt {

TermTranslator::TermTranslator(const TermManager & source,
                               TermManager & target,
                               SymbolPolicy policy)
    : source_tag_(source.tag()), target_(target), policy_(policy)
{
}

TermTranslator::TermTranslator(const AbsSmtSolver & source,
                               AbsSmtSolver & target,
                               SymbolPolicy policy)
    : TermTranslator(source.term_manager(), target.term_manager(), policy)
{
}

Sort TermTranslator::transfer_sort(const Sort & s) const
{
  switch (s.kind()) {
    case SortKind::BOOL:
    case SortKind::INT:
    case SortKind::REAL: return target_.make_sort(s.kind());
    case SortKind::BV: return target_.make_sort(SortKind::BV, s.width());
    case SortKind::ARRAY:
      return target_.make_sort(SortKind::ARRAY, transfer_sort(s.index_sort()),
                               transfer_sort(s.element_sort()));
    case SortKind::FUNCTION: {
      SortVec sorts;
      for (const Sort & d : s.domain()) sorts.push_back(transfer_sort(d));
      sorts.push_back(transfer_sort(s.codomain()));
      return target_.make_sort(SortKind::FUNCTION, sorts);
    }
    case SortKind::UNINTERPRETED: return target_.make_sort(s.name(), s.arity());
  }
  throw IncorrectUsageException("unknown sort kind");
}

Term TermTranslator::translate_node(const Term & t, const TermVec & children)
{
  switch (t->kind()) {
    case TermKind::SYMBOL: {
      const Sort sort = transfer_sort(t->get_sort());
      if (std::optional<Term> existing = target_.lookup_symbol(t->name())) {
        if (policy_ == SymbolPolicy::FRESH_ERROR) {
          throw IncorrectUsageException("symbol " + t->name()
                                        + " already exists in the target");
        }
        if (!((*existing)->get_sort() == sort)) {
          throw IncorrectUsageException(
              "symbol " + t->name() + " has sort " + sort.to_string()
              + " but the target declares it as "
              + (*existing)->get_sort().to_string());
        }
        return *existing;
      }
      return target_.make_symbol(t->name(), sort);
    }
    case TermKind::VALUE: return target_.make_value(t->value());
    case TermKind::EXPR: return target_.make_term(t->get_op(), children);
  }
  throw IncorrectUsageException("unknown term kind");
}

Term TermTranslator::transfer_term(const Term & t)
{
  if (!t || t->manager_tag() != source_tag_) {
    throw IncorrectUsageException(
        "transfer_term: term does not belong to the source manager");
  }
  if (auto hit = cache_.find(t->id()); hit != cache_.end()) return hit->second;

  // iterative post-order so deep terms do not exhaust the stack
  std::vector<std::pair<Term, bool>> stack{ { t, false } };
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (cache_.count(node->id())) continue;
    // a constant array value has its element as child, translate that first
    const bool leaf = node->num_children() == 0;
    if (!expanded && !leaf) {
      stack.emplace_back(node, true);
      for (const Term & c : *node) {
        if (!cache_.count(c->id())) stack.emplace_back(c, false);
      }
      continue;
    }
    TermVec children;
    if (node->kind() == TermKind::EXPR) {
      for (const Term & c : *node) children.push_back(cache_.at(c->id()));
    }
    cache_.emplace(node->id(), translate_node(node, children));
  }
  return cache_.at(t->id());
}

}  // namespace smt
