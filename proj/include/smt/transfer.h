#pragma once

#include <unordered_map>

#include "smt/solver.h"

namespace smt {

enum class SymbolPolicy
{
  /** Bind to an existing target symbol of the same name and sort. */
  REUSE,
  /** Refuse to bind to any existing target symbol. */
  FRESH_ERROR
};

/** Rebuilds terms of one manager inside another.
 *
 *  Works on canonical structure only: symbols are looked up or declared by
 *  name, values are re-created, expressions are rebuilt with the same op
 *  over transferred children. Each source node is translated once; the
 *  cache makes repeated and shared subterms map to the same target node.
 */
class TermTranslator
{
 public:
  TermTranslator(const TermManager & source,
                 TermManager & target,
                 SymbolPolicy policy = SymbolPolicy::REUSE);
  TermTranslator(const AbsSmtSolver & source,
                 AbsSmtSolver & target,
                 SymbolPolicy policy = SymbolPolicy::REUSE);

  /** Throws IncorrectUsageException if `t` is not from the source manager
   *  or a symbol clashes with a differently sorted target symbol. */
  Term transfer_term(const Term & t);
  Sort transfer_sort(const Sort & s) const;

  std::size_t cache_size() const { return cache_.size(); }

 private:
  Term translate_node(const Term & t, const TermVec & children);

  uint64_t source_tag_;
  TermManager & target_;
  SymbolPolicy policy_;
  std::unordered_map<uint64_t, Term> cache_;
};

}  // namespace smt
