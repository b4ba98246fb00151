#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "smt/ops.h"
#include "smt/sort.h"
#include "smt/term.h"
#include "smt/value.h"

namespace smt {

/** Result sort of applying `op` to children of the given sorts.
 *
 *  Throws IncorrectUsageException (naming the op and the offending sort) when
 *  the op is malformed, the arity is wrong, or the sorts do not fit. Bool and
 *  (_ BitVec 1) are never identified.
 */
Sort infer_sort(const Op & op, std::span<const Sort> child_sorts);

/** Owns the hash-consed term DAG of one solver.
 *
 *  Every term records the manager's tag; mixing terms from two managers is
 *  detected and rejected with IncorrectUsageException. Nothing is ever
 *  rewritten: a term keeps exactly the op and children it was built from, so
 *  make_term(t->get_op(), t->children()) == t for every expression t.
 *
 *  Not thread-safe; a manager belongs to a single session.
 */
class TermManager
{
 public:
  TermManager();
  TermManager(const TermManager &) = delete;
  TermManager & operator=(const TermManager &) = delete;

  uint64_t tag() const { return tag_; }

  Sort make_sort(SortKind sk) const;
  Sort make_sort(SortKind sk, uint64_t width) const;
  /** FUNCTION: domain sorts followed by the return sort.
   *  ARRAY: exactly {index, element}. */
  Sort make_sort(SortKind sk, const SortVec & sorts) const;
  Sort make_sort(SortKind sk, const Sort & s0, const Sort & s1) const;
  Sort make_sort(const std::string & name, uint64_t arity) const;

  /** Declares a fresh symbolic constant or function. Names are unique per
   *  manager. */
  Term make_symbol(const std::string & name, const Sort & sort);
  std::optional<Term> lookup_symbol(const std::string & name) const;
  /** Declared symbols in declaration order. */
  const TermVec & symbols() const { return symbols_; }

  Term make_value(const Value & v);
  Term make_term(bool b) { return make_value(Value::boolean(b)); }

  Term make_term(const Op & op, const TermVec & children);
  Term make_term(const Op & op, const Term & t0);
  Term make_term(const Op & op, const Term & t0, const Term & t1);
  Term make_term(const Op & op,
                 const Term & t0,
                 const Term & t1,
                 const Term & t2);

  bool owns(const Term & t) const { return t && t->manager_tag() == tag_; }
  /** Throws IncorrectUsageException unless `t` was built by this manager. */
  void check_owned(const Term & t, const char * context) const;

  /** Number of distinct nodes created so far. */
  std::size_t num_terms() const { return next_id_; }

 private:
  struct ExprKey
  {
    Op op;
    std::vector<uint64_t> children;
    bool operator==(const ExprKey &) const = default;
  };
  struct ExprKeyHash
  {
    std::size_t operator()(const ExprKey & k) const;
  };

  Term intern_expr(const Op & op, const TermVec & children, const Sort & s);

  uint64_t tag_;
  uint64_t next_id_ = 0;
  mutable std::unordered_set<Sort> sorts_;
  std::unordered_map<std::string, Term> symbol_table_;
  TermVec symbols_;
  std::unordered_map<Value, Term> values_;
  std::unordered_map<ExprKey, Term, ExprKeyHash> exprs_;
};

}  // namespace smt
