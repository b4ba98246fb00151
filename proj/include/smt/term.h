#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smt/ops.h"
#include "smt/sort.h"
#include "smt/value.h"

namespace smt {

class TermNode;
class TermManager;

/** Terms are shared, immutable DAG nodes. Within one manager, structurally
 *  identical terms are the same node, so pointer equality is term identity. */
using Term = std::shared_ptr<const TermNode>;
using TermVec = std::vector<Term>;

enum class TermKind
{
  SYMBOL,
  VALUE,
  EXPR
};

class TermNode
{
 public:
  using const_iterator = TermVec::const_iterator;

  /** Unique within the owning manager; increases in creation order. */
  uint64_t id() const { return id_; }
  /** Identifies the owning manager (and hence solver). */
  uint64_t manager_tag() const { return manager_tag_; }

  TermKind kind() const { return kind_; }
  bool is_symbol() const { return kind_ == TermKind::SYMBOL; }
  bool is_value() const { return kind_ == TermKind::VALUE; }

  /** Symbol name; throws IncorrectUsageException on non-symbols. */
  const std::string & name() const;
  /** Payload of a value term; throws IncorrectUsageException otherwise.
   *  Store chains produced for non-constant array values are expressions
   *  and have no payload. */
  const Value & value() const;

  /** Null for symbols and values. */
  const Op & get_op() const { return op_; }
  const Sort & get_sort() const { return sort_; }

  const TermVec & children() const { return children_; }
  std::size_t num_children() const { return children_.size(); }
  const_iterator begin() const { return children_.begin(); }
  const_iterator end() const { return children_.end(); }

  /** SMT-LIB text of the term. */
  std::string to_string() const;

 private:
  friend class TermManager;

  TermNode(uint64_t id,
           uint64_t tag,
           TermKind kind,
           Op op,
           Sort sort,
           TermVec children)
      : id_(id),
        manager_tag_(tag),
        kind_(kind),
        op_(op),
        sort_(std::move(sort)),
        children_(std::move(children))
  {
  }

  uint64_t id_;
  uint64_t manager_tag_;
  TermKind kind_;
  Op op_;
  Sort sort_;
  TermVec children_;
  std::string name_;
  std::optional<Value> value_;
};

/** Orders terms by id; use for deterministic containers of one manager's
 *  terms. */
struct TermIdLess
{
  bool operator()(const Term & a, const Term & b) const
  {
    return a->id() < b->id();
  }
};

std::ostream & operator<<(std::ostream & os, const Term & t);

}  // namespace smt
