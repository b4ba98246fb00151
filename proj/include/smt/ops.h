#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace smt {

enum PrimOp
{
  // core
  And = 0,
  Or,
  Xor,
  Not,
  Implies,
  Ite,
  Equal,
  Distinct,
  Apply,
  // bit-vectors
  Concat,
  BVNot,
  BVNeg,
  BVAnd,
  BVOr,
  BVXor,
  BVAdd,
  BVSub,
  BVMul,
  BVUdiv,
  BVUrem,
  BVShl,
  BVLshr,
  BVAshr,
  BVUlt,
  BVUle,
  BVUgt,
  BVUge,
  BVSlt,
  BVSle,
  BVSgt,
  BVSge,
  BVComp,
  Extract,
  Zero_Extend,
  Sign_Extend,
  Repeat,
  Rotate_Left,
  Rotate_Right,
  // arrays
  Select,
  Store,
  // arithmetic
  Plus,
  Minus,
  Negate,
  Mult,
  Div,
  Mod,
  Lt,
  Le,
  Gt,
  Ge,
  To_Real,
  To_Int,
  NUM_OPS
};

/** Static description of a primitive operator. */
struct OpInfo
{
  PrimOp prim;
  unsigned index_count;
  std::size_t min_arity;
  /** 0 means unbounded. */
  std::size_t max_arity;
  /** n-ary with the usual SMT-LIB chainable/associative reading. */
  bool chainable;
  std::string_view smtlib_name;
};

/** Metadata table entry for `prim`. Throws IncorrectUsageException for
 *  NUM_OPS or out-of-range values. */
const OpInfo & op_metadata(PrimOp prim);

/** Every primitive operator, in declaration order. */
const std::array<PrimOp, NUM_OPS> & all_prim_ops();

/** Name lookup for operators written in SMT-LIB text.
 *
 *  SMT-LIB spells both unary negation and binary subtraction "-", so the
 *  lookup needs the number of arguments; `num_children == 1` selects Negate.
 *  Apply has no SMT-LIB head symbol and is never returned.
 */
std::optional<PrimOp> prim_op_from_smtlib(std::string_view name,
                                          std::size_t num_children);

std::string to_string(PrimOp prim);

/** A primitive operator plus up to two integer indices; may be null.
 *
 *  Construction does not validate anything so that malformed ops can be
 *  represented and rejected by validate_op / make_term.
 */
struct Op
{
  Op() = default;
  // Implicit on purpose: make_term(BVAdd, ...) reads better than
  // make_term(Op(BVAdd), ...).
  Op(PrimOp p) : prim(p) {}
  Op(PrimOp p, uint64_t i0) : prim(p), idx0(i0) {}
  Op(PrimOp p, uint64_t i0, uint64_t i1) : prim(p), idx0(i0), idx1(i1) {}

  bool is_null() const { return !prim.has_value(); }
  unsigned num_indices() const
  {
    return static_cast<unsigned>(idx0.has_value())
           + static_cast<unsigned>(idx1.has_value());
  }

  std::string to_string() const;

  friend bool operator==(const Op &, const Op &) = default;

  std::optional<PrimOp> prim;
  std::optional<uint64_t> idx0;
  std::optional<uint64_t> idx1;
};

/** Throws IncorrectUsageException unless the op is non-null, has exactly the
 *  number of indices its PrimOp takes, and (for Extract) hi >= lo. */
void validate_op(const Op & op);

std::size_t hash_op(const Op & op);

std::ostream & operator<<(std::ostream & os, const Op & op);
std::ostream & operator<<(std::ostream & os, PrimOp prim);

}  // namespace smt
