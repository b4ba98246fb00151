#include "smt/ops.h"

#include <sstream>
#include <unordered_map>

#include "smt/exceptions.h"

namespace smt {

namespace {

constexpr std::size_t kAny = 0;

// clang-format off
constexpr std::array<OpInfo, NUM_OPS> kOpTable = { {
  { And,          0, 2, kAny, true,  "and" },
  { Or,           0, 2, kAny, true,  "or" },
  { Xor,          0, 2, 2,    false, "xor" },
  { Not,          0, 1, 1,    false, "not" },
  { Implies,      0, 2, 2,    false, "=>" },
  { Ite,          0, 3, 3,    false, "ite" },
  { Equal,        0, 2, kAny, true,  "=" },
  { Distinct,     0, 2, kAny, true,  "distinct" },
  { Apply,        0, 2, kAny, false, "apply" },
  { Concat,       0, 2, kAny, true,  "concat" },
  { BVNot,        0, 1, 1,    false, "bvnot" },
  { BVNeg,        0, 1, 1,    false, "bvneg" },
  { BVAnd,        0, 2, 2,    false, "bvand" },
  { BVOr,         0, 2, 2,    false, "bvor" },
  { BVXor,        0, 2, 2,    false, "bvxor" },
  { BVAdd,        0, 2, 2,    false, "bvadd" },
  { BVSub,        0, 2, 2,    false, "bvsub" },
  { BVMul,        0, 2, 2,    false, "bvmul" },
  { BVUdiv,       0, 2, 2,    false, "bvudiv" },
  { BVUrem,       0, 2, 2,    false, "bvurem" },
  { BVShl,        0, 2, 2,    false, "bvshl" },
  { BVLshr,       0, 2, 2,    false, "bvlshr" },
  { BVAshr,       0, 2, 2,    false, "bvashr" },
  { BVUlt,        0, 2, 2,    false, "bvult" },
  { BVUle,        0, 2, 2,    false, "bvule" },
  { BVUgt,        0, 2, 2,    false, "bvugt" },
  { BVUge,        0, 2, 2,    false, "bvuge" },
  { BVSlt,        0, 2, 2,    false, "bvslt" },
  { BVSle,        0, 2, 2,    false, "bvsle" },
  { BVSgt,        0, 2, 2,    false, "bvsgt" },
  { BVSge,        0, 2, 2,    false, "bvsge" },
  { BVComp,       0, 2, 2,    false, "bvcomp" },
  { Extract,      2, 1, 1,    false, "extract" },
  { Zero_Extend,  1, 1, 1,    false, "zero_extend" },
  { Sign_Extend,  1, 1, 1,    false, "sign_extend" },
  { Repeat,       1, 1, 1,    false, "repeat" },
  { Rotate_Left,  1, 1, 1,    false, "rotate_left" },
  { Rotate_Right, 1, 1, 1,    false, "rotate_right" },
  { Select,       0, 2, 2,    false, "select" },
  { Store,        0, 3, 3,    false, "store" },
  { Plus,         0, 2, kAny, true,  "+" },
  { Minus,        0, 2, 2,    false, "-" },
  { Negate,       0, 1, 1,    false, "-" },
  { Mult,         0, 2, kAny, true,  "*" },
  { Div,          0, 2, 2,    false, "/" },
  { Mod,          0, 2, 2,    false, "mod" },
  { Lt,           0, 2, 2,    false, "<" },
  { Le,           0, 2, 2,    false, "<=" },
  { Gt,           0, 2, 2,    false, ">" },
  { Ge,           0, 2, 2,    false, ">=" },
  { To_Real,      0, 1, 1,    false, "to_real" },
  { To_Int,       0, 1, 1,    false, "to_int" },
} };
// clang-format on

constexpr bool table_is_ordered()
{
  for (std::size_t i = 0; i < kOpTable.size(); ++i) {
    if (static_cast<std::size_t>(kOpTable[i].prim) != i) return false;
  }
  return true;
}
static_assert(table_is_ordered(), "op table must follow PrimOp order");

}  // namespace

const OpInfo & op_metadata(PrimOp prim)
{
  auto i = static_cast<std::size_t>(prim);
  if (i >= kOpTable.size()) {
    throw IncorrectUsageException("no metadata for primitive op #"
                                  + std::to_string(i));
  }
  return kOpTable[i];
}

const std::array<PrimOp, NUM_OPS> & all_prim_ops()
{
  static const std::array<PrimOp, NUM_OPS> ops = [] {
    std::array<PrimOp, NUM_OPS> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<PrimOp>(i);
    return a;
  }();
  return ops;
}

std::optional<PrimOp> prim_op_from_smtlib(std::string_view name,
                                          std::size_t num_children)
{
  static const std::unordered_map<std::string_view, PrimOp> by_name = [] {
    std::unordered_map<std::string_view, PrimOp> m;
    for (const OpInfo & info : kOpTable) {
      if (info.prim == Apply || info.prim == Negate) continue;
      m.emplace(info.smtlib_name, info.prim);
    }
    return m;
  }();
  if (name == "-" && num_children == 1) return Negate;
  auto it = by_name.find(name);
  if (it == by_name.end()) return std::nullopt;
  return it->second;
}

std::string to_string(PrimOp prim)
{
  if (prim == Apply) return "Apply";
  return std::string(op_metadata(prim).smtlib_name);
}

std::string Op::to_string() const
{
  if (is_null()) return "null";
  std::ostringstream out;
  if (num_indices() == 0) {
    out << smt::to_string(*prim);
    return out.str();
  }
  out << "(_ " << smt::to_string(*prim);
  if (idx0) out << " " << *idx0;
  if (idx1) out << " " << *idx1;
  out << ")";
  return out.str();
}

void validate_op(const Op & op)
{
  if (op.is_null()) {
    throw IncorrectUsageException("null op cannot be used to build terms");
  }
  const OpInfo & info = op_metadata(*op.prim);
  if (op.idx1 && !op.idx0) {
    throw IncorrectUsageException(op.to_string()
                                  + ": second index given without the first");
  }
  if (op.num_indices() != info.index_count) {
    throw IncorrectUsageException(
        smt::to_string(*op.prim) + " takes " + std::to_string(info.index_count)
        + " indices but " + std::to_string(op.num_indices()) + " were given");
  }
  if (*op.prim == Extract && *op.idx0 < *op.idx1) {
    throw IncorrectUsageException("extract needs hi >= lo, got "
                                  + op.to_string());
  }
}

std::size_t hash_op(const Op & op)
{
  std::size_t h = op.prim ? static_cast<std::size_t>(*op.prim) + 1 : 0;
  h = h * 1000003u + (op.idx0 ? *op.idx0 + 1 : 0);
  h = h * 1000003u + (op.idx1 ? *op.idx1 + 1 : 0);
  return h;
}

std::ostream & operator<<(std::ostream & os, const Op & op)
{
  return os << op.to_string();
}

std::ostream & operator<<(std::ostream & os, PrimOp prim)
{
  return os << to_string(prim);
}

}  // namespace smt
