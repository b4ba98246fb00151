#include "smt/term_manager.h"

#include <atomic>
#include <sstream>

#include "smt/exceptions.h"

namespace smt {

namespace {

std::atomic<uint64_t> next_manager_tag{ 1 };

[[noreturn]] void sort_error(const Op & op, const std::string & what)
{
  throw IncorrectUsageException(op.to_string() + ": " + what);
}

void expect_kind(const Op & op, const Sort & s, SortKind sk, std::size_t pos)
{
  if (!s.is(sk)) {
    sort_error(op,
               "child " + std::to_string(pos) + " has sort " + s.to_string()
                   + ", expected " + to_string(sk));
  }
}

void expect_all_kind(const Op & op, std::span<const Sort> sorts, SortKind sk)
{
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    expect_kind(op, sorts[i], sk, i);
  }
}

void expect_all_equal(const Op & op, std::span<const Sort> sorts)
{
  for (std::size_t i = 1; i < sorts.size(); ++i) {
    if (!(sorts[i] == sorts[0])) {
      sort_error(op,
                 "child " + std::to_string(i) + " has sort "
                     + sorts[i].to_string() + " but child 0 has sort "
                     + sorts[0].to_string());
    }
  }
}

Sort arith_sort(const Op & op, std::span<const Sort> sorts)
{
  if (!sorts[0].is(SortKind::INT) && !sorts[0].is(SortKind::REAL)) {
    sort_error(op, "child 0 has non-arithmetic sort " + sorts[0].to_string());
  }
  expect_all_equal(op, sorts);
  return sorts[0];
}

}  // namespace

Sort infer_sort(const Op & op, std::span<const Sort> sorts)
{
  validate_op(op);
  const PrimOp prim = *op.prim;
  const OpInfo & info = op_metadata(prim);
  const std::size_t n = sorts.size();
  if (n < info.min_arity || (info.max_arity != 0 && n > info.max_arity)) {
    std::ostringstream msg;
    msg << "expected ";
    if (info.max_arity == info.min_arity) {
      msg << info.min_arity;
    } else {
      msg << "at least " << info.min_arity;
    }
    msg << " children, got " << n;
    sort_error(op, msg.str());
  }

  // First-order: function-sorted children only as the head of Apply or as
  // the branches of an Ite that is itself an Apply head.
  for (std::size_t i = 0; i < n; ++i) {
    bool allowed = (prim == Apply && i == 0) || (prim == Ite && i > 0);
    if (!allowed && sorts[i].is(SortKind::FUNCTION)) {
      sort_error(op,
                 "child " + std::to_string(i) + " has function sort "
                     + sorts[i].to_string());
    }
  }

  switch (prim) {
    case And:
    case Or:
    case Xor:
    case Not:
    case Implies:
      expect_all_kind(op, sorts, SortKind::BOOL);
      return Sort::boolean();

    case Equal:
    case Distinct:
      expect_all_equal(op, sorts);
      return Sort::boolean();

    case Ite:
      expect_kind(op, sorts[0], SortKind::BOOL, 0);
      expect_all_equal(op, sorts.subspan(1));
      return sorts[1];

    case Apply: {
      expect_kind(op, sorts[0], SortKind::FUNCTION, 0);
      const SortVec & dom = sorts[0].domain();
      if (dom.size() != n - 1) {
        sort_error(op,
                   "function of sort " + sorts[0].to_string() + " applied to "
                       + std::to_string(n - 1) + " arguments");
      }
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (!(sorts[i + 1] == dom[i])) {
          sort_error(op,
                     "argument " + std::to_string(i) + " has sort "
                         + sorts[i + 1].to_string() + ", expected "
                         + dom[i].to_string());
        }
      }
      return sorts[0].codomain();
    }

    case Concat: {
      expect_all_kind(op, sorts, SortKind::BV);
      uint64_t w = 0;
      for (const Sort & s : sorts) w += s.width();
      return Sort::bv(w);
    }

    case BVNot:
    case BVNeg:
      expect_kind(op, sorts[0], SortKind::BV, 0);
      return sorts[0];

    case BVAnd:
    case BVOr:
    case BVXor:
    case BVAdd:
    case BVSub:
    case BVMul:
    case BVUdiv:
    case BVUrem:
    case BVShl:
    case BVLshr:
    case BVAshr:
      expect_all_kind(op, sorts, SortKind::BV);
      expect_all_equal(op, sorts);
      return sorts[0];

    case BVUlt:
    case BVUle:
    case BVUgt:
    case BVUge:
    case BVSlt:
    case BVSle:
    case BVSgt:
    case BVSge:
      expect_all_kind(op, sorts, SortKind::BV);
      expect_all_equal(op, sorts);
      return Sort::boolean();

    case BVComp:
      expect_all_kind(op, sorts, SortKind::BV);
      expect_all_equal(op, sorts);
      return Sort::bv(1);

    case Extract: {
      expect_kind(op, sorts[0], SortKind::BV, 0);
      uint64_t w = sorts[0].width();
      if (*op.idx0 >= w) {
        sort_error(op,
                   "high index " + std::to_string(*op.idx0)
                       + " out of range for " + sorts[0].to_string());
      }
      return Sort::bv(*op.idx0 - *op.idx1 + 1);
    }

    case Zero_Extend:
    case Sign_Extend:
      expect_kind(op, sorts[0], SortKind::BV, 0);
      return Sort::bv(sorts[0].width() + *op.idx0);

    case Repeat:
      expect_kind(op, sorts[0], SortKind::BV, 0);
      if (*op.idx0 == 0) sort_error(op, "repeat count must be at least 1");
      return Sort::bv(sorts[0].width() * *op.idx0);

    case Rotate_Left:
    case Rotate_Right:
      expect_kind(op, sorts[0], SortKind::BV, 0);
      return sorts[0];

    case Select:
      expect_kind(op, sorts[0], SortKind::ARRAY, 0);
      if (!(sorts[1] == sorts[0].index_sort())) {
        sort_error(op,
                   "index has sort " + sorts[1].to_string() + ", array "
                       + sorts[0].to_string());
      }
      return sorts[0].element_sort();

    case Store:
      expect_kind(op, sorts[0], SortKind::ARRAY, 0);
      if (!(sorts[1] == sorts[0].index_sort())) {
        sort_error(op,
                   "index has sort " + sorts[1].to_string() + ", array "
                       + sorts[0].to_string());
      }
      if (!(sorts[2] == sorts[0].element_sort())) {
        sort_error(op,
                   "element has sort " + sorts[2].to_string() + ", array "
                       + sorts[0].to_string());
      }
      return sorts[0];

    case Plus:
    case Minus:
    case Negate:
    case Mult: return arith_sort(op, sorts);

    case Div:
      expect_all_kind(op, sorts, SortKind::REAL);
      return Sort::real();

    case Mod:
      expect_all_kind(op, sorts, SortKind::INT);
      return Sort::integer();

    case Lt:
    case Le:
    case Gt:
    case Ge:
      arith_sort(op, sorts);
      return Sort::boolean();

    case To_Real:
      expect_kind(op, sorts[0], SortKind::INT, 0);
      return Sort::real();

    case To_Int:
      expect_kind(op, sorts[0], SortKind::REAL, 0);
      return Sort::integer();

    case NUM_OPS: break;
  }
  throw NotImplementedException("no sort rule for " + op.to_string());
}

TermManager::TermManager() : tag_(next_manager_tag.fetch_add(1)) {}

Sort TermManager::make_sort(SortKind sk) const
{
  switch (sk) {
    case SortKind::BOOL: return *sorts_.insert(Sort::boolean()).first;
    case SortKind::INT: return *sorts_.insert(Sort::integer()).first;
    case SortKind::REAL: return *sorts_.insert(Sort::real()).first;
    default:
      throw IncorrectUsageException("sort kind " + to_string(sk)
                                    + " needs parameters");
  }
}

Sort TermManager::make_sort(SortKind sk, uint64_t width) const
{
  if (sk != SortKind::BV) {
    throw IncorrectUsageException("a width parameter only applies to BV, not "
                                  + to_string(sk));
  }
  return *sorts_.insert(Sort::bv(width)).first;
}

Sort TermManager::make_sort(SortKind sk, const SortVec & sorts) const
{
  if (sk == SortKind::FUNCTION) {
    if (sorts.size() < 2) {
      throw IncorrectUsageException(
          "function sort needs at least one domain sort and a return sort");
    }
    SortVec dom(sorts.begin(), sorts.end() - 1);
    return *sorts_.insert(Sort::function(dom, sorts.back())).first;
  }
  if (sk == SortKind::ARRAY) {
    if (sorts.size() != 2) {
      throw IncorrectUsageException(
          "array sort needs exactly an index and an element sort");
    }
    return make_sort(sk, sorts[0], sorts[1]);
  }
  throw IncorrectUsageException("a sort list only applies to FUNCTION or "
                                "ARRAY, not "
                                + to_string(sk));
}

Sort TermManager::make_sort(SortKind sk, const Sort & s0, const Sort & s1) const
{
  if (sk == SortKind::ARRAY) {
    return *sorts_.insert(Sort::array(s0, s1)).first;
  }
  if (sk == SortKind::FUNCTION) return make_sort(sk, SortVec{ s0, s1 });
  throw IncorrectUsageException("two sort parameters only apply to ARRAY or "
                                "FUNCTION, not "
                                + to_string(sk));
}

Sort TermManager::make_sort(const std::string & name, uint64_t arity) const
{
  return *sorts_.insert(Sort::uninterpreted(name, arity)).first;
}

Term TermManager::make_symbol(const std::string & name, const Sort & sort)
{
  if (name.empty()) {
    throw IncorrectUsageException("symbol names cannot be empty");
  }
  if (name.find_first_of("|\\") != std::string::npos) {
    throw IncorrectUsageException("symbol name cannot contain '|' or '\\': "
                                  + name);
  }
  if (symbol_table_.count(name)) {
    throw IncorrectUsageException("symbol already declared: " + name);
  }
  auto * node =
      new TermNode(next_id_++, tag_, TermKind::SYMBOL, Op(), sort, {});
  node->name_ = name;
  Term t(node);
  symbol_table_.emplace(name, t);
  symbols_.push_back(t);
  return t;
}

std::optional<Term> TermManager::lookup_symbol(const std::string & name) const
{
  auto it = symbol_table_.find(name);
  if (it == symbol_table_.end()) return std::nullopt;
  return it->second;
}

Term TermManager::make_value(const Value & v)
{
  if (auto it = values_.find(v); it != values_.end()) return it->second;

  if (v.is(ValueKind::ARRAY) && !v.is_const_array()) {
    // No payload form for arbitrary tables: spell them as a store chain over
    // the constant-array default.
    Term t = make_value(Value::const_array(v.sort(), v.array_default()));
    for (const auto & [k, e] : v.array_stores()) {
      t = make_term(Store, t, make_value(k), make_value(e));
    }
    values_.emplace(v, t);
    return t;
  }

  TermVec children;
  if (v.is(ValueKind::ARRAY)) children.push_back(make_value(v.array_default()));
  auto * node = new TermNode(
      next_id_++, tag_, TermKind::VALUE, Op(), v.sort(), std::move(children));
  node->value_ = v;
  Term t(node);
  values_.emplace(v, t);
  return t;
}

void TermManager::check_owned(const Term & t, const char * context) const
{
  if (!t) {
    throw IncorrectUsageException(std::string(context) + ": null term");
  }
  if (t->manager_tag() != tag_) {
    throw IncorrectUsageException(
        std::string(context) + ": term " + t->to_string()
        + " belongs to a different solver; transfer it first");
  }
}

Term TermManager::make_term(const Op & op, const TermVec & children)
{
  validate_op(op);
  std::vector<Sort> sorts;
  sorts.reserve(children.size());
  for (const Term & c : children) {
    check_owned(c, "make_term");
    sorts.push_back(c->get_sort());
  }
  Sort s = infer_sort(op, sorts);
  return intern_expr(op, children, s);
}

Term TermManager::make_term(const Op & op, const Term & t0)
{
  return make_term(op, TermVec{ t0 });
}

Term TermManager::make_term(const Op & op, const Term & t0, const Term & t1)
{
  return make_term(op, TermVec{ t0, t1 });
}

Term TermManager::make_term(const Op & op,
                            const Term & t0,
                            const Term & t1,
                            const Term & t2)
{
  return make_term(op, TermVec{ t0, t1, t2 });
}

std::size_t TermManager::ExprKeyHash::operator()(const ExprKey & k) const
{
  std::size_t h = hash_op(k.op);
  for (uint64_t c : k.children) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Term TermManager::intern_expr(const Op & op,
                              const TermVec & children,
                              const Sort & s)
{
  ExprKey key{ op, {} };
  key.children.reserve(children.size());
  for (const Term & c : children) key.children.push_back(c->id());
  if (auto it = exprs_.find(key); it != exprs_.end()) return it->second;
  Term t(new TermNode(next_id_++, tag_, TermKind::EXPR, op, s, children));
  exprs_.emplace(std::move(key), t);
  return t;
}

}  // namespace smt
