#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "smt/exceptions.h"
#include "smt/reference_solver.h"

namespace smt {

namespace {

BigInt pow2(uint64_t w) { return BigInt(1) << w; }

BigInt low_bits(const BigInt & n, uint64_t w) { return n & (pow2(w) - 1); }

Value bool_val(bool b) { return Value::boolean(b); }

// SMT-LIB integer division: floor for positive divisors, ceiling for
// negative ones, so that the remainder is always non-negative.
BigInt euclid_mod(const BigInt & a, const BigInt & b)
{
  BigInt r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

BigInt floor_of(const Rational & q)
{
  BigInt n = numerator(q);
  BigInt d = denominator(q);
  BigInt f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

Value eval_bv_binary(PrimOp prim, const Value & a, const Value & b)
{
  const uint64_t w = a.bv_width();
  const BigInt & x = a.bv_nat();
  const BigInt & y = b.bv_nat();
  switch (prim) {
    case BVAnd: return Value::bv(w, x & y);
    case BVOr: return Value::bv(w, x | y);
    case BVXor: return Value::bv(w, x ^ y);
    case BVAdd: return Value::bv(w, x + y);
    case BVSub: return Value::bv(w, x - y);
    case BVMul: return Value::bv(w, x * y);
    case BVUdiv:
      if (y == 0) return Value::bv(w, pow2(w) - 1);
      return Value::bv(w, x / y);
    case BVUrem:
      if (y == 0) return a;
      return Value::bv(w, x % y);
    case BVShl:
      if (y >= w) return Value::bv(w, 0);
      return Value::bv(w, x << static_cast<unsigned>(y));
    case BVLshr:
      if (y >= w) return Value::bv(w, 0);
      return Value::bv(w, x >> static_cast<unsigned>(y));
    case BVAshr: {
      BigInt sx = a.bv_signed();
      if (y >= w) return Value::bv(w, sx < 0 ? BigInt(-1) : BigInt(0));
      // Right shift of a negative cpp_int rounds toward zero; floor it.
      BigInt d = pow2(static_cast<uint64_t>(y));
      BigInt q = sx / d;
      if (sx < 0 && sx % d != 0) q -= 1;
      return Value::bv(w, q);
    }
    case BVUlt: return bool_val(x < y);
    case BVUle: return bool_val(x <= y);
    case BVUgt: return bool_val(x > y);
    case BVUge: return bool_val(x >= y);
    case BVSlt: return bool_val(a.bv_signed() < b.bv_signed());
    case BVSle: return bool_val(a.bv_signed() <= b.bv_signed());
    case BVSgt: return bool_val(a.bv_signed() > b.bv_signed());
    case BVSge: return bool_val(a.bv_signed() >= b.bv_signed());
    case BVComp: return Value::bv(1, x == y ? 1 : 0);
    default: break;
  }
  throw NotImplementedException("not a binary bit-vector op: "
                                + to_string(prim));
}

template <class Fn>
Value fold_arith(const std::vector<const Value *> & args, Fn fn)
{
  if (args[0]->is(ValueKind::INT)) {
    BigInt acc = args[0]->as_integer();
    for (std::size_t i = 1; i < args.size(); ++i) {
      acc = fn(acc, args[i]->as_integer());
    }
    return Value::integer(acc);
  }
  Rational acc = args[0]->as_real();
  for (std::size_t i = 1; i < args.size(); ++i) {
    acc = fn(acc, args[i]->as_real());
  }
  return Value::real(acc);
}

template <class Cmp>
Value compare_arith(const Value & a, const Value & b, Cmp cmp)
{
  if (a.is(ValueKind::INT)) return bool_val(cmp(a.as_integer(), b.as_integer()));
  return bool_val(cmp(a.as_real(), b.as_real()));
}

Value eval_op(const Op & op, const std::vector<const Value *> & args)
{
  const PrimOp prim = *op.prim;
  switch (prim) {
    case And:
      return bool_val(std::all_of(args.begin(), args.end(), [](auto * v) {
        return v->as_bool();
      }));
    case Or:
      return bool_val(std::any_of(args.begin(), args.end(), [](auto * v) {
        return v->as_bool();
      }));
    case Xor: return bool_val(args[0]->as_bool() != args[1]->as_bool());
    case Not: return bool_val(!args[0]->as_bool());
    case Implies: return bool_val(!args[0]->as_bool() || args[1]->as_bool());
    case Ite: return args[0]->as_bool() ? *args[1] : *args[2];
    case Equal:
      for (std::size_t i = 1; i < args.size(); ++i) {
        if (!(*args[i] == *args[0])) return bool_val(false);
      }
      return bool_val(true);
    case Distinct:
      for (std::size_t i = 0; i < args.size(); ++i) {
        for (std::size_t j = i + 1; j < args.size(); ++j) {
          if (*args[i] == *args[j]) return bool_val(false);
        }
      }
      return bool_val(true);

    case Concat: {
      BigInt acc = 0;
      uint64_t w = 0;
      for (const Value * v : args) {
        acc = (acc << v->bv_width()) | v->bv_nat();
        w += v->bv_width();
      }
      return Value::bv(w, acc);
    }
    case BVNot:
      return Value::bv(args[0]->bv_width(),
                       pow2(args[0]->bv_width()) - 1 - args[0]->bv_nat());
    case BVNeg: return Value::bv(args[0]->bv_width(), -args[0]->bv_nat());
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
    case BVUlt:
    case BVUle:
    case BVUgt:
    case BVUge:
    case BVSlt:
    case BVSle:
    case BVSgt:
    case BVSge:
    case BVComp: return eval_bv_binary(prim, *args[0], *args[1]);
    case Extract: {
      uint64_t hi = *op.idx0, lo = *op.idx1;
      return Value::bv(hi - lo + 1,
                       args[0]->bv_nat() >> static_cast<unsigned>(lo));
    }
    case Zero_Extend:
      return Value::bv(args[0]->bv_width() + *op.idx0, args[0]->bv_nat());
    case Sign_Extend:
      return Value::bv(args[0]->bv_width() + *op.idx0, args[0]->bv_signed());
    case Repeat: {
      const uint64_t w = args[0]->bv_width();
      BigInt acc = 0;
      for (uint64_t i = 0; i < *op.idx0; ++i) {
        acc = (acc << w) | args[0]->bv_nat();
      }
      return Value::bv(w * *op.idx0, acc);
    }
    case Rotate_Left:
    case Rotate_Right: {
      const uint64_t w = args[0]->bv_width();
      uint64_t k = *op.idx0 % w;
      if (prim == Rotate_Right) k = (w - k) % w;
      const BigInt & x = args[0]->bv_nat();
      BigInt r = (x << static_cast<unsigned>(k))
                 | (x >> static_cast<unsigned>(w - k));
      return Value::bv(w, low_bits(r, w));
    }

    case Select: return args[0]->select(*args[1]);
    case Store: return args[0]->store(*args[1], *args[2]);

    case Plus:
      return fold_arith(args, [](const auto & a, const auto & b) { return a + b; });
    case Minus:
      return fold_arith(args, [](const auto & a, const auto & b) { return a - b; });
    case Mult:
      return fold_arith(args, [](const auto & a, const auto & b) { return a * b; });
    case Negate:
      if (args[0]->is(ValueKind::INT)) return Value::integer(-args[0]->as_integer());
      return Value::real(-args[0]->as_real());
    case Div:
      if (args[1]->as_real() == 0) {
        throw NotImplementedException("real division by zero is not evaluated");
      }
      return Value::real(args[0]->as_real() / args[1]->as_real());
    case Mod:
      if (args[1]->as_integer() == 0) {
        throw NotImplementedException("mod by zero is not evaluated");
      }
      return Value::integer(euclid_mod(args[0]->as_integer(), args[1]->as_integer()));
    case Lt:
      return compare_arith(*args[0], *args[1], [](const auto & a, const auto & b) { return a < b; });
    case Le:
      return compare_arith(*args[0], *args[1], [](const auto & a, const auto & b) { return a <= b; });
    case Gt:
      return compare_arith(*args[0], *args[1], [](const auto & a, const auto & b) { return a > b; });
    case Ge:
      return compare_arith(*args[0], *args[1], [](const auto & a, const auto & b) { return a >= b; });
    case To_Real: return Value::real(Rational(args[0]->as_integer()));
    case To_Int: return Value::integer(floor_of(args[0]->as_real()));

    case Apply:
    case NUM_OPS: break;
  }
  throw NotImplementedException("cannot evaluate " + op.to_string());
}

bool name_less(const Term & a, const Term & b)
{
  if (a->name() != b->name()) return a->name() < b->name();
  return a->id() < b->id();
}

void collect_symbols(const TermVec & roots, TermVec & vars, TermVec & funs)
{
  std::unordered_set<const TermNode *> seen;
  std::vector<Term> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (!seen.insert(t.get()).second) continue;
    if (t->is_symbol()) {
      (t->get_sort().is(SortKind::FUNCTION) ? funs : vars).push_back(t);
    }
    for (const Term & c : *t) stack.push_back(c);
  }
  std::sort(vars.begin(), vars.end(), name_less);
  std::sort(funs.begin(), funs.end(), name_less);
}

}  // namespace

const Value & FunctionTable::lookup(const std::vector<Value> & args) const
{
  auto it = entries.find(args);
  return it == entries.end() ? otherwise : it->second;
}

void Assignment::set(const Term & symbol, const Value & v)
{
  if (!symbol || !symbol->is_symbol()) {
    throw IncorrectUsageException("assignments bind symbols only");
  }
  if (!(symbol->get_sort() == v.sort())) {
    throw IncorrectUsageException("value of sort " + v.sort().to_string()
                                  + " for symbol " + symbol->name()
                                  + " of sort "
                                  + symbol->get_sort().to_string());
  }
  values.insert_or_assign(symbol, v);
}

TermVec free_symbols(const TermVec & roots)
{
  TermVec vars, funs;
  collect_symbols(roots, vars, funs);
  return vars;
}

TermVec function_symbols(const TermVec & roots)
{
  TermVec vars, funs;
  collect_symbols(roots, vars, funs);
  return funs;
}

struct Evaluator::Impl
{
  TermVec roots;
  TermVec symbols;
  std::vector<Term> nodes;
  std::vector<std::vector<std::size_t>> child_slots;
  std::vector<int> symbol_index;
  std::vector<std::size_t> root_slot;
  // nodes[cone_end[i-1] .. cone_end[i]) are first needed by root i
  std::vector<std::size_t> cone_end;
  std::vector<Value> slots;
  std::vector<const Value *> argbuf;
  std::vector<Value> applybuf;

  explicit Impl(const TermVec & rs) : roots(rs)
  {
    symbols = free_symbols(roots);
    std::unordered_map<const TermNode *, int> sym_pos;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      sym_pos.emplace(symbols[i].get(), static_cast<int>(i));
    }

    std::unordered_map<const TermNode *, std::size_t> slot_of;
    for (const Term & r : roots) {
      if (!r) throw IncorrectUsageException("cannot evaluate a null term");
      // Iterative post-order.
      std::vector<std::pair<Term, bool>> stack{ { r, false } };
      while (!stack.empty()) {
        auto [t, expanded] = stack.back();
        stack.pop_back();
        if (slot_of.count(t.get())) continue;
        if (!expanded) {
          stack.emplace_back(t, true);
          for (auto it = t->children().rbegin(); it != t->children().rend();
               ++it) {
            if (!slot_of.count(it->get())) stack.emplace_back(*it, false);
          }
          continue;
        }
        std::size_t k = nodes.size();
        slot_of.emplace(t.get(), k);
        nodes.push_back(t);
        std::vector<std::size_t> cs;
        for (const Term & c : *t) cs.push_back(slot_of.at(c.get()));
        child_slots.push_back(std::move(cs));
        auto sp = sym_pos.find(t.get());
        symbol_index.push_back(sp == sym_pos.end() ? -1 : sp->second);
      }
      root_slot.push_back(slot_of.at(r.get()));
      cone_end.push_back(nodes.size());
    }

    slots.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k]->is_value()) slots[k] = nodes[k]->value();
    }
  }

  void eval_range(std::size_t begin,
                  std::size_t end,
                  std::span<const Value> symbol_values,
                  const std::map<Term, FunctionTable, TermIdLess> & functions)
  {
    for (std::size_t k = begin; k < end; ++k) {
      const Term & t = nodes[k];
      if (t->is_value()) continue;
      if (t->get_sort().is(SortKind::FUNCTION)) continue;
      if (t->is_symbol()) {
        slots[k] = symbol_values[symbol_index[k]];
        continue;
      }
      const Op & op = t->get_op();
      const auto & cs = child_slots[k];
      if (*op.prim == Apply) {
        const Term & head = nodes[cs[0]];
        if (!head->is_symbol()) {
          throw NotImplementedException(
              "cannot evaluate an application whose head is not a symbol: "
              + t->to_string());
        }
        auto it = functions.find(head);
        if (it == functions.end()) {
          throw IncorrectUsageException("no interpretation for function "
                                        + head->name());
        }
        applybuf.clear();
        for (std::size_t i = 1; i < cs.size(); ++i) {
          applybuf.push_back(slots[cs[i]]);
        }
        slots[k] = it->second.lookup(applybuf);
        continue;
      }
      argbuf.clear();
      for (std::size_t c : cs) argbuf.push_back(&slots[c]);
      slots[k] = eval_op(op, argbuf);
    }
  }

  std::vector<Value> resolve(const Assignment & a) const
  {
    std::vector<Value> vals;
    vals.reserve(symbols.size());
    for (const Term & s : symbols) {
      auto it = a.values.find(s);
      if (it == a.values.end()) {
        throw IncorrectUsageException("assignment has no value for symbol "
                                      + s->name());
      }
      vals.push_back(it->second);
    }
    return vals;
  }
};

Evaluator::Evaluator(const TermVec & roots)
    : impl_(std::make_unique<Impl>(roots))
{
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator &&) noexcept = default;
Evaluator & Evaluator::operator=(Evaluator &&) noexcept = default;

const TermVec & Evaluator::roots() const { return impl_->roots; }

const TermVec & Evaluator::symbols() const { return impl_->symbols; }

Value Evaluator::eval(std::size_t root, const Assignment & a)
{
  std::vector<Value> vals = impl_->resolve(a);
  impl_->eval_range(0, impl_->cone_end.at(root), vals, a.functions);
  return impl_->slots[impl_->root_slot[root]];
}

bool Evaluator::all_true(const Assignment & a)
{
  std::vector<Value> vals = impl_->resolve(a);
  return all_true(vals, a.functions);
}

bool Evaluator::all_true(
    std::span<const Value> symbol_values,
    const std::map<Term, FunctionTable, TermIdLess> & functions)
{
  std::size_t begin = 0;
  for (std::size_t i = 0; i < impl_->roots.size(); ++i) {
    impl_->eval_range(begin, impl_->cone_end[i], symbol_values, functions);
    begin = impl_->cone_end[i];
    const Value & v = impl_->slots[impl_->root_slot[i]];
    if (!v.is(ValueKind::BOOL)) {
      throw IncorrectUsageException("all_true on a non-Bool term: "
                                    + impl_->roots[i]->to_string());
    }
    if (!v.as_bool()) return false;
  }
  return true;
}

Value eval_term(const Term & t, const Assignment & a)
{
  Evaluator ev({ t });
  return ev.eval(0, a);
}

}  // namespace smt
