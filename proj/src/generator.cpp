#include "smt/generator.h"

#include <algorithm>
#include <cctype>

#include "smt/exceptions.h"
#include "smt/reference_solver.h"
#include "smt/smtlib_printer.h"

namespace smt {

TermGenerator::TermGenerator(TermManager & mgr,
                             uint64_t seed,
                             GeneratorOptions opts)
    : mgr_(mgr), rng_(seed), opts_(std::move(opts))
{
  if (opts_.widths.empty()) {
    throw IncorrectUsageException("generator needs at least one width");
  }
  const Sort boolean = mgr_.make_sort(SortKind::BOOL);
  for (std::size_t i = 0; i < opts_.num_bool_symbols; ++i) {
    symbols_.push_back(mgr_.make_symbol("b" + std::to_string(i), boolean));
  }
  for (std::size_t i = 0; i < opts_.num_bv_symbols; ++i) {
    symbols_.push_back(mgr_.make_symbol(
        "x" + std::to_string(i), mgr_.make_sort(SortKind::BV, random_width())));
  }
  for (std::size_t i = 0; i < opts_.num_functions; ++i) {
    SortVec sorts;
    const std::size_t arity = 1 + below(2);
    for (std::size_t k = 0; k <= arity; ++k) {
      sorts.push_back(mgr_.make_sort(SortKind::BV, random_width()));
    }
    functions_.push_back(mgr_.make_symbol(
        "f" + std::to_string(i), mgr_.make_sort(SortKind::FUNCTION, sorts)));
  }
  if (opts_.arithmetic) {
    symbols_.push_back(mgr_.make_symbol("n0", mgr_.make_sort(SortKind::INT)));
    symbols_.push_back(mgr_.make_symbol("r0", mgr_.make_sort(SortKind::REAL)));
  }
  if (opts_.arrays) {
    Sort a = mgr_.make_sort(SortKind::ARRAY,
                            mgr_.make_sort(SortKind::BV, random_width()),
                            mgr_.make_sort(SortKind::BV, random_width()));
    array_sorts_.push_back(a);
    symbols_.push_back(mgr_.make_symbol("a0", a));
  }
  if (opts_.uninterpreted) {
    usort_ = mgr_.make_sort("U", 0);
    symbols_.push_back(mgr_.make_symbol("u0", *usort_));
    symbols_.push_back(mgr_.make_symbol("u1", *usort_));
  }
}

Sort TermGenerator::random_sort()
{
  std::vector<Sort> choices{ mgr_.make_sort(SortKind::BOOL),
                             mgr_.make_sort(SortKind::BV, random_width()),
                             mgr_.make_sort(SortKind::BV, random_width()) };
  if (opts_.arithmetic) {
    choices.push_back(mgr_.make_sort(SortKind::INT));
    choices.push_back(mgr_.make_sort(SortKind::REAL));
  }
  for (const Sort & a : array_sorts_) choices.push_back(a);
  if (usort_) choices.push_back(*usort_);
  return choices[below(choices.size())];
}

Term TermGenerator::symbol_of(const Sort & s)
{
  TermVec matching;
  for (const Term & t : symbols_) {
    if (t->get_sort() == s) matching.push_back(t);
  }
  if (matching.empty()) return nullptr;
  return matching[below(matching.size())];
}

Value TermGenerator::random_value(const Sort & s)
{
  switch (s.kind()) {
    case SortKind::BOOL: return Value::boolean(coin(50));
    case SortKind::BV:
      return Value::bv(s.width(), BigInt(below(uint64_t(1) << s.width())));
    case SortKind::INT:
      return Value::integer(BigInt(static_cast<int64_t>(below(11)) - 5));
    case SortKind::REAL:
      return Value::real(BigInt(static_cast<int64_t>(below(11)) - 5),
                         BigInt(1 + below(3)));
    case SortKind::ARRAY: {
      Value v = Value::const_array(s, random_value(s.element_sort()));
      if (coin(50)) {
        v = v.store(random_value(s.index_sort()),
                    random_value(s.element_sort()));
      }
      return v;
    }
    case SortKind::UNINTERPRETED: return Value::uninterpreted(s, 0);
    case SortKind::FUNCTION: break;
  }
  throw IncorrectUsageException("no random values of sort " + s.to_string());
}

Term TermGenerator::leaf(const Sort & s)
{
  if (coin(70)) {
    if (Term sym = symbol_of(s)) return sym;
    if (s.is(SortKind::BV)) {
      // fit a bit-vector symbol of another width
      TermVec bvs;
      for (const Term & t : symbols_) {
        if (t->get_sort().is(SortKind::BV)) bvs.push_back(t);
      }
      if (!bvs.empty()) {
        const Term x = bvs[below(bvs.size())];
        const uint64_t v = x->get_sort().width();
        const uint64_t w = s.width();
        if (v > w) {
          const uint64_t lo = below(v - w + 1);
          Op op(Extract);
          op.idx0 = lo + w - 1;
          op.idx1 = lo;
          return mgr_.make_term(op, x);
        }
        Op op(coin(50) ? Zero_Extend : Sign_Extend);
        op.idx0 = w - v;
        return mgr_.make_term(op, x);
      }
    }
  }
  return mgr_.make_value(random_value(s));
}

Term TermGenerator::term(const Sort & s, unsigned depth)
{
  if (depth == 0 || coin(20)) return leaf(s);
  switch (s.kind()) {
    case SortKind::BOOL: return bool_term(depth);
    case SortKind::BV: return bv_term(s.width(), depth);
    case SortKind::INT: return int_term(depth);
    case SortKind::REAL: return real_term(depth);
    case SortKind::ARRAY: return array_term(s, depth);
    case SortKind::UNINTERPRETED:
      return mgr_.make_term(Ite, formula(depth - 1), term(s, depth - 1),
                            term(s, depth - 1));
    case SortKind::FUNCTION: break;
  }
  throw IncorrectUsageException("cannot generate terms of sort "
                                + s.to_string());
}

Term TermGenerator::formula(unsigned depth)
{
  if (depth == 0) return leaf(mgr_.make_sort(SortKind::BOOL));
  return bool_term(depth);
}

Term TermGenerator::bool_term(unsigned depth)
{
  const Sort boolean = mgr_.make_sort(SortKind::BOOL);
  const unsigned d = depth - 1;
  for (;;) {
    switch (below(9)) {
      case 0: return mgr_.make_term(Not, term(boolean, d));
      case 1: {
        TermVec args;
        const std::size_t n = 2 + below(2);
        for (std::size_t i = 0; i < n; ++i) args.push_back(term(boolean, d));
        return mgr_.make_term(coin(50) ? And : Or, args);
      }
      case 2:
        return mgr_.make_term(coin(50) ? Xor : Implies, term(boolean, d),
                              term(boolean, d));
      case 3:
        return mgr_.make_term(Ite, term(boolean, d), term(boolean, d),
                              term(boolean, d));
      case 4:
      case 5: {
        const Sort s = random_sort();
        TermVec args{ term(s, d), term(s, d) };
        if (coin(20)) args.push_back(term(s, d));
        return mgr_.make_term(coin(60) ? Equal : Distinct, args);
      }
      case 6:
      case 7: {
        static constexpr PrimOp cmps[] = { BVUlt, BVUle, BVUgt, BVUge,
                                           BVSlt, BVSle, BVSgt, BVSge };
        const Sort s = mgr_.make_sort(SortKind::BV, random_width());
        return mgr_.make_term(cmps[below(std::size(cmps))], term(s, d),
                              term(s, d));
      }
      case 8: {
        if (!opts_.arithmetic) break;
        static constexpr PrimOp cmps[] = { Lt, Le, Gt, Ge };
        const Sort s = mgr_.make_sort(coin(50) ? SortKind::INT : SortKind::REAL);
        return mgr_.make_term(cmps[below(std::size(cmps))], term(s, d),
                              term(s, d));
      }
    }
  }
}

Term TermGenerator::bv_term(uint64_t w, unsigned depth)
{
  const unsigned d = depth - 1;
  const uint64_t max_w = *std::max_element(opts_.widths.begin(),
                                           opts_.widths.end());
  auto bv = [&](uint64_t width) {
    return term(mgr_.make_sort(SortKind::BV, width), d);
  };
  for (;;) {
    switch (below(12)) {
      case 0: return mgr_.make_term(coin(50) ? BVNot : BVNeg, bv(w));
      case 1:
      case 2: {
        static constexpr PrimOp ops[] = { BVAnd, BVOr,   BVXor,  BVAdd,
                                          BVSub, BVMul,  BVUdiv, BVUrem,
                                          BVShl, BVLshr, BVAshr };
        return mgr_.make_term(ops[below(std::size(ops))], bv(w), bv(w));
      }
      case 3:
        return mgr_.make_term(Ite, formula(d), bv(w), bv(w));
      case 4: {
        if (w < 2) break;
        const uint64_t a = 1 + below(w - 1);
        return mgr_.make_term(Concat, bv(a), bv(w - a));
      }
      case 5: {
        const uint64_t src = std::max(w, w + below(max_w - std::min(w, max_w) + 1));
        const uint64_t lo = below(src - w + 1);
        Op op(Extract);
        op.idx0 = lo + w - 1;
        op.idx1 = lo;
        return mgr_.make_term(op, bv(src));
      }
      case 6: {
        if (w < 2) break;
        const uint64_t k = 1 + below(w - 1);
        Op op(coin(50) ? Zero_Extend : Sign_Extend);
        op.idx0 = k;
        return mgr_.make_term(op, bv(w - k));
      }
      case 7: {
        std::vector<uint64_t> divisors;
        for (uint64_t k = 1; k <= w; ++k) {
          if (w % k == 0) divisors.push_back(k);
        }
        const uint64_t k = divisors[below(divisors.size())];
        Op op(Repeat);
        op.idx0 = k;
        return mgr_.make_term(op, bv(w / k));
      }
      case 8: {
        Op op(coin(50) ? Rotate_Left : Rotate_Right);
        op.idx0 = below(2 * w + 1);
        return mgr_.make_term(op, bv(w));
      }
      case 9: {
        if (w != 1) break;
        const uint64_t v = random_width();
        return mgr_.make_term(BVComp, bv(v), bv(v));
      }
      case 10: {
        TermVec fs;
        for (const Term & f : functions_) {
          if (f->get_sort().codomain().width() == w) fs.push_back(f);
        }
        if (fs.empty()) break;
        const Term f = fs[below(fs.size())];
        TermVec args{ f };
        for (const Sort & dom : f->get_sort().domain()) args.push_back(term(dom, d));
        return mgr_.make_term(Apply, args);
      }
      case 11: {
        for (const Sort & a : array_sorts_) {
          if (a.element_sort().width() == w) {
            return mgr_.make_term(Select, term(a, d), term(a.index_sort(), d));
          }
        }
        break;
      }
    }
  }
}

Term TermGenerator::int_term(unsigned depth)
{
  const Sort s = mgr_.make_sort(SortKind::INT);
  const unsigned d = depth - 1;
  switch (below(6)) {
    case 0: return mgr_.make_term(Plus, term(s, d), term(s, d));
    case 1: return mgr_.make_term(Minus, term(s, d), term(s, d));
    case 2: return mgr_.make_term(Mult, term(s, d), term(s, d));
    case 3: {
      Term c = term(s, d);
      // (- 5) would read back as a literal
      if (c->is_value()) c = mgr_.make_term(Plus, c, c);
      return mgr_.make_term(Negate, c);
    }
    case 4: return mgr_.make_term(Mod, term(s, d), term(s, d));
    default:
      return mgr_.make_term(To_Int, term(mgr_.make_sort(SortKind::REAL), d));
  }
}

Term TermGenerator::real_term(unsigned depth)
{
  const Sort s = mgr_.make_sort(SortKind::REAL);
  const unsigned d = depth - 1;
  switch (below(6)) {
    case 0: return mgr_.make_term(Plus, term(s, d), term(s, d));
    case 1: return mgr_.make_term(Minus, term(s, d), term(s, d));
    case 2: return mgr_.make_term(Mult, term(s, d), term(s, d));
    case 3: {
      Term c = term(s, d);
      if (c->is_value()) c = mgr_.make_term(Plus, c, c);
      return mgr_.make_term(Negate, c);
    }
    case 4: return mgr_.make_term(Div, term(s, d), term(s, d));
    default:
      return mgr_.make_term(To_Real, term(mgr_.make_sort(SortKind::INT), d));
  }
}

Term TermGenerator::array_term(const Sort & s, unsigned depth)
{
  const unsigned d = depth - 1;
  if (coin(70)) {
    return mgr_.make_term(Store, term(s, d), term(s.index_sort(), d),
                          term(s.element_sort(), d));
  }
  return mgr_.make_term(Ite, formula(d), term(s, d), term(s, d));
}

FuzzProfile parse_profile(const std::string & name)
{
  std::string lower;
  for (char c : name) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lower == "qf_bv") return FuzzProfile::QF_BV;
  if (lower == "qf_ufbv") return FuzzProfile::QF_UFBV;
  throw IncorrectUsageException("unknown fuzz profile " + name
                                + " (expected qf_bv or qf_ufbv)");
}

std::string profile_name(FuzzProfile p)
{
  return p == FuzzProfile::QF_BV ? "QF_BV" : "QF_UFBV";
}

GeneratorOptions profile_options(FuzzProfile p)
{
  GeneratorOptions o;
  o.widths = { 1, 2, 3, 4 };
  o.num_bool_symbols = 1;
  o.num_bv_symbols = 3;
  o.num_functions = p == FuzzProfile::QF_UFBV ? 2 : 0;
  o.max_depth = 6;
  return o;
}

std::string generate_script(uint64_t seed, uint64_t index, FuzzProfile p)
{
  constexpr uint64_t kMaxStates = uint64_t(1) << 16;
  std::seed_seq seq{ static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                     static_cast<uint32_t>(index),
                     static_cast<uint32_t>(index >> 32) };
  std::mt19937_64 outer(seq);

  for (;;) {
    TermManager mgr;
    TermGenerator gen(mgr, outer(), profile_options(p));
    TermVec base;
    const std::size_t n = 1 + gen.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      base.push_back(gen.formula(1 + static_cast<unsigned>(gen.below(6))));
    }
    const Term extra = gen.formula(1 + static_cast<unsigned>(gen.below(6)));
    TermVec all = base;
    all.push_back(extra);
    auto space = search_space_size(all);
    if (!space || *space > kMaxStates) continue;

    std::string out = "(set-logic " + profile_name(p) + ")\n";
    for (const Term & s : mgr.symbols()) {
      const Sort & sort = s->get_sort();
      out += "(declare-fun " + quote_symbol(s->name()) + " (";
      if (sort.is(SortKind::FUNCTION)) {
        for (std::size_t i = 0; i < sort.domain().size(); ++i) {
          if (i) out += " ";
          out += print_sort(sort.domain()[i]);
        }
        out += ") " + print_sort(sort.codomain()) + ")\n";
      } else {
        out += ") " + print_sort(sort) + ")\n";
      }
    }
    for (const Term & a : base) out += "(assert " + print_term(a) + ")\n";
    out += "(check-sat)\n(push 1)\n";
    out += "(assert " + print_term(extra) + ")\n";
    out += "(check-sat)\n(pop 1)\n(check-sat)\n";
    return out;
  }
}

}  // namespace smt
