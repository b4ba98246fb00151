#include "smt/smtlib_parser.h"

#include <cctype>
#include <functional>
#include <unordered_set>

#include "smt/exceptions.h"
#include "smt/smtlib_printer.h"

namespace smt {

namespace {

/** Digits in `base` (2, 10 or 16) to a natural number. */
BigInt parse_nat(std::string_view digits, unsigned base = 10)
{
  BigInt n = 0;
  for (char c : digits) {
    unsigned d;
    if (c >= '0' && c <= '9') {
      d = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      d = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      d = static_cast<unsigned>(c - 'A' + 10);
    } else {
      d = base;
    }
    if (d >= base) {
      throw IncorrectUsageException("bad digit '" + std::string(1, c)
                                    + "' in " + std::string(digits));
    }
    n = n * base + d;
  }
  return n;
}

[[noreturn]] void fail_at(const SExpr & e, const std::string & msg)
{
  if (e.line > 0) {
    throw IncorrectUsageException(std::to_string(e.line) + ":"
                                  + std::to_string(e.column) + ": " + msg);
  }
  throw IncorrectUsageException(msg);
}

uint64_t parse_index(const SExpr & e)
{
  if (!e.is_atom() || e.atom_kind() != AtomKind::NUMERAL) {
    fail_at(e, "expected a numeral index, got " + e.to_string());
  }
  try {
    return std::stoull(e.lexeme());
  } catch (const std::exception &) {
    fail_at(e, "index out of range: " + e.lexeme());
  }
}

Rational parse_decimal(const std::string & lexeme)
{
  const auto dot = lexeme.find('.');
  if (dot == std::string::npos) return Rational(parse_nat(lexeme));
  const std::string whole = lexeme.substr(0, dot);
  const std::string frac = lexeme.substr(dot + 1);
  BigInt den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const BigInt num = parse_nat(whole + frac);
  return Rational(num, den);
}

bool is_numeral(const SExpr & e)
{
  return e.is_atom() && e.atom_kind() == AtomKind::NUMERAL;
}

bool is_decimal(const SExpr & e)
{
  return e.is_atom() && e.atom_kind() == AtomKind::DECIMAL;
}

/** (/ N N) with numeral operands: an exact rational literal. Div only takes
 *  Real children, so this shape is never a division term. */
bool is_rational_literal(const SExpr & e)
{
  return e.is_list() && e.size() == 3 && e[0].is_symbol("/")
         && is_numeral(e[1]) && is_numeral(e[2]);
}

Rational rational_literal(const SExpr & e)
{
  const BigInt den = parse_nat(e[2].lexeme());
  if (den == 0) fail_at(e, "zero denominator in " + e.to_string());
  return Rational(parse_nat(e[1].lexeme()), den);
}

/** Negative literal: (- N), (- D) or (- (/ N N)). */
bool is_negative_literal(const SExpr & e)
{
  return e.is_list() && e.size() == 2 && e[0].is_symbol("-")
         && (is_numeral(e[1]) || is_decimal(e[1])
             || is_rational_literal(e[1]));
}

Value bv_literal(const SExpr & e)
{
  const std::string & lx = e.lexeme();
  const std::string digits = lx.substr(2);
  if (digits.empty()) fail_at(e, "empty bit-vector literal");
  if (e.atom_kind() == AtomKind::BINARY) {
    return Value::bv(digits.size(), parse_nat(digits, 2));
  }
  return Value::bv(4 * digits.size(), parse_nat(digits, 16));
}

/** (_ bvN w) */
bool is_indexed_bv_literal(const SExpr & e)
{
  return e.is_list() && e.size() == 3 && e[0].is_symbol("_")
         && e[1].is_symbol() && !e[1].is_quoted_symbol()
         && e[1].lexeme().size() > 2 && e[1].lexeme().rfind("bv", 0) == 0
         && std::isdigit(static_cast<unsigned char>(e[1].lexeme()[2]))
         && is_numeral(e[2]);
}

Value indexed_bv_literal(const SExpr & e)
{
  const std::string n = e[1].lexeme().substr(2);
  for (char c : n) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail_at(e, "malformed bit-vector literal " + e.to_string());
    }
  }
  const uint64_t w = parse_index(e[2]);
  if (w == 0) fail_at(e, "bit-vector literal of width 0");
  return Value::bv(w, parse_nat(n));
}

/** "@k" with k a numeral, as printed for uninterpreted values. */
std::optional<uint64_t> abstract_index(const SExpr & e)
{
  if (!e.is_symbol()) return std::nullopt;
  const std::string name = e.symbol_name();
  if (name.size() < 2 || name[0] != '@') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  }
  return std::stoull(name.substr(1));
}

const std::unordered_set<PrimOp> & left_assoc_ops()
{
  static const std::unordered_set<PrimOp> ops = {
    Xor, BVAnd, BVOr, BVXor, BVAdd, BVMul, Minus, Div
  };
  return ops;
}

}  // namespace

TermParser::TermParser(TermManager & mgr) : mgr_(mgr)
{
  std::function<void(const Sort &)> visit = [&](const Sort & s) {
    switch (s.kind()) {
      case SortKind::UNINTERPRETED: sorts_.emplace(s.name(), s); break;
      case SortKind::ARRAY:
        visit(s.index_sort());
        visit(s.element_sort());
        break;
      case SortKind::FUNCTION:
        for (const Sort & d : s.domain()) visit(d);
        visit(s.codomain());
        break;
      default: break;
    }
  };
  for (const Term & sym : mgr_.symbols()) visit(sym->get_sort());
}

Sort TermParser::declare_sort(const std::string & name, uint64_t arity)
{
  if (sorts_.count(name)) {
    throw IncorrectUsageException("sort " + name + " already declared");
  }
  if (arity != 0) {
    throw NotImplementedException("declare-sort with arity "
                                  + std::to_string(arity)
                                  + " (sort constructors)");
  }
  Sort s = mgr_.make_sort(name, arity);
  sorts_.emplace(name, s);
  return s;
}

void TermParser::define_macro(const std::string & name, Macro m)
{
  if (macros_.count(name) || mgr_.lookup_symbol(name)) {
    throw IncorrectUsageException("symbol " + name + " already defined");
  }
  macros_.emplace(name, std::move(m));
}

bool TermParser::has_macro(const std::string & name) const
{
  return macros_.count(name) > 0;
}

Sort TermParser::parse_sort(const SExpr & e) const
{
  if (e.is_symbol()) {
    if (!e.is_quoted_symbol()) {
      if (e.lexeme() == "Bool") return mgr_.make_sort(SortKind::BOOL);
      if (e.lexeme() == "Int") return mgr_.make_sort(SortKind::INT);
      if (e.lexeme() == "Real") return mgr_.make_sort(SortKind::REAL);
    }
    auto it = sorts_.find(e.symbol_name());
    if (it != sorts_.end()) return it->second;
    fail_at(e, "unknown sort " + e.lexeme());
  }
  if (e.is_list() && e.size() == 3 && e[0].is_symbol("_")
      && e[1].is_symbol("BitVec")) {
    const uint64_t w = parse_index(e[2]);
    if (w == 0) fail_at(e, "bit-vector sort of width 0");
    return mgr_.make_sort(SortKind::BV, w);
  }
  if (e.is_list() && e.size() == 3 && e[0].is_symbol("Array")) {
    return mgr_.make_sort(SortKind::ARRAY, parse_sort(e[1]), parse_sort(e[2]));
  }
  fail_at(e, "unsupported sort " + e.to_string());
}

Term TermParser::parse_term(const SExpr & e)
{
  std::vector<Scope> scopes;
  return term(e, scopes);
}

Term TermParser::term(const SExpr & e, std::vector<Scope> & scopes)
{
  return e.is_atom() ? atom_term(e, scopes) : list_term(e, scopes);
}

Term TermParser::atom_term(const SExpr & e, std::vector<Scope> & scopes)
{
  switch (e.atom_kind()) {
    case AtomKind::NUMERAL:
      return mgr_.make_value(Value::integer(parse_nat(e.lexeme())));
    case AtomKind::DECIMAL:
      return mgr_.make_value(Value::real(parse_decimal(e.lexeme())));
    case AtomKind::BINARY:
    case AtomKind::HEX: return mgr_.make_value(bv_literal(e));
    case AtomKind::KEYWORD:
    case AtomKind::STRING: fail_at(e, "unexpected " + e.lexeme());
    case AtomKind::SYMBOL: break;
  }
  const std::string name = e.symbol_name();
  for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
    auto b = it->find(name);
    if (b != it->end()) return b->second;
  }
  if (!e.is_quoted_symbol()) {
    if (name == "true") return mgr_.make_term(true);
    if (name == "false") return mgr_.make_term(false);
  }
  return apply_named(e, name, e.is_quoted_symbol(), {});
}

Term TermParser::apply_named(const SExpr & e,
                             const std::string & name,
                             bool quoted,
                             TermVec args)
{
  if (!quoted) {
    if (auto prim = prim_op_from_smtlib(name, args.size())) {
      const OpInfo & info = op_metadata(*prim);
      if (info.index_count > 0) {
        fail_at(e, name + " needs indices: (_ " + name + " ...)");
      }
      try {
        if (info.max_arity != 0 && args.size() > info.max_arity
            && info.max_arity == 2) {
          if (*prim == Implies) {
            Term acc = args.back();
            for (std::size_t i = args.size() - 1; i-- > 0;) {
              acc = mgr_.make_term(*prim, args[i], acc);
            }
            return acc;
          }
          if (left_assoc_ops().count(*prim)) {
            Term acc = args[0];
            for (std::size_t i = 1; i < args.size(); ++i) {
              acc = mgr_.make_term(*prim, acc, args[i]);
            }
            return acc;
          }
        }
        return mgr_.make_term(*prim, args);
      } catch (const IncorrectUsageException & ex) {
        fail_at(e, ex.what());
      }
    }
  }
  auto m = macros_.find(name);
  if (m != macros_.end()) return expand_macro(e, m->second, args);
  std::optional<Term> sym = mgr_.lookup_symbol(name);
  if (!sym) fail_at(e, "unknown symbol " + name);
  if (args.empty()) {
    if ((*sym)->get_sort().is(SortKind::FUNCTION)) {
      fail_at(e, "function " + name + " used without arguments");
    }
    return *sym;
  }
  if (!(*sym)->get_sort().is(SortKind::FUNCTION)) {
    fail_at(e, name + " is not a function");
  }
  args.insert(args.begin(), *sym);
  try {
    return mgr_.make_term(Apply, args);
  } catch (const IncorrectUsageException & ex) {
    fail_at(e, ex.what());
  }
}

Term TermParser::expand_macro(const SExpr & e,
                              const Macro & m,
                              const TermVec & args)
{
  if (args.size() != m.params.size()) {
    fail_at(e, "macro expects " + std::to_string(m.params.size())
                   + " argument(s), got " + std::to_string(args.size()));
  }
  std::vector<Scope> scopes(1);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!(args[i]->get_sort() == m.params[i].second)) {
      fail_at(e, "argument " + std::to_string(i) + " has sort "
                     + args[i]->get_sort().to_string() + ", expected "
                     + m.params[i].second.to_string());
    }
    scopes[0][m.params[i].first] = args[i];
  }
  return term(m.body, scopes);
}

Term TermParser::list_term(const SExpr & e, std::vector<Scope> & scopes)
{
  if (e.size() == 0) fail_at(e, "empty application ()");
  const SExpr & head = e[0];

  if (head.is_symbol() && !head.is_quoted_symbol()) {
    const std::string & h = head.lexeme();
    if (h == "_") {
      if (is_indexed_bv_literal(e)) {
        return mgr_.make_value(indexed_bv_literal(e));
      }
      fail_at(e, "unexpected indexed identifier " + e.to_string());
    }
    if (h == "let") {
      if (e.size() != 3 || !e[1].is_list() || e[1].size() == 0) {
        fail_at(e, "malformed let");
      }
      Scope bound;
      for (const SExpr & b : e[1].items()) {
        if (!b.is_list() || b.size() != 2 || !b[0].is_symbol()) {
          fail_at(b, "malformed let binding " + b.to_string());
        }
        if (!bound.emplace(b[0].symbol_name(), term(b[1], scopes)).second) {
          fail_at(b, "duplicate let binding " + b[0].lexeme());
        }
      }
      scopes.push_back(std::move(bound));
      Term body = term(e[2], scopes);
      scopes.pop_back();
      return body;
    }
    if (h == "as") {
      if (e.size() == 3) {
        if (auto k = abstract_index(e[1])) {
          Sort s = parse_sort(e[2]);
          if (!s.is(SortKind::UNINTERPRETED)) {
            fail_at(e, "abstract value of sort " + s.to_string());
          }
          return mgr_.make_value(Value::uninterpreted(s, *k));
        }
      }
      fail_at(e, "unsupported qualified identifier " + e.to_string());
    }
    if (is_negative_literal(e)) {
      const SExpr & n = e[1];
      if (is_numeral(n)) {
        return mgr_.make_value(Value::integer(-parse_nat(n.lexeme())));
      }
      const Rational q =
          is_decimal(n) ? parse_decimal(n.lexeme()) : rational_literal(n);
      return mgr_.make_value(Value::real(-q));
    }
    if (is_rational_literal(e)) {
      return mgr_.make_value(Value::real(rational_literal(e)));
    }
  }

  TermVec args;
  args.reserve(e.size() - 1);
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(term(e[i], scopes));

  if (head.is_symbol()) {
    return apply_named(e, head.symbol_name(), head.is_quoted_symbol(),
                       std::move(args));
  }
  if (head.is_list() && head.size() >= 3 && head[0].is_symbol("_")
      && head[1].is_symbol()) {
    auto prim = prim_op_from_smtlib(head[1].lexeme(), args.size());
    if (!prim || op_metadata(*prim).index_count != head.size() - 2) {
      fail_at(head, "unknown indexed operator " + head.to_string());
    }
    Op op(*prim);
    op.idx0 = parse_index(head[2]);
    if (head.size() == 4) op.idx1 = parse_index(head[3]);
    try {
      return mgr_.make_term(op, args);
    } catch (const IncorrectUsageException & ex) {
      fail_at(e, ex.what());
    }
  }
  if (head.is_list() && head.size() == 3 && head[0].is_symbol("as")
      && head[1].is_symbol("const")) {
    Sort s = parse_sort(head[2]);
    if (!s.is(SortKind::ARRAY)) fail_at(head, "const needs an array sort");
    if (args.size() != 1 || !args[0]->is_value()) {
      fail_at(e, "constant array element must be a single value");
    }
    if (!(args[0]->get_sort() == s.element_sort())) {
      fail_at(e, "constant array element has sort "
                     + args[0]->get_sort().to_string() + ", expected "
                     + s.element_sort().to_string());
    }
    return mgr_.make_value(Value::const_array(s, args[0]->value()));
  }
  fail_at(e, "unsupported application head " + head.to_string());
}

Term parse_term(std::string_view text, TermManager & mgr)
{
  TermParser p(mgr);
  return p.parse_term(parse_sexpr(text));
}

namespace {

[[noreturn]] void unparseable(const SExpr & s, const Sort & expected)
{
  throw InternalSolverException("unparseable model value: " + s.to_string()
                                + " (expected sort " + expected.to_string()
                                + ")");
}

std::optional<Rational> numeric_literal(const SExpr & s)
{
  if (is_numeral(s) || is_decimal(s)) return parse_decimal(s.lexeme());
  if (s.is_list() && s.size() == 2 && s[0].is_symbol("-")) {
    auto q = numeric_literal(s[1]);
    if (q) return -*q;
    return std::nullopt;
  }
  if (s.is_list() && s.size() == 3 && s[0].is_symbol("/")) {
    auto p = numeric_literal(s[1]);
    auto q = numeric_literal(s[2]);
    if (p && q && *q != 0) return *p / *q;
  }
  return std::nullopt;
}

}  // namespace

Value parse_value_literal(const SExpr & s, const Sort & expected)
{
  try {
    switch (expected.kind()) {
      case SortKind::BOOL:
        if (s.is_symbol("true")) return Value::boolean(true);
        if (s.is_symbol("false")) return Value::boolean(false);
        break;
      case SortKind::BV: {
        std::optional<Value> v;
        if (s.is_atom()
            && (s.atom_kind() == AtomKind::BINARY
                || s.atom_kind() == AtomKind::HEX)) {
          v = bv_literal(s);
        } else if (is_indexed_bv_literal(s)) {
          v = indexed_bv_literal(s);
        }
        if (v && v->bv_width() == expected.width()) return *v;
        break;
      }
      case SortKind::INT:
        if (is_numeral(s)) return Value::integer(parse_nat(s.lexeme()));
        if (s.is_list() && s.size() == 2 && s[0].is_symbol("-")
            && is_numeral(s[1])) {
          return Value::integer(-parse_nat(s[1].lexeme()));
        }
        break;
      case SortKind::REAL:
        if (auto q = numeric_literal(s)) return Value::real(*q);
        break;
      case SortKind::ARRAY:
        if (s.is_list() && s.size() == 2 && s[0].is_list()
            && s[0].size() == 3 && s[0][0].is_symbol("as")
            && s[0][1].is_symbol("const")) {
          return Value::const_array(
              expected, parse_value_literal(s[1], expected.element_sort()));
        }
        if (s.is_list() && s.size() == 4 && s[0].is_symbol("store")) {
          Value base = parse_value_literal(s[1], expected);
          return base.store(
              parse_value_literal(s[2], expected.index_sort()),
              parse_value_literal(s[3], expected.element_sort()));
        }
        break;
      case SortKind::UNINTERPRETED: {
        if (s.is_list() && s.size() == 3 && s[0].is_symbol("as")
            && s[2].is_symbol() && s[2].symbol_name() == expected.name()) {
          if (auto k = abstract_index(s[1])) {
            return Value::uninterpreted(expected, *k);
          }
        }
        if (s.is_symbol()) {
          const std::string name = s.symbol_name();
          const std::string prefix = expected.name() + "!val!";
          if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
            const std::string k = name.substr(prefix.size());
            if (k.find_first_not_of("0123456789") == std::string::npos) {
              return Value::uninterpreted(expected, std::stoull(k));
            }
          }
        }
        break;
      }
      case SortKind::FUNCTION: break;
    }
  } catch (const IncorrectUsageException &) {
    // malformed literal pieces fall through to the uniform error below
  }
  unparseable(s, expected);
}

Term parse_value(const SExpr & s, const Sort & expected, TermManager & mgr)
{
  return mgr.make_value(parse_value_literal(s, expected));
}

}  // namespace smt
