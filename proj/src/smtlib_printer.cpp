#include "smt/smtlib_printer.h"

#include <cctype>
#include <sstream>
#include <unordered_set>

namespace smt {

namespace {

bool is_simple_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c))
         || std::string_view("~!@$%^&*_-+=<>.?/").find(c)
                != std::string_view::npos;
}

bool needs_quotes(const std::string & name)
{
  static const std::unordered_set<std::string> reserved = [] {
    std::unordered_set<std::string> r = {
      "_",       "!",       "as",          "let",         "exists",
      "forall",  "match",   "par",         "NUMERAL",     "DECIMAL",
      "STRING",  "BINARY",  "HEXADECIMAL", "true",        "false",
      "const",   "Bool",    "Int",         "Real",        "Array",
      "BitVec",  "ite",     "=",           "distinct",    "select",
      "store",   "-",
    };
    for (PrimOp p : all_prim_ops()) {
      r.emplace(op_metadata(p).smtlib_name);
    }
    return r;
  }();
  if (name.empty()) return true;
  if (std::isdigit(static_cast<unsigned char>(name.front()))) return true;
  for (char c : name) {
    if (!is_simple_char(c)) return true;
  }
  return reserved.count(name) > 0;
}

std::string binary_digits(const BigInt & n, uint64_t width)
{
  std::string s(width, '0');
  for (uint64_t i = 0; i < width; ++i) {
    if (bit_test(n, static_cast<unsigned>(i))) s[width - 1 - i] = '1';
  }
  return "#b" + s;
}

void print_rational(std::ostream & out, const Rational & q)
{
  const bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  if (neg) out << "(- ";
  if (denominator(a) == 1) {
    out << numerator(a) << ".0";
  } else {
    out << "(/ " << numerator(a) << " " << denominator(a) << ")";
  }
  if (neg) out << ")";
}

void print_value_to(std::ostream & out, const Value & v)
{
  switch (v.kind()) {
    case ValueKind::BOOL: out << (v.as_bool() ? "true" : "false"); return;
    case ValueKind::BV: out << binary_digits(v.bv_nat(), v.bv_width()); return;
    case ValueKind::INT: {
      const BigInt & n = v.as_integer();
      if (n < 0) {
        out << "(- " << BigInt(-n) << ")";
      } else {
        out << n;
      }
      return;
    }
    case ValueKind::REAL: print_rational(out, v.as_real()); return;
    case ValueKind::ARRAY: {
      const auto & stores = v.array_stores();
      for (std::size_t i = 0; i < stores.size(); ++i) out << "(store ";
      out << "((as const " << print_sort(v.sort()) << ") ";
      print_value_to(out, v.array_default());
      out << ")";
      for (const auto & [k, e] : stores) {
        out << " ";
        print_value_to(out, k);
        out << " ";
        print_value_to(out, e);
        out << ")";
      }
      return;
    }
    case ValueKind::UNINTERPRETED:
      out << "(as @" << v.uninterpreted_index() << " "
          << print_sort(v.sort()) << ")";
      return;
  }
}

void print_term_to(std::ostream & out, const TermNode & t)
{
  switch (t.kind()) {
    case TermKind::SYMBOL: out << quote_symbol(t.name()); return;
    case TermKind::VALUE: print_value_to(out, t.value()); return;
    case TermKind::EXPR: break;
  }
  const Op & op = t.get_op();
  out << "(";
  if (*op.prim == Apply) {
    print_term_to(out, *t.children()[0]);
    for (std::size_t i = 1; i < t.num_children(); ++i) {
      out << " ";
      print_term_to(out, *t.children()[i]);
    }
    out << ")";
    return;
  }
  if (op.num_indices() > 0) {
    out << op.to_string();
  } else {
    out << op_metadata(*op.prim).smtlib_name;
  }
  for (const Term & c : t) {
    out << " ";
    print_term_to(out, *c);
  }
  out << ")";
}

}  // namespace

std::string quote_symbol(const std::string & name)
{
  if (needs_quotes(name)) return "|" + name + "|";
  return name;
}

std::string print_sort(const Sort & s)
{
  switch (s.kind()) {
    case SortKind::BOOL: return "Bool";
    case SortKind::INT: return "Int";
    case SortKind::REAL: return "Real";
    case SortKind::BV: return "(_ BitVec " + std::to_string(s.width()) + ")";
    case SortKind::ARRAY:
      return "(Array " + print_sort(s.index_sort()) + " "
             + print_sort(s.element_sort()) + ")";
    case SortKind::UNINTERPRETED: return quote_symbol(s.name());
    case SortKind::FUNCTION: {
      std::string out = "(->";
      for (const Sort & d : s.domain()) out += " " + print_sort(d);
      return out + " " + print_sort(s.codomain()) + ")";
    }
  }
  return "?";
}

std::string print_value(const Value & v)
{
  std::ostringstream out;
  print_value_to(out, v);
  return out.str();
}

std::string print_term(const Term & t) { return print_term(*t); }

std::string print_term(const TermNode & t)
{
  std::ostringstream out;
  print_term_to(out, t);
  return out.str();
}

}  // namespace smt
