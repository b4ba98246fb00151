#include "smt/script.h"

#include "smt/exceptions.h"
#include "smt/smtlib_printer.h"

namespace smt {

namespace {

template <class... Fs>
struct overloaded : Fs...
{
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void malformed(const SExpr & e, const std::string & what)
{
  std::string msg = "malformed " + what + ": " + e.to_string();
  if (e.line > 0) {
    msg = std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + msg;
  }
  throw IncorrectUsageException(msg);
}

std::string symbol_arg(const SExpr & e, const std::string & what)
{
  if (!e.is_symbol()) malformed(e, what);
  return e.symbol_name();
}

uint64_t numeral_arg(const SExpr & e, const std::string & what)
{
  if (!e.is_atom() || e.atom_kind() != AtomKind::NUMERAL) malformed(e, what);
  try {
    return std::stoull(e.lexeme());
  } catch (const std::exception &) {
    malformed(e, what);
  }
}

std::string print_terms(const TermVec & ts)
{
  std::string out = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += " ";
    out += print_term(ts[i]);
  }
  return out + ")";
}

template <class E>
[[noreturn]] void rethrow_indexed(const E & ex, std::size_t index)
{
  throw E("command " + std::to_string(index) + ": " + ex.what());
}

}  // namespace

std::string command_name(const Command & c)
{
  return std::visit(
      overloaded{
          [](const cmd::SetLogic &) { return "set-logic"; },
          [](const cmd::SetOption &) { return "set-option"; },
          [](const cmd::DeclareSort &) { return "declare-sort"; },
          [](const cmd::DeclareFun &) { return "declare-fun"; },
          [](const cmd::DeclareConst &) { return "declare-const"; },
          [](const cmd::DefineFun &) { return "define-fun"; },
          [](const cmd::Assert &) { return "assert"; },
          [](const cmd::CheckSat &) { return "check-sat"; },
          [](const cmd::CheckSatAssuming &) { return "check-sat-assuming"; },
          [](const cmd::Push &) { return "push"; },
          [](const cmd::Pop &) { return "pop"; },
          [](const cmd::GetValue &) { return "get-value"; },
          [](const cmd::Exit &) { return "exit"; },
      },
      c);
}

std::string print_command(const Command & c)
{
  return std::visit(
      overloaded{
          [](const cmd::SetLogic & x) {
            return "(set-logic " + quote_symbol(x.logic) + ")";
          },
          [](const cmd::SetOption & x) {
            return "(set-option :" + x.key + " " + x.value + ")";
          },
          [](const cmd::DeclareSort & x) {
            return "(declare-sort " + quote_symbol(x.name) + " "
                   + std::to_string(x.arity) + ")";
          },
          [](const cmd::DeclareFun & x) {
            std::string out = "(declare-fun " + quote_symbol(x.name) + " (";
            for (std::size_t i = 0; i < x.domain.size(); ++i) {
              if (i) out += " ";
              out += print_sort(x.domain[i]);
            }
            return out + ") " + print_sort(x.codomain) + ")";
          },
          [](const cmd::DeclareConst & x) {
            return "(declare-const " + quote_symbol(x.name) + " "
                   + print_sort(x.sort) + ")";
          },
          [](const cmd::DefineFun & x) {
            std::string out = "(define-fun " + quote_symbol(x.name) + " (";
            for (std::size_t i = 0; i < x.macro.params.size(); ++i) {
              if (i) out += " ";
              out += "(" + quote_symbol(x.macro.params[i].first) + " "
                     + print_sort(x.macro.params[i].second) + ")";
            }
            return out + ") " + print_sort(x.macro.codomain) + " "
                   + x.macro.body.to_string() + ")";
          },
          [](const cmd::Assert & x) {
            return "(assert " + print_term(x.term) + ")";
          },
          [](const cmd::CheckSat &) { return std::string("(check-sat)"); },
          [](const cmd::CheckSatAssuming & x) {
            return "(check-sat-assuming " + print_terms(x.assumptions) + ")";
          },
          [](const cmd::Push & x) {
            return "(push " + std::to_string(x.n) + ")";
          },
          [](const cmd::Pop & x) {
            return "(pop " + std::to_string(x.n) + ")";
          },
          [](const cmd::GetValue & x) {
            return "(get-value " + print_terms(x.terms) + ")";
          },
          [](const cmd::Exit &) { return std::string("(exit)"); },
      },
      c);
}

ScriptRunner::ScriptRunner(AbsSmtSolver & solver)
    : solver_(solver), parser_(solver.term_manager())
{
}

Command ScriptRunner::parse_command(const SExpr & e)
{
  if (!e.is_list() || e.size() == 0 || !e[0].is_symbol()
      || e[0].is_quoted_symbol()) {
    malformed(e, "command");
  }
  const std::string & name = e[0].lexeme();
  const std::size_t n = e.size();

  if (name == "set-logic") {
    if (n != 2) malformed(e, name);
    return cmd::SetLogic{ symbol_arg(e[1], name) };
  }
  if (name == "set-option") {
    if (n != 3 || !e[1].is_atom() || e[1].atom_kind() != AtomKind::KEYWORD) {
      malformed(e, name);
    }
    return cmd::SetOption{ e[1].lexeme().substr(1), e[2].to_string() };
  }
  if (name == "declare-sort") {
    if (n != 2 && n != 3) malformed(e, name);
    return cmd::DeclareSort{ symbol_arg(e[1], name),
                             n == 3 ? numeral_arg(e[2], name) : 0 };
  }
  if (name == "declare-fun") {
    if (n != 4 || !e[2].is_list()) malformed(e, name);
    SortVec domain;
    for (const SExpr & s : e[2].items()) domain.push_back(parser_.parse_sort(s));
    return cmd::DeclareFun{ symbol_arg(e[1], name), domain,
                            parser_.parse_sort(e[3]) };
  }
  if (name == "declare-const") {
    if (n != 3) malformed(e, name);
    return cmd::DeclareConst{ symbol_arg(e[1], name),
                              parser_.parse_sort(e[2]) };
  }
  if (name == "define-fun") {
    if (n != 5 || !e[2].is_list()) malformed(e, name);
    Macro m;
    for (const SExpr & p : e[2].items()) {
      if (!p.is_list() || p.size() != 2) malformed(p, "parameter");
      m.params.emplace_back(symbol_arg(p[0], "parameter"),
                            parser_.parse_sort(p[1]));
    }
    m.codomain = parser_.parse_sort(e[3]);
    m.body = e[4];
    return cmd::DefineFun{ symbol_arg(e[1], name), std::move(m) };
  }
  if (name == "assert") {
    if (n != 2) malformed(e, name);
    return cmd::Assert{ parser_.parse_term(e[1]) };
  }
  if (name == "check-sat") {
    if (n != 1) malformed(e, name);
    return cmd::CheckSat{};
  }
  if (name == "check-sat-assuming" || name == "get-value") {
    if (n != 2 || !e[1].is_list()) malformed(e, name);
    TermVec ts;
    for (const SExpr & t : e[1].items()) ts.push_back(parser_.parse_term(t));
    if (name == "get-value") return cmd::GetValue{ ts };
    return cmd::CheckSatAssuming{ ts };
  }
  if (name == "push" || name == "pop") {
    if (n > 2) malformed(e, name);
    const uint64_t k = n == 2 ? numeral_arg(e[1], name) : 1;
    if (name == "push") return cmd::Push{ k };
    return cmd::Pop{ k };
  }
  if (name == "exit") {
    if (n != 1) malformed(e, name);
    return cmd::Exit{};
  }
  throw NotImplementedException(name);
}

std::string ScriptRunner::execute(const Command & c)
{
  return std::visit(
      overloaded{
          [&](const cmd::SetLogic & x) {
            solver_.set_logic(x.logic);
            return std::string();
          },
          [&](const cmd::SetOption & x) {
            solver_.set_opt(x.key, x.value);
            return std::string();
          },
          [&](const cmd::DeclareSort & x) {
            parser_.declare_sort(x.name, x.arity);
            return std::string();
          },
          [&](const cmd::DeclareFun & x) {
            if (parser_.has_macro(x.name)) {
              throw IncorrectUsageException("symbol " + x.name
                                            + " already defined");
            }
            if (x.domain.empty()) {
              solver_.make_symbol(x.name, x.codomain);
            } else {
              SortVec sorts = x.domain;
              sorts.push_back(x.codomain);
              solver_.make_symbol(
                  x.name, solver_.make_sort(SortKind::FUNCTION, sorts));
            }
            return std::string();
          },
          [&](const cmd::DeclareConst & x) {
            if (parser_.has_macro(x.name)) {
              throw IncorrectUsageException("symbol " + x.name
                                            + " already defined");
            }
            solver_.make_symbol(x.name, x.sort);
            return std::string();
          },
          [&](const cmd::DefineFun & x) {
            parser_.define_macro(x.name, x.macro);
            return std::string();
          },
          [&](const cmd::Assert & x) {
            solver_.assert_formula(x.term);
            return std::string();
          },
          [&](const cmd::CheckSat &) { return solver_.check_sat().to_string(); },
          [&](const cmd::CheckSatAssuming & x) {
            return solver_.check_sat_assuming(x.assumptions).to_string();
          },
          [&](const cmd::Push & x) {
            solver_.push(x.n);
            return std::string();
          },
          [&](const cmd::Pop & x) {
            solver_.pop(x.n);
            return std::string();
          },
          [&](const cmd::GetValue & x) {
            std::string out = "(";
            for (std::size_t i = 0; i < x.terms.size(); ++i) {
              if (i) out += " ";
              out += "(" + print_term(x.terms[i]) + " "
                     + print_term(solver_.get_value(x.terms[i])) + ")";
            }
            return out + ")";
          },
          [&](const cmd::Exit &) {
            exited_ = true;
            return std::string();
          },
      },
      c);
}

void ScriptRunner::run(
    std::string_view text,
    const std::function<void(const Command &, const std::string &)> &
        on_response)
{
  SExprReader reader(text);
  std::size_t index = 0;
  while (!exited_) {
    try {
      std::optional<SExpr> e = reader.next();
      if (!e) break;
      Command c = parse_command(*e);
      std::string response = execute(c);
      if (on_response) on_response(c, response);
    } catch (const NotImplementedException & ex) {
      rethrow_indexed(ex, index);
    } catch (const IncorrectUsageException & ex) {
      rethrow_indexed(ex, index);
    } catch (const InternalSolverException & ex) {
      rethrow_indexed(ex, index);
    }
    ++index;
  }
}

std::vector<std::pair<Command, std::string>> parse_script(
    std::string_view text, AbsSmtSolver & solver)
{
  std::vector<std::pair<Command, std::string>> out;
  ScriptRunner runner(solver);
  runner.run(text, [&](const Command & c, const std::string & r) {
    out.emplace_back(c, r);
  });
  return out;
}

}  // namespace smt
