#include "smt/process_solver.h"

#include <chrono>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "smt/exceptions.h"
#include "smt/sexpr.h"
#include "smt/smtlib_parser.h"
#include "smt/smtlib_printer.h"
#include "smt/subprocess.h"

namespace smt {

namespace {

constexpr long long kDefaultCheckTimeoutMs = 60000;
constexpr long long kCommandTimeoutMs = 10000;

struct ReadTimeout
{
};

std::string unquote(const std::string & v)
{
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

std::string join(const std::vector<std::string> & parts)
{
  std::string out;
  for (const std::string & p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

std::vector<std::string> split_command_line(const std::string & line)
{
  std::vector<std::string> out;
  std::string cur;
  bool have = false;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      have = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (quote) throw IncorrectUsageException("unterminated quote in: " + line);
  if (have) out.push_back(cur);
  return out;
}

struct ProcessSolver::Impl
{
  std::vector<std::string> argv;
  std::unique_ptr<Subprocess> proc;
  std::unique_ptr<SExprReader> reader;
  Subprocess::Clock::time_point deadline;

  bool dead = false;
  std::string dead_reason;

  std::string sent;
  std::ofstream transcript;

  long long check_timeout_ms = kDefaultCheckTimeoutMs;
  bool logic_emitted = false;
  std::string logic;
  // name -> push depth of the declaration; pop discards deeper ones
  std::unordered_map<std::string, uint64_t> declared_symbols;
  std::unordered_map<std::string, uint64_t> declared_sorts;
  uint64_t depth = 0;

  void forget_above(uint64_t d)
  {
    std::erase_if(declared_symbols, [d](const auto & e) { return e.second > d; });
    std::erase_if(declared_sorts, [d](const auto & e) { return e.second > d; });
  }

  void check_alive() const
  {
    if (dead) {
      throw InternalSolverException("solver process unavailable: "
                                    + dead_reason);
    }
  }

  [[noreturn]] void die(const std::string & why)
  {
    std::string msg = why;
    if (proc) {
      proc->kill();
      const std::string err = proc->stderr_tail();
      if (!err.empty()) msg += "; stderr: " + err;
    }
    dead = true;
    dead_reason = msg;
    throw InternalSolverException(msg);
  }

  SExpr send(const std::string & command, long long timeout_ms)
  {
    check_alive();
    const std::string line = command + "\n";
    sent += line;
    if (transcript.is_open()) {
      transcript << line;
      transcript.flush();
    }
    if (!proc->write(line)) die("solver process exited (write failed)");
    deadline = Subprocess::Clock::now() + std::chrono::milliseconds(timeout_ms);
    std::optional<SExpr> reply;
    try {
      reply = reader->next();
    } catch (const ReadTimeout &) {
      die("timeout after " + std::to_string(timeout_ms)
          + " ms waiting for the reply to " + command);
    } catch (const IncorrectUsageException & ex) {
      die(std::string("unreadable reply to ") + command + ": " + ex.what());
    }
    if (!reply) die("solver process closed its output after " + command);
    return *reply;
  }

  static bool is_error(const SExpr & r)
  {
    return r.is_list() && r.size() >= 1 && r[0].is_symbol("error");
  }

  [[noreturn]] void solver_error(const SExpr & r, const std::string & command)
  {
    std::string msg = r.size() == 2 && r[1].is_atom()
                              && r[1].atom_kind() == AtomKind::STRING
                          ? r[1].string_value()
                          : r.to_string();
    throw InternalSolverException("solver error on " + command + ": " + msg);
  }

  void expect_success(const std::string & command)
  {
    SExpr r = send(command, kCommandTimeoutMs);
    if (r.is_symbol("success")) return;
    if (is_error(r)) solver_error(r, command);
    if (r.is_symbol("unsupported")) {
      throw NotImplementedException("solver reports unsupported: " + command);
    }
    die("expected success for " + command + ", got " + r.to_string());
  }

  void ensure_logic()
  {
    if (logic_emitted) return;
    logic_emitted = true;
    expect_success("(set-logic " + (logic.empty() ? std::string("ALL") : logic)
                   + ")");
  }

  void declare_sort_of(const Sort & s)
  {
    switch (s.kind()) {
      case SortKind::UNINTERPRETED:
        if (declared_sorts.emplace(s.name(), depth).second) {
          expect_success("(declare-sort " + quote_symbol(s.name()) + " 0)");
        }
        break;
      case SortKind::ARRAY:
        declare_sort_of(s.index_sort());
        declare_sort_of(s.element_sort());
        break;
      case SortKind::FUNCTION:
        for (const Sort & d : s.domain()) declare_sort_of(d);
        declare_sort_of(s.codomain());
        break;
      default: break;
    }
  }

  void declare_symbol(const Term & sym)
  {
    if (declared_symbols.count(sym->name())) return;
    const Sort & s = sym->get_sort();
    declare_sort_of(s);
    std::string decl = "(declare-fun " + quote_symbol(sym->name()) + " (";
    Sort codomain = s;
    if (s.is(SortKind::FUNCTION)) {
      for (std::size_t i = 0; i < s.domain().size(); ++i) {
        if (i) decl += " ";
        decl += print_sort(s.domain()[i]);
      }
      codomain = s.codomain();
    }
    decl += ") " + print_sort(codomain) + ")";
    expect_success(decl);
    declared_symbols.emplace(sym->name(), depth);
  }

  void declare_in(const Term & root)
  {
    ensure_logic();
    std::unordered_set<uint64_t> seen;
    std::vector<Term> todo{ root };
    while (!todo.empty()) {
      Term t = todo.back();
      todo.pop_back();
      if (!seen.insert(t->id()).second) continue;
      if (t->is_symbol()) {
        declare_symbol(t);
      } else if (t->is_value()) {
        if (t->get_sort().is(SortKind::UNINTERPRETED)) {
          throw NotImplementedException(
              "values of uninterpreted sorts have no SMT-LIB syntax: "
              + t->to_string());
        }
        declare_sort_of(t->get_sort());
      }
      for (const Term & c : *t) todo.push_back(c);
    }
  }

  Result read_status(const std::string & command)
  {
    SExpr r = send(command, check_timeout_ms);
    if (r.is_symbol("sat")) return Result(SAT);
    if (r.is_symbol("unsat")) return Result(UNSAT);
    if (r.is_symbol("unknown")) {
      return Result(UNKNOWN, "external solver answered unknown");
    }
    if (is_error(r)) solver_error(r, command);
    die("unexpected reply to " + command + ": " + r.to_string());
  }
};

ProcessSolver::ProcessSolver(std::vector<std::string> argv)
    : impl_(std::make_unique<Impl>())
{
  impl_->argv = std::move(argv);
  impl_->proc = std::make_unique<Subprocess>(impl_->argv);
  Impl * impl = impl_.get();
  impl_->reader = std::make_unique<SExprReader>([impl]() {
    const int c = impl->proc->read_char(impl->deadline);
    if (c == -2) throw ReadTimeout{};
    return c;
  });

  const std::string hello = "(set-option :print-success true)";
  SExpr r = impl_->send(hello, kCommandTimeoutMs);
  if (!r.is_symbol("success")) {
    if (Impl::is_error(r)) impl_->solver_error(r, hello);
    impl_->die("handshake failed: expected success, got " + r.to_string());
  }
  impl_->expect_success("(set-option :produce-models true)");
}

ProcessSolver::~ProcessSolver()
{
  if (impl_ && impl_->proc && !impl_->dead) {
    impl_->proc->write("(exit)\n");
  }
}

std::string ProcessSolver::name() const { return "proc:" + join(impl_->argv); }

const std::string & ProcessSolver::transcript() const { return impl_->sent; }

bool ProcessSolver::dead() const { return impl_->dead; }

long ProcessSolver::child_pid() const
{
  return static_cast<long>(impl_->proc->pid());
}

void ProcessSolver::do_set_opt(const std::string & option,
                               const std::string & value)
{
  impl_->check_alive();
  if (option == "proc.timeout-ms") {
    long long ms = 0;
    try {
      std::size_t used = 0;
      ms = std::stoll(value, &used);
      if (used != value.size()) ms = 0;
    } catch (const std::exception &) {
      ms = 0;
    }
    if (ms <= 0) {
      throw IncorrectUsageException("proc.timeout-ms expects a positive "
                                    "integer, got " + value);
    }
    impl_->check_timeout_ms = ms;
    return;
  }
  if (option == "proc.transcript") {
    const std::string path = unquote(value);
    impl_->transcript.close();
    impl_->transcript.open(path, std::ios::out | std::ios::trunc);
    if (!impl_->transcript) {
      throw IncorrectUsageException("cannot open transcript file " + path);
    }
    impl_->transcript << impl_->sent;
    impl_->transcript.flush();
    return;
  }
  if (option == "incremental") return;
  if (option == "print-success") {
    if (unquote(value) != "true") {
      throw IncorrectUsageException(
          "print-success must stay true for the process backend");
    }
    return;
  }
  impl_->expect_success("(set-option :" + option + " " + value + ")");
}

void ProcessSolver::do_set_logic(const std::string & logic)
{
  impl_->check_alive();
  if (impl_->logic_emitted) {
    impl_->expect_success("(set-logic " + quote_symbol(logic) + ")");
    return;
  }
  impl_->logic = quote_symbol(logic);
  impl_->ensure_logic();
}

void ProcessSolver::do_assert(const Term & t)
{
  impl_->check_alive();
  impl_->declare_in(t);
  impl_->expect_success("(assert " + print_term(t) + ")");
}

Result ProcessSolver::do_check_sat()
{
  impl_->check_alive();
  impl_->ensure_logic();
  for (const Term & s : mgr_.symbols()) impl_->declare_symbol(s);
  return impl_->read_status("(check-sat)");
}

AbsSmtSolver::CheckOutcome ProcessSolver::do_check_sat_assuming(
    const TermVec & assumptions)
{
  impl_->check_alive();
  bool literals = true;
  for (const Term & a : assumptions) {
    const bool neg = !a->is_symbol() && !a->is_value()
                     && a->get_op() == Op(Not) && a->children()[0]->is_symbol();
    literals = literals && (a->is_symbol() || neg);
  }
  if (!literals) return AbsSmtSolver::do_check_sat_assuming(assumptions);
  impl_->ensure_logic();
  for (const Term & s : mgr_.symbols()) impl_->declare_symbol(s);
  std::string cmd = "(check-sat-assuming (";
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (i) cmd += " ";
    cmd += print_term(assumptions[i]);
  }
  cmd += "))";
  Result r = impl_->read_status(cmd);
  return { r, true };
}

void ProcessSolver::do_push(uint64_t n)
{
  impl_->check_alive();
  impl_->ensure_logic();
  impl_->expect_success("(push " + std::to_string(n) + ")");
  impl_->depth += n;
}

void ProcessSolver::do_pop(uint64_t n)
{
  impl_->check_alive();
  impl_->ensure_logic();
  impl_->expect_success("(pop " + std::to_string(n) + ")");
  impl_->depth -= n;
  impl_->forget_above(impl_->depth);
}

Term ProcessSolver::do_get_value(const Term & t)
{
  impl_->check_alive();
  impl_->declare_in(t);
  const std::string cmd = "(get-value (" + print_term(t) + "))";
  SExpr r = impl_->send(cmd, kCommandTimeoutMs);
  if (Impl::is_error(r)) impl_->solver_error(r, cmd);
  if (!r.is_list() || r.size() != 1 || !r[0].is_list() || r[0].size() != 2) {
    throw InternalSolverException("unparseable model value: " + r.to_string());
  }
  return parse_value(r[0][1], t->get_sort(), mgr_);
}

SmtSolver ProcessSolverFactory::create(
    const std::string & command,
    const std::vector<std::string> & args,
    const std::vector<std::pair<std::string, std::string>> & options,
    bool /*logging*/)
{
  if (command.empty()) {
    throw IncorrectUsageException("process backend needs a command");
  }
  std::vector<std::string> argv{ command };
  argv.insert(argv.end(), args.begin(), args.end());
  auto s = std::make_shared<ProcessSolver>(std::move(argv));
  for (const auto & [k, v] : options) s->set_opt(k, v);
  return s;
}

}  // namespace smt
