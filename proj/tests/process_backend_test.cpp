#include <gtest/gtest.h>

#include <signal.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "smt/exceptions.h"
#include "smt/generator.h"
#include "smt/process_solver.h"
#include "smt/reference_solver.h"
#include "smt/sexpr.h"
#include "smt/transfer.h"

using namespace smt;
namespace fs = std::filesystem;

namespace {

bool have_z3() { return std::system("command -v z3 >/dev/null 2>&1") == 0; }

#define REQUIRE_Z3() \
  if (!have_z3()) GTEST_SKIP() << "z3 not on PATH"

SmtSolver z3(std::vector<std::pair<std::string, std::string>> opts = {})
{
  return ProcessSolverFactory::create("z3", { "-in" }, opts);
}

ProcessSolver & proc(const SmtSolver & s)
{
  return dynamic_cast<ProcessSolver &>(*s);
}

// A stand-in solver: acknowledges everything and, for check-sat, either
// sleeps or answers with garbage depending on its argument.
std::string fake_solver(const std::string & on_check)
{
  fs::path p = fs::temp_directory_path()
               / ("smtbridge-fake-" + std::to_string(::getpid()) + "-"
                  + std::to_string(std::hash<std::string>()(on_check)) + ".sh");
  std::ofstream(p) << "#!/bin/sh\nwhile IFS= read -r line; do\n"
                      "  case \"$line\" in\n"
                      "    *check-sat*) " << on_check << " ;;\n"
                      "    *) echo success ;;\n  esac\ndone\n";
  fs::permissions(p, fs::perms::owner_all);
  return p.string();
}

}  // namespace

TEST(Process, SplitCommandLine)
{
  EXPECT_EQ(split_command_line("z3 -in"), (std::vector<std::string>{ "z3", "-in" }));
  EXPECT_EQ(split_command_line(" a 'b c'  \"d e\" "),
            (std::vector<std::string>{ "a", "b c", "d e" }));
  EXPECT_THROW(split_command_line("a 'b"), IncorrectUsageException);
}

TEST(Process, StartFailures)
{
  EXPECT_THROW(ProcessSolverFactory::create("/nonexistent/solver", {}),
               InternalSolverException);
  SolverConfig empty;
  empty.backend = SolverConfig::Backend::PROCESS;
  EXPECT_THROW(create_solver(empty), IncorrectUsageException);
  // cat echoes the handshake back instead of acknowledging it
  EXPECT_THROW(ProcessSolverFactory::create("cat", {}), InternalSolverException);
}

TEST(Process, TimeoutKillsTheSession)
{
  SmtSolver s = ProcessSolverFactory::create(fake_solver("sleep 20"), {},
                                             { { "proc.timeout-ms", "200" } });
  Term p = s->make_symbol("p", s->make_sort(SortKind::BOOL));
  s->assert_formula(p);
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_THROW(s->check_sat(), InternalSolverException);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(5));
  EXPECT_TRUE(proc(s).dead());
  EXPECT_THROW(s->push(), InternalSolverException);
  EXPECT_THROW(s->assert_formula(p), InternalSolverException);
  EXPECT_THROW(s->check_sat(), InternalSolverException);
  EXPECT_THROW(s->set_opt("proc.timeout-ms", "abc"), InternalSolverException);
}

TEST(Process, GarbageReplyKillsTheSession)
{
  SmtSolver s = ProcessSolverFactory::create(fake_solver("echo ')'"), {});
  s->assert_formula(s->make_term(true));
  EXPECT_THROW(s->check_sat(), InternalSolverException);
  EXPECT_TRUE(proc(s).dead());
  SmtSolver t = ProcessSolverFactory::create(fake_solver("echo maybe"), {});
  EXPECT_THROW(t->check_sat(), InternalSolverException);
  EXPECT_TRUE(proc(t).dead());
}

TEST(Process, LocalOptions)
{
  SmtSolver s = ProcessSolverFactory::create(fake_solver("echo sat"), {});
  EXPECT_THROW(s->set_opt("proc.timeout-ms", "0"), IncorrectUsageException);
  EXPECT_THROW(s->set_opt("print-success", "false"), IncorrectUsageException);
  EXPECT_NO_THROW(s->set_opt("incremental", "true"));
  EXPECT_TRUE(s->check_sat().is_sat());
  EXPECT_EQ(proc(s).transcript().find("incremental"), std::string::npos);
  EXPECT_EQ(proc(s).transcript().find("proc."), std::string::npos);
  EXPECT_FALSE(proc(s).dead());
}

TEST(ProcessZ3, FunctionMsbWidth9)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  Sort bv9 = s->make_sort(SortKind::BV, 9);
  Term x = s->make_symbol("x", bv9), y = s->make_symbol("y", bv9);
  Term f = s->make_symbol("f", s->make_sort(SortKind::FUNCTION, { bv9, bv9 }));
  s->assert_formula(s->make_term(Distinct, s->make_term(Apply, f, x),
                                 s->make_term(Apply, f, y)));
  s->assert_formula(s->make_term(Equal, s->make_term(Op(Extract, 7, 0), x),
                                 s->make_term(Op(Extract, 7, 0), y)));
  ASSERT_TRUE(s->check_sat().is_sat());
  Term vx = s->get_value(x), vy = s->get_value(y);
  EXPECT_TRUE(vx->is_value());
  EXPECT_NE(vx, vy);
  EXPECT_TRUE(check_model_soundness(*s, s->assertions()).ok);
  s->assert_formula(s->make_term(Equal, s->make_term(Op(Extract, 8, 8), x),
                                 s->make_term(Op(Extract, 8, 8), y)));
  EXPECT_TRUE(s->check_sat().is_unsat());
  EXPECT_THROW(s->get_value(x), IncorrectUsageException);
}

TEST(ProcessZ3, SolverErrorsKeepTheSession)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  EXPECT_THROW(s->set_opt("no-such-option-xyz", "1"), InternalSolverException);
  EXPECT_FALSE(proc(s).dead());
  EXPECT_TRUE(s->check_sat().is_sat());
}

TEST(ProcessZ3, ValuesOfEverySort)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  const Sort i = s->make_sort(SortKind::INT), r = s->make_sort(SortKind::REAL);
  const Sort arr = s->make_sort(SortKind::ARRAY, s->make_sort(SortKind::BV, 2), i);
  const Sort u = s->make_sort("U", 0);
  Term n = s->make_symbol("n", i), q = s->make_symbol("q", r);
  Term a = s->make_symbol("a", arr), c = s->make_symbol("c", u);
  s->assert_formula(s->make_term(Equal, n, s->make_value(Value::integer(-5))));
  s->assert_formula(s->make_term(Equal, s->make_term(Mult, q, s->make_value(Value::real(3, 1))),
                                 s->make_value(Value::real(-1, 1))));
  s->assert_formula(s->make_term(Equal, s->make_term(Select, a, s->make_value(Value::bv(2, 2))), n));
  s->assert_formula(s->make_term(Equal, c, c));
  ASSERT_TRUE(s->check_sat().is_sat());
  EXPECT_EQ(s->get_value(n)->value(), Value::integer(-5));
  EXPECT_EQ(s->get_value(q)->value(), Value::real(-1, 3));
  Term av = s->get_value(a);
  EXPECT_EQ(eval_term(av, {}).select(Value::bv(2, 2)), Value::integer(-5));
  EXPECT_EQ(s->get_value(c)->get_sort(), u);
  EXPECT_TRUE(check_model_soundness(*s, s->assertions()).ok);
}

TEST(ProcessZ3, CrashIsContained)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  SmtSolver other = z3();
  s->assert_formula(s->make_term(true));
  ASSERT_TRUE(s->check_sat().is_sat());
  ::kill(static_cast<pid_t>(proc(s).child_pid()), SIGKILL);
  EXPECT_THROW(s->check_sat(), InternalSolverException);
  EXPECT_TRUE(proc(s).dead());
  EXPECT_THROW(s->push(), InternalSolverException);
  // other sessions and the host process are unaffected
  EXPECT_TRUE(other->check_sat().is_sat());
}

TEST(ProcessZ3, LazyDeclarationsInTheTranscript)
{
  REQUIRE_Z3();
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    SmtSolver s = z3();
    TermGenerator gen(s->term_manager(), seed, o);
    for (int i = 0; i < 3; ++i) {
      s->push();
      s->assert_formula(gen.formula(4));
      s->check_sat();
      if (i == 1) s->pop();
    }
    s->check_sat_assuming({ gen.formula(3) });

    std::set<std::string> names;
    for (const Term & t : s->term_manager().symbols()) names.insert(t->name());
    // name -> scope depth of its live declaration
    std::map<std::string, std::size_t> declared;
    std::size_t depth = 0;
    std::function<void(const SExpr &, std::size_t)> uses = [&](const SExpr & e,
                                                              std::size_t k) {
      if (e.is_symbol()) {
        if (names.count(e.symbol_name())) {
          EXPECT_TRUE(declared.count(e.symbol_name()))
              << e.symbol_name() << " used before declaration in command " << k;
        }
        return;
      }
      for (const SExpr & c : e.items()) uses(c, k);
    };
    auto cmds = parse_sexprs(proc(s).transcript());
    for (std::size_t k = 0; k < cmds.size(); ++k) {
      const SExpr & c = cmds[k];
      if (c[0].is_symbol("push")) {
        depth += std::stoul(c[1].lexeme());
      } else if (c[0].is_symbol("pop")) {
        depth -= std::stoul(c[1].lexeme());
        std::erase_if(declared, [&](const auto & e) { return e.second > depth; });
      } else if (c[0].is_symbol("declare-fun")) {
        EXPECT_TRUE(declared.emplace(c[1].symbol_name(), depth).second)
            << c[1].symbol_name() << " declared twice in one scope";
        uses(c[2], k);
        uses(c[3], k);
      } else {
        uses(c, k);
      }
    }
  }
}

TEST(ProcessZ3, DeclarationsSurvivePop)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  const Sort bv3 = s->make_sort(SortKind::BV, 3);
  s->push();
  Term x = s->make_symbol("x", bv3);
  s->assert_formula(s->make_term(Equal, x, s->make_value(Value::bv(3, 5))));
  ASSERT_TRUE(s->check_sat().is_sat());
  s->pop();
  s->assert_formula(s->make_term(Equal, x, s->make_value(Value::bv(3, 2))));
  ASSERT_TRUE(s->check_sat().is_sat());
  EXPECT_EQ(s->get_value(x)->value(), Value::bv(3, 2));
}

TEST(ProcessZ3, UninterpretedValuesAreRejected)
{
  REQUIRE_Z3();
  SmtSolver s = z3();
  const Sort u = s->make_sort("U", 0);
  Term c = s->make_symbol("c", u);
  EXPECT_THROW(s->assert_formula(s->make_term(Equal, c, s->make_value(Value::uninterpreted(u, 0)))),
               NotImplementedException);
  EXPECT_FALSE(proc(s).dead());
  EXPECT_TRUE(s->check_sat().is_sat());
}

TEST(ProcessZ3, TranscriptReplays)
{
  REQUIRE_Z3();
  const fs::path file = fs::temp_directory_path()
                        / ("smtbridge-transcript-" + std::to_string(::getpid()) + ".smt2");
  std::vector<std::string> answers;
  {
    SmtSolver s = z3({ { "proc.transcript", file.string() } });
    TermGenerator gen(s->term_manager(), 11, profile_options(FuzzProfile::QF_UFBV));
    for (int i = 0; i < 4; ++i) {
      s->assert_formula(gen.formula(4));
      answers.push_back(s->check_sat().to_string());
    }
  }
  std::string out;
  FILE * pipe = ::popen(("z3 " + file.string()).c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  ::pclose(pipe);
  std::vector<std::string> replayed;
  for (const SExpr & e : parse_sexprs(out)) {
    if (e.is_symbol("sat") || e.is_symbol("unsat") || e.is_symbol("unknown")) {
      replayed.push_back(e.lexeme());
    }
  }
  EXPECT_EQ(replayed, answers);
  fs::remove(file);
}

TEST(ProcessZ3, AgreesWithReference)
{
  REQUIRE_Z3();
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.widths = { 1, 2, 3 };
  for (uint64_t seed = 0; seed < 30; ++seed) {
    SmtSolver r = create_solver(SolverConfig{});
    SmtSolver z = z3();
    TermGenerator gen(r->term_manager(), seed, o);
    TermTranslator tr(*r, *z);
    Term phi = gen.formula(5);
    r->assert_formula(phi);
    z->assert_formula(tr.transfer_term(phi));
    Result rr = r->check_sat();
    Result zr = z->check_sat();
    ASSERT_FALSE(rr.is_unknown());
    EXPECT_EQ(rr.status(), zr.status()) << seed;
    if (zr.is_sat()) {
      EXPECT_TRUE(check_model_soundness(*z, { tr.transfer_term(phi) }).ok);
    }
  }
}
