// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "oracles.h"
#include "smt/differential.h"
#include "smt/exceptions.h"
#include "smt/generator.h"
#include "smt/reference_solver.h"
#include "smt/smtlib_parser.h"
#include "smt/smtlib_printer.h"
#include "smt/transfer.h"
#include "table_oracle.h"

using namespace smt;

namespace {

enum class Verdict
{
  PASS,
  FAIL,
  SKIP
};

struct Outcome
{
  Verdict verdict;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

GeneratorOptions all_features()
{
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.arithmetic = true;
  o.arrays = true;
  o.uninterpreted = true;
  return o;
}

std::optional<std::string> external_solver()
{
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "proc:z3 -in";
  if (std::system("command -v cvc5 >/dev/null 2>&1") == 0) {
    return "proc:cvc5 --lang smt2 --incremental";
  }
  return std::nullopt;
}

Outcome uf_msb_width4()
{
  const auto t0 = Clock::now();
  SmtSolver s = create_solver(SolverConfig{});
  s->set_opt("incremental", "true");
  s->set_opt("produce-models", "true");
  const Sort bv4 = s->make_sort(SortKind::BV, 4);
  const Sort fs = s->make_sort(SortKind::FUNCTION, { bv4, bv4 });
  Term x = s->make_symbol("x", bv4);
  Term y = s->make_symbol("y", bv4);
  Term f = s->make_symbol("f", fs);
  Term fx = s->make_term(Apply, f, x);
  Term fy = s->make_term(Apply, f, y);
  s->assert_formula(s->make_term(Distinct, fx, fy));
  s->assert_formula(s->make_term(Equal, s->make_term(Op(Extract, 2, 0), x),
                                 s->make_term(Op(Extract, 2, 0), y)));
  const Result r1 = s->check_sat();
  s->assert_formula(s->make_term(Equal, s->make_term(Op(Extract, 3, 3), x),
                                 s->make_term(Op(Extract, 3, 3), y)));
  const Result r2 = s->check_sat();
  const double t = seconds_since(t0);
  std::string detail = "statuses " + r1.to_string() + ", " + r2.to_string()
                       + " in " + fmt_seconds(t);
  const bool ok = r1.is_sat() && r2.is_unsat() && t < 5.0;
  return { ok ? Verdict::PASS : Verdict::FAIL, detail };
}

Outcome rebuild_invariant()
{
  constexpr int kTerms = 10000;
  uint64_t checked = 0, failures = 0;
  int produced = 0;
  for (uint64_t seed = 0; produced < kTerms; ++seed) {
    TermManager mgr;
    TermGenerator gen(mgr, seed, all_features());
    std::unordered_set<const TermNode *> seen;
    for (int i = 0; i < 100 && produced < kTerms; ++i, ++produced) {
      std::vector<Term> stack{ gen.term(gen.random_sort(), 8) };
      while (!stack.empty()) {
        Term t = stack.back();
        stack.pop_back();
        if (!seen.insert(t.get()).second) continue;
        if (!t->get_op().is_null()) {
          ++checked;
          if (mgr.make_term(t->get_op(), t->children()) != t) ++failures;
        }
        for (const Term & c : *t) stack.push_back(c);
      }
    }
  }
  return { failures == 0 ? Verdict::PASS : Verdict::FAIL,
           std::to_string(kTerms) + " terms, " + std::to_string(checked)
               + " distinct expression nodes, " + std::to_string(failures)
               + " not rebuilt identically" };
}

Outcome apply_shape()
{
  TermManager mgr;
  const Sort bv4 = mgr.make_sort(SortKind::BV, 4);
  Term f = mgr.make_symbol("f", mgr.make_sort(SortKind::FUNCTION, { bv4, bv4 }));
  Term x = mgr.make_symbol("x", bv4);
  Term fx = mgr.make_term(Apply, f, x);
  const bool ok = fx->get_op() == Op(Apply) && fx->num_children() == 2
                  && fx->children()[0] == f && fx->children()[1] == x;
  return { ok ? Verdict::PASS : Verdict::FAIL,
           "op " + fx->get_op().to_string() + ", "
               + std::to_string(fx->num_children()) + " children" };
}

Outcome evaluator_oracle()
{
  const auto t0 = Clock::now();
  TermManager mgr;
  uint64_t cases = 0, mismatches = 0;
  int ops = 0;
  for (PrimOp op : all_prim_ops()) {
    const OpInfo & info = op_metadata(op);
    const std::string name(info.smtlib_name);
    if (info.index_count != 0 || info.min_arity > 2
        || (info.max_arity != 0 && info.max_arity < 2)) {
      continue;
    }
    if (!oracle::bv_binary(name, 0, 0, 1)) continue;
    ++ops;
    for (unsigned w = 1; w <= 4; ++w) {
      for (uint64_t a = 0; a < (1u << w); ++a) {
        for (uint64_t b = 0; b < (1u << w); ++b) {
          ++cases;
          Value v = eval_term(mgr.make_term(op, mgr.make_value(Value::bv(w, a)),
                                            mgr.make_value(Value::bv(w, b))),
                              {});
          const uint64_t got = v.is(ValueKind::BOOL)
                                   ? v.as_bool()
                                   : static_cast<uint64_t>(v.bv_nat());
          if (got != *oracle::bv_binary(name, a, b, w)) ++mismatches;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  const bool ok = mismatches == 0 && ops == 21 && t < 60.0;
  return { ok ? Verdict::PASS : Verdict::FAIL,
           std::to_string(ops) + " ops, " + std::to_string(cases) + " cases, "
               + std::to_string(mismatches) + " mismatches in "
               + fmt_seconds(t) };
}

Outcome ackermann_vs_tables()
{
  GeneratorOptions o;
  o.widths = { 1, 2 };
  o.num_bv_symbols = 2;
  o.num_bool_symbols = 1;
  o.num_functions = 2;
  o.max_depth = 5;
  int checked = 0, agree = 0, sat = 0;
  for (uint64_t seed = 0; checked < 200 && seed < 100000; ++seed) {
    SmtSolver s = create_solver(SolverConfig{});
    TermGenerator gen(s->term_manager(), seed, o);
    Term phi = gen.formula();
    if (function_symbols({ phi }).empty()) continue;
    if (table_oracle::brute_force_cost(phi) > (1 << 14)) continue;
    ++checked;
    s->assert_formula(phi);
    const Result r = s->check_sat();
    const bool expected = table_oracle::brute_force_sat(phi);
    if (!r.is_unknown() && r.is_sat() == expected) ++agree;
    sat += expected;
  }
  return { checked == 200 && agree == 200 ? Verdict::PASS : Verdict::FAIL,
           std::to_string(agree) + "/" + std::to_string(checked) + " agree ("
               + std::to_string(sat) + " sat)" };
}

Outcome round_trip()
{
  constexpr int kTerms = 5000;
  int produced = 0, ok = 0;
  for (uint64_t seed = 0; produced < kTerms; ++seed) {
    TermManager mgr;
    TermGenerator gen(mgr, 1000 + seed, all_features());
    TermParser parser(mgr);
    for (int i = 0; i < 100 && produced < kTerms; ++i, ++produced) {
      Term t = gen.term(gen.random_sort(), 6);
      try {
        if (parser.parse_term(parse_sexpr(print_term(t))) == t) ++ok;
      } catch (const SmtException &) {
      }
    }
  }
  return { ok == kTerms ? Verdict::PASS : Verdict::FAIL,
           std::to_string(ok) + "/" + std::to_string(kTerms)
               + " parse back to the identical node" };
}

Outcome model_soundness(const std::optional<std::string> & external)
{
  std::vector<BackendSpec> specs{ parse_backend_spec("ref") };
  if (external) specs.push_back(parse_backend_spec(*external));
  uint64_t sat = 0, violations = 0, errors = 0;
  std::string first;
  for (FuzzProfile p : { FuzzProfile::QF_BV, FuzzProfile::QF_UFBV }) {
    for (uint64_t i = 0; i < 300; ++i) {
      const std::string script = generate_script(7, i, p);
      for (const BackendSpec & spec : specs) {
        RunOutcome out = run_script(script, spec, {}, true);
        if (out.error) {
          ++errors;
          if (first.empty()) first = *out.error;
        }
        for (const std::string & st : out.statuses) sat += st == "sat";
        violations += out.soundness_violations.size();
        if (first.empty() && !out.soundness_violations.empty()) {
          first = out.soundness_violations.front();
        }
      }
    }
  }
  std::string detail = std::to_string(sat) + " sat answers on "
                       + std::to_string(specs.size()) + " backend(s), "
                       + std::to_string(violations) + " violations, "
                       + std::to_string(errors) + " errors";
  if (!first.empty()) detail += "; first: " + first;
  return { violations == 0 && errors == 0 && sat > 0 ? Verdict::PASS
                                                     : Verdict::FAIL,
           detail };
}

Outcome incrementality()
{
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.widths = { 1, 2, 3 };
  int ok = 0, unknown = 0;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    SmtSolver inc = create_solver(SolverConfig{});
    TermGenerator gen(inc->term_manager(), 5000 + seed, o);
    Term a = gen.formula(4);
    Term b = gen.formula(4);
    auto mono = [&](const TermVec & fs) {
      SmtSolver m = create_solver(SolverConfig{});
      TermTranslator tr(*inc, *m);
      for (const Term & t : fs) m->assert_formula(tr.transfer_term(t));
      return m->check_sat();
    };
    inc->assert_formula(a);
    const Result ra = inc->check_sat();
    inc->push();
    inc->assert_formula(b);
    const Result rab = inc->check_sat();
    inc->pop();
    const Result ra2 = inc->check_sat();
    const Result assume = inc->check_sat_assuming({ b });
    const Result ma = mono({ a }), mab = mono({ a, b });
    unknown += ra.is_unknown() || rab.is_unknown();
    const bool good = ra == ma && rab == mab && ra2 == ma && assume == mab
                      && inc->context_depth() == 0
                      && inc->assertions() == TermVec{ a }
                      && !(ra.is_unsat() && !rab.is_unsat());
    ok += good;
  }
  return { ok == 500 && unknown == 0 ? Verdict::PASS : Verdict::FAIL,
           std::to_string(ok) + "/500 pairs consistent, "
               + std::to_string(unknown) + " unknown" };
}

Outcome differential(const std::optional<std::string> & external)
{
  if (!external) return { Verdict::SKIP, "no external solver on PATH" };
  const auto t0 = Clock::now();
  std::vector<BackendSpec> specs{ parse_backend_spec("ref"),
                                  parse_backend_spec(*external) };
  const std::string dir =
      (std::filesystem::temp_directory_path() / "smtbridge-acceptance").string();
  FuzzReport rep = fuzz(1, 500, FuzzProfile::QF_UFBV, specs, {}, dir);
  return { rep.cases == 500 && rep.divergences == 0 ? Verdict::PASS
                                                    : Verdict::FAIL,
           "fuzz --count 500 vs " + *external + ": "
               + std::to_string(rep.divergences) + " divergences in "
               + std::to_string(rep.cases) + " cases, "
               + fmt_seconds(seconds_since(t0)) };
}

}  // namespace

int main()
{
  const std::optional<std::string> external = external_solver();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
    { "uf-msb-width4-reference", uf_msb_width4 },
    { "rebuild-invariant", rebuild_invariant },
    { "apply-shape", apply_shape },
    { "evaluator-oracle", evaluator_oracle },
    { "ackermann-equisatisfiability", ackermann_vs_tables },
    { "printer-parser-round-trip", round_trip },
    { "model-soundness", [&] { return model_soundness(external); } },
    { "incrementality", incrementality },
    { "differential-fuzz", [&] { return differential(external); } },
  };
  int failed = 0;
  for (const auto & [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception & e) {
      o = { Verdict::FAIL, std::string("exception: ") + e.what() };
    }
    const char * tag = o.verdict == Verdict::PASS   ? "PASS"
                       : o.verdict == Verdict::FAIL ? "FAIL"
                                                    : "SKIP";
    std::cout << tag << " " << name << ": " << o.detail << std::endl;
    failed += o.verdict == Verdict::FAIL;
  }
  return failed == 0 ? 0 : 1;
}
