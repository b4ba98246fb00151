#include <gtest/gtest.h>

#include "oracles.h"
#include "table_oracle.h"
#include "smt/exceptions.h"
#include "smt/generator.h"
#include "smt/reference_solver.h"

using namespace smt;

namespace {

uint64_t nat(const Value & v) { return static_cast<uint64_t>(v.bv_nat()); }

uint64_t as_number(const Value & v)
{
  if (v.is(ValueKind::BOOL)) return v.as_bool();
  return nat(v);
}

const std::vector<PrimOp> kBinaryBV = {
  BVAnd, BVOr,  BVXor, BVAdd, BVSub, BVMul, BVUdiv, BVUrem, BVShl,
  BVLshr, BVAshr, BVUlt, BVUle, BVUgt, BVUge, BVSlt,  BVSle,  BVSgt,
  BVSge, BVComp, Concat
};

}  // namespace

using table_oracle::brute_force_cost;
using table_oracle::brute_force_sat;

TEST(Evaluator, BinaryBitVectorOpsMatchOracle)
{
  TermManager mgr;
  for (unsigned w = 1; w <= 4; ++w) {
    for (PrimOp op : kBinaryBV) {
      const std::string name(op_metadata(op).smtlib_name);
      for (uint64_t a = 0; a < (1u << w); ++a) {
        for (uint64_t b = 0; b < (1u << w); ++b) {
          Term t = mgr.make_term(op, mgr.make_value(Value::bv(w, a)),
                                 mgr.make_value(Value::bv(w, b)));
          EXPECT_EQ(as_number(eval_term(t, {})),
                    *oracle::bv_binary(name, a, b, w))
              << name << " w=" << w << " a=" << a << " b=" << b;
        }
      }
    }
  }
}

TEST(Evaluator, UnaryAndIndexedBitVectorOps)
{
  TermManager mgr;
  for (unsigned w = 1; w <= 4; ++w) {
    const uint64_t m = oracle::mask(w);
    for (uint64_t a = 0; a <= m; ++a) {
      Term x = mgr.make_value(Value::bv(w, a));
      auto ev = [&](const Op & op) {
        return nat(eval_term(mgr.make_term(op, x), {}));
      };
      EXPECT_EQ(ev(BVNot), ~a & m);
      EXPECT_EQ(ev(BVNeg), (0 - a) & m);
      for (unsigned hi = 0; hi < w; ++hi) {
        for (unsigned lo = 0; lo <= hi; ++lo) {
          EXPECT_EQ(ev(Op(Extract, hi, lo)), (a >> lo) & oracle::mask(hi - lo + 1));
        }
      }
      for (unsigned k = 0; k <= 3; ++k) {
        EXPECT_EQ(ev(Op(Zero_Extend, k)), a);
        EXPECT_EQ(ev(Op(Sign_Extend, k)),
                  oracle::from_signed(oracle::to_signed(a, w), w + k));
        uint64_t rl = a, rr = a;
        for (unsigned s = 0; s < k; ++s) {
          rl = ((rl << 1) | (rl >> (w - 1))) & m;
          rr = ((rr >> 1) | ((rr & 1) << (w - 1))) & m;
        }
        EXPECT_EQ(ev(Op(Rotate_Left, k)), rl);
        EXPECT_EQ(ev(Op(Rotate_Right, k)), rr);
      }
      for (unsigned k = 1; k <= 3; ++k) {
        uint64_t rep = 0;
        for (unsigned s = 0; s < k; ++s) rep = (rep << w) | a;
        EXPECT_EQ(ev(Op(Repeat, k)), rep);
      }
    }
  }
}

TEST(Evaluator, CoreAndArrays)
{
  TermManager mgr;
  const Sort bv2 = mgr.make_sort(SortKind::BV, 2);
  const Sort arr = mgr.make_sort(SortKind::ARRAY, bv2, bv2);
  Term a = mgr.make_symbol("a", arr);
  Term i = mgr.make_symbol("i", bv2);
  Assignment asg;
  asg.set(a, Value::array(arr, Value::bv(2, 1), { { Value::bv(2, 3), Value::bv(2, 2) } }));
  asg.set(i, Value::bv(2, 3));
  EXPECT_EQ(eval_term(mgr.make_term(Select, a, i), asg), Value::bv(2, 2));
  Term st = mgr.make_term(Store, a, i, mgr.make_value(Value::bv(2, 1)));
  EXPECT_EQ(eval_term(st, asg), Value::const_array(arr, Value::bv(2, 1)));
  Term d = mgr.make_term(Distinct, { i, mgr.make_value(Value::bv(2, 0)),
                                     mgr.make_value(Value::bv(2, 3)) });
  EXPECT_FALSE(eval_term(d, asg).as_bool());
  EXPECT_THROW(eval_term(i, {}), IncorrectUsageException);
}

TEST(Evaluator, ArithmeticDivisionByZeroIsNotImplemented)
{
  TermManager mgr;
  Term n = mgr.make_value(Value::integer(7));
  Term z = mgr.make_value(Value::integer(0));
  EXPECT_THROW(eval_term(mgr.make_term(Mod, n, z), {}), NotImplementedException);
  EXPECT_EQ(eval_term(mgr.make_term(Mod, mgr.make_value(Value::integer(-7)),
                                    mgr.make_value(Value::integer(3))), {}),
            Value::integer(2));
  Term q = mgr.make_value(Value::real(-7, 3));
  EXPECT_EQ(eval_term(mgr.make_term(Div, q, mgr.make_value(Value::real(2, 1))), {}),
            Value::real(-7, 6));
  EXPECT_THROW(eval_term(mgr.make_term(Div, q, mgr.make_value(Value::real(0, 1))), {}),
               NotImplementedException);
}

TEST(Ackermann, ShapeOfTheExpansion)
{
  TermManager mgr;
  const Sort bv2 = mgr.make_sort(SortKind::BV, 2);
  Term f = mgr.make_symbol("f", mgr.make_sort(SortKind::FUNCTION, { bv2, bv2 }));
  Term x = mgr.make_symbol("x", bv2);
  Term y = mgr.make_symbol("y", bv2);
  Term fx = mgr.make_term(Apply, f, x);
  Term ffx = mgr.make_term(Apply, f, fx);
  Term fy = mgr.make_term(Apply, f, y);
  AckermannResult r =
      ackermannize({ mgr.make_term(Distinct, ffx, fy) }, mgr);
  EXPECT_EQ(r.app_map.size(), 3u);
  EXPECT_EQ(r.num_constraints, 3u);
  EXPECT_EQ(r.assertions.size(), 4u);
  EXPECT_TRUE(function_symbols(r.assertions).empty());
}

TEST(Ackermann, AgreesWithFunctionTableEnumeration)
{
  GeneratorOptions o;
  o.widths = { 1, 2 };
  o.num_bv_symbols = 2;
  o.num_bool_symbols = 1;
  o.num_functions = 2;
  o.max_depth = 4;
  int checked = 0, sat = 0;
  for (uint64_t seed = 0; checked < 120 && seed < 2000; ++seed) {
    SmtSolver s = create_solver(SolverConfig{});
    TermGenerator gen(s->term_manager(), seed, o);
    Term phi = gen.formula();
    if (function_symbols({ phi }).empty()) continue;
    if (brute_force_cost(phi) > (1 << 14)) continue;
    s->assert_formula(phi);
    Result r = s->check_sat();
    ASSERT_FALSE(r.is_unknown()) << r.explanation();
    EXPECT_EQ(r.is_sat(), brute_force_sat(phi)) << phi->to_string();
    sat += r.is_sat();
    ++checked;
  }
  EXPECT_EQ(checked, 120);
  // both outcomes must actually occur for the comparison to mean anything
  EXPECT_GT(sat, 0);
  EXPECT_LT(sat, checked);
}

TEST(ReferenceSolver, UnknownReasons)
{
  {
    SmtSolver s = create_solver(SolverConfig{});
    Term n = s->make_symbol("n", s->make_sort(SortKind::INT));
    s->assert_formula(s->make_term(Equal, n, n));
    Result r = s->check_sat();
    EXPECT_TRUE(r.is_unknown());
    EXPECT_NE(r.explanation().find("INT"), std::string::npos);
  }
  {
    SmtSolver s = create_solver(SolverConfig{});
    Term x = s->make_symbol("x", s->make_sort(SortKind::BV, 17));
    s->assert_formula(s->make_term(Equal, x, x));
    Result r = s->check_sat();
    EXPECT_TRUE(r.is_unknown());
    EXPECT_NE(r.explanation().find("ref.max-bv-width"), std::string::npos);
  }
  {
    SmtSolver s = create_solver(SolverConfig{});
    const Sort bv8 = s->make_sort(SortKind::BV, 8);
    TermVec xs;
    for (int i = 0; i < 3; ++i) xs.push_back(s->make_symbol("x" + std::to_string(i), bv8));
    s->assert_formula(s->make_term(Distinct, xs));
    Result r = s->check_sat();
    EXPECT_TRUE(r.is_unknown());
    EXPECT_NE(r.explanation().find("ref.max-states"), std::string::npos);
  }
}

TEST(ReferenceSolver, ValuesWithoutSymbolsAreDecided)
{
  SmtSolver s = create_solver(SolverConfig{});
  Term n = s->make_value(Value::integer(3));
  s->assert_formula(s->make_term(Lt, n, s->make_term(Plus, n, n)));
  EXPECT_TRUE(s->check_sat().is_sat());
  s->assert_formula(s->make_term(false));
  EXPECT_TRUE(s->check_sat().is_unsat());
}

TEST(ReferenceSolver, ModelsSatisfyTheAssertions)
{
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.arrays = true;
  o.uninterpreted = true;
  o.widths = { 1, 2, 3 };
  int sat = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    SmtSolver s = create_solver(SolverConfig{});
    TermGenerator gen(s->term_manager(), seed, o);
    TermVec phis{ gen.formula(5), gen.formula(5) };
    for (const Term & p : phis) s->assert_formula(p);
    Result r = s->check_sat();
    if (!r.is_sat()) continue;
    ++sat;
    SoundnessReport rep = check_model_soundness(*s, phis);
    EXPECT_TRUE(rep.ok) << seed << ": " << rep.detail;
  }
  EXPECT_GT(sat, 30);
}
