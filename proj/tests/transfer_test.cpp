#include <gtest/gtest.h>

#include <unordered_set>

#include "smt/exceptions.h"
#include "smt/generator.h"
#include "smt/reference_solver.h"
#include "smt/smtlib_printer.h"
#include "smt/transfer.h"

using namespace smt;

namespace {

std::size_t reachable(const Term & root)
{
  std::unordered_set<const TermNode *> seen;
  std::vector<Term> stack{ root };
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (!seen.insert(t.get()).second) continue;
    for (const Term & c : *t) stack.push_back(c);
  }
  return seen.size();
}

GeneratorOptions everything()
{
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.arithmetic = true;
  o.arrays = true;
  o.uninterpreted = true;
  return o;
}

}  // namespace

TEST(Transfer, ApplyKeepsTheFunctionAsFirstChild)
{
  TermManager a, b;
  const Sort bv4 = a.make_sort(SortKind::BV, 4);
  Term f = a.make_symbol("f", a.make_sort(SortKind::FUNCTION, { bv4, bv4, bv4 }));
  Term x = a.make_symbol("x", bv4);
  Term app = a.make_term(Apply, { f, x, a.make_value(Value::bv(4, 9)) });
  TermTranslator tr(a, b);
  Term u = tr.transfer_term(app);
  ASSERT_EQ(u->num_children(), 3u);
  EXPECT_TRUE(u->children()[0]->is_symbol());
  EXPECT_EQ(u->children()[0]->name(), "f");
  EXPECT_EQ(u->children()[0]->get_sort(), f->get_sort());
  EXPECT_EQ(*b.lookup_symbol("f"), u->children()[0]);
  EXPECT_EQ(u->children()[2]->value(), Value::bv(4, 9));
}

TEST(Transfer, SymbolPolicies)
{
  TermManager a, b;
  Term x = a.make_symbol("x", a.make_sort(SortKind::BV, 4));
  Term bx = b.make_symbol("x", b.make_sort(SortKind::BV, 4));
  EXPECT_EQ(TermTranslator(a, b).transfer_term(x), bx);
  EXPECT_THROW(TermTranslator(a, b, SymbolPolicy::FRESH_ERROR).transfer_term(x),
               IncorrectUsageException);

  TermManager c;
  c.make_symbol("x", c.make_sort(SortKind::BV, 5));
  EXPECT_THROW(TermTranslator(a, c).transfer_term(x), IncorrectUsageException);
  TermTranslator wrong(b, c);
  EXPECT_THROW(wrong.transfer_term(x), IncorrectUsageException);
}

TEST(Transfer, ValuesAreCopied)
{
  TermManager a, b;
  const Sort arr = a.make_sort(SortKind::ARRAY, a.make_sort(SortKind::BV, 2),
                               a.make_sort(SortKind::INT));
  Value v = Value::array(arr, Value::integer(4), { { Value::bv(2, 1), Value::integer(-2) } });
  TermTranslator tr(a, b);
  Term u = tr.transfer_term(a.make_value(v));
  // a non-constant array value is a store chain over a constant array
  EXPECT_EQ(u, b.make_value(v));
  EXPECT_EQ(eval_term(u, {}), v);
  EXPECT_EQ(tr.transfer_term(a.make_value(Value::integer(-2)))->value(),
            Value::integer(-2));
  EXPECT_TRUE(b.symbols().empty());
}

TEST(Transfer, StructureIsPreservedProperty)
{
  for (uint64_t seed = 0; seed < 30; ++seed) {
    TermManager a, b;
    TermGenerator gen(a, seed, everything());
    TermTranslator ab(a, b);
    TermTranslator ba(b, a);
    for (int i = 0; i < 30; ++i) {
      Term t = gen.term(gen.random_sort(), 6);
      const std::size_t before = b.num_terms();
      const std::size_t cached = ab.cache_size();
      Term u = ab.transfer_term(t);
      EXPECT_EQ(u->get_sort(), t->get_sort());
      EXPECT_EQ(print_term(u), print_term(t));
      EXPECT_EQ(reachable(u), reachable(t));
      // every new target node corresponds to a newly translated source node
      EXPECT_EQ(b.num_terms() - before, ab.cache_size() - cached);
      EXPECT_EQ(ba.transfer_term(u), t);
      EXPECT_EQ(ab.transfer_term(t), u);
    }
  }
}

TEST(Transfer, TransferredAssertionsKeepTheirStatus)
{
  GeneratorOptions o = profile_options(FuzzProfile::QF_UFBV);
  o.widths = { 1, 2, 3 };
  for (uint64_t seed = 0; seed < 40; ++seed) {
    SmtSolver s1 = create_solver(SolverConfig{});
    SmtSolver s2 = create_solver(SolverConfig{});
    TermGenerator gen(s1->term_manager(), seed, o);
    Term phi = gen.formula(5);
    s1->assert_formula(phi);
    TermTranslator tr(*s1, *s2);
    s2->assert_formula(tr.transfer_term(phi));
    EXPECT_EQ(s1->check_sat(), s2->check_sat()) << seed;
  }
}
