#include <gtest/gtest.h>

#include <random>

#include "dqaoa/error.hpp"
#include "dqaoa/problem.hpp"
#include "dqaoa/problem_io.hpp"
#include "oracles.hpp"

using namespace dqaoa;

TEST(Polynomial, CanonicalFormCollapsesPowersAndZeros) {
  MultilinearPolynomial p;
  p.add_term({2, 1, 2}, 3.0);
  p.add_term({1, 2}, -3.0);
  p.add_term({0}, 1.5);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_DOUBLE_EQ(p.coefficient({0}), 1.5);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(canonical_vars({3, 1, 3, 2}), (VarSet{1, 2, 3}));
}

TEST(Polynomial, ProductMatchesPointwiseProduct) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = oracle::random_poly(rng, 5, 3, 6, -5, 5);
    const auto b = oracle::random_poly(rng, 5, 2, 4, -5, 5);
    const auto c = a * b;
    for (std::uint64_t m = 0; m < 32; ++m) {
      const auto x = oracle::bits_of(m, 5);
      EXPECT_EQ(oracle::poly_value(c, x), oracle::poly_value(a, x) * oracle::poly_value(b, x));
      EXPECT_EQ(c.evaluate(x), oracle::poly_value(c, x));
    }
  }
}

TEST(Polynomial, VariablesAndMaxVar) {
  MultilinearPolynomial p{{{4, 1}, 2.0}, {{}, 7.0}};
  EXPECT_EQ(p.variables(), (std::vector<int>{1, 4}));
  EXPECT_EQ(p.max_var(), 4);
  EXPECT_EQ(MultilinearPolynomial(3.0).max_var(), -1);
  EXPECT_DOUBLE_EQ(p.without_constant().constant(), 0.0);
}

TEST(Problem, SlackClosesEveryFeasibleGap) {
  // 8 x1 + 6 x2 + 5 x3 + 3 x4 - 16 <= 0: R = 16, five bits.
  Constraint c{MultilinearPolynomial{{{0}, 8}, {{1}, 6}, {{2}, 5}, {{3}, 3}, {{}, -16}}, ConstraintKind::LeqZero};
  const SlackResult s = add_slack(c, 4);
  EXPECT_EQ(s.range, 16.0);
  EXPECT_EQ(s.slack_vars.size(), 5u);
  for (std::uint64_t m = 0; m < 16; ++m) {
    const auto x = oracle::bits_of(m, 4);
    const bool feasible = oracle::poly_value(c.poly, x) <= 0;
    bool closable = false;
    for (std::uint64_t sv = 0; sv < 32; ++sv) {
      auto full = x;
      for (int b = 0; b < 5; ++b) full.push_back((sv >> b) & 1U);
      closable = closable || oracle::poly_value(s.equality.poly, full) == 0.0;
    }
    EXPECT_EQ(feasible, closable) << m;
  }
}

TEST(Problem, SlackBitOverrideAndInfeasible) {
  Constraint c{MultilinearPolynomial{{{0}, 8}, {{}, -16}}, ConstraintKind::LeqZero};
  EXPECT_EQ(add_slack(c, 1, 2).slack_vars.size(), 2u);
  Constraint bad{MultilinearPolynomial{{{0}, 1}, {{}, 2}}, ConstraintKind::LeqZero};
  EXPECT_THROW(add_slack(bad, 1), InfeasibleError);
  Constraint frac{MultilinearPolynomial{{{0}, 0.5}}, ConstraintKind::LeqZero};
  EXPECT_THROW(add_slack(frac, 1), InputError);
}

TEST(Problem, PenaltyIsZeroExactlyOnFeasiblePoints) {
  ConstrainedProblem p;
  p.objective = MultilinearPolynomial{{{0}, 1}, {{1}, 2}};
  p.constraints.push_back({MultilinearPolynomial{{{0}, 1}, {{1}, 1}, {{}, -1}}, ConstraintKind::EqualZero});
  p.variable_names = {"a", "b"};
  ReductionConfig rc;
  const auto pen = penalize(p, rc);
  EXPECT_EQ(pen.mu, 4.0);
  for (std::uint64_t m = 0; m < 4; ++m) {
    const auto x = oracle::bits_of(m, 2);
    const double obj = oracle::poly_value(p.objective, x);
    const double g = oracle::poly_value(p.constraints[0].poly, x);
    EXPECT_EQ(oracle::poly_value(pen.poly, x) + pen.offset, obj + 4.0 * g * g);
  }
}

TEST(Problem, MinimizationNegatesMaximization) {
  ConstrainedProblem p;
  p.objective = MultilinearPolynomial{{{0}, 3}};
  p.sense = Sense::Maximize;
  p.variable_names = {"x"};
  const auto q = to_minimization(p);
  EXPECT_TRUE(q.negated);
  EXPECT_EQ(q.objective.coefficient({0}), -3.0);
  EXPECT_EQ(q.original_value(-3.0), 3.0);
}

TEST(ProblemIo, ParsesMultiLineObjectiveAndConstraints) {
  const auto p = parse_problem(
      "# demo\n"
      "max: 2 x1 + 3 x1*x2\n"
      "   - 4 x3\n"
      "x1 + x2 >= 1\n"
      "x1 + x3 == 1\n");
  EXPECT_EQ(p.sense, Sense::Maximize);
  EXPECT_EQ(p.variable_names, (std::vector<std::string>{"x1", "x2", "x3"}));
  EXPECT_EQ(p.objective.coefficient({2}), -4.0);
  ASSERT_EQ(p.constraints.size(), 2u);
  EXPECT_EQ(p.constraints[0].kind, ConstraintKind::LeqZero);
  EXPECT_EQ(p.constraints[0].poly.coefficient({0}), -1.0);
  EXPECT_EQ(p.constraints[1].kind, ConstraintKind::EqualZero);
  EXPECT_EQ(parse_problem(format_problem(p)), p);
}

TEST(ProblemIo, ReportsLineOfSyntaxError) {
  try {
    parse_problem("min: x1 + x2\nx1 + <= 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_problem("x1 <= 1\n"), ParseError);
  EXPECT_TRUE(looks_like_problem("max: x\n"));
  EXPECT_FALSE(looks_like_problem("n 3\nq 0 1 1\n"));
}

TEST(ProblemIo, JsonRoundTrip) {
  const auto p = parse_problem("min: x + 2 x*y\nx + y <= 1\n");
  EXPECT_EQ(problem_from_json(problem_to_json(p)), p);
}
