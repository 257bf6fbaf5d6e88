#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mercerlab/errors.hpp"
#include "mercerlab/kernels.hpp"
#include "oracles.hpp"

using namespace mercerlab;

namespace {

std::vector<KernelSpec> symmetric_fixtures() {
  return {BrownianBridge{},
          PathologicalProduct(6, true),
          LegendreDecay(20),
          SlowTraceDecay(30),
          HeatKernel(Boundary::Dirichlet, 0.3, 100),
          HeatKernel(Boundary::Neumann, 0.3, 100)};
}

}  // namespace

TEST(Eval, Examples) {
  EXPECT_DOUBLE_EQ(eval(BrownianBridge{}, 0.3, 0.7), 0.09);
  EXPECT_DOUBLE_EQ(eval(PathologicalProduct(6), 0.5, 1.0 / 3.0), 3.0);
  EXPECT_DOUBLE_EQ(eval(PathologicalProduct(1), 0.5, 1.0 / 3.0), 3.0);
  const HeatKernel heat(Boundary::Dirichlet, 0.7, 100);
  for (double y : {0.0, 0.3, 1.0, 2.5, std::numbers::pi}) EXPECT_EQ(eval(heat, 0.0, y), 0.0);
}

TEST(Eval, OutOfIntervalThrows) {
  EXPECT_THROW((void)eval(BrownianBridge{}, -0.1, 0.5), InvalidArgument);
  EXPECT_THROW((void)eval(BrownianBridge{}, 0.5, 1.5), InvalidArgument);
  EXPECT_THROW((void)eval(LegendreDecay(3), 1.01, 0.0), InvalidArgument);
  EXPECT_THROW((void)eval(HeatKernel(Boundary::Neumann, 1.0, 10), 4.0, 0.0), InvalidArgument);
  EXPECT_NO_THROW((void)eval(BrownianBridge{}, 0.0, 1.0));
}

TEST(Constructors, RejectNonPositiveParameters) {
  EXPECT_THROW(PathologicalProduct(0), InvalidArgument);
  EXPECT_THROW(LegendreDecay(0), InvalidArgument);
  EXPECT_THROW(SlowTraceDecay(0), InvalidArgument);
  EXPECT_THROW(HeatKernel(Boundary::Dirichlet, 0.0, 10), InvalidArgument);
  EXPECT_THROW(HeatKernel(Boundary::Dirichlet, -1.0, 10), InvalidArgument);
  EXPECT_THROW(HeatKernel(Boundary::Dirichlet, 1.0, 0), InvalidArgument);
}

TEST(Bump, MatchesIndependentFormula) {
  for (int i = -120; i <= 120; ++i) {
    const double s = i / 100.0;
    EXPECT_NEAR(bump(s), oracle::bump(s), 1e-15) << s;
    EXPECT_GE(bump(s), 0.0);
    EXPECT_LE(bump(s), 1.0);
  }
  EXPECT_EQ(bump(0.5), 1.0);
  EXPECT_EQ(bump(1.0), 0.0);
  EXPECT_EQ(bump_tensor(0.2, -0.4), 1.0);
  EXPECT_EQ(bump_tensor(0.2, 1.4), 0.0);
}

TEST(Bump, L2MassMatchesSimpson) {
  const double c = bump_l2_mass();
  EXPECT_NEAR(c, oracle::bump_l2_mass(), 1e-12);
  EXPECT_GE(c, 1.0);
}

TEST(LegendrePoly, Examples) {
  for (std::size_t n = 0; n <= 50; ++n) EXPECT_NEAR(legendre_poly(n, 1.0), 1.0, 1e-13);
  EXPECT_DOUBLE_EQ(legendre_poly(2, 0.0), -0.5);
  for (double x : {-0.7, 0.0, 0.33}) EXPECT_EQ(legendre_poly(1, x), x);
  // P_3 closed form
  for (double x : {-0.9, -0.2, 0.4, 0.8})
    EXPECT_NEAR(legendre_poly(3, x), 0.5 * (5 * x * x * x - 3 * x), 1e-15);
}

TEST(PathologicalBlock, Examples) {
  EXPECT_EQ(pathological_block(0.5, 6), std::optional<std::size_t>(1));
  EXPECT_EQ(pathological_block(-0.5, 6), std::nullopt);
  EXPECT_EQ(pathological_block(0.26, 6), std::optional<std::size_t>(2));
  EXPECT_EQ(pathological_block(0.0, 6), std::nullopt);
  EXPECT_EQ(pathological_block(0.7, 6), std::nullopt);
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_EQ(pathological_block(std::ldexp(1.0, -static_cast<int>(n)), 6), n);
  EXPECT_EQ(pathological_block(std::ldexp(1.0, -7), 6), std::nullopt);
}

TEST(ProductKernel, PathologicalExamples) {
  const PathologicalProduct k(6);
  const auto dummy = build_rule(RuleKind::GaussLegendre, 2, Interval(-1.0, 1.0));
  const double c = oracle::bump_l2_mass();
  for (int n = 1; n <= 6; ++n) {
    const double p = std::ldexp(1.0, -n);
    EXPECT_NEAR(product_kernel_eval(k, p, p, dummy), c, 1e-9) << n;
    EXPECT_EQ(product_kernel_eval(k, -p, -p, dummy), 0.0);
  }
  EXPECT_EQ(product_kernel_eval(k, 0.0, 0.0, dummy), 0.0);
  // different blocks have disjoint z-supports
  EXPECT_EQ(product_kernel_eval(k, 0.5, 0.25, dummy), 0.0);
}

TEST(ProductKernel, BrownianBridgeAtZero) {
  const auto rule = build_rule(RuleKind::GaussLegendre, 64, Interval(0.0, 1.0));
  EXPECT_EQ(product_kernel_eval(BrownianBridge{}, 0.0, 0.0, rule), 0.0);
  // int_0^1 (min(1/2,y) - y/2)^2 dy = 1/48
  EXPECT_NEAR(product_kernel_eval(BrownianBridge{}, 0.5, 0.5, rule), 1.0 / 48.0, 1e-4);
}

// Property: symmetric variants agree bit for bit under argument swap.
TEST(KernelProperty, Symmetry) {
  for (const auto& spec : symmetric_fixtures()) {
    ASSERT_TRUE(is_symmetric(spec));
    const auto grid = EvalGrid::uniform(interval_of(spec), 41);
    for (double x : grid.points())
      for (double y : grid.points()) ASSERT_EQ(eval(spec, x, y), eval(spec, y, x)) << describe(spec);
  }
  EXPECT_FALSE(is_symmetric(PathologicalProduct(6)));
}

// Property: the pathological kernel's squared row norm never exceeds c_beta.
TEST(KernelProperty, PathologicalRowNormBound) {
  const PathologicalProduct k(6);
  const auto dummy = build_rule(RuleKind::GaussLegendre, 2, Interval(-1.0, 1.0));
  const double c = bump_l2_mass();
  std::vector<double> pts;
  for (int i = 0; i <= 400; ++i) pts.push_back(-1.0 + i / 200.0);
  for (int n = 1; n <= 6; ++n) {
    const double p = std::ldexp(1.0, -n);
    const double r = std::pow(10.0, -n);
    for (double f : {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0}) pts.push_back(p + f * r);
  }
  const EvalGrid grid(Interval(-1.0, 1.0), pts);
  for (double x : grid.points()) EXPECT_LE(product_kernel_eval(k, x, x, dummy), c * (1 + 1e-12)) << x;
}

// Property: Legendre diagonal at 1 tracks the closed-form partial sums and
// increases strictly in N.
TEST(KernelProperty, LegendreDiagonalGrowth) {
  double previous = 0.0;
  for (std::size_t n : {1u, 2u, 5u, 10u, 50u, 100u, 500u, 1000u}) {
    const double d = eval(LegendreDecay(n), 1.0, 1.0);
    EXPECT_NEAR(d, oracle::legendre_diagonal_at_one(n), 1e-12 * d);
    EXPECT_GT(d, previous);
    previous = d;
  }
}

// Property: slow-trace partial traces are Cauchy, square-root traces diverge.
TEST(KernelProperty, SlowTraceSums) {
  double s1_1e3 = 0.0, s1_1e4 = 0.0, sh_1e4 = 0.0;
  for (std::size_t n = 1; n <= 10000; ++n) {
    const double l = SlowTraceDecay::eigenvalue(n);
    EXPECT_NEAR(l, 1.0 / (n * std::pow(std::log(n + 1.0), 2)), 1e-15 * l);
    s1_1e4 += l;
    sh_1e4 += std::sqrt(l);
    if (n == 1000) s1_1e3 = s1_1e4;
  }
  EXPECT_LE(std::abs(s1_1e4 - s1_1e3), 0.1);
  EXPECT_GT(sh_1e4, 10.0);
  EXPECT_NEAR(s1_1e4, oracle::slow_trace_partial_sum(10000, 1.0), 1e-10);
  // diagonal K(x,x) = (1/pi) sum lambda_n
  const SlowTraceDecay k(200);
  EXPECT_NEAR(eval(k, 1.0, 1.0), oracle::slow_trace_partial_sum(200, 1.0) / std::numbers::pi, 1e-12);
}

// Property: truncated heat diagonals stay nonnegative up to roundoff.
TEST(KernelProperty, HeatDiagonalNonnegative) {
  for (auto b : {Boundary::Dirichlet, Boundary::Neumann})
    for (double t : {0.01, 0.1, 1.0, 5.0}) {
      const HeatKernel k(b, t, 100);
      const auto grid = EvalGrid::uniform(interval_of(k), 201);
      for (double x : grid.points()) EXPECT_GE(eval(k, x, x), -1e-10);
    }
}

TEST(Tabulated, CsvRoundTripAndNodeExactness) {
  const auto rule = build_rule(RuleKind::GaussLegendre, 5, Interval(0.0, 1.0));
  Matrix a(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) a(i, j) = eval(BrownianBridge{}, rule.nodes()[i], rule.nodes()[j]);
  std::stringstream ss;
  write_tabulated_csv(ss, rule, a);
  const auto t = read_tabulated_csv(ss);
  EXPECT_TRUE(t.symmetric());
  EXPECT_EQ(t.samples(), a);
  EXPECT_TRUE(t.rule().interval().approx_equal(Interval(0.0, 1.0)));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_EQ(t.eval(rule.nodes()[i], rule.nodes()[j]), a(i, j));
}

TEST(Tabulated, BilinearBetweenNodes) {
  const QuadratureRule rule(Interval(0.0, 2.0), {0.5, 1.5}, {1.0, 1.0});
  Matrix a(2, 2);
  a(0, 0) = 0.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  const TabulatedKernel t(rule, a);
  EXPECT_DOUBLE_EQ(t.eval(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(t.eval(0.0, 0.0), 0.0);  // clamped
  EXPECT_DOUBLE_EQ(t.eval(2.0, 2.0), 2.0);
}

TEST(Tabulated, RejectsMalformedCsv) {
  const char* bad[] = {
      "0.25,0.75\n0.5,0.5\n1,2\n3\n",          // ragged
      "0.25,0.75\n0.5,0.5\n1,2\n",             // missing row
      "0.25,0.75\n0.5,0.5\n1,nan\n2,3\n",      // non-finite
      "0.25,0.75\n0.5,0.5\n1,inf\n2,3\n",
      "0.25,0.75\n0.5,0.5\n1,x\n2,3\n",        // not a number
      "",
  };
  for (const char* text : bad) {
    std::istringstream is(text);
    EXPECT_THROW(read_tabulated_csv(is), InvalidArgument) << text;
  }
  std::istringstream nonsym("0.25,0.75\n0.5,0.5\n0,1\n0,0\n");
  EXPECT_FALSE(read_tabulated_csv(nonsym).symmetric());
}

TEST(Truncation, WithTermsReplacesParameter) {
  EXPECT_EQ(truncation(LegendreDecay(10)), std::optional<std::size_t>(10));
  EXPECT_EQ(truncation(BrownianBridge{}), std::nullopt);
  const auto k = with_terms(HeatKernel(Boundary::Neumann, 1.0, 10), 30);
  EXPECT_EQ(std::get<HeatKernel>(k).modes, 30u);
  EXPECT_TRUE(needs_localized_quadrature(PathologicalProduct(3)));
  EXPECT_FALSE(needs_localized_quadrature(BrownianBridge{}));
}
