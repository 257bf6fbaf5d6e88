#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mercerlab/errors.hpp"
#include "mercerlab/spectral.hpp"
#include "oracles.hpp"

using namespace mercerlab;

namespace {

DiscreteOperator disc(const KernelSpec& spec, std::size_t n) {
  return discretize(spec, build_rule(RuleKind::GaussLegendre, n, interval_of(spec)));
}

std::vector<std::vector<double>> to_nested(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

std::vector<KernelSpec> smooth_fixtures() {
  return {BrownianBridge{}, LegendreDecay(20), SlowTraceDecay(20),
          HeatKernel(Boundary::Dirichlet, 0.5, 100), HeatKernel(Boundary::Neumann, 0.5, 100)};
}

}  // namespace

TEST(Eigendecompose, BrownianBridgeRate) {
  const auto d200 = eigendecompose(disc(BrownianBridge{}, 200));
  const auto d400 = eigendecompose(disc(BrownianBridge{}, 400));
  for (std::size_t k = 1; k <= 5; ++k) {
    const double exact = oracle::brownian_bridge_eigenvalue(k);
    const double e200 = std::abs(d200.eigenvalues()[k - 1] - exact) / exact;
    const double e400 = std::abs(d400.eigenvalues()[k - 1] - exact) / exact;
    // Gauss on a kernel with a diagonal kink: second order in 1/n
    EXPECT_LT(e400, 5e-4) << k;
    EXPECT_NEAR(e200 / e400, 4.0, 0.5) << k;
  }
  EXPECT_NEAR(d400.eigenvalues()[0], 0.1013212, 5e-6);
  EXPECT_NEAR(d400.eigenvalues()[1], 0.0253303, 5e-6);
}

TEST(Eigendecompose, HeatEigenvalues) {
  for (auto b : {Boundary::Dirichlet, Boundary::Neumann})
    for (double t : {0.1, 0.5, 1.0}) {
      const auto dec = eigendecompose(disc(HeatKernel(b, t, 100), 200));
      const std::size_t shift = b == Boundary::Neumann ? 1 : 0;
      if (shift) EXPECT_NEAR(dec.eigenvalues()[0], 1.0, 1e-8);
      for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_NEAR(dec.eigenvalues()[k - 1 + shift], std::exp(-static_cast<double>(k * k) * t), 1e-8);
    }
}

TEST(Eigendecompose, IdentityTabulated) {
  const auto rule = build_rule(RuleKind::GaussLegendre, 12, Interval(0.0, 1.0));
  Matrix a(12, 12);
  for (std::size_t i = 0; i < 12; ++i) a(i, i) = 1.0 / rule.weights()[i];
  const auto dec = eigendecompose(discretize(TabulatedKernel(rule, a), rule));
  for (double l : dec.eigenvalues()) EXPECT_NEAR(l, 1.0, 1e-14);
}

TEST(Eigendecompose, RejectsNonsymmetric) {
  const auto rule = build_rule(RuleKind::Midpoint, 2, Interval(0.0, 1.0));
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(eigendecompose(DiscreteOperator(rule, a, false)), InvalidArgument);
}

// Property: for dimension <= 6 the eigenvalues agree with the roots of the
// characteristic polynomial.
TEST(EigenProperty, CharacteristicPolynomialOracle) {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      Matrix a(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = d(rng) + 1.5 * static_cast<double>(i);
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = d(rng);
      }
      const auto eig = symmetric_eigen(a);
      const auto roots = oracle::char_poly_roots(to_nested(a));
      ASSERT_EQ(roots.size(), n);
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(eig.values[k], roots[k], 1e-8) << n;
    }
  }
  // a discretized kernel, through the weighted similarity transform
  const auto op = disc(BrownianBridge{}, 5);
  const auto dec = eigendecompose(op);
  const auto& w = op.rule().weights();
  std::vector<std::vector<double>> b(5, std::vector<double>(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) b[i][j] = std::sqrt(w[i] * w[j]) * op.samples()(i, j);
  const auto roots = oracle::char_poly_roots(b);
  ASSERT_EQ(roots.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(dec.eigenvalues()[k], roots[k], 1e-8);
}

// Property: weighted orthonormality, spectral identity and trace identity on
// every smooth fixture.
TEST(EigenProperty, OrthonormalityAndIdentities) {
  for (const auto& spec : smooth_fixtures()) {
    const auto op = disc(spec, 120);
    const auto dec = eigendecompose(op);
    EXPECT_LE(dec.orthonormality_error(), 1e-10) << describe(spec);
    for (std::size_t k = 1; k < dec.size(); ++k) EXPECT_GE(dec.eigenvalues()[k - 1], dec.eigenvalues()[k]);

    double sum = 0.0;
    for (double l : dec.eigenvalues()) sum += l;
    const double tr = trace_diag(op);
    EXPECT_NEAR(sum, tr, 1e-10 * std::abs(tr)) << describe(spec);

    const double scale = op.samples().max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < dec.size(); i += 7)
      for (std::size_t j = 0; j < dec.size(); j += 5) {
        double s = 0.0;
        for (std::size_t n = 0; n < dec.size(); ++n)
          s += dec.eigenvalues()[n] * dec.eigenfunctions()(i, n) * dec.eigenfunctions()(j, n);
        worst = std::max(worst, std::abs(s - op.samples()(i, j)));
      }
    EXPECT_LE(worst, 1e-8 * scale) << describe(spec);
  }
}

TEST(EigenProperty, Deterministic) {
  for (const auto& spec : smooth_fixtures()) {
    const auto a = eigendecompose(disc(spec, 60));
    const auto b = eigendecompose(disc(spec, 60));
    EXPECT_TRUE(std::equal(a.eigenvalues().begin(), a.eigenvalues().end(), b.eigenvalues().begin()));
    EXPECT_EQ(a.eigenfunctions(), b.eigenfunctions());
  }
}

// Property: a PSD decomposition reconstructs a nonnegative diagonal.
TEST(EigenProperty, PositivityPropagates) {
  for (const auto& spec : smooth_fixtures()) {
    const auto dec = eigendecompose(disc(spec, 60));
    bool psd = true;
    for (double l : dec.eigenvalues()) psd = psd && l >= -dec.clip_tolerance();
    if (!psd) continue;
    const auto grid = EvalGrid::uniform(interval_of(spec), 31);
    for (double x : grid.points())
      EXPECT_GE(mercer_reconstruct(dec, dec.size(), x, x), -1e-10) << describe(spec);
  }
}

TEST(NystromExtend, Examples) {
  const auto bb = eigendecompose(disc(BrownianBridge{}, 100));
  EXPECT_NEAR(nystrom_extend(bb, 0, 0.0), 0.0, 1e-8);
  EXPECT_NEAR(nystrom_extend(bb, 0, 1.0), 0.0, 1e-8);

  const auto heat = eigendecompose(disc(HeatKernel(Boundary::Dirichlet, 0.5, 100), 200));
  EXPECT_NEAR(std::abs(nystrom_extend(heat, 0, std::numbers::pi / 2)), std::sqrt(2.0 / std::numbers::pi), 1e-7);

  for (const auto* dec : {&bb, &heat})
    for (std::size_t i = 0; i < dec->size(); i += 11)
      for (std::size_t n = 0; n < 4; ++n)
        EXPECT_NEAR(nystrom_extend(*dec, n, dec->rule().nodes()[i]), dec->eigenfunctions()(i, n), 1e-8);
}

TEST(NystromExtend, ClippedEigenvalueThrows) {
  const auto dec = eigendecompose(disc(HeatKernel(Boundary::Dirichlet, 1.0, 1), 20));
  EXPECT_NO_THROW((void)nystrom_extend(dec, 0, 1.0));
  EXPECT_TRUE(dec.clipped(1));
  EXPECT_THROW((void)nystrom_extend(dec, 1, 1.0), DegenerateEigenvalue);
  EXPECT_THROW((void)nystrom_extend(dec, 20, 1.0), InvalidArgument);
}

TEST(MercerReconstruct, Examples) {
  const auto bb = eigendecompose(disc(BrownianBridge{}, 400));
  EXPECT_NEAR(mercer_reconstruct(bb, 1, 0.5, 0.5), 2.0 / (std::numbers::pi * std::numbers::pi), 1e-5);
  EXPECT_EQ(mercer_reconstruct(bb, 0, 0.3, 0.6), 0.0);

  const auto heat = eigendecompose(disc(HeatKernel(Boundary::Neumann, 0.5, 100), 80));
  const auto& x = heat.rule().nodes();
  for (std::size_t i = 0; i < 80; i += 9)
    for (std::size_t j = 0; j < 80; j += 13)
      EXPECT_NEAR(mercer_reconstruct(heat, 80, x[i], x[j]), heat.op().samples()(i, j), 1e-8);
}

TEST(MercerReport, FullRankAndTail) {
  const auto bb = eigendecompose(disc(BrownianBridge{}, 200));
  // on nodes and endpoints the full expansion is exact up to roundoff
  const EvalGrid nodes(interval_of(BrownianBridge{}), std::vector<double>(bb.rule().nodes().begin(), bb.rule().nodes().end()));
  const auto full = mercer_report(bb, bb.size(), nodes);
  EXPECT_LE(full.sup_error, 1e-7);
  EXPECT_LE(full.trace_gap, 1e-8);
  EXPECT_GT(full.min_eigenvalue, 0.0);

  // truncated at 10: the diagonal tail is about sum_{k > 10} 2/(k^2 pi^2)
  const auto grid = EvalGrid::uniform(Interval(0.0, 1.0), 101);
  const auto ten = mercer_report(bb, 10, grid);
  EXPECT_LE(ten.diag_tail, 0.0194);
  EXPECT_GT(ten.diag_tail, 0.005);

  // N = 0 reproduces sup |K|
  const auto none = mercer_report(bb, 0, grid);
  EXPECT_NEAR(none.sup_error, 0.25, 1e-15);

  const auto heat = eigendecompose(disc(HeatKernel(Boundary::Dirichlet, 0.5, 100), 200));
  const auto hr = mercer_report(heat, heat.size(), EvalGrid::uniform(Interval(0.0, std::numbers::pi), 101));
  EXPECT_LE(hr.sup_error, 1e-7);
  EXPECT_LE(hr.trace_gap, 1e-10 * trace_diag(heat.op()));

  const auto j = to_json(full);
  for (const char* key : {"terms", "sup_error", "diag_tail", "trace_gap", "min_eigenvalue"})
    EXPECT_TRUE(j.contains(key)) << key;
}

// Off the nodes the full expansion of min(x,y) - xy interpolates between
// nodes like a pinned bridge, so its sup error is bounded by max gap / 4.
TEST(MercerReport, BrownianBridgeOffGridError) {
  const auto bb = eigendecompose(disc(BrownianBridge{}, 200));
  std::vector<double> knots{0.0};
  knots.insert(knots.end(), bb.rule().nodes().begin(), bb.rule().nodes().end());
  knots.push_back(1.0);
  double gap = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) gap = std::max(gap, knots[i] - knots[i - 1]);
  const auto r = mercer_report(bb, bb.size(), EvalGrid::uniform(Interval(0.0, 1.0), 101));
  EXPECT_LE(r.sup_error, gap / 4.0 * (1.0 + 1e-6));
  EXPECT_GT(r.sup_error, 1e-7);
}

TEST(ProductSeries, ConvergesToComposition) {
  const auto basis = eigendecompose(disc(HeatKernel(Boundary::Dirichlet, 0.2, 100), 120));
  const auto op1 = disc(HeatKernel(Boundary::Dirichlet, 0.3, 100), 120);
  const auto op2 = disc(HeatKernel(Boundary::Dirichlet, 0.1, 100), 120);
  const auto few = product_series(basis, op2, op1, 3);
  const auto all = product_series(basis, op2, op1, 120);
  EXPECT_GT(few.sup_error, all.sup_error);
  EXPECT_LE(all.sup_error, 1e-10);
}

TEST(FractionalPower, IdentityAndHalves) {
  for (const auto& spec : {KernelSpec(HeatKernel(Boundary::Neumann, 0.5, 100)), KernelSpec(BrownianBridge{})}) {
    const auto op = disc(spec, 100);
    const auto dec = eigendecompose(op);
    const auto one = fractional_power(dec, 1.0);
    const double scale = op.samples().max_abs();
    for (std::size_t i = 0; i < op.samples().data().size(); ++i)
      EXPECT_NEAR(one.samples().data()[i], op.samples().data()[i], 1e-9 * std::max(scale, 1.0));
    const auto half = fractional_power(dec, 0.5);
    const auto sq = compose(half, half);
    for (std::size_t i = 0; i < op.samples().data().size(); i += 17)
      EXPECT_NEAR(sq.samples().data()[i], op.samples().data()[i], 1e-9 * std::max(scale, 1.0));
    // clipped eigenvalues are dropped from the power
    std::vector<double> kept;
    for (std::size_t n = 0; n < dec.size(); ++n)
      if (!dec.clipped(n)) kept.push_back(dec.eigenvalues()[n]);
    EXPECT_NEAR(trace_diag(half), fractional_trace(kept, 0.5), 1e-10 * trace_diag(half));
  }
}

TEST(FractionalPower, Errors) {
  const auto rule = build_rule(RuleKind::Midpoint, 2, Interval(0.0, 1.0));
  Matrix a(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  const auto dec = eigendecompose(DiscreteOperator(rule, a, true));
  EXPECT_THROW(fractional_power(dec, 0.5), NotPositive);
  const auto ok = eigendecompose(disc(BrownianBridge{}, 10));
  EXPECT_THROW(fractional_power(ok, 0.0), InvalidArgument);
  EXPECT_THROW(fractional_power(ok, -1.0), InvalidArgument);
}

TEST(FractionalTrace, SlowTraceDichotomy) {
  // multiplicity-two spectrum of the slow-trace kernel through the Nystrom route
  const SlowTraceDecay k(100);
  const auto dec = eigendecompose(discretize(k, build_rule(RuleKind::Midpoint, 256, interval_of(k))));
  EXPECT_NEAR(fractional_trace(dec.eigenvalues(), 1.0), 2.0 * oracle::slow_trace_partial_sum(100, 1.0), 1e-10);
  EXPECT_NEAR(fractional_trace(dec.eigenvalues(), 0.5), 2.0 * oracle::slow_trace_partial_sum(100, 0.5), 1e-6);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_NEAR(dec.eigenvalues()[2 * n - 2], SlowTraceDecay::eigenvalue(n), 1e-12);
    EXPECT_NEAR(dec.eigenvalues()[2 * n - 1], SlowTraceDecay::eigenvalue(n), 1e-12);
  }
}

TEST(CoefficientTail, ParsevalAndDecay) {
  const auto op = disc(HeatKernel(Boundary::Dirichlet, 0.5, 100), 100);
  const auto dec = eigendecompose(op);
  const auto grid = EvalGrid::uniform(Interval(0.0, std::numbers::pi), 41);
  double sup = 0.0;
  for (double x : grid.points()) sup = std::max(sup, std::pow(row_l2_norm(op.kernel(), x, op.rule()), 2));
  EXPECT_NEAR(coefficient_tail(dec, 0, grid), sup, 1e-8);

  const auto t1 = eigendecompose(disc(HeatKernel(Boundary::Dirichlet, 1.0, 100), 100));
  EXPECT_LE(coefficient_tail(t1, 4, grid), 1e-13);
  EXPECT_EQ(coefficient_tail(t1, 100, grid), 0.0);
  EXPECT_THROW((void)coefficient_tail(t1, 101, grid), InvalidArgument);
}

TEST(EigenvalueCsv, Layout) {
  std::ostringstream os;
  const std::vector<double> v{0.5, 0.25};
  write_eigenvalue_csv(os, v);
  EXPECT_EQ(os.str(), "index,eigenvalue\n1,0.5\n2,0.25\n");
}
