#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qsl2/cat.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/repmod.hpp"

using namespace qsl2;
using namespace testing_helpers;

namespace {

class RepmodTest : public ::testing::TestWithParam<int> {
 protected:
  RootData ctx = make_root_data(1, GetParam());
  std::mt19937_64 rng{17};
};

}  // namespace

TEST_P(RepmodTest, WeightsAndShape) {
  const Rep v = build_rep(Color{cplx(0.3, 0.1), 2}, ctx);
  ASSERT_EQ(v.dim(), ctx.l);
  for (int i = 0; i < ctx.l; ++i) EXPECT_EQ(v.weights[i], 2 - 2 * i);
  // x acts by a = exp(i pi m z / 2l)
  EXPECT_NEAR(std::abs(v.x - std::exp(cplx(0, M_PI) * cplx(0.3, 0.1) / (2.0 * ctx.l))), 0.0, 1e-12);
}

TEST_P(RepmodTest, FLowersAndKillsTheLowestVector) {
  const Rep v = build_rep(Color{cplx(-0.7, 0.2), 1}, ctx);
  for (int i = 0; i + 1 < ctx.l; ++i) EXPECT_NEAR(std::abs(v.F(i + 1, i) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(v.F.col(ctx.l - 1).norm(), 0.0, 1e-15);
  EXPECT_NEAR(v.E.col(0).norm(), 0.0, 1e-15);
}

TEST_P(RepmodTest, CommutatorOnTheHighestVector) {
  // [E, F] v_k = (x^2 eps^k - x^-2 eps^-k)/(eps - eps^-1) v_k, and F v_k = v_{k-2},
  // so E v_{k-2} carries exactly that coefficient.
  for (int k : {0, 1, 4}) {
    const Color c{cplx(0.45, -0.15), k};
    const Rep v = build_rep(c, ctx);
    const cplx a = c.a(ctx);
    const cplx expect = (a * a * ctx.eps_pow(k) - 1.0 / (a * a) * ctx.eps_pow(-k)) / (ctx.eps - 1.0 / ctx.eps);
    EXPECT_NEAR(std::abs(v.E(0, 1) - expect), 0.0, 1e-12) << "k=" << k;
  }
}

TEST_P(RepmodTest, RelationsHoldOnRandomColors) {
  for (int i = 0; i < 10; ++i) {
    const Rep v = build_rep(random_generic_color(rng, ctx), ctx);
    // recompute EF - FE by hand against the weight formula
    const Mat comm = v.E * v.F - v.F * v.E;
    Mat expect = Mat::Zero(v.dim(), v.dim());
    const cplx x2 = v.x * v.x;
    for (int j = 0; j < v.dim(); ++j)
      expect(j, j) = (x2 * ctx.eps_pow(v.weights[j]) - 1.0 / x2 * ctx.eps_pow(-v.weights[j])) /
                     (ctx.eps - 1.0 / ctx.eps);
    EXPECT_LT(rel(comm, expect), 1e-9);
    EXPECT_LT(relation_residuals(v, ctx).max(), 1e-9);
  }
}

TEST_P(RepmodTest, KConjugation) {
  const Rep v = build_rep(Color{cplx(1.1, 0.25), 3}, ctx);
  const Mat k = act_K(v, ctx);
  EXPECT_LT(rel(k * v.E * k.inverse(), ctx.eps * ctx.eps * v.E), 1e-12);
  EXPECT_LT(rel(k * v.F * k.inverse(), v.F / (ctx.eps * ctx.eps)), 1e-12);
}

TEST_P(RepmodTest, NonGenericColorsAreRejected) {
  // a = exp(i pi m z / 2l) with z = 1 gives a^(4l) = 1
  EXPECT_THROW(build_rep(Color{cplx(1.0, 0.0), 0}, ctx), DomainError);
  EXPECT_THROW(build_rep(Color{cplx(0.0, 0.0), 2}, ctx), DomainError);
}

TEST_P(RepmodTest, CentralElementActsByParity) {
  EXPECT_EQ(central_eps_action(build_rep(Color{cplx(0.2, 0.1), 2}, ctx)), 1);
  EXPECT_EQ(central_eps_action(build_rep(Color{cplx(0.2, 0.1), 3}, ctx)), -1);
}

TEST_P(RepmodTest, PhiPullbackIsTheShiftedModule) {
  const Color c{cplx(0.6, 0.05), 2};
  const Rep v = build_rep(c, ctx);
  const Rep w = phi_pullback(v, ctx);
  const Rep direct = build_rep(Color{c.z + 2.0, c.k - 2}, ctx);
  EXPECT_LT(rel(w.E, direct.E), 1e-12);
  EXPECT_LT(rel(w.F, direct.F), 1e-12);
  EXPECT_NEAR(std::abs(w.x - direct.x), 0.0, 1e-12);
  EXPECT_EQ(w.weights, direct.weights);
}

TEST_P(RepmodTest, UPrimeIsomorphismPartner) {
  for (int i = 0; i < 3; ++i) {
    const Color c = random_generic_color(rng, ctx);
    const Rep v = build_rep(c, ctx);
    // K spectra agree for the partner (z - 1, k + 1)
    const Rep w = build_rep(Color{c.z - 1.0, c.k + 1}, ctx);
    Eigen::VectorXcd kv = act_K_diagonal(v, ctx), kw = act_K_diagonal(w, ctx);
    for (int j = 0; j < v.dim(); ++j) EXPECT_NEAR(std::abs(kv(j) - kw(j)), 0.0, 1e-9);
    const auto f = uprime_intertwiner(v, w, ctx);
    ASSERT_TRUE(f.has_value());
    EXPECT_LT(rel(Mat(*f * v.E), Mat(w.E * *f)), 1e-9);
    EXPECT_LT(rel(Mat(*f * v.F), Mat(w.F * *f)), 1e-9);
    EXPECT_GT(std::abs(f->determinant()), 1e-9);
    EXPECT_FALSE(uprime_intertwiner(v, build_rep(Color{c.z + 1.0, c.k + 1}, ctx), ctx).has_value());
    EXPECT_FALSE(uprime_intertwiner(v, build_rep(Color{c.z + 0.5, c.k}, ctx), ctx).has_value());
  }
}

TEST_P(RepmodTest, DualModule) {
  const Rep v = build_rep(Color{cplx(0.3, -0.2), 1}, ctx);
  const Rep d = dual_rep(v, ctx);
  EXPECT_TRUE(d.is_dual());
  EXPECT_NEAR(std::abs(d.x * v.x - 1.0), 0.0, 1e-12);
  for (int i = 0; i < v.dim(); ++i) EXPECT_EQ(d.weights[i], -v.weights[i]);
  EXPECT_LT(relation_residuals(d, ctx).max(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Orders, RepmodTest, ::testing::Values(3, 5));
