#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qsl2/cat.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/rmx.hpp"

using namespace qsl2;
using namespace testing_helpers;

namespace {

class CatTest : public ::testing::TestWithParam<int> {
 protected:
  RootData ctx = make_root_data(1, GetParam());
  std::mt19937_64 rng{99};
  Rep rep() { return build_rep(random_generic_color(rng, ctx), ctx); }
};

}  // namespace

TEST_P(CatTest, QuantumDimensionVanishes) {
  for (int i = 0; i < 20; ++i) {
    const Rep v = rep();
    // trace of the pivot K^{1-l}, summed by hand
    cplx sum = 0.0;
    const Eigen::VectorXcd k = act_K_diagonal(v, ctx);
    for (int j = 0; j < v.dim(); ++j) sum += ipow(k(j), 1 - ctx.l);
    EXPECT_LT(std::abs(sum), 1e-10);
    EXPECT_LT(std::abs(qtrace(eye(v.dim()), v, ctx)), 1e-10);
  }
}

TEST_P(CatTest, TraceRoutesAgree) {
  const Rep v = rep();
  const Mat f = random_matrix(rng, v.dim(), v.dim());
  EXPECT_LT(rel(qtrace(f, v, ctx), qtrace_categorical(f, v, ctx)), 1e-12);
}

TEST_P(CatTest, ZigZag) {
  const Rep v = rep();
  const Eigen::Index n = v.dim();
  // (id (x) e_V)(i_V (x) id) = id
  const Mat a = kron2(eye(n), ev_left(v)) * kron2(coev_left(v), eye(n));
  EXPECT_LT(rel(a, eye(n)), 1e-12);
  // (e~_V (x) id)(id (x) i~_V) = id
  const Mat b = kron2(ev_right(v, ctx), eye(n)) * kron2(eye(n), coev_right(v, ctx));
  EXPECT_LT(rel(b, eye(n)), 1e-12);
}

TEST_P(CatTest, IntertwinerSpacesOfTensorSquare) {
  const Rep v = rep();
  const Rep vv = tensor({v, v}, ctx).module;
  const auto basis = intertwiner_space(vv, vv, ctx);
  ASSERT_EQ(static_cast<int>(basis.size()), ctx.l);
  for (const Mat& f : basis) EXPECT_LT(intertwiner_residual(f, vv, vv), 1e-9);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      EXPECT_LT(rel(basis[i] * basis[j], basis[j] * basis[i]), 1e-9);
  // distinct simple modules have no maps between them
  EXPECT_TRUE(intertwiner_space(v, rep(), ctx).empty());
}

TEST_P(CatTest, SPrimeFormulaMatchesPartialTrace) {
  for (int k = 0; k <= 2; ++k)
    for (int m = 0; m <= 2; ++m) {
      Color cu = random_generic_color(rng, ctx), cv = random_generic_color(rng, ctx);
      cu.k = k;
      cv.k = m;
      const Rep u = build_rep(cu, ctx), v = build_rep(cv, ctx);
      const cplx brute = sprime_brute(u, v, ctx, false);
      EXPECT_LT(rel(brute, sprime_formula(cu, cv, ctx)), 1e-8) << k << " " << m;
      // rho multiplies the double braiding by exp(i pi m z_U z_V / l)
      const cplx with_rho = sprime_brute(u, v, ctx, true);
      EXPECT_LT(rel(with_rho, brute * std::exp(cplx(0, M_PI) * cu.z * cv.z / static_cast<double>(ctx.l))), 1e-9);
    }
}

TEST_P(CatTest, SPrimeFromExplicitPartialTrace) {
  // (id_V (x) tr_U)(c_{U,V} c_{V,U}) written out with the pivot on U
  const Rep u = rep(), v = rep();
  const Mat dbl = braiding(u, v, ctx) * braiding(v, u, ctx);  // on V (x) U
  const Mat g = pivot(u, ctx);
  const Eigen::Index n = v.dim(), d = u.dim();
  Mat out = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) out(i, j) += g(b, a) * dbl(i * d + a, j * d + b);
  EXPECT_LT(rel(out, sprime_brute(u, v, ctx) * eye(n)), 1e-9);
}

TEST_P(CatTest, SPrimeDualSymmetry) {
  const Rep u = rep(), v = rep();
  EXPECT_LT(rel(sprime_brute(u, v, ctx), sprime_brute(dual_rep(u, ctx), dual_rep(v, ctx), ctx)), 1e-9);
}

TEST_P(CatTest, Ambidexterity) {
  for (int i = 0; i < 5; ++i) {
    const Rep v = rep();
    const Report r = ambi_check(v, 20, 7 + i, ctx);
    EXPECT_TRUE(r.pass) << r.residual;
  }
}

TEST_P(CatTest, AmbidexterityByHand) {
  const Rep v = rep();
  const Rep vv = tensor({v, v}, ctx).module;
  const auto basis = intertwiner_space(vv, vv, ctx);
  Mat f = Mat::Zero(vv.dim(), vv.dim());
  for (const Mat& b : basis) f += random_matrix(rng, 1, 1)(0, 0) * b;
  const Mat g = pivot(v, ctx);
  const Eigen::Index n = v.dim();
  Mat right = Mat::Zero(n, n), left = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
          right(i, j) += g(b, a) * f(i * n + a, j * n + b);
          left(i, j) += g.inverse()(b, a) * f(a * n + i, b * n + j);
        }
  EXPECT_LT(rel(right, left), 1e-9);
}

TEST_P(CatTest, SIdentity) {
  for (int i = 0; i < 5; ++i) {
    const Rep v1 = rep(), v2 = rep(), u = rep();
    const Rep prod = tensor({v1, v2}, ctx).module;
    Mat f = Mat::Zero(prod.dim(), prod.dim());
    for (const Mat& b : intertwiner_space(prod, prod, ctx)) f += random_matrix(rng, 1, 1)(0, 0) * b;
    EXPECT_LT(s_iden_check(v1, v2, u, f, ctx).residual, 1e-8);
  }
}

TEST_P(CatTest, Decomposition) {
  const Color c = random_generic_color(rng, ctx);
  const Rep v = build_rep(c, ctx);
  const Rep vv = tensor({v, v}, ctx).module;
  const Decomposition dec = decompose(v, ctx);
  ASSERT_EQ(static_cast<int>(dec.summands.size()), ctx.l);
  Mat sum = Mat::Zero(vv.dim(), vv.dim());
  for (int i = 0; i < ctx.l; ++i) {
    const Summand& s = dec.summands[i];
    EXPECT_EQ(s.color.k, 2 * c.k - 2 * i);
    EXPECT_NEAR(std::abs(s.color.z - 2.0 * c.z), 0.0, 1e-14);
    const Rep w = build_rep(s.color, ctx);
    EXPECT_NEAR(std::abs(w.x - c.a(ctx) * c.a(ctx)), 0.0, 1e-12);
    EXPECT_LT(intertwiner_residual(s.inclusion, w, vv), 1e-9);
    EXPECT_LT(rel(s.projection * s.inclusion, eye(w.dim())), 1e-9);
    sum += s.inclusion * s.projection;
  }
  EXPECT_LT(rel(sum, eye(vv.dim())), 1e-9);
}

TEST_P(CatTest, QdimAcceptsGenericModules) {
  EXPECT_NO_THROW(qdim(rep(), ctx));
}

INSTANTIATE_TEST_SUITE_P(Orders, CatTest, ::testing::Values(3, 5));
