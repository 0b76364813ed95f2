#include "qsl2/rmx.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include "qsl2/errors.hpp"

namespace qsl2 {

namespace {

cplx r1_coefficient(int n, const RootData& ctx) {
  const cplx d = ctx.eps - 1.0 / ctx.eps;
  return ctx.eps_pow(static_cast<long long>(n) * (n - 1) / 2) * ipow(d, n) / qfact(n, ctx);
}

cplx tau_of(const Rep& rep, const RootData& ctx) { return Color{rep.z, 0}.tau(ctx); }

}  // namespace

Vec r0_diagonal(const Rep& v, const Rep& w, const RootData& ctx) {
  Vec d(v.dim() * w.dim());
  for (Eigen::Index i = 0; i < v.dim(); ++i) {
    const int p = v.weights[i];
    for (Eigen::Index j = 0; j < w.dim(); ++j) {
      const int q = w.weights[j];
      d(i * w.dim() + j) =
          ctx.t_pow(static_cast<long long>(p) * q) * ipow(v.x, q) * ipow(w.x, p);
    }
  }
  return d;
}

Mat r1_matrix(const Rep& v, const Rep& w, const RootData& ctx) {
  Mat r1 = Mat::Zero(v.dim() * w.dim(), v.dim() * w.dim());
  Mat en = identity(v.dim());
  Mat fn = identity(w.dim());
  for (int n = 0; n < ctx.l; ++n) {
    r1 += r1_coefficient(n, ctx) * kron(en, fn);
    en = en * v.E;
    fn = fn * w.F;
  }
  return r1;
}

Mat r_matrix(const Rep& v, const Rep& w, const RootData& ctx) {
  return r0_diagonal(v, w, ctx).asDiagonal() * r1_matrix(v, w, ctx);
}

cplx rho_scalar(const Color& c1, const Color& c2, const RootData& ctx) {
  return std::exp(cplx(0.0, std::numbers::pi * ctx.m / (2.0 * ctx.l)) * c1.z * c2.z);
}

cplx rho_scalar(const Rep& v, const Rep& w, const RootData& ctx) {
  return rho_scalar(Color{v.z, 0}, Color{w.z, 0}, ctx);
}

Mat braiding(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho) {
  const cplx rho = with_rho ? rho_scalar(v, w, ctx) : cplx(1.0);
  return rho * flip(v.dim(), w.dim()) * r_matrix(v, w, ctx);
}

Mat braiding_inverse(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho) {
  return braiding(v, w, ctx, with_rho).inverse();
}

BraidData braid_data(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho) {
  BraidData d;
  d.rep_v = v;
  d.rep_w = w;
  d.r0 = r0_diagonal(v, w, ctx);
  d.r1 = r1_matrix(v, w, ctx);
  d.rho = with_rho ? rho_scalar(v, w, ctx) : cplx(1.0);
  d.braiding = d.rho * flip(v.dim(), w.dim()) * d.r0.asDiagonal() * d.r1;
  return d;
}

Mat antipode_E(const Rep& rep, const RootData& ctx) {
  return -rep.E * act_K_diagonal(rep, ctx).cwiseInverse().asDiagonal();
}

Mat antipode_F(const Rep& rep, const RootData& ctx) {
  return -(act_K_diagonal(rep, ctx).asDiagonal() * rep.F);
}

Mat drinfeld_element(const Rep& rep, const RootData& ctx) {
  const std::set<int> support(rep.weights.begin(), rep.weights.end());
  const Mat sf = antipode_F(rep, ctx);
  Mat u = Mat::Zero(rep.dim(), rep.dim());
  Mat en = identity(rep.dim());
  Mat sfn = identity(rep.dim());
  for (int n = 0; n < ctx.l; ++n) {
    const cplx cn = r1_coefficient(n, ctx);
    // s = x^i P_j E^n needs j in the support; S(t) = S(F)^n P_{-i} x^{-j}
    // needs -i in the support.
    for (int j : support) {
      const Mat s_part = weight_projector(rep, j) * en;
      for (int minus_i : support) {
        const int i = -minus_i;
        const Mat st_part = sfn * weight_projector(rep, minus_i);
        const cplx coeff = cn * ctx.t_pow(static_cast<long long>(i) * j) * ipow(rep.x, i) *
                           ipow(rep.x, -j);
        u += coeff * st_part * s_part;
      }
    }
    en = en * rep.E;
    sfn = sfn * sf;
  }
  return u;
}

RibbonScalars ribbon_scalars(const Rep& rep, const RootData& ctx) {
  RibbonScalars r;
  r.u_mat = drinfeld_element(rep, ctx);
  const Vec kd = act_K_diagonal(rep, ctx);
  const ScalarPart tt = scalar_part(r.u_mat * kd.cwiseInverse().asDiagonal());
  r.theta_tilde = tt.value;
  r.theta_tilde_residual = tt.residual;
  if (tt.residual > ctx.tol * std::max(1.0, std::abs(tt.value)))
    throw DomainError("u K^-1 is not scalar on this module (residual " +
                      std::to_string(tt.residual) + ")");

  // iota(K)^l is central; on a module of pure parity it is x^{2l} (-1)^k.
  Vec kl_diag(rep.dim());
  for (Eigen::Index i = 0; i < rep.dim(); ++i) kl_diag(i) = ipow(kd(i), ctx.l);
  const ScalarPart kl = scalar_part(Mat(kl_diag.asDiagonal()));
  const cplx tau = tau_of(rep, ctx);
  r.theta1 = kl.value * r.theta_tilde / (tau * tau);
  r.theta2 = r.theta1 * static_cast<double>(central_eps_action(rep));

  Vec piv(rep.dim());
  for (Eigen::Index i = 0; i < rep.dim(); ++i) piv(i) = ipow(kd(i), 1 - ctx.l);
  r.pivot = piv.asDiagonal();
  return r;
}

cplx ribbon_element(const RibbonScalars& scalars, const Rep& rep, const RootData& ctx,
                    ThetaChoice choice, bool with_rho) {
  const cplx theta = choice == ThetaChoice::theta1 ? scalars.theta1 : scalars.theta2;
  if (with_rho) return theta;
  const cplx tau = tau_of(rep, ctx);
  return theta * tau * tau;
}

}  // namespace qsl2
