#pragma once

#include "qsl2/linalg.hpp"
#include "qsl2/repmod.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

enum class ThetaChoice { theta1, theta2 };

/// Diagonal of R0 = sum t^{ij} x^i P_j (x) x^j P_i on V (x) W: the entry on
/// v_p (x) w_q is t^{pq} x_V^q x_W^p.
Vec r0_diagonal(const Rep& v, const Rep& w, const RootData& ctx);

/// R1 = sum_{n<l} eps^{n(n-1)/2} (eps - eps^-1)^n / [n]! E^n (x) F^n.
Mat r1_matrix(const Rep& v, const Rep& w, const RootData& ctx);

/// R = R0 R1 acting on V (x) W.
Mat r_matrix(const Rep& v, const Rep& w, const RootData& ctx);

/// Scalar of rho = Delta(tau) tau^-1 (x) tau^-1 on modules with parameters
/// z1, z2: exp(i pi m z1 z2 / 2l).
cplx rho_scalar(const Color& c1, const Color& c2, const RootData& ctx);
cplx rho_scalar(const Rep& v, const Rep& w, const RootData& ctx);

/// c_{V,W} = flip o (rho R): V (x) W -> W (x) V. With `with_rho` false the
/// plain R-matrix is used.
Mat braiding(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho = true);

/// c_{V,W}^-1: W (x) V -> V (x) W.
Mat braiding_inverse(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho = true);

struct BraidData {
  Rep rep_v;
  Rep rep_w;
  Vec r0;
  Mat r1;
  cplx rho = 1.0;
  Mat braiding;
};
BraidData braid_data(const Rep& v, const Rep& w, const RootData& ctx, bool with_rho = true);

/// u = sum S(t_i) s_i for R = sum s_i (x) t_i, on one module. The monomials
/// t^{ij} c_n x^i P_j E^n (x) x^j P_i F^n are enumerated over the weights that
/// survive the projectors, with S(x) = x^-1, S(P_i) = P_-i, S(F) = -iota(K) F.
Mat drinfeld_element(const Rep& rep, const RootData& ctx);

/// Antipode images of the generators on a module.
Mat antipode_E(const Rep& rep, const RootData& ctx);  // -E iota(K)^-1
Mat antipode_F(const Rep& rep, const RootData& ctx);  // -iota(K) F

struct RibbonScalars {
  Mat u_mat;
  cplx theta_tilde;
  double theta_tilde_residual = 0.0;  // ||u K^-1 - theta_tilde Id||
  cplx theta1;
  cplx theta2;
  Mat pivot;  // iota(K)^{1-l}
};

/// Throws DomainError when u K^-1 is not scalar within tol.
RibbonScalars ribbon_scalars(const Rep& rep, const RootData& ctx);

/// The ribbon element whose inverse is the positive twist on `rep`. With rho
/// on this is theta1 or theta2; with rho off it is tau^2 times that, the
/// element matching the rho-less braiding.
cplx ribbon_element(const RibbonScalars& scalars, const Rep& rep, const RootData& ctx,
                    ThetaChoice choice, bool with_rho = true);

}  // namespace qsl2
