#pragma once

#include <cstdint>
#include <vector>

#include "qsl2/linalg.hpp"
#include "qsl2/report.hpp"
#include "qsl2/repmod.hpp"
#include "qsl2/rmx.hpp"

namespace qsl2 {

/// Ordered tensor product with the action assembled from the coproduct
///   Delta(E) = E (x) iota(K) + 1 (x) E,  Delta(F) = F (x) 1 + iota(K)^-1 (x) F,
///   Delta(P_k) = sum_{i+j=k} P_i (x) P_j,  Delta(x) = x (x) x.
struct TensorRep {
  std::vector<Rep> factors;
  Rep module;  // label composite; the empty product is the trivial module

  Eigen::Index dim() const { return module.dim(); }
};

TensorRep tensor(const std::vector<Rep>& reps, const RootData& ctx);

/// V* with pi_{V*}(a) = pi_V(S(a))^T.
Rep dual_rep(const Rep& rep, const RootData& ctx);

// ---- morphism spaces ------------------------------------------------------

struct IntertwinerSpace {
  std::vector<Mat> basis;  // Frobenius-orthonormal
  int unknowns = 0;
  int rank = 0;
  Eigen::VectorXd singular_values;
};

/// Solves f pi_X(g) = pi_Y(g) f for g in {E, F} over weight-preserving f,
/// after checking the x-scalars agree. Rank cut: 1e-8 * sigma_max.
IntertwinerSpace solve_intertwiners(const Rep& x, const Rep& y, const RootData& ctx);
std::vector<Mat> intertwiner_space(const Rep& x, const Rep& y, const RootData& ctx);

/// max over g in {E, F} of ||f pi_X(g) - pi_Y(g) f||, plus x-scalar and
/// weight-grading violations.
double intertwiner_residual(const Mat& f, const Rep& x, const Rep& y);

// ---- pivotal structure and traces -----------------------------------------

/// mu_V = pi_V(iota(K)^{1-l}).
Mat pivot(const Rep& rep, const RootData& ctx);

/// Left duality: i_V: C -> V (x) V*, e_V: V* (x) V -> C.
Vec coev_left(const Rep& rep);
Mat ev_left(const Rep& rep);
/// Right duality from the pivot: i~_V(1) = sum e^i (x) mu^-1 e_i in V* (x) V,
/// e~_V(v (x) f) = f(mu v) on V (x) V*.
Vec coev_right(const Rep& rep, const RootData& ctx);
Mat ev_right(const Rep& rep, const RootData& ctx);

/// tr_V(f) = trace(mu_V f).
cplx qtrace(const Mat& f, const Rep& rep, const RootData& ctx);
/// The same trace through e_{V*} o (mu (x) id) o (f (x) id) o i_V.
cplx qtrace_categorical(const Mat& f, const Rep& rep, const RootData& ctx);

/// (id_V (x) tr_U)(f) for f on V (x) U.
Mat partial_qtrace_right(const Mat& f, Eigen::Index dim_v, const Rep& traced,
                         const RootData& ctx);
/// (tr_U (x) id_V)(f) for f on U (x) V.
Mat partial_qtrace_left(const Mat& f, const Rep& traced, Eigen::Index dim_v,
                        const RootData& ctx);

/// Quantum dimension; throws DomainError if it is not zero within tol.
cplx qdim(const Rep& rep, const RootData& ctx);

// ---- S' and modified dimensions ------------------------------------------

/// (id_V (x) tr_U)(c_{U,V} c_{V,U}) as a matrix on V.
Mat sprime_matrix(const Rep& u, const Rep& v, const RootData& ctx, bool with_rho = true);
/// Its scalar; throws DomainError if the matrix is not scalar.
cplx sprime_brute(const Rep& u, const Rep& v, const RootData& ctx, bool with_rho = true);

/// Closed form for S'(V(a,k), V(b,m)), first argument traced. This is the
/// value without the rho factor; with rho the brute force value carries an
/// extra exp(i pi m z_U z_V / l).
cplx sprime_formula(const Color& cu, const Color& cv, const RootData& ctx);

/// d_U(V) = S'(V,U) / S'(U,V). Throws DomainError when |S'(U,V)| < tol.
cplx modified_dim(const Rep& v, const Rep& u, const RootData& ctx, bool with_rho = true);

/// W in A(J): both S'(W,J) and S'(J,W) are nonzero beyond tol.
bool in_ambi_family(const Rep& w, const Rep& j, const RootData& ctx);

// ---- ambidexterity ---------------------------------------------------------

/// Max over `trials` seeded random f in End(V (x) V) of
/// ||(id (x) tr)(f) - (tr (x) id)(f)||.
Report ambi_check(const Rep& rep, int trials, std::uint64_t seed, const RootData& ctx);

/// Residual of
///   S'(U*,V1*) S'(V2,U) c((tr_V1 (x) id)(f)) = S'(V1,U) S'(U*,V2*) c((id (x) tr_V2)(f)),
/// relative to max(1, |lhs|, |rhs|).
struct SIdentityResult {
  cplx lhs;
  cplx rhs;
  double residual = 0.0;
};
SIdentityResult s_iden_check(const Rep& v1, const Rep& v2, const Rep& u, const Mat& f,
                             const RootData& ctx, bool with_rho = true);

// ---- tensor square ---------------------------------------------------------

struct Summand {
  Color color;
  Mat inclusion;   // V(color) -> V (x) V
  Mat projection;  // V (x) V -> V(color)
  int multiplicity_index = 0;
};

struct Decomposition {
  std::vector<Summand> summands;
  bool relaxed_genericity = false;  // a^{8l} = 1 but a^{4l} != 1
};

/// V(a,k) (x) V(a,k) = sum_{i<l} V(a^2, 2k - 2i): highest weight vectors are
/// the E-kernel in each weight space, ordered by descending weight.
Decomposition decompose(const Rep& rep, const RootData& ctx);

}  // namespace qsl2
