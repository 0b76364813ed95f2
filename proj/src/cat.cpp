#include "qsl2/cat.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "qsl2/errors.hpp"

namespace qsl2 {

TensorRep tensor(const std::vector<Rep>& reps, const RootData& ctx) {
  TensorRep out;
  out.factors = reps;
  Rep& mod = out.module;
  mod.label = RepLabel::composite;
  mod.weights = {0};
  mod.E = Mat::Zero(1, 1);
  mod.F = Mat::Zero(1, 1);
  mod.x = 1.0;
  mod.z = 0.0;
  for (const Rep& r : reps) {
    const Vec k_prev = act_K_diagonal(mod, ctx);
    const Mat k_next = act_K(r, ctx);
    Mat e = kron(mod.E, k_next) + kron(identity(mod.dim()), r.E);
    Mat f = kron(mod.F, identity(r.dim())) + kron(Mat(k_prev.cwiseInverse().asDiagonal()), r.F);
    std::vector<int> w;
    w.reserve(mod.weights.size() * r.weights.size());
    for (int p : mod.weights)
      for (int q : r.weights) w.push_back(p + q);
    mod.E = std::move(e);
    mod.F = std::move(f);
    mod.weights = std::move(w);
    mod.x *= r.x;
    mod.z += r.z;
  }
  if (reps.size() == 1) {
    mod.color = reps.front().color;
    mod.label = reps.front().label;
  }
  return out;
}

Rep dual_rep(const Rep& rep, const RootData& ctx) {
  Rep d;
  d.color = rep.color;
  d.label = rep.label == RepLabel::dual ? RepLabel::standard : RepLabel::dual;
  if (rep.label == RepLabel::composite) d.label = RepLabel::composite;
  d.E = antipode_E(rep, ctx).transpose();
  d.F = antipode_F(rep, ctx).transpose();
  d.x = 1.0 / rep.x;
  d.z = -rep.z;
  d.weights.reserve(rep.weights.size());
  for (int w : rep.weights) d.weights.push_back(-w);
  return d;
}

namespace {

bool same_x(const Rep& x, const Rep& y, const RootData& ctx) {
  return approx_equal(x.x, y.x, ctx);
}

}  // namespace

IntertwinerSpace solve_intertwiners(const Rep& x, const Rep& y, const RootData& ctx) {
  IntertwinerSpace space;
  if (!same_x(x, y, ctx)) return space;

  const Eigen::Index nx = x.dim();
  const Eigen::Index ny = y.dim();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> unknowns;
  for (Eigen::Index r = 0; r < ny; ++r)
    for (Eigen::Index c = 0; c < nx; ++c)
      if (y.weights[r] == x.weights[c]) unknowns.emplace_back(r, c);
  space.unknowns = static_cast<int>(unknowns.size());
  if (unknowns.empty()) return space;

  // Equation (g, rr, cc): (f g_X - g_Y f)(rr, cc) = 0.
  const Mat* gx[] = {&x.E, &x.F};
  const Mat* gy[] = {&y.E, &y.F};
  Mat system = Mat::Zero(2 * ny * nx, static_cast<Eigen::Index>(unknowns.size()));
  for (int g = 0; g < 2; ++g) {
    const Eigen::Index base = g * ny * nx;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto [r, c] = unknowns[u];
      const auto col = static_cast<Eigen::Index>(u);
      for (Eigen::Index cc = 0; cc < nx; ++cc) system(base + r * nx + cc, col) += (*gx[g])(c, cc);
      for (Eigen::Index rr = 0; rr < ny; ++rr) system(base + rr * nx + c, col) -= (*gy[g])(rr, r);
    }
  }

  const Mat kernel = nullspace(system, 1e-8, &space.rank, &space.singular_values);
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    Mat f = Mat::Zero(ny, nx);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      f(unknowns[u].first, unknowns[u].second) = kernel(static_cast<Eigen::Index>(u), k);
    space.basis.push_back(std::move(f));
  }
  return space;
}

std::vector<Mat> intertwiner_space(const Rep& x, const Rep& y, const RootData& ctx) {
  return solve_intertwiners(x, y, ctx).basis;
}

double intertwiner_residual(const Mat& f, const Rep& x, const Rep& y) {
  double res = std::max(max_abs(f * x.E - y.E * f), max_abs(f * x.F - y.F * f));
  for (Eigen::Index r = 0; r < f.rows(); ++r)
    for (Eigen::Index c = 0; c < f.cols(); ++c)
      if (y.weights[r] != x.weights[c]) res = std::max(res, std::abs(f(r, c)));
  return std::max(res, max_abs(f) * std::abs(x.x - y.x));
}

Mat pivot(const Rep& rep, const RootData& ctx) {
  const Vec kd = act_K_diagonal(rep, ctx);
  Vec p(rep.dim());
  for (Eigen::Index i = 0; i < rep.dim(); ++i) p(i) = ipow(kd(i), 1 - ctx.l);
  return p.asDiagonal();
}

Vec coev_left(const Rep& rep) {
  const Eigen::Index n = rep.dim();
  Vec v = Vec::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0;
  return v;
}

Mat ev_left(const Rep& rep) { return coev_left(rep).transpose(); }

Vec coev_right(const Rep& rep, const RootData& ctx) {
  const Eigen::Index n = rep.dim();
  const Mat ginv = pivot(rep, ctx).inverse();
  Vec v = Vec::Zero(n * n);
  // sum_i e^i (x) g^-1 e_i: component (i, j) = (g^-1)_{j i}
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = ginv(j, i);
  return v;
}

Mat ev_right(const Rep& rep, const RootData& ctx) {
  const Eigen::Index n = rep.dim();
  const Mat g = pivot(rep, ctx);
  Mat row = Mat::Zero(1, n * n);
  // e_j (x) e^i -> e^i(g e_j) = g_{i j}
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) row(0, j * n + i) = g(i, j);
  return row;
}

cplx qtrace(const Mat& f, const Rep& rep, const RootData& ctx) {
  if (f.rows() != rep.dim() || f.cols() != rep.dim())
    throw std::invalid_argument("qtrace: operator shape does not match the module");
  return (pivot(rep, ctx) * f).trace();
}

cplx qtrace_categorical(const Mat& f, const Rep& rep, const RootData& ctx) {
  if (f.rows() != rep.dim() || f.cols() != rep.dim())
    throw std::invalid_argument("qtrace: operator shape does not match the module");
  const Eigen::Index n = rep.dim();
  // e_{V*} on V** (x) V* with V** identified with V as a vector space.
  const Vec after = kron(pivot(rep, ctx) * f, identity(n)) * coev_left(rep);
  return (ev_left(rep) * after)(0, 0);
}

Mat partial_qtrace_right(const Mat& f, Eigen::Index dim_v, const Rep& traced,
                         const RootData& ctx) {
  return partial_trace_right(f, dim_v, pivot(traced, ctx));
}

Mat partial_qtrace_left(const Mat& f, const Rep& traced, Eigen::Index dim_v,
                        const RootData& ctx) {
  return partial_trace_left(f, pivot(traced, ctx).inverse(), dim_v);
}

cplx qdim(const Rep& rep, const RootData& ctx) {
  const cplx d = qtrace(identity(rep.dim()), rep, ctx);
  if (std::abs(d) >= ctx.tol)
    throw DomainError("quantum dimension is nonzero (" + std::to_string(std::abs(d)) + ")");
  return d;
}

Mat sprime_matrix(const Rep& u, const Rep& v, const RootData& ctx, bool with_rho) {
  const Mat double_braid = braiding(u, v, ctx, with_rho) * braiding(v, u, ctx, with_rho);
  return partial_qtrace_right(double_braid, v.dim(), u, ctx);
}

cplx sprime_brute(const Rep& u, const Rep& v, const RootData& ctx, bool with_rho) {
  const ScalarPart s = scalar_part(sprime_matrix(u, v, ctx, with_rho));
  if (s.residual > ctx.tol * std::max(1.0, std::abs(s.value)))
    throw DomainError("S' is not a scalar (residual " + std::to_string(s.residual) + ")");
  return s.value;
}

cplx sprime_formula(const Color& cu, const Color& cv, const RootData& ctx) {
  const int l = ctx.l;
  const int k = cu.k;
  const int mv = cv.k;
  const cplx a = cu.a(ctx);
  const cplx b = cv.a(ctx);
  const cplx e = ctx.eps_pow(mv + 1 - l) * b * b;
  if (std::abs(e * e - 1.0) <= ctx.tol)
    throw DomainError("S' formula denominator vanishes: non-generic pairing");
  const double sign = ((mv + l - 1) % 2 == 0) ? 1.0 : -1.0;
  return ctx.eps_pow(static_cast<long long>(k + 1 - l) * (mv + 1 - l)) * ipow(b, 2 * k - 2 * l + 2) *
         ipow(a, 2 * mv - 2 * l + 2) * sign * (ipow(b, 2 * l) - ipow(b, -2 * l)) / (e - 1.0 / e);
}

cplx modified_dim(const Rep& v, const Rep& u, const RootData& ctx, bool with_rho) {
  const cplx s_uv = sprime_brute(u, v, ctx, with_rho);
  if (std::abs(s_uv) < ctx.tol) throw DomainError("S'(U,V) vanishes: color excluded");
  return sprime_brute(v, u, ctx, with_rho) / s_uv;
}

bool in_ambi_family(const Rep& w, const Rep& j, const RootData& ctx) {
  return std::abs(sprime_brute(w, j, ctx)) > ctx.tol && std::abs(sprime_brute(j, w, ctx)) > ctx.tol;
}

Report ambi_check(const Rep& rep, int trials, std::uint64_t seed, const RootData& ctx) {
  const Rep vv = tensor({rep, rep}, ctx).module;
  const std::vector<Mat> basis = intertwiner_space(vv, vv, ctx);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat f = Mat::Zero(vv.dim(), vv.dim());
    for (const Mat& b : basis) f += cplx(normal(rng), normal(rng)) * b;
    const Mat right = partial_qtrace_right(f, rep.dim(), rep, ctx);
    const Mat left = partial_qtrace_left(f, rep, rep.dim(), ctx);
    worst = std::max(worst, max_abs(right - left));
  }
  return make_report("ambidexterity", "left and right partial traces agree on End(V (x) V)",
                     worst, ctx.tol,
                     {{"trials", trials}, {"seed", seed}, {"dim_end", basis.size()},
                      {"z", {rep.z.real(), rep.z.imag()}}, {"k", rep.color.k}});
}

SIdentityResult s_iden_check(const Rep& v1, const Rep& v2, const Rep& u, const Mat& f,
                             const RootData& ctx, bool with_rho) {
  const ScalarPart c1 = scalar_part(partial_qtrace_right(f, v1.dim(), v2, ctx));
  const ScalarPart c2 = scalar_part(partial_qtrace_left(f, v1, v2.dim(), ctx));
  const double scale = std::max({1.0, std::abs(c1.value), std::abs(c2.value)});
  if (c1.residual > ctx.tol * scale || c2.residual > ctx.tol * scale)
    throw DomainError("partial trace is not scalar: V1 or V2 is not simple");

  const Rep ud = dual_rep(u, ctx);
  SIdentityResult r;
  r.lhs = sprime_brute(ud, dual_rep(v1, ctx), ctx, with_rho) * sprime_brute(v2, u, ctx, with_rho) *
          c2.value;
  r.rhs = sprime_brute(v1, u, ctx, with_rho) * sprime_brute(ud, dual_rep(v2, ctx), ctx, with_rho) *
          c1.value;
  r.residual = std::abs(r.lhs - r.rhs) / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  return r;
}

Decomposition decompose(const Rep& rep, const RootData& ctx) {
  Decomposition out;
  const cplx a = rep.x;
  if (!is_generic(a, ctx)) throw DomainError("decompose needs a generic module");
  if (std::abs(ipow(a, 8LL * ctx.l) - 1.0) <= ctx.tol) out.relaxed_genericity = true;

  const int l = ctx.l;
  const int k = rep.color.k;
  const Rep vv = tensor({rep, rep}, ctx).module;
  const Eigen::Index n = vv.dim();

  Mat change(n, n);
  for (int i = 0; i < l; ++i) {
    const int weight = 2 * k - 2 * i;
    std::vector<Eigen::Index> idx;
    for (Eigen::Index r = 0; r < n; ++r)
      if (vv.weights[r] == weight) idx.push_back(r);
    Mat restricted(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      restricted.col(static_cast<Eigen::Index>(c)) = vv.E.col(idx[c]);
    const Mat ker = nullspace(restricted, 1e-8);
    if (ker.cols() != 1)
      throw DomainError("degenerate decomposition at weight " + std::to_string(weight) +
                        ": non-generic input");

    Vec h = Vec::Zero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) h(idx[c]) = ker(static_cast<Eigen::Index>(c), 0);
    // Fix the phase: first significant component real positive.
    const double big = h.cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(h(r)) > 1e-6 * big) {
        h *= std::abs(h(r)) / h(r);
        break;
      }
    }
    h.normalize();

    Summand s;
    s.color = Color{2.0 * rep.color.z, weight};
    s.multiplicity_index = 0;
    s.inclusion = Mat(n, l);
    Vec col = h;
    for (int j = 0; j < l; ++j) {
      s.inclusion.col(j) = col;
      col = vv.F * col;
    }
    change.middleCols(static_cast<Eigen::Index>(i) * l, l) = s.inclusion;
    out.summands.push_back(std::move(s));
  }

  Eigen::PartialPivLU<Mat> lu(change);
  if (lu.rcond() < 1e-12)
    throw DomainError("summands are linearly dependent: non-generic input");
  const Mat inverse = lu.inverse();
  for (int i = 0; i < l; ++i)
    out.summands[i].projection = inverse.middleRows(static_cast<Eigen::Index>(i) * l, l);
  return out;
}

}  // namespace qsl2
