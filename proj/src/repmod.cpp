#include "qsl2/repmod.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "qsl2/errors.hpp"

namespace qsl2 {

cplx Color::a(const RootData& ctx) const {
  return std::exp(cplx(0.0, std::numbers::pi * ctx.m / (2.0 * ctx.l)) * z);
}

cplx Color::tau(const RootData& ctx) const {
  return std::exp(cplx(0.0, std::numbers::pi * ctx.m / (4.0 * ctx.l)) * z * z);
}

bool operator==(const Color& lhs, const Color& rhs) { return lhs.z == rhs.z && lhs.k == rhs.k; }

std::string to_string(const Color& color) {
  std::ostringstream os;
  os << "(z=" << color.z.real() << (color.z.imag() < 0 ? "-" : "+") << std::abs(color.z.imag())
     << "i, k=" << color.k << ")";
  return os.str();
}

Rep build_rep(const Color& color, const RootData& ctx) {
  const cplx a = color.a(ctx);
  if (!is_generic(a, ctx)) throw DomainError("non-generic color " + to_string(color));

  const int l = ctx.l;
  const int k = color.k;
  Rep rep;
  rep.color = color;
  rep.label = RepLabel::standard;
  rep.x = a;
  rep.z = color.z;
  rep.weights.resize(l);
  for (int i = 0; i < l; ++i) rep.weights[i] = k - 2 * i;

  rep.E = Mat::Zero(l, l);
  rep.F = Mat::Zero(l, l);
  for (int i = 0; i + 1 < l; ++i) rep.F(i + 1, i) = 1.0;

  // E v_{k-2i} = [i] (a^2 eps^{k+1-i} - a^-2 eps^{i-k-1}) / (eps - eps^-1) v_{k-2i+2}
  const cplx a2 = a * a;
  const cplx denom = ctx.eps - 1.0 / ctx.eps;
  for (int i = 1; i < l; ++i) {
    const cplx coeff =
        qint(i, ctx) * (a2 * ctx.eps_pow(k + 1 - i) - ctx.eps_pow(i - k - 1) / a2) / denom;
    rep.E(i - 1, i) = coeff;
  }
  return rep;
}

Mat weight_projector(const Rep& rep, int weight) {
  Mat p = Mat::Zero(rep.dim(), rep.dim());
  for (Eigen::Index i = 0; i < rep.dim(); ++i)
    if (rep.weights[i] == weight) p(i, i) = 1.0;
  return p;
}

Vec act_K_diagonal(const Rep& rep, const RootData& ctx) {
  Vec d(rep.dim());
  const cplx x2 = rep.x * rep.x;
  for (Eigen::Index i = 0; i < rep.dim(); ++i) d(i) = x2 * ctx.eps_pow(rep.weights[i]);
  return d;
}

Mat act_K(const Rep& rep, const RootData& ctx) { return act_K_diagonal(rep, ctx).asDiagonal(); }

double RelationResiduals::max() const {
  return std::max({projector, weight_shift, commutator, k_conjugation, nilpotency});
}

RelationResiduals relation_residuals(const Rep& rep, const RootData& ctx) {
  RelationResiduals r;
  const Eigen::Index n = rep.dim();
  std::vector<int> support = rep.weights;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  Mat sum = Mat::Zero(n, n);
  for (int i : support) {
    const Mat pi = weight_projector(rep, i);
    sum += pi;
    for (int j : support) {
      const Mat pj = weight_projector(rep, j);
      r.projector = std::max(r.projector, max_abs(pi * pj - (i == j ? pi : Mat::Zero(n, n))));
    }
  }
  r.projector = std::max(r.projector, max_abs(sum - identity(n)));

  // Shifts are checked on every weight that can touch the support.
  for (int i : support) {
    for (int j : {i - 2, i, i + 2}) {
      const Mat pj = weight_projector(rep, j);
      const Mat pjm = weight_projector(rep, j - 2);
      const Mat pjp = weight_projector(rep, j + 2);
      r.weight_shift = std::max(r.weight_shift, max_abs(pj * rep.E - rep.E * pjm));
      r.weight_shift = std::max(r.weight_shift, max_abs(pj * rep.F - rep.F * pjp));
    }
  }

  const cplx x2 = rep.x * rep.x;
  const cplx denom = ctx.eps - 1.0 / ctx.eps;
  Mat rhs = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int w = rep.weights[i];
    rhs(i, i) = (x2 * ctx.eps_pow(w) - ctx.eps_pow(-w) / x2) / denom;
  }
  r.commutator = max_abs(rep.E * rep.F - rep.F * rep.E - rhs);

  const Vec kd = act_K_diagonal(rep, ctx);
  const Mat kmat = kd.asDiagonal();
  const Mat kinv = kd.cwiseInverse().asDiagonal();
  r.k_conjugation = std::max(max_abs(kmat * rep.E * kinv - ctx.eps * ctx.eps * rep.E),
                             max_abs(kmat * rep.F * kinv - rep.F / (ctx.eps * ctx.eps)));

  Mat el = identity(n), fl = identity(n);
  for (int i = 0; i < ctx.l; ++i) {
    el = el * rep.E;
    fl = fl * rep.F;
  }
  r.nilpotency = std::max(max_abs(el), max_abs(fl));
  return r;
}

int central_eps_action(const Rep& rep) {
  if (rep.weights.empty()) throw DomainError("central_eps_action on an empty module");
  const int sign = (rep.weights.front() % 2 == 0) ? 1 : -1;
  for (int w : rep.weights)
    if (((w % 2 == 0) ? 1 : -1) != sign)
      throw DomainError("module mixes weight parities; eps is not a scalar on it");
  return sign;
}

Rep phi_pullback(const Rep& rep, const RootData& ctx) {
  if (rep.label != RepLabel::standard) throw DomainError("phi_pullback needs a standard module");
  const Color shifted{rep.color.z + 2.0, rep.color.k - 2};
  if (!is_generic(shifted.a(ctx), ctx))
    throw DomainError("pulled-back color " + to_string(shifted) + " is not generic");

  // (pi o phi)(P_i) = pi(P_{i+2}): a vector of weight w now has weight w - 2.
  Rep out = rep;
  out.color = shifted;
  out.x = rep.x * ctx.eps;
  out.z = rep.z + 2.0;
  for (int& w : out.weights) w -= 2;
  return out;
}

std::optional<Mat> uprime_intertwiner(const Rep& rep1, const Rep& rep2, const RootData& ctx) {
  const Eigen::Index n1 = rep1.dim();
  const Eigen::Index n2 = rep2.dim();
  if (n1 != n2) return std::nullopt;

  // Solve f A1 - A2 f = 0 for A in {E, F, K}; unknown f is n2 x n1, vec'd
  // column-major: vec(f A1) = (A1^T (x) I) vec f, vec(A2 f) = (I (x) A2) vec f.
  const Mat k1 = act_K(rep1, ctx);
  const Mat k2 = act_K(rep2, ctx);
  const std::pair<const Mat*, const Mat*> gens[] = {
      {&rep1.E, &rep2.E}, {&rep1.F, &rep2.F}, {&k1, &k2}};
  Mat system(3 * n1 * n2, n1 * n2);
  Eigen::Index row = 0;
  for (const auto& [g1, g2] : gens) {
    system.middleRows(row, n1 * n2) =
        kron(g1->transpose(), identity(n2)) - kron(identity(n1), *g2);
    row += n1 * n2;
  }
  int rank = 0;
  const Mat kernel = nullspace(system, 1e-8, &rank);
  if (kernel.cols() == 0) return std::nullopt;

  Mat f = Eigen::Map<const Mat>(kernel.col(0).data(), n2, n1);
  if (std::abs(f.determinant()) < ctx.tol) return std::nullopt;
  // Normalize so the first basis vector maps with unit leading coefficient.
  Eigen::Index lead = 0;
  f.col(0).cwiseAbs().maxCoeff(&lead);
  f /= f(lead, 0);
  return f;
}

}  // namespace qsl2
