#include <algorithm>

#include "qsl2/cat.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/tangle.hpp"

namespace qsl2 {

namespace {

InvariantResult finish(const Mat& tangle, const std::string& cut_color, const std::string& reference,
                       Evaluator& ev) {
  const RootData& ctx = ev.context();
  const bool rho = ev.options().rho;
  InvariantResult r;
  r.cut_color = cut_color;
  const ScalarPart sp = scalar_part(tangle);
  r.tangle_scalar = sp.value;
  r.scalar_residual = sp.residual;
  if (!(sp.residual <= ctx.rel_tol * std::max(1.0, max_abs(tangle))))
    throw DomainError("the (1,1)-tangle is not a scalar (residual " + std::to_string(sp.residual) + ")");

  const Rep& u = ev.standard(reference);
  const Rep& v = ev.standard(cut_color);
  r.sprime_uv = sprime_brute(u, v, ctx, rho);
  r.sprime_vu = sprime_brute(v, u, ctx, rho);
  if (std::abs(r.sprime_uv) < ctx.tol)
    throw DomainError("S'(" + reference + ", " + cut_color + ") vanishes: color excluded");
  r.value = r.tangle_scalar * r.sprime_vu / r.sprime_uv;
  return r;
}

}  // namespace

InvariantResult braid_invariant(const ColoredBraid& braid, int cut, const std::string& reference,
                                Evaluator& evaluator) {
  const auto colors = strand_colors(braid);
  const auto comps = braid_components(braid);
  if (cut < 0 || cut >= static_cast<int>(comps.size()))
    throw DiagramError("no component " + std::to_string(cut) + " to cut");
  const TangleDiagram d = cut_component(braid, cut);
  const Operator op = evaluator.evaluate(d);
  if (op.codomain != op.domain) throw DiagramError("cut diagram is not a (1,1)-tangle");
  InvariantResult r = finish(op.matrix, colors[comps[cut].front()], reference, evaluator);
  r.cut = cut;
  return r;
}

InvariantResult tangle_invariant(const TangleDiagram& diagram, const std::string& reference,
                                 Evaluator& evaluator) {
  const Operator op = evaluator.evaluate(diagram);
  if (op.domain.size() != 1 || op.codomain != op.domain)
    throw DiagramError("expected a (1,1)-tangle, got " + to_string(op.domain) + " -> " + to_string(op.codomain));
  if (op.domain[0].down)
    throw DiagramError("the open strand of a (1,1)-tangle must point up");
  return finish(op.matrix, op.domain[0].color, reference, evaluator);
}

Mat braid_operator(const ColoredBraid& braid, Evaluator& evaluator) {
  const auto colors = strand_colors(braid);
  const auto comps = braid_components(braid);
  const auto twists = component_twists(braid);
  BoundarySignature legs;
  std::vector<Eigen::Index> dims;
  for (const auto& c : colors) {
    legs.push_back({c, false});
    dims.push_back(evaluator.standard(c).dim());
  }
  Eigen::Index total = 1;
  for (auto d : dims) total *= d;

  cplx framing = 1.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const cplx theta = evaluator.ribbon(legs[comps[c].front()]);
    for (int t = 0; t < std::abs(twists[c]); ++t) framing *= twists[c] > 0 ? 1.0 / theta : theta;
  }
  Mat out = framing * identity(total);
  for (int g : braid.word) {
    const std::size_t i = static_cast<std::size_t>(std::abs(g) - 1);
    const Mat& local = evaluator.crossing(legs[i], legs[i + 1], g > 0);
    out = embed(local, dims, i, 2) * out;
    std::swap(legs[i], legs[i + 1]);
    std::swap(dims[i], dims[i + 1]);
  }
  return out;
}

Mat close_except(const Mat& f, const std::vector<Rep>& factors, int open, const RootData& ctx) {
  const int n = static_cast<int>(factors.size());
  if (open < 0 || open >= n) throw DiagramError("open factor out of range");
  Mat g = f;
  Eigen::Index rest = 1;
  for (int j = 0; j < n; ++j) rest *= factors[j].dim();
  for (int j = n - 1; j > open; --j) {
    rest /= factors[j].dim();
    g = partial_qtrace_right(g, rest, factors[j], ctx);
  }
  for (int j = 0; j < open; ++j) {
    rest /= factors[j].dim();
    g = partial_qtrace_left(g, factors[j], rest, ctx);
  }
  return g;
}

}  // namespace qsl2
