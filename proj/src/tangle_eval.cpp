#include <algorithm>
#include <numeric>

#include "qsl2/cat.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/tangle.hpp"

namespace qsl2 {

// ---- braid closures ------------------------------------------------------

std::vector<int> braid_permutation(const ColoredBraid& braid) {
  const int n = braid.strands;
  // at[q] = bottom position of the strand currently at position q
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  for (int g : braid.word) {
    const int i = std::abs(g) - 1;
    if (i < 0 || i + 1 >= n) throw DiagramError("braid generator out of range");
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(n);
  for (int q = 0; q < n; ++q) perm[at[q]] = q;
  return perm;
}

std::vector<std::vector<int>> braid_components(const ColoredBraid& braid) {
  const auto perm = braid_permutation(braid);
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < braid.strands; ++p) {
    if (seen[p]) continue;
    std::vector<int> cycle;
    for (int q = p; !seen[q]; q = perm[q]) {
      seen[q] = true;
      cycle.push_back(q);
    }
    std::sort(cycle.begin(), cycle.end());
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<std::string> strand_colors(const ColoredBraid& braid) {
  const auto comps = braid_components(braid);
  std::vector<std::string> out(braid.strands);
  if (braid.colors.size() == comps.size()) {
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int p : comps[c]) out[p] = braid.colors[c];
    return out;
  }
  if (static_cast<int>(braid.colors.size()) == braid.strands) {
    for (const auto& comp : comps)
      for (int p : comp)
        if (braid.colors[p] != braid.colors[comp.front()])
          throw DiagramError("strands " + std::to_string(comp.front() + 1) + " and " +
                             std::to_string(p + 1) + " lie on one component but carry colors '" +
                             braid.colors[comp.front()] + "' and '" + braid.colors[p] + "'");
    return braid.colors;
  }
  throw DiagramError("colors must list one color per component (" + std::to_string(comps.size()) +
                     ") or per strand (" + std::to_string(braid.strands) + ")");
}

std::vector<int> component_twists(const ColoredBraid& braid) {
  const auto comps = braid_components(braid);
  if (braid.twists.empty()) return std::vector<int>(comps.size(), 0);
  if (braid.twists.size() != comps.size())
    throw DiagramError("twists must list one entry per component (" + std::to_string(comps.size()) + ")");
  return braid.twists;
}

namespace {

Piece make_piece(PieceKind kind, int position, std::string color = {}) {
  Piece p;
  p.kind = kind;
  p.position = position;
  p.color = std::move(color);
  return p;
}

void push(TangleDiagram& d, Piece p) {
  Slice s;
  s.pieces.push_back(std::move(p));
  d.slices.push_back(std::move(s));
}

// The braid word plus framing curls, acting on strands that start at leg
// `offset` (0-based).
void push_braid(TangleDiagram& d, const ColoredBraid& braid, int offset) {
  const auto comps = braid_components(braid);
  const auto twists = component_twists(braid);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const PieceKind kind = twists[c] > 0 ? PieceKind::TwistPos : PieceKind::TwistNeg;
    for (int t = 0; t < std::abs(twists[c]); ++t) push(d, make_piece(kind, offset + comps[c].front() + 1));
  }
  for (int g : braid.word)
    push(d, make_piece(g > 0 ? PieceKind::CrossPos : PieceKind::CrossNeg, offset + std::abs(g)));
}

}  // namespace

TangleDiagram cut_component(const ColoredBraid& braid, int component) {
  const auto comps = braid_components(braid);
  if (component < 0 || component >= static_cast<int>(comps.size()))
    throw DiagramError("no component " + std::to_string(component));
  const auto colors = strand_colors(braid);
  const int n = braid.strands;
  const int s = comps[component].front();

  TangleDiagram d;
  d.input = {{colors[s], false}};
  // Left arcs, innermost first: layout becomes D_{s-1} .. D_0 P_0 .. P_s.
  for (int j = s - 1; j >= 0; --j) {
    Piece cup = make_piece(PieceKind::CupR, s - j, colors[j]);
    push(d, cup);
  }
  // Right arcs: P_s P_{s+1} .. P_{n-1} D_{n-1} .. D_{s+1} after the left part.
  for (int j = s + 1; j < n; ++j) push(d, make_piece(PieceKind::CupL, s + j + 1, colors[j]));
  push_braid(d, braid, s);
  for (int j = 0; j < s; ++j) push(d, make_piece(PieceKind::Cap, s - j));
  for (int j = n - 1; j > s; --j) push(d, make_piece(PieceKind::Cap, j - s + 1));
  return d;
}

TangleDiagram closure_diagram(const ColoredBraid& braid) {
  const auto colors = strand_colors(braid);
  const int n = braid.strands;
  TangleDiagram d;
  for (int j = 0; j < n; ++j) push(d, make_piece(PieceKind::CupL, j + 1, colors[j]));
  push_braid(d, braid, 0);
  for (int j = n - 1; j >= 0; --j) push(d, make_piece(PieceKind::Cap, j + 1));
  return d;
}

// ---- evaluation ----------------------------------------------------------

Evaluator::Evaluator(const RootData& ctx, Palette palette, EvalOptions options)
    : ctx_(ctx), palette_(std::move(palette)), options_(options) {}

const Rep& Evaluator::standard(const std::string& color) { return rep({color, false}); }

const Rep& Evaluator::rep(const StrandLabel& leg) {
  const auto key = std::make_pair(leg.color, leg.down);
  if (auto it = reps_.find(key); it != reps_.end()) return it->second;
  const auto pal = palette_.find(leg.color);
  if (pal == palette_.end()) throw DiagramError("undefined color '" + leg.color + "'");
  Rep r = leg.down ? dual_rep(standard(leg.color), ctx_) : build_rep(pal->second, ctx_);
  return reps_.emplace(key, std::move(r)).first->second;
}

cplx Evaluator::ribbon(const StrandLabel& leg) {
  const auto key = std::make_pair(leg.color, leg.down);
  if (auto it = ribbons_.find(key); it != ribbons_.end()) return it->second;
  const Rep& r = rep(leg);
  const cplx theta = ribbon_element(ribbon_scalars(r, ctx_), r, ctx_, options_.theta, options_.rho);
  return ribbons_.emplace(key, theta).first->second;
}

const Mat& Evaluator::crossing(const StrandLabel& a, const StrandLabel& b, bool positive) {
  const auto key = std::make_tuple(a.color, a.down, b.color, b.down, positive);
  if (auto it = crossings_.find(key); it != crossings_.end()) return it->second;
  const Rep& ra = rep(a);
  const Rep& rb = rep(b);
  // Negative crossing on legs (A, B) is the inverse of c_{B,A}.
  Mat m = positive ? braiding(ra, rb, ctx_, options_.rho) : braiding_inverse(rb, ra, ctx_, options_.rho);
  return crossings_.emplace(key, std::move(m)).first->second;
}

namespace {

// Applies `local` to legs [first, first + arity) of the state, where the legs
// before contribute a block of size `left` and those after size `right`.
Mat apply_local(const Mat& state, const Mat& local, Eigen::Index left, Eigen::Index right) {
  const Eigen::Index mi = local.cols();
  const Eigen::Index mo = local.rows();
  Mat out = Mat::Zero(left * mo * right, state.cols());
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index i = 0; i < mi; ++i)
      for (Eigen::Index o = 0; o < mo; ++o) {
        const cplx c = local(o, i);
        if (c == cplx(0.0)) continue;
        out.middleRows((l * mo + o) * right, right) += c * state.middleRows((l * mi + i) * right, right);
      }
  return out;
}

int arity_in(const Piece& p, const std::map<std::string, Coupon>& coupons) {
  switch (p.kind) {
    case PieceKind::CupL:
    case PieceKind::CupR:
      return 0;
    case PieceKind::Id:
    case PieceKind::TwistPos:
    case PieceKind::TwistNeg:
      return 1;
    case PieceKind::CrossPos:
    case PieceKind::CrossNeg:
    case PieceKind::Cap:
      return 2;
    case PieceKind::Coupon: {
      auto it = coupons.find(p.coupon);
      if (it == coupons.end()) throw DiagramError("undefined coupon '" + p.coupon + "'");
      return static_cast<int>(it->second.domain.size());
    }
  }
  return 0;
}

std::string where(const Slice& s, const Piece& p) {
  std::string out = "slice";
  if (s.line > 0) out += " at line " + std::to_string(s.line) + ", column " + std::to_string(p.column);
  return out;
}

}  // namespace

BoundarySignature Evaluator::validate(const TangleDiagram& diagram) { return run(diagram, nullptr); }

Operator Evaluator::evaluate(const TangleDiagram& diagram) {
  Operator op;
  op.domain = diagram.input;
  op.codomain = run(diagram, &op.matrix);
  return op;
}

BoundarySignature Evaluator::run(const TangleDiagram& diagram, Mat* state) {
  BoundarySignature legs = diagram.input;
  for (const auto& leg : legs) rep(leg);

  auto dim_of = [&](const BoundarySignature& sig, std::size_t from, std::size_t to) {
    Eigen::Index d = 1;
    for (std::size_t i = from; i < to; ++i) d *= rep(sig[i]).dim();
    return d;
  };
  if (state) *state = identity(dim_of(legs, 0, legs.size()));

  std::map<std::string, bool> coupon_checked;

  for (const Slice& slice : diagram.slices) {
    const bool boundary = std::all_of(slice.pieces.begin(), slice.pieces.end(),
                                      [](const Piece& p) { return p.kind == PieceKind::Id; });
    if (boundary) {
      BoundarySignature expect;
      for (const auto& p : slice.pieces) expect.push_back({p.color, p.down});
      if (expect != legs)
        throw DiagramError(where(slice, slice.pieces.front()) + ": boundary is " + to_string(legs) +
                           ", slice declares " + to_string(expect));
      continue;
    }

    // Pieces act on disjoint legs of this slice's input. Apply right to left
    // so that positions further left stay valid.
    std::vector<const Piece*> order;
    for (const auto& p : slice.pieces) order.push_back(&p);
    std::vector<std::pair<int, int>> spans;
    for (const Piece* p : order) {
      const int a = arity_in(*p, diagram.coupons);
      const int last = a == 0 ? p->position - 1 : p->position + a - 1;
      if (p->position < 1 || last > static_cast<int>(legs.size()) ||
          (a == 0 && p->position > static_cast<int>(legs.size()) + 1))
        throw DiagramError(where(slice, *p) + ": position " + std::to_string(p->position) +
                           " out of range for boundary " + to_string(legs));
      spans.emplace_back(p->position, a);
    }
    for (std::size_t i = 0; i < spans.size(); ++i)
      for (std::size_t j = i + 1; j < spans.size(); ++j) {
        const auto [pi, ai] = spans[i];
        const auto [pj, aj] = spans[j];
        const bool overlap = (ai == 0 && aj == 0) ? pi == pj
                             : (ai == 0)           ? (pi > pj && pi < pj + aj)
                             : (aj == 0)           ? (pj > pi && pj < pi + ai)
                                                   : (pi < pj + aj && pj < pi + ai);
        if (overlap) throw DiagramError(where(slice, *order[j]) + ": pieces overlap");
      }
    std::vector<std::size_t> idx(order.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (spans[a].first != spans[b].first) return spans[a].first > spans[b].first;
      return spans[a].second > spans[b].second;
    });

    for (std::size_t k : idx) {
      const Piece& p = *order[k];
      const std::size_t at = static_cast<std::size_t>(p.position - 1);
      const int a = spans[k].second;
      BoundarySignature in(legs.begin() + at, legs.begin() + at + a);
      BoundarySignature out;
      Mat local;
      const bool numeric = state != nullptr;

      switch (p.kind) {
        case PieceKind::Id:
          throw DiagramError(where(slice, p) + ": id pieces only appear in boundary slices");
        case PieceKind::CrossPos:
        case PieceKind::CrossNeg:
          out = {in[1], in[0]};
          if (numeric) local = crossing(in[0], in[1], p.kind == PieceKind::CrossPos);
          break;
        case PieceKind::TwistPos:
        case PieceKind::TwistNeg: {
          out = in;
          if (numeric) {
            const cplx theta = ribbon(in[0]);
            const cplx s = p.kind == PieceKind::TwistPos ? 1.0 / theta : theta;
            local = s * identity(rep(in[0]).dim());
          }
          break;
        }
        case PieceKind::CupL:
          out = {{p.color, false}, {p.color, true}};
          if (numeric) local = coev_left(standard(p.color));
          break;
        case PieceKind::CupR:
          out = {{p.color, true}, {p.color, false}};
          if (numeric) local = coev_right(standard(p.color), ctx_);
          break;
        case PieceKind::Cap: {
          if (in[0].color != in[1].color || in[0].down == in[1].down)
            throw DiagramError(where(slice, p) + ": cannot cap legs " + to_string(in[0]) + " and " +
                               to_string(in[1]));
          if (!p.color.empty() && p.color != in[0].color)
            throw DiagramError(where(slice, p) + ": cap names color '" + p.color + "' but legs carry '" +
                               in[0].color + "'");
          if (numeric) {
            const Rep& v = standard(in[0].color);
            local = in[0].down ? ev_left(v) : ev_right(v, ctx_);
          }
          break;
        }
        case PieceKind::Coupon: {
          const Coupon& c = diagram.coupons.at(p.coupon);
          if (c.domain != in)
            throw DiagramError(where(slice, p) + ": coupon '" + p.coupon + "' expects " + to_string(c.domain) +
                               ", boundary has " + to_string(in));
          for (const auto& leg : c.codomain) rep(leg);
          const Eigen::Index rows = dim_of(c.codomain, 0, c.codomain.size());
          const Eigen::Index cols = dim_of(c.domain, 0, c.domain.size());
          if (c.matrix.rows() != rows || c.matrix.cols() != cols)
            throw DiagramError("coupon '" + p.coupon + "' has shape " + std::to_string(c.matrix.rows()) + "x" +
                               std::to_string(c.matrix.cols()) + ", signature needs " + std::to_string(rows) +
                               "x" + std::to_string(cols));
          if (!coupon_checked[p.coupon]) {
            std::vector<Rep> dom, cod;
            for (const auto& leg : c.domain) dom.push_back(rep(leg));
            for (const auto& leg : c.codomain) cod.push_back(rep(leg));
            const double res =
                intertwiner_residual(c.matrix, tensor(dom, ctx_).module, tensor(cod, ctx_).module);
            if (!(res <= ctx_.rel_tol * std::max(1.0, max_abs(c.matrix))))
              throw DiagramError("coupon '" + p.coupon + "' is not an intertwiner (residual " +
                                 std::to_string(res) + ")");
            coupon_checked[p.coupon] = true;
          }
          out = c.codomain;
          if (numeric) local = c.matrix;
          break;
        }
      }

      if (numeric) {
        const Eigen::Index left = dim_of(legs, 0, at);
        const Eigen::Index right = dim_of(legs, at + a, legs.size());
        *state = apply_local(*state, local, left, right);
      }
      legs.erase(legs.begin() + at, legs.begin() + at + a);
      legs.insert(legs.begin() + at, out.begin(), out.end());
    }
  }
  return legs;
}

}  // namespace qsl2
