#include "qsl2/check.hpp"

#include <algorithm>
#include <cmath>

#include "qsl2/cat.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/rmx.hpp"

namespace qsl2 {

Color random_generic_color(std::mt19937_64& rng, const RootData& ctx) {
  std::uniform_real_distribution<double> re(-1.5, 1.5);
  std::uniform_real_distribution<double> im(0.05, 0.3);
  std::uniform_int_distribution<int> k(0, ctx.l - 1);
  std::bernoulli_distribution sign(0.5);
  const double x = re(rng);
  const double y = sign(rng) ? im(rng) : -im(rng);
  return Color{cplx(x, y), k(rng)};
}

std::vector<CorpusLink> bundled_links() {
  auto link = [](std::string name, int n, std::vector<int> word, int comps, std::vector<int> twists = {}) {
    CorpusLink c;
    c.name = std::move(name);
    c.braid.strands = n;
    c.braid.word = std::move(word);
    for (int i = 0; i < comps; ++i) c.braid.colors.push_back("c" + std::to_string(i));
    c.braid.twists = std::move(twists);
    return c;
  };
  return {
      link("unknot", 1, {}, 1),
      link("unknot_curl_pos", 1, {}, 1, {1}),
      link("unknot_curl_neg", 1, {}, 1, {-1}),
      link("unknot_kink", 2, {1}, 1),
      link("hopf", 2, {1, 1}, 2),
      link("trefoil", 2, {1, 1, 1}, 1),
      link("figure_eight", 3, {1, -2, 1, -2}, 1),
      link("chain3", 3, {1, 1, 2, 2}, 3),
  };
}

Palette random_palette(std::mt19937_64& rng, const RootData& ctx, int n) {
  Palette p;
  for (int i = 0; i < n; ++i) p["c" + std::to_string(i)] = random_generic_color(rng, ctx);
  p["u"] = random_generic_color(rng, ctx);
  return p;
}

Palette theta_palette(std::mt19937_64& rng, const RootData& ctx) {
  Palette p;
  const Color c1 = random_generic_color(rng, ctx);
  const Color c2 = random_generic_color(rng, ctx);
  // c3 is dual to the top summand V(a1 a2, k1 + k2) of V1 (x) V2.
  const Color c3{-(c1.z + c2.z), 2 * ctx.l - 2 - (c1.k + c2.k)};
  p["c1"] = c1;
  p["c2"] = c2;
  p["c3"] = c3;
  p["u"] = random_generic_color(rng, ctx);
  return p;
}

namespace {

Piece piece(PieceKind kind, int position, std::string color = {}, std::string coupon = {}) {
  Piece p;
  p.kind = kind;
  p.position = position;
  p.color = std::move(color);
  p.coupon = std::move(coupon);
  return p;
}

void push(TangleDiagram& d, Piece p) {
  Slice s;
  s.pieces.push_back(std::move(p));
  d.slices.push_back(std::move(s));
}

double rel_diff(const Mat& a, const Mat& b) { return max_abs(a - b) / std::max(1.0, max_abs(a)); }
double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TangleDiagram theta_graph(Evaluator& ev, int open_edge) {
  const RootData& ctx = ev.context();
  const std::vector<Rep> legs = {ev.standard("c1"), ev.standard("c2"), ev.standard("c3")};
  const Rep triple = tensor(legs, ctx).module;
  const Rep unit = tensor({}, ctx).module;
  const auto alpha = intertwiner_space(unit, triple, ctx);
  const auto beta = intertwiner_space(triple, unit, ctx);
  if (alpha.size() != 1 || beta.size() != 1)
    throw DomainError("theta graph vertex spaces have dimensions " + std::to_string(alpha.size()) + " and " +
                      std::to_string(beta.size()) + ", expected 1");

  TangleDiagram d;
  const BoundarySignature sig = {{"c1", false}, {"c2", false}, {"c3", false}};
  d.coupons["alpha"] = Coupon{alpha[0], {}, sig};
  d.coupons["beta"] = Coupon{beta[0], sig, {}};
  switch (open_edge) {
    case 1:
      d.input = {{"c1", false}};
      push(d, piece(PieceKind::CupL, 2, "c2"));
      push(d, piece(PieceKind::CupL, 3, "c3"));
      push(d, piece(PieceKind::Coupon, 1, {}, "beta"));
      push(d, piece(PieceKind::Coupon, 1, {}, "alpha"));
      push(d, piece(PieceKind::Cap, 3));
      push(d, piece(PieceKind::Cap, 2));
      break;
    case 2:
      d.input = {{"c2", false}};
      push(d, piece(PieceKind::CupR, 1, "c1"));
      push(d, piece(PieceKind::CupL, 4, "c3"));
      push(d, piece(PieceKind::Coupon, 2, {}, "beta"));
      push(d, piece(PieceKind::Coupon, 2, {}, "alpha"));
      push(d, piece(PieceKind::Cap, 1));
      push(d, piece(PieceKind::Cap, 2));
      break;
    case 3:
      d.input = {{"c3", false}};
      push(d, piece(PieceKind::CupR, 1, "c2"));
      push(d, piece(PieceKind::CupR, 2, "c1"));
      push(d, piece(PieceKind::Coupon, 3, {}, "beta"));
      push(d, piece(PieceKind::Coupon, 3, {}, "alpha"));
      push(d, piece(PieceKind::Cap, 2));
      push(d, piece(PieceKind::Cap, 1));
      break;
    default:
      throw DiagramError("theta graph has edges 1, 2, 3");
  }
  return d;
}

cplx linking_form(const ColoredBraid& braid, const Palette& palette) {
  const auto colors = strand_colors(braid);
  const auto comps = braid_components(braid);
  const auto twists = component_twists(braid);
  std::vector<std::string> at = colors;
  cplx q = 0.0;
  for (int g : braid.word) {
    const std::size_t i = static_cast<std::size_t>(std::abs(g) - 1);
    const cplx zz = palette.at(at[i]).z * palette.at(at[i + 1]).z;
    q += g > 0 ? zz : -zz;
    std::swap(at[i], at[i + 1]);
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const cplx z = palette.at(colors[comps[c].front()]).z;
    q += static_cast<double>(twists[c]) * z * z;
  }
  return q;
}

namespace {

class Suite {
 public:
  explicit Suite(const CheckConfig& cfg)
      : cfg_(cfg), ctx_(make_root_data(cfg.m, cfg.l, cfg.tol)), rng_(cfg.seed) {}

  std::vector<Report> run() {
    relations();
    r0_lemma();
    quasitriangular();
    yang_baxter();
    drinfeld();
    phi_checks();
    twist_coherence();
    qdim_zero();
    sprime();
    ambidexterity();
    s_identity();
    decomposition();
    duality();
    uprime();
    links();
    theta_graphs();
    return std::move(reports_);
  }

 private:
  Color color() { return random_generic_color(rng_, ctx_); }
  Rep rep() { return build_rep(color(), ctx_); }

  void add(std::string name, std::string anchor, double residual, double threshold,
           nlohmann::json params = nlohmann::json::object()) {
    reports_.push_back(make_report(std::move(name), std::move(anchor), residual, threshold, std::move(params)));
  }

  void relations() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) worst = std::max(worst, relation_residuals(rep(), ctx_).max());
    add("relations", "defining relations of the split form on V(a,k)", worst, 1e-9, {{"colors", 10}});
  }

  void r0_lemma() {
    const Rep u = rep(), v = rep(), w = rep();
    auto r0 = [&](const Rep& a, const Rep& b) { return Mat(r0_diagonal(a, b, ctx_).asDiagonal()); };
    const std::vector<Eigen::Index> dims = {u.dim(), v.dim(), w.dim()};
    const Rep uv = tensor({u, v}, ctx_).module;
    const Rep vw = tensor({v, w}, ctx_).module;
    double res = 0.0;
    // (Delta x id)(R0) = R0_13 R0_23 and (id x Delta)(R0) = R0_13 R0_12
    res = std::max(res, rel_diff(r0(uv, w), embed_pair(r0(u, w), dims, 0, 2) * embed_pair(r0(v, w), dims, 1, 2)));
    res = std::max(res, rel_diff(r0(u, vw), embed_pair(r0(u, w), dims, 0, 2) * embed_pair(r0(u, v), dims, 0, 1)));
    // R0 (E x 1) = (E x K) R0 etc.
    const Mat r = r0(u, v);
    const Mat ku = act_K(u, ctx_), kv = act_K(v, ctx_);
    const Mat iu = identity(u.dim()), iv = identity(v.dim());
    res = std::max(res, rel_diff(r * kron(u.E, iv), kron(u.E, kv) * r));
    res = std::max(res, rel_diff(r * kron(iu, v.E), kron(ku, v.E) * r));
    res = std::max(res, rel_diff(r * kron(u.F, iv), kron(u.F, kv.inverse()) * r));
    res = std::max(res, rel_diff(r * kron(iu, v.F), kron(ku.inverse(), v.F) * r));
    add("r0_lemma", "R0 coproduct and commutation identities", res, 1e-9);
  }

  void quasitriangular() {
    double coprod = 0.0, op = 0.0;
    const int triples = 3;
    for (int i = 0; i < triples; ++i) {
      const Rep u = rep(), v = rep(), w = rep();
      const std::vector<Eigen::Index> dims = {u.dim(), v.dim(), w.dim()};
      const Rep uv = tensor({u, v}, ctx_).module;
      const Rep vw = tensor({v, w}, ctx_).module;
      coprod = std::max(coprod, rel_diff(r_matrix(uv, w, ctx_), embed_pair(r_matrix(u, w, ctx_), dims, 0, 2) *
                                                                   embed_pair(r_matrix(v, w, ctx_), dims, 1, 2)));
      coprod = std::max(coprod, rel_diff(r_matrix(u, vw, ctx_), embed_pair(r_matrix(u, w, ctx_), dims, 0, 2) *
                                                                   embed_pair(r_matrix(u, v, ctx_), dims, 0, 1)));
      const Rep wu = tensor({w, u}, ctx_).module;
      const Rep uw = tensor({u, w}, ctx_).module;
      const Mat r = r_matrix(u, w, ctx_);
      const Mat p = flip(w.dim(), u.dim());  // W (x) U -> U (x) W
      for (const auto& [g_uw, g_wu] : {std::pair{uw.E, wu.E}, std::pair{uw.F, wu.F}}) {
        const Mat delta_op = p * g_wu * p.transpose();
        op = std::max(op, rel_diff(delta_op, r * g_uw * r.inverse()));
      }
    }
    add("quasitriangular_coproduct", "(Delta x id)R = R13 R23, (id x Delta)R = R13 R12", coprod, 1e-8,
        {{"triples", triples}});
    add("quasitriangular_opposite", "Delta^op(g) = R Delta(g) R^-1 for g in {E, F}", op, 1e-8,
        {{"pairs", triples}});
  }

  void yang_baxter() {
    double worst = 0.0;
    const int triples = ctx_.l == 3 ? 5 : 2;
    for (int i = 0; i < triples; ++i) {
      const Rep u = rep(), v = rep(), w = rep();
      const std::vector<Eigen::Index> dims = {u.dim(), v.dim(), w.dim()};
      const Mat r12 = embed_pair(r_matrix(u, v, ctx_), dims, 0, 1);
      const Mat r13 = embed_pair(r_matrix(u, w, ctx_), dims, 0, 2);
      const Mat r23 = embed_pair(r_matrix(v, w, ctx_), dims, 1, 2);
      const Mat lhs = r12 * r13 * r23;
      const Mat rhs = r23 * r13 * r12;
      worst = std::max(worst, (lhs - rhs).norm() / lhs.norm());
    }
    add("yang_baxter", "R12 R13 R23 = R23 R13 R12", worst, 1e-9, {{"triples", triples}});
  }

  void drinfeld() {
    double s2 = 0.0, scalar = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Rep v = rep();
      const RibbonScalars rs = ribbon_scalars(v, ctx_);
      const Mat k = act_K(v, ctx_);
      const Mat uinv = rs.u_mat.inverse();
      for (const Mat* g : {&v.E, &v.F}) {
        const Mat lhs = rs.u_mat * *g * uinv;
        s2 = std::max(s2, rel_diff(lhs, k * *g * k.inverse()));
      }
      scalar = std::max(scalar, rs.theta_tilde_residual / std::max(1.0, std::abs(rs.theta_tilde)));
    }
    add("drinfeld_s2", "S^2(a) = u a u^-1 = K a K^-1", s2, 1e-9, {{"colors", 5}});
    add("theta_tilde_scalar", "u K^-1 acts by a scalar on V(a,k)", scalar, 1e-9, {{"colors", 5}});
  }

  void phi_checks() {
    double tilde = 0.0, theta1 = 0.0, central = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Color c = color();
      const Rep v = build_rep(c, ctx_);
      const Rep w = phi_pullback(v, ctx_);
      const RibbonScalars rv = ribbon_scalars(v, ctx_);
      const RibbonScalars rw = ribbon_scalars(w, ctx_);
      const cplx a = c.a(ctx_);
      tilde = std::max(tilde, rel_diff(rw.theta_tilde, ctx_.eps_pow(2) * ipow(a, 4) * rv.theta_tilde));
      theta1 = std::max(theta1, rel_diff(rw.theta1, rv.theta1));
      // the central element sum (-1)^j P_j acts by (-1)^k
      const int sign = central_eps_action(v);
      central = std::max(central, std::abs(static_cast<double>(sign - ((c.k % 2 == 0) ? 1 : -1))));
    }
    add("phi_theta_tilde", "phi(theta~) = eps^2 x^4 theta~ on the pullback V(a eps, k-2)", tilde, 1e-9);
    add("phi_theta1_invariance", "phi(theta1) = theta1", theta1, 1e-9);
    add("central_eps", "sum (-1)^j P_j acts by (-1)^k", central, 1e-12);
  }

  void twist_coherence() {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Rep v = rep();
      const cplx theta_v = ribbon_element(ribbon_scalars(v, ctx_), v, ctx_, cfg_.theta, cfg_.rho);
      const Mat c = braiding(v, v, ctx_, cfg_.rho);
      const Decomposition dec = decompose(v, ctx_);
      for (const Summand& s : dec.summands) {
        const Rep w = build_rep(s.color, ctx_);
        const cplx theta_w = ribbon_element(ribbon_scalars(w, ctx_), w, ctx_, cfg_.theta, cfg_.rho);
        // Curls act by theta^-1, so the balancing axiom reads
        // theta_{V(x)V} c_{V,V}^2 = theta_V x theta_V on each summand.
        const Mat lhs = theta_w * c * c * s.inclusion;
        const Mat rhs = theta_v * theta_v * s.inclusion;
        worst = std::max(worst, rel_diff(lhs, rhs));
      }
    }
    add("twist_coherence", "theta_{V(x)V} c_{V,V}^2 = theta_V x theta_V on each summand", worst, 1e-9,
        {{"theta", cfg_.theta == ThetaChoice::theta1 ? "theta1" : "theta2"}});
  }

  void qdim_zero() {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Rep v = rep();
      worst = std::max(worst, std::abs(qtrace(identity(v.dim()), v, ctx_)));
    }
    add("qdim_zero", "quantum dimension of a generic module is zero", worst, 1e-10, {{"colors", 20}});
  }

  void sprime() {
    double formula = 0.0, duals = 0.0;
    int pairs = 0;
    for (int k = 0; k <= 2; ++k)
      for (int mm = 0; mm <= 2; ++mm)
        for (int r = 0; r < 3; ++r) {
          Color cu = color(), cv = color();
          cu.k = k;
          cv.k = mm;
          const Rep u = build_rep(cu, ctx_), v = build_rep(cv, ctx_);
          const cplx brute = sprime_brute(u, v, ctx_, false);
          formula = std::max(formula, rel_diff(brute, sprime_formula(cu, cv, ctx_)));
          ++pairs;
        }
    for (int r = 0; r < 3; ++r) {
      const Rep u = rep(), v = rep();
      duals = std::max(duals, rel_diff(sprime_brute(u, v, ctx_, cfg_.rho),
                                       sprime_brute(dual_rep(u, ctx_), dual_rep(v, ctx_), ctx_, cfg_.rho)));
    }
    add("sprime_formula", "closed formula for S'(V(a,k), V(b,m)) against the partial trace", formula, 1e-8,
        {{"pairs", pairs}, {"rho", "off"}});
    add("sprime_dual_symmetry", "S'(U*, V*) = S'(U, V)", duals, 1e-9);
  }

  void ambidexterity() {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Rep v = rep();
      const Report r = ambi_check(v, 20, rng_(), ctx_);
      worst = std::max(worst, r.residual);
    }
    add("ambidexterity", "left and right partial traces agree on End(V (x) V)", worst, 1e-9,
        {{"colors", 5}, {"intertwiners", 20}});
  }

  void s_identity() {
    double worst = 0.0;
    std::normal_distribution<double> g;
    for (int i = 0; i < 10; ++i) {
      const Rep v1 = rep(), v2 = rep(), u = rep();
      const Rep prod = tensor({v1, v2}, ctx_).module;
      const auto basis = intertwiner_space(prod, prod, ctx_);
      Mat f = Mat::Zero(prod.dim(), prod.dim());
      for (const Mat& b : basis) f += cplx(g(rng_), g(rng_)) * b;
      worst = std::max(worst, s_iden_check(v1, v2, u, f, ctx_, cfg_.rho).residual);
    }
    add("s_identity", "S'(U*,V1*) S'(V2,U) c(tr_V1 f) = S'(V1,U) S'(U*,V2*) c(tr_V2 f)", worst, 1e-8,
        {{"configurations", 10}});
  }

  void decomposition() {
    double structure = 0.0, completeness = 0.0, commute = 0.0, braid_commute = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Color c = color();
      const Rep v = build_rep(c, ctx_);
      const Rep vv = tensor({v, v}, ctx_).module;
      const Decomposition dec = decompose(v, ctx_);
      if (static_cast<int>(dec.summands.size()) != ctx_.l) structure = std::max(structure, 1.0);
      Mat sum = Mat::Zero(vv.dim(), vv.dim());
      for (std::size_t s = 0; s < dec.summands.size(); ++s) {
        const Summand& sm = dec.summands[s];
        // multiplicity one: summand colors are pairwise distinct
        for (std::size_t t = 0; t < s; ++t)
          if (dec.summands[t].color == sm.color) structure = std::max(structure, 1.0);
        const Rep w = build_rep(sm.color, ctx_);
        structure = std::max(structure, std::abs(w.x - c.a(ctx_) * c.a(ctx_)));
        structure = std::max(structure, intertwiner_residual(sm.inclusion, w, vv) /
                                            std::max(1.0, max_abs(sm.inclusion)));
        sum += sm.inclusion * sm.projection;
      }
      completeness = std::max(completeness, max_abs(sum - identity(vv.dim())));

      const auto basis = intertwiner_space(vv, vv, ctx_);
      if (static_cast<int>(basis.size()) != ctx_.l) structure = std::max(structure, 1.0);
      const Mat cb = braiding(v, v, ctx_, cfg_.rho);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = a + 1; b < basis.size(); ++b)
          commute = std::max(commute, max_abs(basis[a] * basis[b] - basis[b] * basis[a]));
        braid_commute = std::max(braid_commute, rel_diff(cb * basis[a], basis[a] * cb));
      }
    }
    add("decomposition", "V(a,k)(x)V(a,k) = sum_i V(a^2, 2k-2i): l summands, multiplicity one", structure, 1e-9);
    add("decomposition_completeness", "sum of inclusion o projection = Id", completeness, 1e-9);
    add("end_commutative", "End(V (x) V) is commutative", commute, 1e-9);
    add("braiding_in_center", "c_{V,V} commutes with End(V (x) V)", braid_commute, 1e-9);
  }

  void duality() {
    double maps = 0.0, zigzag = 0.0, traces = 0.0;
    const Rep unit = tensor({}, ctx_).module;
    for (int i = 0; i < 3; ++i) {
      const Color c = color();
      const Rep v = build_rep(c, ctx_);
      const Rep d = dual_rep(v, ctx_);
      const Rep vd = tensor({v, d}, ctx_).module;
      const Rep dv = tensor({d, v}, ctx_).module;
      maps = std::max({maps, intertwiner_residual(coev_left(v), unit, vd), intertwiner_residual(ev_left(v), dv, unit),
                       intertwiner_residual(coev_right(v, ctx_), unit, dv),
                       intertwiner_residual(ev_right(v, ctx_), vd, unit), relation_residuals(d, ctx_).max()});

      Evaluator ev(ctx_, {{"v", c}}, {cfg_.theta, cfg_.rho});
      for (bool left : {true, false}) {
        TangleDiagram zz;
        zz.input = {{"v", false}};
        if (left) {
          push(zz, piece(PieceKind::CupL, 1, "v"));  // (V, V*, V)
          push(zz, piece(PieceKind::Cap, 2));
        } else {
          push(zz, piece(PieceKind::CupR, 2, "v"));  // (V, V*, V)
          push(zz, piece(PieceKind::Cap, 1));
        }
        zigzag = std::max(zigzag, max_abs(ev.evaluate(zz).matrix - identity(v.dim())));
      }
      std::normal_distribution<double> g;
      Mat f(v.dim(), v.dim());
      for (Eigen::Index r = 0; r < f.rows(); ++r)
        for (Eigen::Index s = 0; s < f.cols(); ++s) f(r, s) = cplx(g(rng_), g(rng_));
      traces = std::max(traces, rel_diff(qtrace(f, v, ctx_), qtrace_categorical(f, v, ctx_)));
    }
    add("duality_morphisms", "e_V, i_V, e~_V, i~_V are module maps", maps, 1e-9);
    add("zigzag", "(id x e_V)(i_V x id) = Id_V = (e~_V x id)(id x i~_V)", zigzag, 1e-9);
    add("qtrace_routes", "tr(mu f) equals the categorical trace", traces, 1e-9);
  }

  void uprime() {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Color c = color();
      const Rep v = build_rep(c, ctx_);
      const Rep w = build_rep(Color{c.z - 1.0, c.k + 1}, ctx_);
      const auto f = uprime_intertwiner(v, w, ctx_);
      if (!f) {
        worst = std::max(worst, 1.0);
        continue;
      }
      const Mat kv = act_K(v, ctx_), kw = act_K(w, ctx_);
      worst = std::max({worst, rel_diff(Mat(*f * v.E), Mat(w.E * *f)), rel_diff(Mat(*f * v.F), Mat(w.F * *f)),
                        rel_diff(Mat(*f * kv), Mat(kw * *f))});
    }
    add("uprime_isomorphism", "V(a,k) and V(a t^-1, k+1) are isomorphic as U'-modules", worst, 1e-9);
  }

  void links() {
    double cut = 0.0, closed = 0.0, routes = 0.0, gauss = 0.0, framing = 0.0, curl = 0.0;
    nlohmann::json per_link = nlohmann::json::object();
    for (const CorpusLink& link : bundled_links()) {
      const int comps = static_cast<int>(braid_components(link.braid).size());
      const Palette pal = random_palette(rng_, ctx_, comps);
      Evaluator ev(ctx_, pal, {cfg_.theta, cfg_.rho});
      std::vector<cplx> values;
      for (int c = 0; c < comps; ++c) {
        const InvariantResult r = braid_invariant(link.braid, c, "u", ev);
        values.push_back(r.value);
        // the same (1,1)-tangle through partial traces of the braid operator
        std::vector<Rep> factors;
        for (const auto& name : strand_colors(link.braid)) factors.push_back(ev.standard(name));
        const int open = braid_components(link.braid)[c].front();
        const Mat t = close_except(braid_operator(link.braid, ev), factors, open, ctx_);
        routes = std::max(routes, rel_diff(t, Mat(r.tangle_scalar * identity(t.rows()))));
      }
      double dev = 0.0;
      for (const cplx v : values) dev = std::max(dev, rel_diff(v, values.front()));
      cut = std::max(cut, dev);
      per_link[link.name] = dev;

      // relative to the size of the open tangle it closes up
      const Mat full = ev.evaluate(closure_diagram(link.braid)).matrix;
      const cplx open_scalar = braid_invariant(link.braid, 0, "u", ev).tangle_scalar;
      const double scale = std::abs(open_scalar) * static_cast<double>(ctx_.l);
      closed = std::max(closed, std::abs(full(0, 0)) / std::max(1.0, scale));

      // rho on and off differ by the Gaussian of the framed linking form
      Evaluator on(ctx_, pal, {cfg_.theta, true});
      Evaluator off(ctx_, pal, {cfg_.theta, false});
      const cplx von = braid_invariant(link.braid, 0, "u", on).value;
      const cplx voff = braid_invariant(link.braid, 0, "u", off).value;
      const cplx pi_i(0.0, M_PI);
      const cplx factor = std::exp(pi_i * static_cast<double>(ctx_.m) / (2.0 * ctx_.l) * linking_form(link.braid, pal));
      gauss = std::max(gauss, rel_diff(von, voff * factor));

      // one added positive curl on the cut component multiplies c(T) by theta^-1
      for (ThetaChoice choice : {ThetaChoice::theta1, ThetaChoice::theta2}) {
        Evaluator evc(ctx_, pal, {choice, cfg_.rho});
        ColoredBraid curled = link.braid;
        curled.twists = component_twists(link.braid);
        curled.twists[0] += 1;
        const cplx base = braid_invariant(link.braid, 0, "u", evc).tangle_scalar;
        const cplx more = braid_invariant(curled, 0, "u", evc).tangle_scalar;
        const cplx theta = evc.ribbon({strand_colors(link.braid)[0], false});
        framing = std::max(framing, rel_diff(more, base / theta));
      }
    }

    // a kink in the diagram equals theta1^-1 in either rho mode
    {
      const Palette pal = random_palette(rng_, ctx_, 1);
      for (bool rho : {true, false}) {
        Evaluator ev(ctx_, pal, {ThetaChoice::theta1, rho});
        ColoredBraid kink{2, {1}, {"c0"}, {}, 0};
        const cplx c = braid_invariant(kink, 0, "u", ev).tangle_scalar;
        curl = std::max(curl, rel_diff(c, 1.0 / ev.ribbon({"c0", false})));
        ColoredBraid neg{2, {-1}, {"c0"}, {}, 0};
        const cplx cn = braid_invariant(neg, 0, "u", ev).tangle_scalar;
        curl = std::max(curl, rel_diff(cn, ev.ribbon({"c0", false})));
      }
    }

    // braid relation and far commutation
    double rewrite = 0.0;
    {
      const Palette pal = random_palette(rng_, ctx_, 1);
      Evaluator ev(ctx_, pal, {cfg_.theta, cfg_.rho});
      const std::vector<std::vector<int>> words = {{1, 2, 1, 2}, {2, 1, 2, 2}, {1, 1, 2, 1}};
      std::vector<cplx> vals;
      for (const auto& w : words) vals.push_back(braid_invariant(ColoredBraid{3, w, {"c0"}, {}, 0}, 0, "u", ev).value);
      // Markov stabilization of sigma_1^3 with a compensating curl
      vals.push_back(braid_invariant(ColoredBraid{2, {1, 1, 1}, {"c0"}, {1}, 0}, 0, "u", ev).value);
      for (const cplx v : vals) rewrite = std::max(rewrite, rel_diff(v, vals.front()));
    }
    {
      const Palette pal = random_palette(rng_, ctx_, 2);
      Evaluator ev(ctx_, pal, {cfg_.theta, cfg_.rho});
      const cplx a = braid_invariant(ColoredBraid{4, {1, 3, 2, -1, 3, 2}, {"c0", "c1"}, {}, 0}, 0, "u", ev).value;
      const cplx b = braid_invariant(ColoredBraid{4, {3, 1, 2, 3, -1, 2}, {"c0", "c1"}, {}, 0}, 0, "u", ev).value;
      rewrite = std::max(rewrite, rel_diff(a, b));
    }

    add("cut_independence", "the invariant does not depend on the cut component", cut, 1e-8, per_link);
    add("cut_routes", "slice evaluation agrees with partial traces of the braid operator", routes, 1e-9);
    add("closed_diagram_zero", "closed diagrams evaluate to zero", closed, 1e-9);
    add("rho_linking_gaussian", "rho-on/rho-off ratio is the Gaussian of the framed linking form", gauss, 1e-9);
    add("framing_curl", "a positive curl multiplies the (1,1)-tangle scalar by theta^-1", framing, 1e-9);
    add("kink_is_twist", "a diagram kink acts as theta1^-1", curl, 1e-9);
    add("braid_rewrites", "braid relation, far commutation and stabilization leave the invariant fixed", rewrite,
        1e-9);
  }

  void theta_graphs() {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Palette pal = theta_palette(rng_, ctx_);
      Evaluator ev(ctx_, pal, {cfg_.theta, cfg_.rho});
      std::vector<cplx> values;
      for (int e = 1; e <= 3; ++e) values.push_back(tangle_invariant(theta_graph(ev, e), "u", ev).value);
      for (const cplx v : values) worst = std::max(worst, rel_diff(v, values.front()));
    }
    add("theta_graph_cuts", "theta graph: cutting any edge gives the same value", worst, 1e-8);
  }

  CheckConfig cfg_;
  RootData ctx_;
  std::mt19937_64 rng_;
  std::vector<Report> reports_;
};

}  // namespace

std::vector<Report> run_checks(const CheckConfig& cfg) {
  auto reports = Suite(cfg).run();
  std::sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) { return a.check < b.check; });
  return reports;
}

}  // namespace qsl2
