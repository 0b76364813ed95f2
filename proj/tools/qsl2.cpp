// qsl2: verification suite and invariant calculator for quantum sl2 at a root
// of unity.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsl2/cat.hpp"
#include "qsl2/check.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/tangle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qsl2;

namespace {

enum Exit { kPass = 0, kCheckFail = 1, kUsage = 2, kDomain = 3 };

struct Common {
  std::optional<int> m_flag;
  std::optional<int> l_flag;
  double tol = 1e-9;
  std::string theta = "theta1";
  std::string rho = "on";
  std::uint64_t seed = 1;
  std::string json_path;

  int m() const { return m_flag.value_or(1); }
  int l() const { return l_flag.value_or(3); }
  ThetaChoice theta_choice() const { return theta == "theta2" ? ThetaChoice::theta2 : ThetaChoice::theta1; }
  bool rho_on() const { return rho == "on"; }
  EvalOptions eval() const { return {theta_choice(), rho_on()}; }
};

void add_common(CLI::App* app, Common& c, bool with_seed) {
  app->add_option("--m", c.m_flag, "odd positive integer m (default 1)");
  app->add_option("--l", c.l_flag, "odd integer l >= 3 (default 3)");
  app->add_option("--tol", c.tol, "comparison tolerance");
  app->add_option("--theta", c.theta, "ribbon element")->check(CLI::IsMember({"theta1", "theta2"}));
  app->add_option("--rho", c.rho, "include the color-dependent scalar rho in the braiding")
      ->check(CLI::IsMember({"on", "off"}));
  if (with_seed) app->add_option("--seed", c.seed, "random seed");
  app->add_option("--json", c.json_path, "also write the JSON result to this path");
}

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

json color_json(const Color& c) { return {{"z", cjson(c.z)}, {"k", c.k}}; }

Color parse_color(const std::string& spec) {
  // "re,im:k" or "re:k"
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("color must be written re,im:k");
  const std::string zs = spec.substr(0, colon);
  const auto comma = zs.find(',');
  try {
    const double re = std::stod(zs.substr(0, comma));
    const double im = comma == std::string::npos ? 0.0 : std::stod(zs.substr(comma + 1));
    return Color{cplx(re, im), std::stoi(spec.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot read color '" + spec + "'");
  }
}

void emit(const json& out, const Common& c) {
  const std::string text = out.dump(2);
  std::cout << text << "\n";
  if (!c.json_path.empty()) {
    std::ofstream f(c.json_path);
    if (!f) throw ConfigError("cannot write " + c.json_path);
    f << text << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Loaded {
  TangleDocument doc;
  RootData ctx;
};

Loaded load(const std::string& path, const Common& c, const std::string& coupons_flag, bool with_coupons = true) {
  TangleDocument doc = parse(read_file(path));
  // explicit flags win over the file's ctx line
  const int m = c.m_flag ? *c.m_flag : doc.m.value_or(c.m());
  const int l = c.l_flag ? *c.l_flag : doc.l.value_or(c.l());
  RootData ctx = make_root_data(m, l, c.tol);
  std::string coupons = coupons_flag;
  if (coupons.empty() && doc.coupons_path) coupons = (fs::path(path).parent_path() / *doc.coupons_path).string();
  if (auto* d = std::get_if<TangleDiagram>(&doc.body); d && with_coupons && !coupons.empty()) {
    json j;
    try {
      j = json::parse(read_file(coupons));
    } catch (const json::parse_error& e) {
      throw DiagramError(std::string("coupon file: ") + e.what());
    }
    d->coupons = parse_coupons(j);
  }
  return {std::move(doc), ctx};
}

json header(const RootData& ctx, const Common& c) {
  return {{"m", ctx.m}, {"l", ctx.l}, {"tol", ctx.tol}, {"theta", c.theta}, {"rho", c.rho}};
}

int cmd_check(const Common& c) {
  CheckConfig cfg;
  cfg.m = c.m();
  cfg.l = c.l();
  cfg.tol = c.tol;
  cfg.theta = c.theta_choice();
  cfg.rho = c.rho_on();
  cfg.seed = c.seed;
  const RootData ctx = make_root_data(c.m(), c.l(), c.tol);
  json h = header(ctx, c);
  h["seed"] = c.seed;
  const json out = reports_to_json(run_checks(cfg), h);
  emit(out, c);
  return out["pass"].get<bool>() ? kPass : kCheckFail;
}

int cmd_invariant(const Common& c, const std::string& file, const std::string& ref_flag, int cut_flag,
                  bool all_cuts, const std::string& coupons) {
  Loaded in = load(file, c, coupons);
  std::string ref = ref_flag.empty() ? in.doc.reference.value_or("") : ref_flag;
  if (ref.empty()) throw ConfigError("no reference color: add a 'ref' line or pass --ref");
  if (!in.doc.colors.count(ref)) throw ConfigError("undefined reference color '" + ref + "'");
  Evaluator ev(in.ctx, in.doc.colors, c.eval());

  json out = header(in.ctx, c);
  out["reference"] = color_json(in.doc.colors.at(ref));
  out["reference"]["name"] = ref;

  auto residuals = [](const InvariantResult& r) {
    return json{{"scalar", r.scalar_residual}};
  };
  auto describe = [&](const InvariantResult& r) {
    return json{{"invariant", cjson(r.value)},
                {"tangle_scalar", cjson(r.tangle_scalar)},
                {"cut_color", r.cut_color},
                {"sprime_vu", cjson(r.sprime_vu)},
                {"sprime_uv", cjson(r.sprime_uv)}};
  };

  if (const auto* braid = std::get_if<ColoredBraid>(&in.doc.body)) {
    const int cut = cut_flag >= 0 ? cut_flag : braid->cut;
    const InvariantResult main = braid_invariant(*braid, cut, ref, ev);
    out["invariant"] = cjson(main.value);
    out["cut"] = cut;
    out["residuals"] = residuals(main);
    out["detail"] = describe(main);
    if (all_cuts) {
      const int comps = static_cast<int>(braid_components(*braid).size());
      json cuts = json::array();
      double dev = 0.0;
      std::vector<cplx> values;
      for (int k = 0; k < comps; ++k) {
        const InvariantResult r = braid_invariant(*braid, k, ref, ev);
        json item = describe(r);
        item["cut"] = k;
        item["residuals"] = residuals(r);
        cuts.push_back(item);
        values.push_back(r.value);
      }
      for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b) dev = std::max(dev, std::abs(values[a] - values[b]));
      out["cuts"] = cuts;
      out["max_deviation"] = dev;
    }
  } else {
    const auto& d = std::get<TangleDiagram>(in.doc.body);
    const InvariantResult r = tangle_invariant(d, ref, ev);
    out["invariant"] = cjson(r.value);
    out["cut"] = 0;
    out["residuals"] = residuals(r);
    out["detail"] = describe(r);
    if (all_cuts) {
      out["cuts"] = json::array({describe(r)});
      out["max_deviation"] = 0.0;
    }
  }
  emit(out, c);
  return kPass;
}

int cmd_rep(const Common& c, const std::string& color) {
  const RootData ctx = make_root_data(c.m(), c.l(), c.tol);
  const Color col = parse_color(color);
  const Rep v = build_rep(col, ctx);
  const RibbonScalars rs = ribbon_scalars(v, ctx);
  auto mat = [](const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index q = 0; q < m.cols(); ++q) row.push_back(cjson(m(r, q)));
      rows.push_back(row);
    }
    return rows;
  };
  json out = header(ctx, c);
  out["color"] = color_json(col);
  out["a"] = cjson(col.a(ctx));
  out["weights"] = v.weights;
  out["E"] = mat(v.E);
  out["F"] = mat(v.F);
  out["theta_tilde"] = cjson(rs.theta_tilde);
  out["theta1"] = cjson(rs.theta1);
  out["theta2"] = cjson(rs.theta2);
  out["qdim"] = cjson(qtrace(identity(v.dim()), v, ctx));
  out["residuals"] = {{"relations", relation_residuals(v, ctx).max()},
                      {"theta_tilde", rs.theta_tilde_residual}};
  emit(out, c);
  return kPass;
}

int cmd_sprime(const Common& c, const std::string& us, const std::string& vs) {
  const RootData ctx = make_root_data(c.m(), c.l(), c.tol);
  const Color cu = parse_color(us), cv = parse_color(vs);
  const Rep u = build_rep(cu, ctx), v = build_rep(cv, ctx);
  json out = header(ctx, c);
  out["u"] = color_json(cu);
  out["v"] = color_json(cv);
  out["sprime"] = cjson(sprime_brute(u, v, ctx, c.rho_on()));
  out["sprime_rho_off"] = cjson(sprime_brute(u, v, ctx, false));
  out["sprime_formula"] = cjson(sprime_formula(cu, cv, ctx));
  emit(out, c);
  return kPass;
}

int cmd_decompose(const Common& c, const std::string& color) {
  const RootData ctx = make_root_data(c.m(), c.l(), c.tol);
  const Color col = parse_color(color);
  const Decomposition dec = decompose(build_rep(col, ctx), ctx);
  json out = header(ctx, c);
  out["color"] = color_json(col);
  out["summands"] = json::array();
  for (const Summand& s : dec.summands) out["summands"].push_back(color_json(s.color));
  out["relaxed_genericity"] = dec.relaxed_genericity;
  emit(out, c);
  return kPass;
}

BoundarySignature signature(const std::string& list) {
  BoundarySignature sig;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    StrandLabel leg;
    if (item.back() == '*') {
      leg.down = true;
      item.pop_back();
    }
    leg.color = item;
    sig.push_back(leg);
  }
  return sig;
}

int cmd_hom(const Common& c, const std::string& file, const std::string& name, const std::string& dom,
            const std::string& cod, int index) {
  Loaded in = load(file, c, "", false);
  Evaluator ev(in.ctx, in.doc.colors, c.eval());
  Coupon cp;
  cp.domain = signature(dom);
  cp.codomain = signature(cod);
  std::vector<Rep> x, y;
  for (const auto& leg : cp.domain) x.push_back(ev.rep(leg));
  for (const auto& leg : cp.codomain) y.push_back(ev.rep(leg));
  const auto basis = intertwiner_space(tensor(x, in.ctx).module, tensor(y, in.ctx).module, in.ctx);
  if (index < 0 || index >= static_cast<int>(basis.size()))
    throw DomainError("Hom space has dimension " + std::to_string(basis.size()) + ", no basis element " +
                      std::to_string(index));
  cp.matrix = basis[index];
  emit(coupon_to_json(name, cp), c);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum sl2 at a root of unity: module checks and renormalized link invariants"};
  app.require_subcommand(1);

  Common common;

  auto* check = app.add_subcommand("check", "run the seeded verification suite");
  add_common(check, common, true);

  auto* inv = app.add_subcommand("invariant", "renormalized invariant of a braid closure or (1,1)-tangle");
  add_common(inv, common, false);
  std::string file, ref, coupons;
  int cut = -1;
  bool all_cuts = false;
  inv->add_option("file", file, "tangle file")->required();
  inv->add_option("--ref", ref, "reference color name (overrides the file)");
  inv->add_option("--cut", cut, "component to cut (overrides the file)");
  inv->add_flag("--all-cuts", all_cuts, "evaluate every cut and report the largest deviation");
  inv->add_option("--coupons", coupons, "coupon JSON file");

  auto* rep = app.add_subcommand("rep", "matrices and ribbon scalars of V(a,k)");
  add_common(rep, common, false);
  std::string color, other;
  rep->add_option("color", color, "re,im:k")->required();

  auto* sp = app.add_subcommand("sprime", "S'(U,V) by partial trace and closed formula");
  add_common(sp, common, false);
  sp->add_option("u", color, "re,im:k")->required();
  sp->add_option("v", other, "re,im:k")->required();

  auto* dec = app.add_subcommand("decompose", "summands of V (x) V");
  add_common(dec, common, false);
  dec->add_option("color", color, "re,im:k")->required();

  auto* hom = app.add_subcommand("hom", "an intertwiner between tensor products, as coupon JSON");
  add_common(hom, common, false);
  std::string name = "coupon", dom, cod;
  int index = 0;
  hom->add_option("file", file, "tangle file supplying ctx and colors")->required();
  hom->add_option("--name", name, "coupon name");
  hom->add_option("--domain", dom, "comma-separated strand labels, e.g. c1,c2*");
  hom->add_option("--codomain", cod, "comma-separated strand labels");
  hom->add_option("--index", index, "basis element");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*check) return cmd_check(common);
    if (*inv) return cmd_invariant(common, file, ref, cut, all_cuts, coupons);
    if (*rep) return cmd_rep(common, color);
    if (*sp) return cmd_sprime(common, color, other);
    if (*dec) return cmd_decompose(common, color);
    if (*hom) return cmd_hom(common, file, name, dom, cod, index);
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DiagramError& e) {
    std::cerr << "diagram error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
