#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qsl2/linalg.hpp"
#include "qsl2/repmod.hpp"
#include "qsl2/rmx.hpp"

namespace qsl2 {

/// One boundary point of a tangle: a named color and an orientation. A
/// downward strand colored V carries the object V*.
struct StrandLabel {
  std::string color;
  bool down = false;

  friend bool operator==(const StrandLabel&, const StrandLabel&) = default;
};

using BoundarySignature = std::vector<StrandLabel>;

std::string to_string(const StrandLabel& label);
std::string to_string(const BoundarySignature& sig);

enum class PieceKind {
  Id,
  CrossPos,  // c_{A,B} on legs (A, B)
  CrossNeg,  // c_{B,A}^-1 on legs (A, B)
  CupL,      // i_V: C -> V (x) V*
  CupR,      // i~_V: C -> V* (x) V
  Cap,       // e_V on (V*, V) or e~_V on (V, V*), read off the legs
  TwistPos,  // theta^-1
  TwistNeg,  // theta
  Coupon
};

/// Positions are 1-based indices into the boundary at the bottom of the
/// slice. Cups insert their two legs before `position`.
struct Piece {
  PieceKind kind = PieceKind::Id;
  int position = 1;
  std::string color;   // Id, cups, optional check on caps
  bool down = false;   // Id
  std::string coupon;  // Coupon
  int column = 0;
};

struct Slice {
  std::vector<Piece> pieces;
  int line = 0;
};

struct Coupon {
  Mat matrix;
  BoundarySignature domain;
  BoundarySignature codomain;
};

struct TangleDiagram {
  BoundarySignature input;
  std::vector<Slice> slices;
  std::map<std::string, Coupon> coupons;
};

/// Braid on `strands` strands; word entries +-i stand for sigma_i^{+-1}.
/// `colors` lists one color per closure component (components ordered by
/// their least strand index) or one per strand. `twists` adds framing
/// curls per component; `cut` picks the component left open.
struct ColoredBraid {
  int strands = 1;
  std::vector<int> word;
  std::vector<std::string> colors;
  std::vector<int> twists;
  int cut = 0;
};

using Palette = std::map<std::string, Color>;

struct TangleDocument {
  std::optional<int> m;
  std::optional<int> l;
  Palette colors;
  std::optional<std::string> reference;
  std::optional<std::string> coupons_path;
  std::variant<TangleDiagram, ColoredBraid> body;

  bool is_braid() const { return std::holds_alternative<ColoredBraid>(body); }
};

/// Line-oriented DSL:
///   ctx m=<int> l=<int>
///   color <name> z=<re>,<im> k=<int>
///   ref <name>
///   coupons <path>
///   braid n=<int> word=[...] colors=[...] twists=[...] cut=<int>
///   slice <piece>(<args>) ...
/// Throws ParseError with line and column.
TangleDocument parse(std::string_view text);

/// {"name": {"rows", "cols", "entries": [[re, im], ...] row-major,
///           "domain": ["c0", "c1*", ...], "codomain": [...]}}
std::map<std::string, Coupon> parse_coupons(const nlohmann::json& doc);
nlohmann::json coupon_to_json(const std::string& name, const Coupon& coupon);

// ---- braid closures ------------------------------------------------------

/// perm[p] = top position of the strand starting at bottom position p.
std::vector<int> braid_permutation(const ColoredBraid& braid);
/// Closure components as sorted lists of bottom positions, ordered by their
/// least position.
std::vector<std::vector<int>> braid_components(const ColoredBraid& braid);
/// Color name at each bottom position; validates constancy on components.
std::vector<std::string> strand_colors(const ColoredBraid& braid);
/// Twists per component (zeros when unspecified).
std::vector<int> component_twists(const ColoredBraid& braid);

/// The (1,1)-tangle whose closure is the closure of `braid`, open along the
/// least strand of `component`: strands to its left are closed with left
/// arcs, strands to its right with right arcs.
TangleDiagram cut_component(const ColoredBraid& braid, int component);

/// The full closure as a diagram with empty boundary.
TangleDiagram closure_diagram(const ColoredBraid& braid);

// ---- evaluation ----------------------------------------------------------

struct EvalOptions {
  ThetaChoice theta = ThetaChoice::theta1;
  bool rho = true;
};

struct Operator {
  Mat matrix;
  BoundarySignature domain;
  BoundarySignature codomain;
};

/// Evaluates diagrams slice by slice, applying each piece to its legs only.
/// Module matrices, braidings and ribbon scalars are cached per evaluator.
class Evaluator {
 public:
  Evaluator(const RootData& ctx, Palette palette, EvalOptions options = {});

  const RootData& context() const { return ctx_; }
  const EvalOptions& options() const { return options_; }
  const Palette& palette() const { return palette_; }

  const Rep& rep(const StrandLabel& leg);
  const Rep& standard(const std::string& color);
  /// Ribbon element on the object carried by `leg`; positive curls act by
  /// its inverse.
  cplx ribbon(const StrandLabel& leg);
  const Mat& crossing(const StrandLabel& a, const StrandLabel& b, bool positive);

  /// Checks composability and coupons; returns the output boundary.
  BoundarySignature validate(const TangleDiagram& diagram);
  Operator evaluate(const TangleDiagram& diagram);

 private:
  BoundarySignature run(const TangleDiagram& diagram, Mat* state);

  RootData ctx_;
  Palette palette_;
  EvalOptions options_;
  std::map<std::pair<std::string, bool>, Rep> reps_;
  std::map<std::pair<std::string, bool>, cplx> ribbons_;
  std::map<std::tuple<std::string, bool, std::string, bool, bool>, Mat> crossings_;
};

// ---- the renormalized invariant -------------------------------------------

struct InvariantResult {
  cplx value;
  cplx tangle_scalar;
  double scalar_residual = 0.0;
  cplx sprime_vu;  // S'(V, U)
  cplx sprime_uv;  // S'(U, V)
  int cut = 0;
  std::string cut_color;
};

/// c(T_V) * S'(V,U) / S'(U,V) for the (1,1)-tangle cut along `cut`, with U the
/// color named `reference`. Throws DomainError for a non-scalar (1,1)-tangle
/// or when S'(U,V) vanishes.
InvariantResult braid_invariant(const ColoredBraid& braid, int cut, const std::string& reference,
                                Evaluator& evaluator);

/// The same for a (1,1)-tangle given in slice form.
InvariantResult tangle_invariant(const TangleDiagram& diagram, const std::string& reference,
                                 Evaluator& evaluator);

/// The braid as an operator on V_1 (x) ... (x) V_n including framing curls,
/// built from full-space braiding matrices.
Mat braid_operator(const ColoredBraid& braid, Evaluator& evaluator);

/// Closes every tensor factor of `f` except `open` with partial quantum traces
/// (left traces for factors before it, right traces after it).
Mat close_except(const Mat& f, const std::vector<Rep>& factors, int open, const RootData& ctx);

}  // namespace qsl2
