#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsl2/report.hpp"
#include "qsl2/tangle.hpp"

namespace qsl2 {

struct CheckConfig {
  int m = 1;
  int l = 3;
  double tol = 1e-9;
  ThetaChoice theta = ThetaChoice::theta1;
  bool rho = true;
  std::uint64_t seed = 1;
};

/// Re z in (-1.5, 1.5), 0.05 <= |Im z| <= 0.3, k in [0, l).
Color random_generic_color(std::mt19937_64& rng, const RootData& ctx);

struct CorpusLink {
  std::string name;
  ColoredBraid braid;  // colors named c0, c1, ... per component
};

/// Unknot, unknot with curls (as twists and as a kink), Hopf link, trefoil,
/// figure-eight and the three-component chain, all as braid closures.
std::vector<CorpusLink> bundled_links();

/// Palette c0..c{n-1} of random generic colors plus a reference color "u".
Palette random_palette(std::mt19937_64& rng, const RootData& ctx, int n);

/// Theta graph on colors c1, c2, c3 (c3 chosen so that the trivalent vertex
/// spaces are one-dimensional), as the (1,1)-tangle open along edge 1, 2 or 3.
/// Coupons are computed with the intertwiner solver.
TangleDiagram theta_graph(Evaluator& evaluator, int open_edge);
/// Colors c1, c2, c3 for theta_graph from two random generic colors.
Palette theta_palette(std::mt19937_64& rng, const RootData& ctx);

/// Signed crossing sum of z_i z_j plus twist contributions: the quadratic
/// form of the framed linking matrix evaluated on the color parameters.
cplx linking_form(const ColoredBraid& braid, const Palette& palette);

/// The complete seeded suite; report order is sorted by check name.
std::vector<Report> run_checks(const CheckConfig& cfg);

}  // namespace qsl2
