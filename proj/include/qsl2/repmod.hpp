#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsl2/linalg.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

/// Label of a simple module V(a, k). The spectral parameter z is primary:
/// a = exp(i pi m z / 2l) and the tau-action exp(i pi m z^2 / 4l) both
/// derive from it, and tau is not a function of a alone.
struct Color {
  cplx z;
  int k = 0;

  cplx a(const RootData& ctx) const;
  cplx tau(const RootData& ctx) const;
};

bool operator==(const Color& lhs, const Color& rhs);

enum class RepLabel { standard, dual, composite };

/// A finite-dimensional module given by matrices. `weights[i]` is the P-weight
/// of basis vector i (P_j acts as the projector onto weight j), x acts by the
/// scalar `x`, and `z` is the parameter with x = exp(i pi m z / 2l) that
/// governs the tau-action. For duals z is negated; for tensor products the
/// factor parameters add.
struct Rep {
  Color color;  // color of the underlying simple module (standard or dual)
  RepLabel label = RepLabel::standard;
  std::vector<int> weights;
  Mat E;
  Mat F;
  cplx x;
  cplx z;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(weights.size()); }
  bool is_dual() const { return label == RepLabel::dual; }
};

/// V(a, k) on the basis v_{k-2i} = F^i v_k, i = 0 .. l-1.
Rep build_rep(const Color& color, const RootData& ctx);

Mat weight_projector(const Rep& rep, int weight);

/// iota(K) = sum_j x^2 eps^j P_j, as a diagonal.
Vec act_K_diagonal(const Rep& rep, const RootData& ctx);
Mat act_K(const Rep& rep, const RootData& ctx);

/// Residuals of the defining relations of the split form on a module.
struct RelationResiduals {
  double projector = 0.0;    // P_i P_j = delta_ij P_i, sum_i P_i = 1
  double weight_shift = 0.0;  // P_i E = E P_{i-2}, P_i F = F P_{i+2}
  double commutator = 0.0;   // EF - FE = sum_j (x^2 eps^j - x^-2 eps^-j)/(eps - eps^-1) P_j
  double k_conjugation = 0.0;  // K E K^-1 = eps^2 E, K F K^-1 = eps^-2 F
  double nilpotency = 0.0;   // E^l = F^l = 0

  double max() const;
};
RelationResiduals relation_residuals(const Rep& rep, const RootData& ctx);

/// Scalar by which the central element sum_j (-1)^j P_j acts; throws when the
/// module is not of pure parity.
int central_eps_action(const Rep& rep);

/// The module pi o phi, where phi(P_i) = P_{i+2}, phi(x) = x eps and phi fixes
/// E, F. It is V(a eps, k - 2), i.e. Color(z + 2, k - 2), on the same basis.
Rep phi_pullback(const Rep& rep, const RootData& ctx);

/// An invertible map rep1 -> rep2 commuting with E, F and iota(K) (the
/// action of U_eps(sl2)' through iota), or nullopt when none exists.
/// P_j-equivariance is deliberately not imposed.
std::optional<Mat> uprime_intertwiner(const Rep& rep1, const Rep& rep2, const RootData& ctx);

std::string to_string(const Color& color);

}  // namespace qsl2
