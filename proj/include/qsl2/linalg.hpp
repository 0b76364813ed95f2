#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "qsl2/scalars.hpp"

namespace qsl2 {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Tensor products are flattened row-major: the left factor is the most
// significant index, matching Eigen's kroneckerProduct convention.

Mat kron(const Mat& a, const Mat& b);
Mat identity(Eigen::Index n);

/// Flip P: A (x) B -> B (x) A, P (a (x) b) = b (x) a.
Mat flip(Eigen::Index dim_a, Eigen::Index dim_b);

/// Act with `op` on the tensor factors [first, first + count) of a product
/// with factor dimensions `dims`; identity elsewhere.
Mat embed(const Mat& op, const std::vector<Eigen::Index>& dims, std::size_t first,
          std::size_t count);

/// Act with a two-slot operator `op` (on slots i < j, in that order) inside a
/// product with factor dimensions `dims`.
Mat embed_pair(const Mat& op, const std::vector<Eigen::Index>& dims, std::size_t i,
               std::size_t j);

/// (id (x) tr)((1 (x) weight) f) for f on A (x) B, dim B = weight.rows().
Mat partial_trace_right(const Mat& f, Eigen::Index dim_a, const Mat& weight);

/// (tr (x) id)((weight (x) 1) f) for f on A (x) B, dim A = weight.rows().
Mat partial_trace_left(const Mat& f, const Mat& weight, Eigen::Index dim_b);

/// Decomposition of a square matrix as c * Id + remainder.
struct ScalarPart {
  cplx value;
  double residual;  // ||M - value * Id||_max
};
ScalarPart scalar_part(const Mat& m);

/// Orthonormal basis of ker(a) (columns). Singular values below
/// rel_threshold * sigma_max count as zero; `rank_out` receives the rank.
Mat nullspace(const Mat& a, double rel_threshold, int* rank_out = nullptr,
              Eigen::VectorXd* singular_values_out = nullptr);

double max_abs(const Mat& m);

}  // namespace qsl2
