#include "qsl2/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace qsl2 {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

Mat flip(Eigen::Index dim_a, Eigen::Index dim_b) {
  Mat p = Mat::Zero(dim_a * dim_b, dim_a * dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j) p(j * dim_a + i, i * dim_b + j) = 1.0;
  return p;
}

namespace {

Eigen::Index product(const std::vector<Eigen::Index>& dims, std::size_t from, std::size_t to) {
  Eigen::Index p = 1;
  for (std::size_t i = from; i < to; ++i) p *= dims[i];
  return p;
}

}  // namespace

Mat embed(const Mat& op, const std::vector<Eigen::Index>& dims, std::size_t first,
          std::size_t count) {
  const Eigen::Index left = product(dims, 0, first);
  const Eigen::Index right = product(dims, first + count, dims.size());
  return kron(kron(identity(left), op), identity(right));
}

Mat embed_pair(const Mat& op, const std::vector<Eigen::Index>& dims, std::size_t i,
               std::size_t j) {
  if (i >= j || j >= dims.size()) throw std::invalid_argument("embed_pair: need i < j < n");
  // Move slot j next to slot i with a permutation, act, then move back.
  const Eigen::Index between = product(dims, i + 1, j);
  const Eigen::Index dj = dims[j];
  Mat local = kron(op, identity(between));            // on Vi (x) Vj (x) mid
  Mat perm = kron(identity(dims[i]), flip(between, dj));  // Vi (x) mid (x) Vj -> Vi (x) Vj (x) mid
  Mat block = perm.adjoint() * local * perm;
  return embed(block, dims, i, j - i + 1);
}

Mat partial_trace_right(const Mat& f, Eigen::Index dim_a, const Mat& weight) {
  const Eigen::Index dim_b = weight.rows();
  Mat wf = kron(identity(dim_a), weight) * f;
  Mat out = Mat::Zero(dim_a, dim_a);
  for (Eigen::Index a = 0; a < dim_a; ++a)
    for (Eigen::Index b = 0; b < dim_a; ++b)
      for (Eigen::Index j = 0; j < dim_b; ++j) out(a, b) += wf(a * dim_b + j, b * dim_b + j);
  return out;
}

Mat partial_trace_left(const Mat& f, const Mat& weight, Eigen::Index dim_b) {
  const Eigen::Index dim_a = weight.rows();
  Mat wf = kron(weight, identity(dim_b)) * f;
  Mat out = Mat::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_b; ++a)
    for (Eigen::Index b = 0; b < dim_b; ++b)
      for (Eigen::Index j = 0; j < dim_a; ++j) out(a, b) += wf(j * dim_b + a, j * dim_b + b);
  return out;
}

ScalarPart scalar_part(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("scalar_part: need a nonempty square matrix");
  const cplx value = m.trace() / static_cast<double>(m.rows());
  return {value, max_abs(m - value * identity(m.rows()))};
}

Mat nullspace(const Mat& a, double rel_threshold, int* rank_out,
              Eigen::VectorXd* singular_values_out) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) {
    if (rank_out) *rank_out = 0;
    return identity(n);
  }
  // Pad to at least n rows so the full right-singular basis is available.
  Mat padded = a;
  if (a.rows() < n) {
    padded = Mat::Zero(n, n);
    padded.topRows(a.rows()) = a;
  }
  Eigen::BDCSVD<Mat> svd(padded, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rel_threshold * s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  if (s.size() > 0 && s(0) == 0.0) rank = 0;
  if (rank_out) *rank_out = rank;
  if (singular_values_out) *singular_values_out = s;
  return svd.matrixV().rightCols(n - rank);
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qsl2
