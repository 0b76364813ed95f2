#pragma once

#include <cmath>
#include <random>

#include "qsl2/check.hpp"
#include "qsl2/linalg.hpp"
#include "qsl2/repmod.hpp"
#include "qsl2/scalars.hpp"

namespace testing_helpers {

using qsl2::cplx;
using qsl2::Mat;

inline double rel(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff());
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Written out here so tests do not lean on the library's own tensor helpers.
inline Mat kron2(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat kron3(const Mat& a, const Mat& b, const Mat& c) { return kron2(kron2(a, b), c); }

inline Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

inline Mat swap_matrix(Eigen::Index da, Eigen::Index db) {
  // (a (x) b) -> (b (x) a)
  Mat p = Mat::Zero(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) p(j * da + i, i * db + j) = 1.0;
  return p;
}

inline Mat random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

}  // namespace testing_helpers
