#pragma once

#include <complex>

namespace qsl2 {

using cplx = std::complex<double>;

/// Arithmetic context: odd m, l with gcd(m, l) = 1, t = exp(i pi m / 2l) and
/// eps = t^2. All comparisons in the library go through tol / rel_tol.
struct RootData {
  int m = 1;
  int l = 3;
  cplx t;
  cplx eps;
  double tol = 1e-9;
  double rel_tol = 1e-8;

  /// t^n, reduced mod 4l before exponentiation so large weights stay exact.
  cplx t_pow(long long n) const;
  /// eps^n, reduced mod 2l.
  cplx eps_pow(long long n) const;
};

RootData make_root_data(int m, int l, double tol = 1e-9, double rel_tol = 1e-8);

/// [n] = (eps^n - eps^-n) / (eps - eps^-1)
cplx qint(int n, const RootData& ctx);

/// [n]! with [0]! = 1. Negative n is rejected.
cplx qfact(int n, const RootData& ctx);

/// a is generic when a^(4l) != 1, tested as |a^(4l) - 1| > tol.
bool is_generic(cplx a, const RootData& ctx);

/// Absolute error below tol, or relative error below rel_tol when |x| or |y| >= 1.
bool approx_equal(cplx x, cplx y, const RootData& ctx);

/// Integer power by repeated squaring.
cplx ipow(cplx base, long long n);

}  // namespace qsl2
