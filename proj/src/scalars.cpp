#include "qsl2/scalars.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qsl2/errors.hpp"

namespace qsl2 {

namespace {

long long floor_mod(long long n, long long modulus) {
  long long r = n % modulus;
  return r < 0 ? r + modulus : r;
}

}  // namespace

cplx RootData::t_pow(long long n) const {
  const long long r = floor_mod(n * m, 4LL * l);
  return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / (2.0 * l));
}

cplx RootData::eps_pow(long long n) const { return t_pow(2 * n); }

RootData make_root_data(int m, int l, double tol, double rel_tol) {
  if (m <= 0 || m % 2 == 0)
    throw ConfigError("m must be an odd positive integer, got " + std::to_string(m));
  if (l <= 0 || l % 2 == 0)
    throw ConfigError("l must be an odd positive integer, got " + std::to_string(l));
  if (l < 3) throw ConfigError("l must be at least 3, got " + std::to_string(l));
  if (std::gcd(m, l) != 1)
    throw ConfigError("m and l must be coprime (eps - 1/eps vanishes otherwise)");
  if (!(tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError("tolerances must be positive");

  RootData ctx;
  ctx.m = m;
  ctx.l = l;
  ctx.tol = tol;
  ctx.rel_tol = rel_tol;
  ctx.t = ctx.t_pow(1);
  ctx.eps = ctx.t_pow(2);
  return ctx;
}

cplx qint(int n, const RootData& ctx) {
  return (ctx.eps_pow(n) - ctx.eps_pow(-n)) / (ctx.eps - 1.0 / ctx.eps);
}

cplx qfact(int n, const RootData& ctx) {
  if (n < 0) throw DomainError("qfact of a negative integer");
  cplx result = 1.0;
  for (int i = 1; i <= n; ++i) result *= qint(i, ctx);
  return result;
}

bool is_generic(cplx a, const RootData& ctx) {
  if (a == cplx(0.0)) throw DomainError("color parameter a must be nonzero");
  return std::abs(ipow(a, 4LL * ctx.l) - 1.0) > ctx.tol;
}

bool approx_equal(cplx x, cplx y, const RootData& ctx) {
  const double diff = std::abs(x - y);
  if (diff < ctx.tol) return true;
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale >= 1.0 && diff / scale < ctx.rel_tol;
}

cplx ipow(cplx base, long long n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace qsl2
