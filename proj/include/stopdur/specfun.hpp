#pragma once

// Special functions and small numerical kernels shared by the rest of the
// library. Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace stopdur {

/// Raised when an iterative method fails to converge or a bracket is invalid.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace specfun {

inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double default_tol = 1e-12;

struct Bracket {
  double lo;
  double hi;
};

/// Psi function. Shifts the argument above 10 with psi(x) = psi(x+1) - 1/x,
/// then sums the asymptotic Bernoulli series.
inline double digamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // B_2k / (2k) for k = 1..7
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 * inv - series;
}

enum class LambertBranch { principal, lower };

/// Real Lambert W on the principal (w >= -1) or lower (w <= -1) branch.
inline double lambert_w(double z, LambertBranch branch) {
  constexpr double branch_point = -1.0 / std::numbers::e;
  if (std::isnan(z))
    throw std::domain_error("lambert_w: NaN argument");
  // Values within rounding of -1/e are clamped onto the branch point.
  if (z < branch_point) {
    if (z < branch_point - 4 * std::numeric_limits<double>::epsilon())
      throw std::domain_error("lambert_w: argument below -1/e");
    z = branch_point;
  }
  if (branch == LambertBranch::lower && !(z < 0.0))
    throw std::domain_error("lambert_w: lower branch requires -1/e <= z < 0");
  if (branch == LambertBranch::principal && z == 0.0)
    return 0.0;
  if (z == branch_point)
    return -1.0;

  const double sign = branch == LambertBranch::principal ? 1.0 : -1.0;
  const double p2 = 2.0 * (std::numbers::e * z + 1.0);
  double w;
  if (p2 < 0.25) {
    // Series about the branch point in p = sqrt(2(ez + 1)).
    const double p = sign * std::sqrt(std::max(p2, 0.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540 + p * 769.0 / 17280))));
    if (std::abs(p) < 1e-4)
      return w;
  } else if (branch == LambertBranch::principal) {
    if (z < 3.0) {
      w = std::log1p(z);
      if (z < 0.0)
        w = z * (1.0 - z);  // w ~ z - z^2 near the origin
    } else {
      const double lz = std::log(z);
      w = lz - std::log(lz);
    }
  } else {
    const double lz = std::log(-z);
    w = lz - std::log(-lz);
  }

  double prev = INFINITY;
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    if (f == 0.0)
      return w;
    const double size = std::abs(step);
    // Near the branch point the iterates dither at roundoff level.
    if (size >= prev && size <= 1e-12 * (1.0 + std::abs(w)))
      return w;
    w -= step;
    if (size <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
      return w;
    prev = size;
  }
  throw NumericError("lambert_w: Halley iteration did not converge");
}

/// E1(c) = integral over [1, inf) of exp(-c x) / x.
inline double exp_integral_e1(double c) {
  if (!(c > 0.0))
    throw std::domain_error("exp_integral_e1: argument must be positive");
  constexpr int max_iter = 1000;
  constexpr double eps = 1e-17;
  if (c < 1.0) {
    // -gamma - ln c - sum (-c)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= max_iter; ++k) {
      term *= -c / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < eps * std::abs(sum))
        return -euler_gamma - std::log(c) - sum;
    }
    throw NumericError("exp_integral_e1: series did not converge");
  }
  // Continued fraction, modified Lentz.
  constexpr double tiny = 1e-300;
  double b = c + 1.0;
  double cf = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= max_iter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    cf = b + an / cf;
    const double del = cf * d;
    h *= del;
    if (std::abs(del - 1.0) < eps)
      return h * std::exp(-c);
  }
  throw NumericError("exp_integral_e1: continued fraction did not converge");
}

/// Brent's bracketing root finder. Stops once the bracket is narrower
/// than tol (or f vanishes exactly).
template <class F>
double solve_root(F&& f, Bracket bracket, double tol = default_tol) {
  if (!(bracket.lo < bracket.hi))
    throw std::invalid_argument("solve_root: bracket must satisfy lo < hi");
  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0)
    return a;
  if (fb == 0.0)
    return b;
  if ((fa > 0) == (fb > 0))
    throw NumericError("solve_root: no sign change across bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < 500; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0)
      return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0)
        q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NumericError("solve_root: iteration limit reached");
}

namespace detail {

struct KronrodRule {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct Segment {
  double lo, hi, value, error;
};

template <class F>
Segment kronrod15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kron = fc * KronrodRule::wk[7];
  double gauss = fc * KronrodRule::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * KronrodRule::xk[j];
    const double sum = f(center - dx) + f(center + dx);
    kron += KronrodRule::wk[j] * sum;
    if (j % 2 == 1)
      gauss += KronrodRule::wg[j / 2] * sum;
  }
  return {lo, hi, kron * half, std::abs((kron - gauss) * half)};
}

template <class F>
double adaptive_kronrod(F& f, double lo, double hi, double tol) {
  std::vector<Segment> segments{kronrod15(f, lo, hi)};
  constexpr std::size_t max_segments = 5000;
  for (;;) {
    double total = 0.0, err = 0.0;
    for (const auto& s : segments) {
      total += s.value;
      err += s.error;
    }
    if (err <= tol)
      return total;
    if (segments.size() >= max_segments)
      throw NumericError("integrate: tolerance not reached (error estimate " + std::to_string(err) + ")");
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const Segment& a, const Segment& b) { return a.error < b.error; });
    const Segment s = *worst;
    const double mid = 0.5 * (s.lo + s.hi);
    *worst = kronrod15(f, s.lo, mid);
    segments.push_back(kronrod15(f, mid, s.hi));
  }
}

}  // namespace detail

/// Adaptive Gauss–Kronrod (7/15) quadrature. An infinite upper limit is
/// mapped onto a finite interval with x = 1/t.
template <class F>
double integrate(F&& f, double lo, double hi, double tol = default_tol) {
  if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo))
    throw std::invalid_argument("integrate: invalid limits");
  if (lo == hi)
    return 0.0;
  if (std::isinf(hi)) {
    const double split = std::max(lo, 1.0);
    double head = 0.0;
    if (lo < split) {
      auto g = [&](double x) { return f(x); };
      head = detail::adaptive_kronrod(g, lo, split, 0.5 * tol);
    }
    auto g = [&](double t) {
      if (t <= 0.0)
        return 0.0;
      const double x = 1.0 / t;
      const double v = f(x) * x * x;
      return std::isfinite(v) ? v : 0.0;
    };
    return head + detail::adaptive_kronrod(g, 0.0, 1.0 / split, lo < split ? 0.5 * tol : tol);
  }
  if (hi < lo)
    return -integrate(f, hi, lo, tol);
  auto g = [&](double x) { return f(x); };
  return detail::adaptive_kronrod(g, lo, hi, tol);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace specfun
}  // namespace stopdur
