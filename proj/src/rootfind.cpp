#include "qccd/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qccd {
namespace {

constexpr double kDegenerateLeading = 1e-12;  // relative leading-coefficient cutoff
constexpr double kComplexRejection = 1e-9;    // |imag| <= tol*(1+|real|) counts as real
constexpr double kDedupe = 1e-9;

// Near-real complex pairs collapse onto their real part. Tangency cases sit
// exactly on this boundary, so the tolerance is relative to the real part.
bool pair_counts_as_real(double real_part, double imag_part) {
  return std::abs(imag_part) <= kComplexRejection * (1.0 + std::abs(real_part));
}

// Monic quadratic t^2 + b t + c. Returns 0, 1 (collapsed pair) or 2 roots.
int solve_monic_quadratic(double b, double c, double* roots) {
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    if (!pair_counts_as_real(re, im)) {
      return 0;
    }
    roots[0] = re;
    return 1;
  }
  const double s = std::sqrt(disc);
  // Sign-aware form avoids cancellation between -b and s.
  const double q = -0.5 * (b + std::copysign(s, b));
  if (q == 0.0) {
    roots[0] = 0.0;
    return 1;
  }
  roots[0] = q;
  roots[1] = c / q;
  return 2;
}

// General quadratic a t^2 + b t + c with a != 0.
int solve_quadratic(double a, double b, double c, double* roots) {
  return solve_monic_quadratic(b / a, c / a, roots);
}

// Cubic a t^3 + b t^2 + c t + d with a != 0, via Cardano (trigonometric form
// for three real roots).
int solve_cubic(double a, double b, double c, double d, double* roots) {
  const double A = b / a;
  const double B = c / a;
  const double C = d / a;

  // Depress with t = y - A/3.
  const double shift = A / 3.0;
  const double p = B - A * A / 3.0;
  const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;

  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  int n = 0;
  if (disc >= 0.0) {
    const double rd = std::sqrt(disc);
    const double u = std::cbrt(-half_q + rd);
    const double v = std::cbrt(-half_q - rd);
    roots[n++] = u + v - shift;
    // Remaining pair: -(u+v)/2 +/- i*(sqrt(3)/2)(u-v).
    const double re = -0.5 * (u + v);
    const double im = 0.8660254037844386 * std::abs(u - v);
    if (pair_counts_as_real(re, im)) {
      roots[n++] = re - shift;
    }
  } else {
    const double m = std::sqrt(-third_p);
    double arg = -half_q / (m * m * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double kTwoPiThirds = 2.0943951023931953;
    roots[n++] = 2.0 * m * std::cos(theta) - shift;
    roots[n++] = 2.0 * m * std::cos(theta - kTwoPiThirds) - shift;
    roots[n++] = 2.0 * m * std::cos(theta - 2.0 * kTwoPiThirds) - shift;
  }
  return n;
}

// Quartic t^4 + a t^3 + b t^2 + c t + d via Ferrari's resolvent cubic.
int solve_monic_quartic(double a, double b, double c, double d, double* roots) {
  // Depress with t = y - a/4.
  const double shift = 0.25 * a;
  const double a2 = a * a;
  const double p = b - 0.375 * a2;
  const double q = c - 0.5 * a * b + 0.125 * a2 * a;
  const double r = d - 0.25 * a * c + 0.0625 * a2 * b - (3.0 / 256.0) * a2 * a2;

  int n = 0;
  const double scale = std::max({1.0, std::abs(p), std::abs(r)});
  if (std::abs(q) <= 1e-14 * scale) {
    // Biquadratic: y^4 + p y^2 + r = 0.
    double zs[2];
    const int nz = solve_monic_quadratic(p, r, zs);
    for (int i = 0; i < nz; ++i) {
      const double z = zs[i];
      if (z > 0.0) {
        const double s = std::sqrt(z);
        roots[n++] = s - shift;
        roots[n++] = -s - shift;
      } else if (pair_counts_as_real(0.0, std::sqrt(-z))) {
        roots[n++] = -shift;
      }
    }
    return n;
  }

  // Resolvent cubic z^3 + p z^2 + (p^2/4 - r) z - q^2/8 = 0. Its largest real
  // root is positive whenever q != 0 (value at z=0 is -q^2/8 < 0).
  double zs[3];
  const int nz = solve_cubic(1.0, p, 0.25 * p * p - r, -0.125 * q * q, zs);
  double z = zs[0];
  for (int i = 1; i < nz; ++i) {
    z = std::max(z, zs[i]);
  }
  if (!(z > 0.0)) {
    return 0;  // numerically no admissible factorization; polynomial has no near-real roots
  }

  const double s = std::sqrt(2.0 * z);
  const double t0 = 0.5 * p + z;
  const double u = 0.5 * q / s;
  // (y^2 + p/2 + z)^2 = (s y - q/(2s))^2 splits into two quadratics.
  double quad_roots[2];
  int m = solve_monic_quadratic(-s, t0 + u, quad_roots);
  for (int i = 0; i < m; ++i) {
    roots[n++] = quad_roots[i] - shift;
  }
  m = solve_monic_quadratic(s, t0 - u, quad_roots);
  for (int i = 0; i < m; ++i) {
    roots[n++] = quad_roots[i] - shift;
  }
  return n;
}

// Two Newton iterations on the full polynomial repair the conditioning loss
// of the resolvent closed forms. Steps that do not reduce |P| are discarded.
double polish_root(const RealPolynomial& poly, double t) {
  for (int it = 0; it < 2; ++it) {
    const double f = poly.eval(t);
    const double df = poly.eval_derivative(t);
    if (df == 0.0) {
      break;
    }
    const double t_next = t - f / df;
    if (!std::isfinite(t_next) || std::abs(poly.eval(t_next)) > std::abs(f)) {
      break;
    }
    t = t_next;
  }
  return t;
}

// Near-multiple roots leave Newton converging only linearly; candidates that
// still violate the residual contract get a bounded extra pass. Returns
// false when the refined point is provably not a root (the candidate was an
// artifact of the resolvent) so the caller can discard it.
bool refine_to_bound(const RealPolynomial& poly, double& t, double bound) {
  double best = t;
  double best_f = std::abs(poly.eval(t));
  if (best_f <= 0.25 * bound) {
    return true;
  }
  double cur = t;
  for (int it = 0; it < 40 && best_f > 1e-3 * bound; ++it) {
    const double f = poly.eval(cur);
    const double df = poly.eval_derivative(cur);
    if (df == 0.0) {
      break;
    }
    const double step = f / df;
    if (std::abs(step) <= 1e-12 * (1.0 + std::abs(cur))) {
      break;  // converged in t; the residual is evaluation noise
    }
    cur -= step;
    if (!std::isfinite(cur)) {
      break;
    }
    const double fc = std::abs(poly.eval(cur));
    if (fc < best_f) {
      best_f = fc;
      best = cur;
    }
  }
  t = best;
  return best_f <= 0.9 * bound;  // headroom for the interval clamp below
}

}  // namespace

double RealPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const double ci : c) {
    m = std::max(m, std::abs(ci));
  }
  return m;
}

int real_roots_in_interval(const RealPolynomial& poly, double lo, double hi,
                           std::array<double, 4>& out) {
  for (const double ci : poly.c) {
    if (!std::isfinite(ci)) {
      throw std::invalid_argument("real_roots_in_interval: non-finite coefficient");
    }
  }
  if (lo > hi) {
    throw std::invalid_argument("real_roots_in_interval: lo > hi");
  }

  const double max_c = poly.max_abs_coefficient();
  if (max_c == 0.0) {
    throw std::domain_error("degenerate polynomial");
  }
  const double cutoff = kDegenerateLeading * max_c;

  double candidates[4];
  int n = 0;
  if (std::abs(poly.c[4]) > cutoff) {
    n = solve_monic_quartic(poly.c[3] / poly.c[4], poly.c[2] / poly.c[4],
                            poly.c[1] / poly.c[4], poly.c[0] / poly.c[4], candidates);
  } else if (std::abs(poly.c[3]) > cutoff) {
    n = solve_cubic(poly.c[3], poly.c[2], poly.c[1], poly.c[0], candidates);
  } else if (std::abs(poly.c[2]) > cutoff) {
    n = solve_quadratic(poly.c[2], poly.c[1], poly.c[0], candidates);
  } else if (std::abs(poly.c[1]) > cutoff) {
    candidates[0] = -poly.c[0] / poly.c[1];
    n = 1;
  } else {
    return 0;  // constant, nonzero
  }

  const double residual_bound = 1e-6 * (1.0 + max_c) * std::max(1.0, hi * hi * hi * hi);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    double t = polish_root(poly, candidates[i]);
    if (!refine_to_bound(poly, t, residual_bound)) {
      continue;  // resolvent artifact, not a root
    }
    if (t < lo - kDedupe || t > hi + kDedupe) {
      continue;
    }
    t = std::clamp(t, lo, hi);
    out[count++] = t;
  }

  std::sort(out.begin(), out.begin() + count);
  int kept = 0;
  for (int i = 0; i < count; ++i) {
    if (kept == 0 || out[i] - out[kept - 1] > kDedupe) {
      out[kept++] = out[i];
    }
  }
  return kept;
}

std::vector<double> real_roots_in_interval(const RealPolynomial& poly, double lo,
                                           double hi) {
  std::array<double, 4> out;
  const int n = real_roots_in_interval(poly, lo, hi, out);
  return std::vector<double>(out.begin(), out.begin() + n);
}

}  // namespace qccd
