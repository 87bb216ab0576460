#pragma once

#include <array>
#include <vector>

namespace qccd {

//! Real polynomial of degree at most 4: c[0] + c[1] t + c[2] t^2 + c[3] t^3 + c[4] t^4.
struct RealPolynomial {
  std::array<double, 5> c{};

  double eval(double t) const {
    return (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  }
  double eval_derivative(double t) const {
    return ((4.0 * c[4] * t + 3.0 * c[3]) * t + 2.0 * c[2]) * t + c[1];
  }
  double max_abs_coefficient() const;
};

//! Finds every real root of `poly` in [lo, hi] using the closed-form
//! quartic/cubic/quadratic/linear cascade, each root polished with two
//! Newton iterations. Roots are written to `out` ascending and deduplicated
//! within 1e-9. Returns the root count.
//!
//! Throws std::domain_error for the identically-zero polynomial and
//! std::invalid_argument for non-finite coefficients or lo > hi.
int real_roots_in_interval(const RealPolynomial& poly, double lo, double hi,
                           std::array<double, 4>& out);

//! Convenience overload returning the roots as a vector.
std::vector<double> real_roots_in_interval(const RealPolynomial& poly, double lo,
                                           double hi);

}  // namespace qccd
