#pragma once

// Real-root extraction for low-degree polynomials (degree <= 4) and scalar
// bisection. Both are building blocks for the capture-time solvers.

#include <functional>
#include <vector>

namespace pegame {

// Polynomial coefficients ordered highest degree first, degree <= 4.
using PolyCoeffs = std::vector<double>;

// Returns all real roots of p, sorted ascending, near-equal roots merged.
// Every returned r satisfies |p(r)| <= 1e-10 * scale, where scale is the
// maximum coefficient magnitude amplified by max(1,|r|)^degree. Roots are
// computed from the balanced companion matrix and polished by Newton steps.
// Throws NumericError for degree-0 or all-zero input.
std::vector<double> real_roots(const PolyCoeffs& p);

// Evaluates p at t (Horner).
double poly_eval(const PolyCoeffs& p, double t);

// Classic bisection on [lo, hi]; requires a sign change, contracts the
// bracket to width <= tol, returns the midpoint. Throws NumericError when
// f(lo) and f(hi) have the same sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace pegame
