#ifndef QVO_QUADRATURE_HPP
#define QVO_QUADRATURE_HPP

#include <functional>

namespace qvo {

// Adaptive Simpson with Richardson correction. Tolerance is split between
// halves on recursion, so the absolute error of the result is ~abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 60);

// Integrate f over (a, infinity) for integrands with an exponential decay
// envelope ~exp(-decay_rate * x): truncates where the envelope is below
// 1e-18 relative to its value at a, then calls integrate().
double integrate_tail(const std::function<double(double)>& f, double a, double decay_rate,
                      double abs_tol = 1e-12);

// Integrate f over (a, b) after the substitution x = e^u.  Robust for
// integrands with power-law behaviour near zero (0 < a < b required).
double integrate_log(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12);

}  // namespace qvo

#endif
