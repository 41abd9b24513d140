#include "qvo/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qvo {
namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: a > b");
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_tail(const std::function<double(double)>& f, double a, double decay_rate,
                      double abs_tol) {
    if (decay_rate <= 0.0) throw std::invalid_argument("integrate_tail: decay_rate <= 0");
    // exp(-42) ~ 5.7e-19
    const double b = a + 42.0 / decay_rate;
    return integrate(f, a, b, abs_tol);
}

double integrate_log(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("integrate_log: need 0 < a < b");
    const auto g = [&f](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    return integrate(g, std::log(a), std::log(b), abs_tol);
}

}  // namespace qvo
