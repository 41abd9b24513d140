#include "qvo/special.hpp"

#include <cmath>
#include <stdexcept>

namespace qvo {

double norm_pdf(double x) { return 0.3989422804014326779 * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("norm_quantile: p outside (0,1)");
    // Acklam 2003
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // one Halley step
    const double e = norm_cdf(x) - p;
    const double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double z_two_sided(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("z_two_sided: bad alpha");
    return norm_quantile(1.0 - 0.5 * alpha);
}

double expint_e1(double x) {
    if (x <= 0.0) throw std::invalid_argument("expint_e1: x <= 0");
    if (x <= 1.0) {
        // series: E1(x) = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
        const double euler_gamma = 0.57721566490153286061;
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * (std::abs(sum) + 1.0)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Lentz continued fraction: E1(x) = exp(-x) * 1/(x+1-1/(x+3-4/(x+5-...)))
    const double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 200; ++i) {
        const double an = -double(i) * double(i);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double bessel_k1_fast(double x) {
    if (x <= 0.0) throw std::invalid_argument("bessel_k1_fast: x <= 0");
    if (x <= 2.0) {
        // A&S 9.8.3 (I1) feeding 9.8.7 (K1)
        const double t = x / 3.75;
        const double t2 = t * t;
        const double i1 =
            x * (0.5 + t2 * (0.87890594 +
                             t2 * (0.51498869 +
                                   t2 * (0.15084934 +
                                         t2 * (0.02658733 + t2 * (0.00301532 + t2 * 0.00032411))))));
        const double y = 0.25 * x * x;
        const double poly =
            1.0 + y * (0.15443144 +
                       y * (-0.67278579 +
                            y * (-0.18156897 +
                                 y * (-0.01919402 + y * (-0.00110404 - y * 0.00004686)))));
        return std::log(0.5 * x) * i1 + poly / x;
    }
    const double y = 2.0 / x;
    const double poly =
        1.25331414 + y * (0.23498619 +
                          y * (-0.03655620 +
                               y * (0.01504268 +
                                    y * (-0.00780353 + y * (0.00325614 - y * 0.00068245)))));
    return std::exp(-x) / std::sqrt(x) * poly;
}

double bessel_k1_scaled(double x) {
    if (x <= 2.0) return std::exp(x) * bessel_k1_fast(x);
    const double y = 2.0 / x;
    const double poly =
        1.25331414 + y * (0.23498619 +
                          y * (-0.03655620 +
                               y * (0.01504268 +
                                    y * (-0.00780353 + y * (0.00325614 - y * 0.00068245)))));
    return poly / std::sqrt(x);
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_upper_quantile(double alpha, double df) {
    if (!(alpha > 0.0 && alpha < 1.0) || df <= 0.0)
        throw std::invalid_argument("chi2_upper_quantile: bad arguments");
    double lo = 0.0, hi = df;
    while (gamma_q(0.5 * df, 0.5 * hi) > alpha) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_q(0.5 * df, 0.5 * mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return 2.0 * sum;
}

double kolmogorov_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("kolmogorov_critical: bad alpha");
    double lo = 0.0, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_q(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qvo
