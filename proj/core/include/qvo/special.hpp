#ifndef QVO_SPECIAL_HPP
#define QVO_SPECIAL_HPP

namespace qvo {

double norm_pdf(double x);
double norm_cdf(double x);
// Inverse standard normal CDF (Acklam's rational approximation plus one
// Halley refinement step; relative error < 1e-15 over (0,1)).
double norm_quantile(double p);
// Two-sided Gaussian critical value z with P(|Z| > z) = alpha.
double z_two_sided(double alpha);

// Exponential integral E1(x), x > 0.
double expint_e1(double x);

// Modified Bessel K1 via Abramowitz & Stegun 9.8 polynomial fits.
// Absolute accuracy ~1e-7; an order of magnitude faster than the libstdc++
// series implementation, which matters in rejection-sampling loops.
double bessel_k1_fast(double x);

// exp(x) * K1(x); stays finite for large x where K1 underflows.
double bessel_k1_scaled(double x);

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper-tail chi-square quantile: x with Q(df/2, x/2) = alpha.
double chi2_upper_quantile(double alpha, double df);

// Kolmogorov limit law Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)
// and its inverse (critical value at tail probability alpha).
double kolmogorov_q(double x);
double kolmogorov_critical(double alpha);

}  // namespace qvo

#endif
