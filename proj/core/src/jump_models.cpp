#include "qvo/jump_models.hpp"

#include <cmath>
#include <stdexcept>

#include "qvo/quadrature.hpp"
#include "qvo/special.hpp"

namespace qvo {
namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("model parameter '" + field + "': " + why);
}

void validate_jumps(const JumpSpec& j) {
    switch (j.family) {
        case JumpFamily::none:
            return;
        case JumpFamily::gaussian:
            if (!(j.lambda >= 0.0)) bad_field("jumps.lambda", "must be >= 0");
            if (!(j.delta > 0.0)) bad_field("jumps.delta", "must be > 0");
            return;
        case JumpFamily::double_exponential:
            if (!(j.lambda >= 0.0)) bad_field("jumps.lambda", "must be >= 0");
            if (!(j.eta > 0.0)) bad_field("jumps.eta", "must be > 0");
            return;
        case JumpFamily::variance_gamma_sym:
            if (!(j.sigma_vg > 0.0)) bad_field("jumps.sigma_vg", "must be > 0");
            if (!(j.kappa_vg > 0.0)) bad_field("jumps.kappa_vg", "must be > 0");
            return;
        case JumpFamily::nig_sym:
            if (!(j.sigma_nig > 0.0)) bad_field("jumps.sigma_nig", "must be > 0");
            if (!(j.kappa_nig > 0.0)) bad_field("jumps.kappa_nig", "must be > 0");
            return;
        case JumpFamily::cgmy_sym:
            if (!(j.c > 0.0)) bad_field("jumps.c", "must be > 0");
            if (!(j.m > 0.0)) bad_field("jumps.m", "must be > 0");
            if (!(j.y > 0.0 && j.y < 2.0)) bad_field("jumps.y", "must be in (0,2)");
            return;
    }
    bad_field("jumps.family", "unknown family");
}

// CGMY exponential moment for Y != 1; the factor in brackets vanishes at
// Y = 1 where Gamma(-Y) has its pole, so the product extends continuously.
double cgmy_exp_moment(double c, double m, double y) {
    return c * std::tgamma(-y) *
           (std::pow(m - 1.0, y) + std::pow(m + 1.0, y) - 2.0 * std::pow(m, y));
}

// int_0^eps x^{1-Y} e^{-Mx} dx by term-wise integration of the exponential
// series; converges fast since M*eps is small for truncation thresholds.
double cgmy_small_x2_one_side(double c, double m, double y, double eps) {
    double sum = 0.0;
    double mpow = 1.0;  // (-m)^j / j!
    for (int j = 0; j < 80; ++j) {
        const double term = mpow * std::pow(eps, 2.0 - y + j) / (2.0 - y + j);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
        mpow *= -m / double(j + 1);
    }
    return c * sum;
}

}  // namespace

const char* family_name(JumpFamily f) {
    switch (f) {
        case JumpFamily::none: return "none";
        case JumpFamily::gaussian: return "gaussian";
        case JumpFamily::double_exponential: return "double_exponential";
        case JumpFamily::variance_gamma_sym: return "variance_gamma_sym";
        case JumpFamily::nig_sym: return "nig_sym";
        case JumpFamily::cgmy_sym: return "cgmy_sym";
    }
    return "?";
}

double ClockModel::mean_at(double T) const {
    if (kind == ClockKind::identity) return T;
    // E int_0^T v_t dt with E[v_t] = theta + (v0 - theta) e^{-kappa t}
    return cir_theta * T + (cir_v0 - cir_theta) * (1.0 - std::exp(-cir_kappa * T)) / cir_kappa;
}

ModelSpec validate_model(const ModelSpec& spec) {
    if (!(spec.triplet.gaussian_var >= 0.0)) bad_field("sigma2", "must be >= 0");
    validate_jumps(spec.triplet.jumps);

    const bool zero = spec.triplet.gaussian_var == 0.0 &&
                      spec.triplet.jumps.family == JumpFamily::none && spec.triplet.drift == 0.0;
    if (zero && !spec.allow_zero)
        bad_field("model", "zero process; set allow_zero to construct it deliberately");

    switch (spec.kind) {
        case ModelKind::levy:
            break;
        case ModelKind::time_changed:
            if (spec.clock.kind == ClockKind::integrated_cir) {
                if (!(spec.clock.cir_kappa > 0.0)) bad_field("clock.kappa", "must be > 0");
                if (!(spec.clock.cir_theta > 0.0)) bad_field("clock.theta_mean", "must be > 0");
                if (!(spec.clock.cir_xi >= 0.0)) bad_field("clock.xi", "must be >= 0");
                if (!(spec.clock.cir_v0 > 0.0)) bad_field("clock.v0", "must be > 0");
            }
            break;
        case ModelKind::sato:
            if (!(spec.sato_gamma > 0.0)) bad_field("sato.gamma", "must be > 0");
            if (spec.drift_mode == DriftMode::exp_martingale)
                bad_field("drift_mode",
                          "exp_martingale is defined for levy and time_changed kinds only");
            break;
    }

    if (spec.drift_mode == DriftMode::exp_martingale) {
        jump_exponential_moment(spec.triplet.jumps);  // throws when infinite
    }
    return spec;
}

double jump_second_moment(const JumpSpec& j) {
    switch (j.family) {
        case JumpFamily::none:
            return 0.0;
        case JumpFamily::gaussian:
            return j.lambda * j.delta * j.delta;
        case JumpFamily::double_exponential:
            return 2.0 * j.lambda / (j.eta * j.eta);
        case JumpFamily::variance_gamma_sym:
            return j.sigma_vg * j.sigma_vg;
        case JumpFamily::nig_sym:
            return j.sigma_nig * j.sigma_nig;
        case JumpFamily::cgmy_sym:
            return 2.0 * j.c * std::tgamma(2.0 - j.y) * std::pow(j.m, j.y - 2.0);
    }
    throw std::logic_error("jump_second_moment: unknown family");
}

double jump_exponential_moment(const JumpSpec& j) {
    switch (j.family) {
        case JumpFamily::none:
            return 0.0;
        case JumpFamily::gaussian:
            return j.lambda * std::expm1(0.5 * j.delta * j.delta);
        case JumpFamily::double_exponential:
            if (!(j.eta > 1.0))
                bad_field("jumps.eta", "exponential moment infinite unless eta > 1");
            return j.lambda / (j.eta * j.eta - 1.0);
        case JumpFamily::variance_gamma_sym: {
            const double q = 0.5 * j.sigma_vg * j.sigma_vg * j.kappa_vg;
            if (!(q < 1.0))
                bad_field("jumps.sigma_vg",
                          "exponential moment infinite unless sigma_vg^2 * kappa_vg < 2");
            return -std::log1p(-q) / j.kappa_vg;
        }
        case JumpFamily::nig_sym: {
            const double q = j.sigma_nig * j.sigma_nig * j.kappa_nig;
            if (!(q < 1.0))
                bad_field("jumps.sigma_nig",
                          "exponential moment infinite unless sigma_nig^2 * kappa_nig < 1");
            return (1.0 - std::sqrt(1.0 - q)) / j.kappa_nig;
        }
        case JumpFamily::cgmy_sym: {
            if (!(j.m > 1.0)) bad_field("jumps.m", "exponential moment infinite unless M > 1");
            if (std::abs(j.y - 1.0) < 1e-5) {
                const double h = 1e-4;
                return 0.5 * (cgmy_exp_moment(j.c, j.m, 1.0 - h) +
                              cgmy_exp_moment(j.c, j.m, 1.0 + h));
            }
            return cgmy_exp_moment(j.c, j.m, j.y);
        }
    }
    throw std::logic_error("jump_exponential_moment: unknown family");
}

double martingale_drift(const LevyTriplet& t) {
    return -0.5 * t.gaussian_var - jump_exponential_moment(t.jumps);
}

double pqv_rate(const LevyTriplet& t) { return t.gaussian_var + jump_second_moment(t.jumps); }

double effective_drift(const ModelSpec& spec) {
    return spec.drift_mode == DriftMode::exp_martingale ? martingale_drift(spec.triplet)
                                                        : spec.triplet.drift;
}

double levy_density(const JumpSpec& j, double x) {
    const double ax = std::abs(x);
    if (ax == 0.0) throw std::invalid_argument("levy_density: x == 0");
    switch (j.family) {
        case JumpFamily::none:
            return 0.0;
        case JumpFamily::gaussian:
            return j.lambda * norm_pdf(ax / j.delta) / j.delta;
        case JumpFamily::double_exponential:
            return 0.5 * j.lambda * j.eta * std::exp(-j.eta * ax);
        case JumpFamily::variance_gamma_sym: {
            const double a = std::sqrt(2.0 / j.kappa_vg) / j.sigma_vg;
            return std::exp(-a * ax) / (j.kappa_vg * ax);
        }
        case JumpFamily::nig_sym: {
            const double s = j.sigma_nig * std::sqrt(j.kappa_nig);
            return bessel_k1_fast(ax / s) / (M_PI * j.kappa_nig * ax);
        }
        case JumpFamily::cgmy_sym:
            return j.c * std::exp(-j.m * ax) * std::pow(ax, -1.0 - j.y);
    }
    throw std::logic_error("levy_density: unknown family");
}

double jump_tail_mass(const JumpSpec& j, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("jump_tail_mass: eps <= 0");
    switch (j.family) {
        case JumpFamily::none:
            return 0.0;
        case JumpFamily::gaussian:
            return 2.0 * j.lambda * norm_cdf(-eps / j.delta);
        case JumpFamily::double_exponential:
            return j.lambda * std::exp(-j.eta * eps);
        case JumpFamily::variance_gamma_sym: {
            const double a = std::sqrt(2.0 / j.kappa_vg) / j.sigma_vg;
            return 2.0 / j.kappa_vg * expint_e1(a * eps);
        }
        case JumpFamily::nig_sym: {
            const double s = j.sigma_nig * std::sqrt(j.kappa_nig);
            const double kk = j.kappa_nig;
            return 2.0 / (M_PI * kk) *
                   integrate_log([s](double x) { return bessel_k1_fast(x / s) / x; }, eps,
                                 eps + 42.0 * s, 1e-13);
        }
        case JumpFamily::cgmy_sym: {
            const double c = j.c, m = j.m, y = j.y;
            return 2.0 * c *
                   integrate_log(
                       [m, y](double x) { return std::pow(x, -1.0 - y) * std::exp(-m * x); }, eps,
                       eps + 42.0 / m, 1e-13);
        }
    }
    throw std::logic_error("jump_tail_mass: unknown family");
}

double small_jump_variance(const JumpSpec& j, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("small_jump_variance: eps <= 0");
    switch (j.family) {
        case JumpFamily::none:
            return 0.0;
        case JumpFamily::gaussian: {
            const double z = eps / j.delta;
            return j.lambda * j.delta * j.delta *
                   (1.0 - 2.0 * norm_cdf(-z) - 2.0 * z * norm_pdf(z));
        }
        case JumpFamily::double_exponential: {
            const double ze = j.eta * eps;
            return 2.0 * j.lambda / (j.eta * j.eta) *
                   (1.0 - std::exp(-ze) * (1.0 + ze + 0.5 * ze * ze));
        }
        case JumpFamily::variance_gamma_sym: {
            const double a = std::sqrt(2.0 / j.kappa_vg) / j.sigma_vg;
            const double ae = a * eps;
            return j.sigma_vg * j.sigma_vg * (1.0 - std::exp(-ae) * (1.0 + ae));
        }
        case JumpFamily::nig_sym: {
            const double s = j.sigma_nig * std::sqrt(j.kappa_nig);
            // integrand x K1(x/s) -> s as x -> 0
            const auto f = [s](double x) {
                const double u = x / s;
                if (u < 1e-8) return s;
                return x * bessel_k1_fast(u);
            };
            return 2.0 / (M_PI * j.kappa_nig) * integrate(f, 0.0, eps, 1e-14);
        }
        case JumpFamily::cgmy_sym: {
            const double split = std::min(eps, 0.1 / j.m);
            double v = cgmy_small_x2_one_side(j.c, j.m, j.y, split);
            if (split < eps) {
                const double m = j.m, y = j.y, c = j.c;
                v += c * integrate_log(
                             [m, y](double x) { return std::pow(x, 1.0 - y) * std::exp(-m * x); },
                             split, eps, 1e-14);
            }
            return 2.0 * v;
        }
    }
    throw std::logic_error("small_jump_variance: unknown family");
}

}  // namespace qvo
