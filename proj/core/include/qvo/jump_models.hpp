#ifndef QVO_JUMP_MODELS_HPP
#define QVO_JUMP_MODELS_HPP

#include <string>

namespace qvo {

// Only symmetric jump families are representable: Merton-type with zero mean
// jumps, Kou-type with balanced tails, VG/NIG with zero skew, CGMY with equal
// tail decay. Symmetry of the jump measure is a type invariant, not a runtime
// property to be checked.
enum class JumpFamily {
    none,
    gaussian,            // intensity lambda, jump std delta
    double_exponential,  // intensity lambda, tail rate eta (both sides)
    variance_gamma_sym,  // scale sigma_vg, subordinator variance rate kappa_vg
    nig_sym,             // scale sigma_nig, subordinator shape kappa_nig
    cgmy_sym,            // C, M (= G), Y in (0,2)
};

struct JumpSpec {
    JumpFamily family = JumpFamily::none;
    double lambda = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    double sigma_vg = 0.0;
    double kappa_vg = 0.0;
    double sigma_nig = 0.0;
    double kappa_nig = 0.0;
    double c = 0.0;
    double m = 0.0;
    double y = 0.0;

    static JumpSpec none_jumps() { return {}; }
    static JumpSpec gaussian_jumps(double lambda, double delta) {
        JumpSpec j;
        j.family = JumpFamily::gaussian;
        j.lambda = lambda;
        j.delta = delta;
        return j;
    }
    static JumpSpec double_exponential_jumps(double lambda, double eta) {
        JumpSpec j;
        j.family = JumpFamily::double_exponential;
        j.lambda = lambda;
        j.eta = eta;
        return j;
    }
    static JumpSpec variance_gamma_jumps(double sigma, double kappa) {
        JumpSpec j;
        j.family = JumpFamily::variance_gamma_sym;
        j.sigma_vg = sigma;
        j.kappa_vg = kappa;
        return j;
    }
    static JumpSpec nig_jumps(double sigma, double kappa) {
        JumpSpec j;
        j.family = JumpFamily::nig_sym;
        j.sigma_nig = sigma;
        j.kappa_nig = kappa;
        return j;
    }
    static JumpSpec cgmy_jumps(double c, double m, double y) {
        JumpSpec j;
        j.family = JumpFamily::cgmy_sym;
        j.c = c;
        j.m = m;
        j.y = y;
        return j;
    }
};

const char* family_name(JumpFamily f);

// Drift, Gaussian variance and jump measure, all per unit time.
struct LevyTriplet {
    double drift = 0.0;
    double gaussian_var = 0.0;
    JumpSpec jumps;
};

enum class ClockKind { identity, integrated_cir };

// Stochastic clock: identity, or the running integral of a CIR variance
// process (full-truncation Euler in the engine). Clock paths are continuous,
// nondecreasing and start at zero.
struct ClockModel {
    ClockKind kind = ClockKind::identity;
    double cir_kappa = 0.0;
    double cir_theta = 0.0;
    double cir_xi = 0.0;
    double cir_v0 = 0.0;

    static ClockModel identity() { return {}; }
    static ClockModel integrated_cir(double kappa, double theta, double xi, double v0) {
        return ClockModel{ClockKind::integrated_cir, kappa, theta, xi, v0};
    }
    // E[tau_T] for the CIR integral; T for the identity clock.
    double mean_at(double T) const;
};

// Self-similar independent-increment specification: Gaussian variance over
// [s,t] is sigma^2 (t^{2 gamma} - s^{2 gamma}); the level-t jump measure is
// the base measure scaled by t^gamma.
struct SatoSpec {
    double gamma = 0.5;
    LevyTriplet base;
};

enum class ModelKind { levy, time_changed, sato };
enum class DriftMode { explicit_drift, exp_martingale };

struct ModelSpec {
    ModelKind kind = ModelKind::levy;
    LevyTriplet triplet;
    ClockModel clock;       // time_changed only
    double sato_gamma = 0;  // sato only
    DriftMode drift_mode = DriftMode::explicit_drift;
    bool allow_zero = false;  // explicit opt-in for the all-zero process
    std::string id = "model";

    SatoSpec sato() const { return SatoSpec{sato_gamma, triplet}; }

    static ModelSpec levy(LevyTriplet t, DriftMode m = DriftMode::explicit_drift) {
        ModelSpec s;
        s.kind = ModelKind::levy;
        s.triplet = t;
        s.drift_mode = m;
        return s;
    }
    static ModelSpec time_changed(LevyTriplet t, ClockModel c,
                                  DriftMode m = DriftMode::explicit_drift) {
        ModelSpec s;
        s.kind = ModelKind::time_changed;
        s.triplet = t;
        s.clock = c;
        s.drift_mode = m;
        return s;
    }
    static ModelSpec sato_model(double gamma, LevyTriplet base) {
        ModelSpec s;
        s.kind = ModelKind::sato;
        s.triplet = base;
        s.sato_gamma = gamma;
        return s;
    }
};

// Throws std::invalid_argument naming the offending field when a parameter is
// outside its domain, the second moment is infinite, or (under exp_martingale)
// the exponential moment is infinite. Returns the spec unchanged otherwise.
ModelSpec validate_model(const ModelSpec& spec);

// int x^2 nu(dx), per unit time. Closed form per family.
double jump_second_moment(const JumpSpec& jumps);

// int (e^x - 1 - x) nu(dx). Throws when infinite (family-dependent domain).
double jump_exponential_moment(const JumpSpec& jumps);

// Drift b* = -sigma^2/2 - int(e^x - 1 - x) nu(dx), making exp(X) unit-mean.
double martingale_drift(const LevyTriplet& triplet);

// sigma^2 + int x^2 nu(dx): the predictable-quadratic-variation rate. The PQV
// of a Levy model over [0,T] is T times this; a clocked model's is tau_T times
// this.
double pqv_rate(const LevyTriplet& triplet);

// Drift actually used in simulation: the explicit b, or b* under
// exp_martingale.
double effective_drift(const ModelSpec& spec);

// Levy density nu(x) evaluated pointwise (x != 0). Used by the symmetry and
// quadrature cross-checks; the value at the origin is not defined for the
// infinite-activity families.
double levy_density(const JumpSpec& jumps, double x);

// nu({|x| > eps}), both tails combined.
double jump_tail_mass(const JumpSpec& jumps, double eps);

// int_{|x| <= eps} x^2 nu(dx), both sides. Together with jump_tail_mass this
// preserves the second moment exactly:
//   small_jump_variance + tail_mass * E[J^2 | |J| > eps] = jump_second_moment.
double small_jump_variance(const JumpSpec& jumps, double eps);

}  // namespace qvo

#endif
