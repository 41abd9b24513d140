#ifndef QVO_VARIANCE_HPP
#define QVO_VARIANCE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace qvo {

// One simulated jump: time within [0,T] and the jump size.
struct JumpEvent {
    double time = 0.0;
    double size = 0.0;
};

// Sum of squared increments over consecutive values. Needs >= 2 points.
double realized_variance(std::span<const double> values);

// Realized variance of a drift path; identical computation, named for the
// role it plays in the expectation identity E[RV | tail] = QV + RV(B, P).
double rv_of_drift(std::span<const double> drift_values);

// Centering function h applied to a reference mean: none (h = 0), mean
// (h(x) = x), or a piecewise-linear table with Lipschitz constant <= 1.
class HCentering {
  public:
    enum class Kind { none, mean, custom_lipschitz };

    HCentering() = default;
    static HCentering none() { return HCentering(); }
    static HCentering mean() {
        HCentering h;
        h.kind_ = Kind::mean;
        return h;
    }
    // Table of (x, h(x)) pairs with x strictly increasing; throws unless
    // |h(x_i) - h(x_j)| <= |x_i - x_j| for all pairs. No extrapolation.
    static HCentering custom(std::vector<double> xs, std::vector<double> hs);

    Kind kind() const { return kind_; }
    // h evaluated at x; throws for custom tables when x is outside the table.
    double operator()(double x) const;

  private:
    Kind kind_ = Kind::none;
    std::vector<double> xs_, hs_;
};

// value - h(reference_mean). The reference mean must be the expectation of
// the same functional the value was drawn from.
double h_centered(double value, const HCentering& h, double reference_mean);

struct RefinementDelta {
    double delta = 0.0;        // RV(coarse) - RV(fine) = 2 * raw_product
    double raw_product = 0.0;  // (X_b - X_{t*})(X_{t*} - X_a)
};

// Exact algebraic effect of inserting one point t* into a coarse interval:
// (X_b - X_a)^2 - (X_b - X_t*)^2 - (X_t* - X_a)^2 = 2(X_b - X_t*)(X_t* - X_a).
RefinementDelta refinement_delta(double x_a, double x_t_star, double x_b);

// Locates t* strictly inside one interval of the coarse partition and
// evaluates the delta from the values given at {a, t*, b}; throws when t*
// coincides with an existing coarse point.
RefinementDelta refinement_delta(std::span<const double> coarse_points,
                                 std::span<const double> coarse_values, double t_star,
                                 double x_t_star);

struct ReflectedPath {
    std::vector<double> values;
    std::vector<JumpEvent> jumps;
};

// Mirror the path about its value at partition point index pivot: values up
// to the pivot are unchanged, later ones are reflected, jump sizes after the
// pivot time are negated. RV over any partition containing the pivot is
// unchanged.
ReflectedPath reflect_path(std::span<const double> values, std::size_t pivot_index,
                           std::span<const JumpEvent> jumps = {},
                           std::span<const double> times = {});

}  // namespace qvo

#endif
