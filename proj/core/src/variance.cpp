#include "qvo/variance.hpp"

#include <cmath>
#include <stdexcept>

namespace qvo {

double realized_variance(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("realized_variance: need at least 2 points");
    double rv = 0.0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double d = values[k] - values[k - 1];
        rv += d * d;
    }
    return rv;
}

double rv_of_drift(std::span<const double> drift_values) { return realized_variance(drift_values); }

HCentering HCentering::custom(std::vector<double> xs, std::vector<double> hs) {
    if (xs.size() != hs.size() || xs.size() < 2)
        throw std::invalid_argument("h-centering: table needs >= 2 matching pairs");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("h-centering: table x must be strictly increasing");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (std::abs(hs[i] - hs[j]) > std::abs(xs[i] - xs[j]) * (1.0 + 1e-12))
                throw std::invalid_argument(
                    "h-centering: table violates the Lipschitz-1 bound between x=" +
                    std::to_string(xs[i]) + " and x=" + std::to_string(xs[j]));
        }
    }
    HCentering h;
    h.kind_ = Kind::custom_lipschitz;
    h.xs_ = std::move(xs);
    h.hs_ = std::move(hs);
    return h;
}

double HCentering::operator()(double x) const {
    switch (kind_) {
        case Kind::none:
            return 0.0;
        case Kind::mean:
            return x;
        case Kind::custom_lipschitz: {
            if (x < xs_.front() || x > xs_.back())
                throw std::out_of_range("h-centering: reference mean outside table range");
            std::size_t hi = 1;
            while (hi + 1 < xs_.size() && xs_[hi] < x) ++hi;
            const double w = (x - xs_[hi - 1]) / (xs_[hi] - xs_[hi - 1]);
            return hs_[hi - 1] * (1.0 - w) + hs_[hi] * w;
        }
    }
    throw std::logic_error("h-centering: unknown kind");
}

double h_centered(double value, const HCentering& h, double reference_mean) {
    return value - h(reference_mean);
}

RefinementDelta refinement_delta(double x_a, double x_t_star, double x_b) {
    RefinementDelta d;
    d.raw_product = (x_b - x_t_star) * (x_t_star - x_a);
    d.delta = 2.0 * d.raw_product;
    return d;
}

RefinementDelta refinement_delta(std::span<const double> coarse_points,
                                 std::span<const double> coarse_values, double t_star,
                                 double x_t_star) {
    if (coarse_points.size() != coarse_values.size() || coarse_points.size() < 2)
        throw std::invalid_argument("refinement_delta: points/values mismatch");
    for (std::size_t k = 0; k < coarse_points.size(); ++k) {
        if (coarse_points[k] == t_star)
            throw std::invalid_argument("refinement_delta: t* coincides with a coarse point");
    }
    for (std::size_t k = 1; k < coarse_points.size(); ++k) {
        if (coarse_points[k - 1] < t_star && t_star < coarse_points[k])
            return refinement_delta(coarse_values[k - 1], x_t_star, coarse_values[k]);
    }
    throw std::invalid_argument("refinement_delta: t* outside the partition span");
}

ReflectedPath reflect_path(std::span<const double> values, std::size_t pivot_index,
                           std::span<const JumpEvent> jumps, std::span<const double> times) {
    if (pivot_index >= values.size())
        throw std::invalid_argument("reflect_path: pivot must be a partition point index");
    ReflectedPath out;
    out.values.assign(values.begin(), values.end());
    const double anchor = values[pivot_index];
    for (std::size_t k = pivot_index + 1; k < values.size(); ++k)
        out.values[k] = anchor - (values[k] - anchor);
    out.jumps.assign(jumps.begin(), jumps.end());
    if (!jumps.empty()) {
        if (times.size() != values.size())
            throw std::invalid_argument("reflect_path: need partition times to place the ledger");
        const double t_star = times[pivot_index];
        for (auto& jmp : out.jumps) {
            if (jmp.time > t_star) jmp.size = -jmp.size;
        }
    }
    return out;
}

}  // namespace qvo
