#include "qvo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qvo/special.hpp"

namespace qvo {
namespace {

constexpr std::size_t pairwise_block = 64;

double pairwise_range(std::span<const double> xs, std::size_t lo, std::size_t hi) {
    if (hi - lo <= pairwise_block) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_range(xs, lo, mid) + pairwise_range(xs, mid, hi);
}

double pairwise_range_f(const std::function<double(std::size_t)>& f, std::size_t lo,
                        std::size_t hi) {
    if (hi - lo <= pairwise_block) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_range_f(f, lo, mid) + pairwise_range_f(f, mid, hi);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return pairwise_range(xs, 0, xs.size());
}

double pairwise_sum_transform(std::size_t n, const std::function<double(std::size_t)>& f) {
    if (n == 0) return 0.0;
    return pairwise_range_f(f, 0, n);
}

MeanSe mean_se(std::span<const double> xs) {
    return mean_se_transform(xs.size(), [&xs](std::size_t i) { return xs[i]; });
}

MeanSe mean_se_transform(std::size_t n, const std::function<double(std::size_t)>& f) {
    MeanSe r;
    r.n = n;
    if (n == 0) return r;
    const double mean = pairwise_sum_transform(n, f) / double(n);
    r.mean = mean;
    if (n < 2) return r;
    const double ss = pairwise_sum_transform(n, [&](std::size_t i) {
        const double d = f(i) - mean;
        return d * d;
    });
    r.sd = std::sqrt(ss / double(n - 1));
    r.se = r.sd / std::sqrt(double(n));
    return r;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double pos = p * double(sorted.size() - 1);
    const std::size_t lo = std::size_t(pos);
    const double frac = pos - double(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

KsResult ks_test_cdf(std::vector<double> sample, const std::function<double(double)>& cdf,
                     double alpha) {
    if (sample.empty()) throw std::invalid_argument("ks_test_cdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = double(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, std::abs(double(i + 1) / n - F));
        d = std::max(d, std::abs(F - double(i) / n));
    }
    KsResult r;
    r.statistic = d;
    r.alpha = alpha;
    r.critical = kolmogorov_critical(alpha) / std::sqrt(n);
    r.pass = d <= r.critical;
    return r;
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < n && j < m) {
        const double x = std::min(a[i], b[j]);
        while (i < n && a[i] <= x) ++i;
        while (j < m && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / double(n) - double(j) / double(m)));
    }
    KsResult r;
    r.statistic = d;
    r.alpha = alpha;
    r.critical = kolmogorov_critical(alpha) * std::sqrt(double(n + m) / (double(n) * double(m)));
    r.pass = d <= r.critical;
    return r;
}

Chi2Result chi2_two_sample(std::span<const double> a, std::span<const double> b, std::size_t bins,
                           double alpha) {
    if (a.size() < bins * 5 || b.size() < bins * 5)
        throw std::invalid_argument("chi2_two_sample: samples too small for bin count");
    std::vector<double> pooled;
    pooled.reserve(a.size() + b.size());
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> edges(bins - 1);
    for (std::size_t k = 1; k < bins; ++k)
        edges[k - 1] = quantile_sorted(pooled, double(k) / double(bins));

    const auto count = [&edges, bins](std::span<const double> xs) {
        std::vector<double> c(bins, 0.0);
        for (double x : xs) {
            const std::size_t k =
                std::upper_bound(edges.begin(), edges.end(), x) - edges.begin();
            c[k] += 1.0;
        }
        return c;
    };
    const std::vector<double> ca = count(a);
    const std::vector<double> cb = count(b);
    const double na = double(a.size()), nb = double(b.size());
    double stat = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        const double tot = ca[k] + cb[k];
        if (tot == 0.0) continue;
        const double ea = tot * na / (na + nb);
        const double eb = tot * nb / (na + nb);
        stat += (ca[k] - ea) * (ca[k] - ea) / ea + (cb[k] - eb) * (cb[k] - eb) / eb;
    }
    Chi2Result r;
    r.statistic = stat;
    r.bins = bins;
    r.critical = chi2_upper_quantile(alpha, double(bins - 1));
    r.pass = stat <= r.critical;
    return r;
}

}  // namespace qvo
