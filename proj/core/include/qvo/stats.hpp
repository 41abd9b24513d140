#ifndef QVO_STATS_HPP
#define QVO_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qvo {

// Pairwise (tree) summation over index order. The reduction tree depends
// only on n, never on thread count or batch layout, so results are
// bit-stable for a fixed sample set.
double pairwise_sum(std::span<const double> xs);

// Pairwise sum of f(i) for i in [0, n) without materializing the terms.
double pairwise_sum_transform(std::size_t n, const std::function<double(std::size_t)>& f);

struct MeanSe {
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

MeanSe mean_se(std::span<const double> xs);
MeanSe mean_se_transform(std::size_t n, const std::function<double(std::size_t)>& f);

// Empirical quantile of a sorted sample (linear interpolation).
double quantile_sorted(std::span<const double> sorted, double p);

struct KsResult {
    double statistic = 0.0;
    double critical = 0.0;
    double alpha = 0.0;
    bool pass = false;
};

// One-sample KS against a CDF; asymptotic critical value.
KsResult ks_test_cdf(std::vector<double> sample, const std::function<double(double)>& cdf,
                     double alpha);

// Two-sample KS; asymptotic critical value scaled by sqrt((n+m)/(n m)).
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

struct Chi2Result {
    double statistic = 0.0;
    double critical = 0.0;
    std::size_t bins = 0;
    bool pass = false;
};

// Two-sample chi-square homogeneity test on pooled-quantile bins.
Chi2Result chi2_two_sample(std::span<const double> a, std::span<const double> b, std::size_t bins,
                           double alpha);

}  // namespace qvo

#endif
