#include "qvo/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qvo {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("partition: need at least 2 points");
    if (points_.front() != 0.0) throw std::invalid_argument("partition: first point must be 0");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i] > points_[i - 1]))
            throw std::invalid_argument("partition: points must be strictly increasing");
    }
}

Partition Partition::uniform(double T, std::size_t n) {
    if (!(T > 0.0)) throw std::invalid_argument("partition: T must be > 0");
    if (n == 0) throw std::invalid_argument("partition: n must be >= 1");
    std::vector<double> pts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) pts[k] = T * double(k) / double(n);
    pts[0] = 0.0;
    pts[n] = T;
    return Partition(std::move(pts));
}

Partition Partition::dyadic_refine() const {
    std::vector<double> pts;
    pts.reserve(2 * points_.size() - 1);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
        pts.push_back(points_[k]);
        pts.push_back(0.5 * (points_[k] + points_[k + 1]));
    }
    pts.push_back(points_.back());
    return Partition(std::move(pts));
}

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < points_.size(); ++k)
        m = std::max(m, points_[k + 1] - points_[k]);
    return m;
}

bool Partition::refined_by(const Partition& finer) const {
    for (double p : points_) {
        if (!std::binary_search(finer.points_.begin(), finer.points_.end(), p)) return false;
    }
    return true;
}

std::vector<std::size_t> Partition::indices_in(const Partition& finer) const {
    std::vector<std::size_t> idx;
    idx.reserve(points_.size());
    for (double p : points_) {
        const auto it = std::lower_bound(finer.points_.begin(), finer.points_.end(), p);
        if (it == finer.points_.end() || *it != p)
            throw std::invalid_argument("partition: not nested in the finer partition");
        idx.push_back(std::size_t(it - finer.points_.begin()));
    }
    return idx;
}

void NestedSequence::validate() const {
    if (levels.empty()) throw std::invalid_argument("nested sequence: empty");
    for (std::size_t m = 1; m < levels.size(); ++m) {
        if (!levels[m - 1].refined_by(levels[m]))
            throw std::invalid_argument("nested sequence: level " + std::to_string(m) +
                                        " does not refine its predecessor");
    }
}

std::vector<InsertionStep> NestedSequence::single_insertion_steps() const {
    validate();
    std::vector<InsertionStep> steps;
    for (std::size_t m = 1; m < levels.size(); ++m) {
        const auto& coarse = levels[m - 1].points();
        const auto& fine = levels[m].points();
        if (fine.size() != coarse.size() + 1)
            throw std::invalid_argument("nested sequence: level " + std::to_string(m) +
                                        " inserts more than one point");
        InsertionStep s;
        s.coarse_level = m - 1;
        std::size_t i = 0;
        while (i < coarse.size() && coarse[i] == fine[i]) ++i;
        s.t_star = fine[i];
        s.a = fine[i - 1];
        s.b = fine[i + 1];
        steps.push_back(s);
    }
    return steps;
}

NestedSequence nested_dyadic(double T, std::size_t depth) {
    NestedSequence seq;
    seq.levels.push_back(Partition::uniform(T, 1));
    for (std::size_t m = 0; m < depth; ++m)
        seq.levels.push_back(seq.levels.back().dyadic_refine());
    return seq;
}

NestedSequence nested_single_insertions(double T, std::size_t steps) {
    NestedSequence seq;
    seq.levels.push_back(Partition::uniform(T, 1));
    for (std::size_t s = 0; s < steps; ++s) {
        const auto& pts = seq.levels.back().points();
        std::size_t widest = 0;
        double w = 0.0;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const double len = pts[k + 1] - pts[k];
            if (len > w + 1e-15 * T) {
                w = len;
                widest = k;
            }
        }
        std::vector<double> next(pts);
        next.insert(next.begin() + widest + 1, 0.5 * (pts[widest] + pts[widest + 1]));
        seq.levels.push_back(Partition(std::move(next)));
    }
    return seq;
}

Partition make_partition(double T, std::size_t n, PartitionScheme scheme,
                         std::span<const double> points) {
    switch (scheme) {
        case PartitionScheme::uniform:
            return Partition::uniform(T, n);
        case PartitionScheme::dyadic_refine:
            return Partition::uniform(T, n).dyadic_refine();
        case PartitionScheme::explicit_points:
            return Partition(std::vector<double>(points.begin(), points.end()));
    }
    throw std::invalid_argument("make_partition: unknown scheme");
}

}  // namespace qvo
