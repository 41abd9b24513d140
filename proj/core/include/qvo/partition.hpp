#ifndef QVO_PARTITION_HPP
#define QVO_PARTITION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace qvo {

// Division points 0 = t_0 < t_1 < ... < t_n = T, in years.
class Partition {
  public:
    Partition() = default;
    // Throws std::invalid_argument unless points are strictly increasing,
    // start at 0 and have at least one interval.
    explicit Partition(std::vector<double> points);

    static Partition uniform(double T, std::size_t n);
    static Partition explicit_points(std::vector<double> points) {
        return Partition(std::move(points));
    }
    // Midpoint insertion into every interval; the result refines *this.
    Partition dyadic_refine() const;

    const std::vector<double>& points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }
    std::size_t intervals() const { return points_.size() - 1; }
    double horizon() const { return points_.back(); }
    double mesh() const;
    double dt(std::size_t k) const { return points_[k + 1] - points_[k]; }

    // True when every division point of *this is a division point of finer.
    bool refined_by(const Partition& finer) const;
    // Indices of this partition's points inside a refining partition.
    std::vector<std::size_t> indices_in(const Partition& finer) const;

  private:
    std::vector<double> points_;
};

// One refinement step that inserts a single point t* into the interval
// (a, b) of the coarser partition.
struct InsertionStep {
    std::size_t coarse_level = 0;  // index of the coarser partition
    double a = 0.0, t_star = 0.0, b = 0.0;
};

// Ordered list of partitions, each refining the previous one.
struct NestedSequence {
    std::vector<Partition> levels;

    // Throws unless every level refines its predecessor.
    void validate() const;
    // Steps for sequences in which consecutive levels differ by exactly one
    // point; throws otherwise.
    std::vector<InsertionStep> single_insertion_steps() const;
};

// Dyadic nesting: level m has 2^m uniform intervals on [0, T].
NestedSequence nested_dyadic(double T, std::size_t depth);

// Nesting in which each level inserts exactly one point: the midpoint of the
// currently widest interval (leftmost among ties), starting from {0, T}.
NestedSequence nested_single_insertions(double T, std::size_t steps);

enum class PartitionScheme { uniform, dyadic_refine, explicit_points };

// uniform: n intervals on [0,T].  dyadic_refine: uniform(T, n) refined once
// by midpoint insertion.  explicit_points: caller-supplied division points.
Partition make_partition(double T, std::size_t n, PartitionScheme scheme,
                         std::span<const double> points = {});

}  // namespace qvo

#endif
