#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace flatlab {

/**
 * A finite metric space: ordered point labels plus a dense symmetric
 * distance matrix. This is the common output type of every surgery and
 * the carrier for all distance-function comparisons.
 *
 * Construction does not validate the metric axioms; verify_metric_axioms
 * does that explicitly so callers can choose a tolerance.
 */
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    FiniteMetricSpace(std::vector<std::string> points, std::vector<double> dist_row_major);

    std::size_t size() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<double>& data() const { return dist_; }

    double at(std::size_t i, std::size_t j) const { return dist_[i * points_.size() + j]; }
    void set(std::size_t i, std::size_t j, double v);

    std::size_t index_of(const std::string& id) const;
    bool has_point(const std::string& id) const { return index_.count(id) != 0; }

    double diameter() const;

    /// CSV layout: header row of point ids, then one matrix row per point.
    std::string to_csv() const;
    static FiniteMetricSpace from_csv(const std::string& csv);

    /// Compact binary cache: magic "FMS1", u32 point count, point ids as
    /// (u32 length, bytes), then f64 row-major strict upper triangle.
    std::vector<unsigned char> to_fms1() const;
    static FiniteMetricSpace from_fms1(const std::vector<unsigned char>& bytes);

private:
    std::vector<std::string> points_;
    std::vector<double> dist_; // row-major, size() * size()
    std::unordered_map<std::string, std::size_t> index_;

    void rebuild_index();
};

struct MetricAxiomReport {
    bool pass = false;
    double worst_diagonal = 0.0;        // max |d(i,i)|
    double worst_asymmetry = 0.0;       // max |d(i,j) - d(j,i)|
    double worst_positivity = 0.0;      // most negative off-diagonal margin, min d(i,j) over i!=j
    double worst_triangle_defect = 0.0; // max d(i,k) - d(i,j) - d(j,k)
    std::array<std::string, 3> worst_triple{};
    double tolerance = 0.0;
};

/// Checks diagonal-zero, symmetry, positivity and all triangle inequalities
/// within an absolute tolerance. Throws std::invalid_argument on NaN entries.
MetricAxiomReport verify_metric_axioms(const FiniteMetricSpace& space, double tau_metric);

struct BilipschitzReport {
    double c_lower = 0.0;      // min over pairs of d2/d1
    double C_upper = 0.0;      // max over pairs of d2/d1
    double sup_abs_diff = 0.0; // max |d2 - d1| over pairs
    std::pair<std::string, std::string> argmax_pair;
};

/// Two-sided ratio comparison of metrics over the same point set.
BilipschitzReport bilipschitz_compare(const FiniteMetricSpace& d1, const FiniteMetricSpace& d2);

/// F maps point ids of the output space to point ids of d_target;
/// output dist(x, y) = d_target(F(x), F(y)). F must be a bijection.
FiniteMetricSpace pullback_metric(const FiniteMetricSpace& d_target,
                                  const std::unordered_map<std::string, std::string>& F);

/// sup |d1 - d2| over all pairs; point sets must coincide (order-insensitive).
double uniform_distance(const FiniteMetricSpace& d1, const FiniteMetricSpace& d2);

} // namespace flatlab
