#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fiberlip {

enum class Backend { matrix, euclidean, three_segment, koranyi, graph_geodesic };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

/// Heisenberg group product (x,y,t)*(x',y',t') = (x+x', y+y', t+t'+(xy'-yx')/2).
std::array<double, 3> heisenberg_mul(const std::array<double, 3>& p, const std::array<double, 3>& q);
std::array<double, 3> heisenberg_inv(const std::array<double, 3>& p);

/// Koranyi gauge |(x,y,t)| = ((x^2+y^2)^2 + 16 t^2)^(1/4). With this constant
/// the induced left-invariant gauge distance is a true metric.
double koranyi_gauge(double x, double y, double t);

/// Left-invariant gauge distance d(p,q) = |p^{-1} q|.
double koranyi_dist(const std::array<double, 3>& p, const std::array<double, 3>& q);

struct MetricViolation {
    enum class Kind { identity, positivity, symmetry, triangle };
    Kind kind;
    int i = -1, j = -1, k = -1;
    double magnitude = 0.0;
};

std::string violation_kind_name(MetricViolation::Kind k);

struct ValidationReport {
    std::vector<MetricViolation> violations; // detailed entries, capped
    std::size_t total = 0;                   // full count, including dropped entries
    bool truncated = false;
    double tolerance = 1e-9;

    bool ok() const { return total == 0; }
};

/// A finite point set with either a dense distance matrix or a closed-form
/// distance evaluator on the stored coordinates. Immutable after construction.
class MetricSpace {
public:
    static MetricSpace from_matrix(std::vector<std::vector<double>> points,
                                   std::vector<std::vector<double>> dist);
    static MetricSpace euclidean(std::vector<std::vector<double>> points);
    static MetricSpace three_segment(std::vector<std::vector<double>> points);
    static MetricSpace koranyi(std::vector<std::vector<double>> points);
    static MetricSpace graph_geodesic(std::vector<std::vector<double>> points,
                                      std::vector<std::vector<double>> shortest_paths);

    int size() const { return static_cast<int>(points_.size()); }
    Backend backend() const { return backend_; }
    const std::vector<double>& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::vector<double>>& points() const { return points_; }
    bool has_matrix() const { return !dist_.empty(); }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }

    double dist(int i, int j) const;

private:
    MetricSpace(Backend b, std::vector<std::vector<double>> pts, std::vector<std::vector<double>> dist);

    Backend backend_;
    std::vector<std::vector<double>> points_;
    std::vector<std::vector<double>> dist_; // empty unless matrix/graph_geodesic
};

/// Checks identity, positivity, symmetry, and the triangle inequality on all
/// sampled triples. Violations beyond `tol` are data, not errors.
ValidationReport validate_metric(const MetricSpace& m, double tol = 1e-9, std::size_t max_entries = 10000);

double euclidean_dist(const std::vector<double>& a, const std::vector<double>& b);

} // namespace fiberlip
