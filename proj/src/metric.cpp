#include "fiberlip/metric.hpp"

#include <cmath>
#include <utility>

#include "fiberlip/util.hpp"

namespace fiberlip {

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::matrix: return "matrix";
        case Backend::euclidean: return "euclidean";
        case Backend::three_segment: return "three_segment";
        case Backend::koranyi: return "koranyi";
        case Backend::graph_geodesic: return "graph_geodesic";
    }
    return "unknown";
}

Backend backend_from_name(const std::string& name) {
    if (name == "matrix") return Backend::matrix;
    if (name == "euclidean") return Backend::euclidean;
    if (name == "three_segment") return Backend::three_segment;
    if (name == "koranyi") return Backend::koranyi;
    if (name == "graph_geodesic") return Backend::graph_geodesic;
    throw SpecError("unknown metric backend: " + name);
}

std::array<double, 3> heisenberg_mul(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0])};
}

std::array<double, 3> heisenberg_inv(const std::array<double, 3>& p) {
    return {-p[0], -p[1], -p[2]};
}

double koranyi_gauge(double x, double y, double t) {
    const double r2 = x * x + y * y;
    return std::pow(r2 * r2 + 16.0 * t * t, 0.25);
}

double koranyi_dist(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    const auto d = heisenberg_mul(heisenberg_inv(p), q);
    return koranyi_gauge(d[0], d[1], d[2]);
}

std::string violation_kind_name(MetricViolation::Kind k) {
    switch (k) {
        case MetricViolation::Kind::identity: return "identity";
        case MetricViolation::Kind::positivity: return "positivity";
        case MetricViolation::Kind::symmetry: return "symmetry";
        case MetricViolation::Kind::triangle: return "triangle";
    }
    return "unknown";
}

double euclidean_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

MetricSpace::MetricSpace(Backend b, std::vector<std::vector<double>> pts, std::vector<std::vector<double>> dist)
    : backend_(b), points_(std::move(pts)), dist_(std::move(dist)) {}

MetricSpace MetricSpace::from_matrix(std::vector<std::vector<double>> points,
                                     std::vector<std::vector<double>> dist) {
    const std::size_t n = points.size();
    if (dist.size() != n) throw SpecError("distance matrix rows do not match point count");
    for (const auto& row : dist)
        if (row.size() != n) throw SpecError("distance matrix is not square");
    return MetricSpace(Backend::matrix, std::move(points), std::move(dist));
}

MetricSpace MetricSpace::euclidean(std::vector<std::vector<double>> points) {
    return MetricSpace(Backend::euclidean, std::move(points), {});
}

MetricSpace MetricSpace::three_segment(std::vector<std::vector<double>> points) {
    for (const auto& p : points)
        if (p.size() != 2) throw SpecError("three_segment points must be planar");
    return MetricSpace(Backend::three_segment, std::move(points), {});
}

MetricSpace MetricSpace::koranyi(std::vector<std::vector<double>> points) {
    for (const auto& p : points)
        if (p.size() != 3) throw SpecError("koranyi points must have (x, y, t) coordinates");
    return MetricSpace(Backend::koranyi, std::move(points), {});
}

MetricSpace MetricSpace::graph_geodesic(std::vector<std::vector<double>> points,
                                        std::vector<std::vector<double>> shortest_paths) {
    const std::size_t n = points.size();
    if (shortest_paths.size() != n) throw SpecError("geodesic matrix rows do not match point count");
    return MetricSpace(Backend::graph_geodesic, std::move(points), std::move(shortest_paths));
}

double MetricSpace::dist(int i, int j) const {
    switch (backend_) {
        case Backend::matrix:
        case Backend::graph_geodesic:
            return dist_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        case Backend::euclidean:
        case Backend::three_segment:
            return euclidean_dist(point(i), point(j));
        case Backend::koranyi: {
            const auto& p = point(i);
            const auto& q = point(j);
            return koranyi_dist({p[0], p[1], p[2]}, {q[0], q[1], q[2]});
        }
    }
    return 0.0;
}

ValidationReport validate_metric(const MetricSpace& m, double tol, std::size_t max_entries) {
    ValidationReport report;
    report.tolerance = tol;
    const int n = m.size();

    auto push = [&](MetricViolation v) {
        ++report.total;
        if (report.violations.size() < max_entries)
            report.violations.push_back(v);
        else
            report.truncated = true;
    };

    for (int i = 0; i < n; ++i) {
        const double dii = m.dist(i, i);
        if (std::abs(dii) > tol)
            push({MetricViolation::Kind::identity, i, i, -1, std::abs(dii)});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = m.dist(i, j);
            const double dji = m.dist(j, i);
            if (std::abs(dij - dji) > tol)
                push({MetricViolation::Kind::symmetry, i, j, -1, std::abs(dij - dji)});
            if (dij <= tol)
                push({MetricViolation::Kind::positivity, i, j, -1, dij});
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dij = m.dist(i, j);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double slack = dij - (m.dist(i, k) + m.dist(k, j));
                if (slack > tol)
                    push({MetricViolation::Kind::triangle, i, j, k, slack});
            }
        }
    }
    return report;
}

} // namespace fiberlip
