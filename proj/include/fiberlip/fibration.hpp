#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fiberlip/linear.hpp"
#include "fiberlip/metric.hpp"

namespace fiberlip {

/// A section phi: Y -> X stored as one point index per base label.
struct Section {
    std::vector<int> assign;

    int operator()(int label) const { return assign.at(static_cast<std::size_t>(label)); }
    int size() const { return static_cast<int>(assign.size()); }
};

/// Exact fiber-distance data for linear quotients: the fiber over label l is
/// the affine subspace {z : A z = label_coords[l]}.
struct AffineFiberModel {
    LinearQuotient quotient;
    std::vector<Eigen::VectorXd> label_coords;
};

/// A metric space X together with a surjective fiber-label map pi : X -> Y.
/// Base labels are opaque ids with optional coordinate payloads. Immutable
/// after construction; all queries are pure.
class Fibration {
public:
    Fibration(MetricSpace total, std::vector<int> fiber_of, std::vector<std::string> label_names = {},
              std::vector<std::vector<double>> label_coords = {});

    void attach_affine(AffineFiberModel model);

    const MetricSpace& total() const { return total_; }
    int num_points() const { return total_.size(); }
    int num_labels() const { return static_cast<int>(fibers_.size()); }
    int fiber_of(int point) const { return fiber_of_.at(static_cast<std::size_t>(point)); }
    std::span<const int> fiber(int label) const;
    const std::string& label_name(int label) const { return label_names_.at(static_cast<std::size_t>(label)); }
    const std::vector<std::string>& label_names() const { return label_names_; }
    bool has_label_coords() const { return !label_coords_.empty(); }
    const std::vector<double>& label_coords(int label) const { return label_coords_.at(static_cast<std::size_t>(label)); }
    bool has_affine() const { return affine_.has_value(); }
    const AffineFiberModel& affine() const { return *affine_; }

    double dist(int i, int j) const { return total_.dist(i, j); }

    /// min over p in pi^{-1}(label) of d(point, p); exact affine distance
    /// when an affine model is attached. Unknown labels raise "no such fiber".
    double dist_to_fiber(int point, int label) const;

    /// Same query for an arbitrary coordinate vector (affine model required).
    double dist_to_fiber(const Eigen::VectorXd& x, int label) const;

private:
    MetricSpace total_;
    std::vector<int> fiber_of_;
    std::vector<std::vector<int>> fibers_;
    std::vector<std::string> label_names_;
    std::vector<std::vector<double>> label_coords_;
    std::optional<AffineFiberModel> affine_;
};

/// True iff fiber_of(phi(y)) = y for every base label y.
bool validate_section(const Fibration& f, const Section& phi);

/// Throws SpecError with a diagnostic when phi is not a valid section.
void require_section(const Fibration& f, const Section& phi, const std::string& what);

} // namespace fiberlip
