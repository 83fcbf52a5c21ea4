#include "fiberlip/fibration.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "fiberlip/util.hpp"

namespace fiberlip {

Fibration::Fibration(MetricSpace total, std::vector<int> fiber_of, std::vector<std::string> label_names,
                     std::vector<std::vector<double>> label_coords)
    : total_(std::move(total)),
      fiber_of_(std::move(fiber_of)),
      label_names_(std::move(label_names)),
      label_coords_(std::move(label_coords)) {
    if (static_cast<int>(fiber_of_.size()) != total_.size())
        throw SpecError("fiber map must be total on X");
    int num_labels = 0;
    for (int l : fiber_of_) {
        if (l < 0) throw SpecError("negative base label index");
        num_labels = std::max(num_labels, l + 1);
    }
    if (!label_names_.empty() && static_cast<int>(label_names_.size()) < num_labels)
        throw SpecError("label name table shorter than label range");
    if (label_names_.empty()) {
        label_names_.reserve(static_cast<std::size_t>(num_labels));
        for (int l = 0; l < num_labels; ++l) label_names_.push_back(std::to_string(l));
    }
    num_labels = std::max(num_labels, static_cast<int>(label_names_.size()));
    fibers_.assign(static_cast<std::size_t>(num_labels), {});
    for (int p = 0; p < total_.size(); ++p)
        fibers_[static_cast<std::size_t>(fiber_of_[static_cast<std::size_t>(p)])].push_back(p);
    for (int l = 0; l < num_labels; ++l)
        if (fibers_[static_cast<std::size_t>(l)].empty())
            throw SpecError("fiber map is not surjective: label '" + label_names_[static_cast<std::size_t>(l)] +
                            "' has no preimage");
    if (!label_coords_.empty() && static_cast<int>(label_coords_.size()) != num_labels)
        throw SpecError("label coordinate table does not match label count");
}

void Fibration::attach_affine(AffineFiberModel model) {
    if (static_cast<int>(model.label_coords.size()) != num_labels())
        throw SpecError("affine model must provide coordinates for every base label");
    affine_.emplace(std::move(model));
}

std::span<const int> Fibration::fiber(int label) const {
    if (label < 0 || label >= num_labels()) throw SpecError("no such fiber");
    return fibers_[static_cast<std::size_t>(label)];
}

double Fibration::dist_to_fiber(int point, int label) const {
    if (label < 0 || label >= num_labels()) throw SpecError("no such fiber");
    if (point < 0 || point >= num_points()) throw SpecError("point index out of range");
    if (affine_) {
        const auto& coords = total_.point(point);
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<long>(coords.size()));
        return affine_->quotient.fiber_distance(x, affine_->label_coords[static_cast<std::size_t>(label)]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int p : fibers_[static_cast<std::size_t>(label)])
        best = std::min(best, total_.dist(point, p));
    return best;
}

double Fibration::dist_to_fiber(const Eigen::VectorXd& x, int label) const {
    if (label < 0 || label >= num_labels()) throw SpecError("no such fiber");
    if (!affine_) throw SpecError("coordinate fiber distance requires an affine model");
    return affine_->quotient.fiber_distance(x, affine_->label_coords[static_cast<std::size_t>(label)]);
}

bool validate_section(const Fibration& f, const Section& phi) {
    if (phi.size() != f.num_labels()) return false;
    for (int y = 0; y < f.num_labels(); ++y) {
        const int p = phi(y);
        if (p < 0 || p >= f.num_points()) return false;
        if (f.fiber_of(p) != y) return false;
    }
    return true;
}

void require_section(const Fibration& f, const Section& phi, const std::string& what) {
    if (!validate_section(f, phi)) throw SpecError(what + ": not a valid section (pi o phi != id)");
}

} // namespace fiberlip
