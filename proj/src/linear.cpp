#include "fiberlip/linear.hpp"

#include <cmath>
#include <utility>

#include "fiberlip/util.hpp"

namespace fiberlip {

LinearQuotient::LinearQuotient(Eigen::MatrixXd a, double rank_tol) : a_(std::move(a)) {
    if (a_.rows() == 0 || a_.cols() == 0) throw SpecError("quotient matrix must be nonempty");
    if (a_.rows() > a_.cols()) throw SpecError("quotient matrix has more rows than columns");
    cod_.setThreshold(rank_tol);
    cod_.compute(a_);
    if (cod_.rank() < a_.rows()) throw SpecError("quotient matrix is rank-deficient");
}

double LinearQuotient::fiber_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    // correction c = A^+ (A x - y); the nearest fiber point is x - c.
    const Eigen::VectorXd c = cod_.solve(a_ * x - y);
    return c.norm();
}

double LinearQuotient::scaled_fiber_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                             double lambda) const {
    if (lambda == 0.0) throw SpecError("scale must be nonzero");
    return fiber_distance(x, lambda * y);
}

Eigen::VectorXd LinearQuotient::nearest_in_fiber(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x - cod_.solve(a_ * x - y);
}

Eigen::VectorXd LinearQuotient::min_norm_preimage(const Eigen::VectorXd& y) const {
    return cod_.solve(y);
}

Eigen::MatrixXd LinearQuotient::kernel_projector() const {
    const Eigen::MatrixXd pinv_a = cod_.solve(a_); // A^+ A
    return Eigen::MatrixXd::Identity(a_.cols(), a_.cols()) - pinv_a;
}

LemmaCheck lemma_homogeneity_check(const LinearQuotient& q, const Eigen::VectorXd& x1,
                                   const Eigen::VectorXd& y2, double lambda, double tol) {
    if (lambda == 0.0) throw SpecError("lambda must be nonzero");
    LemmaCheck out;
    out.lhs = std::abs(lambda) * q.fiber_distance(x1, y2);
    out.rhs = q.scaled_fiber_distance(lambda * x1, y2, lambda);
    out.ok = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, out.lhs);
    return out;
}

} // namespace fiberlip
