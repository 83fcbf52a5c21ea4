#pragma once

#include <Eigen/Dense>

namespace fiberlip {

/// A linear surjective map A : R^kappa -> R^m (full row rank) regarded as a
/// quotient map. Fibers are the affine subspaces {z : A z = y}; distances to
/// them are computed by orthogonal projection (min-norm least squares), so
/// they are exact up to rounding.
class LinearQuotient {
public:
    explicit LinearQuotient(Eigen::MatrixXd a, double rank_tol = 1e-10);

    int ambient_dim() const { return static_cast<int>(a_.cols()); } // kappa
    int base_dim() const { return static_cast<int>(a_.rows()); }    // m
    const Eigen::MatrixXd& matrix() const { return a_; }

    Eigen::VectorXd label_of(const Eigen::VectorXd& x) const { return a_ * x; }

    /// d(x, {z : A z = y}).
    double fiber_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Distance from x to the fiber of the scaled map (1/lambda) A over y,
    /// i.e. to {z : A z = lambda y} (the lambda-dilate of the fiber over y).
    double scaled_fiber_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double lambda) const;

    /// Orthogonal projection of x onto the fiber over y.
    Eigen::VectorXd nearest_in_fiber(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Min-norm preimage A^+ y (a canonical section value over y).
    Eigen::VectorXd min_norm_preimage(const Eigen::VectorXd& y) const;

    /// I - A^+ A, the orthogonal projector onto ker A.
    Eigen::MatrixXd kernel_projector() const;

private:
    Eigen::MatrixXd a_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

struct LemmaCheck {
    double lhs = 0.0; // |lambda| d(x1, pi^{-1}(y2))
    double rhs = 0.0; // d(lambda x1, (1/lambda pi)^{-1}(y2))
    bool ok = false;
};

/// Scaling identity for linear quotients:
/// |lambda| d(x1, pi^{-1}(y2)) = d(lambda x1, (1/lambda pi)^{-1}(y2)).
/// ok iff |lhs - rhs| <= tol * max(1, lhs). lambda must be nonzero.
LemmaCheck lemma_homogeneity_check(const LinearQuotient& q, const Eigen::VectorXd& x1,
                                   const Eigen::VectorXd& y2, double lambda, double tol = 1e-9);

} // namespace fiberlip
