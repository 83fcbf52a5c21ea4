#pragma once

#include <optional>
#include <vector>

#include "fiberlip/linear.hpp"

namespace fiberlip::family {

/// Section values over a finite base sample, one ambient vector per label.
using VectorSection = std::vector<Eigen::VectorXd>;

/// Shared data of a scaled family of intrinsically Lipschitz sections over a
/// linear quotient: the base sample K, the base section psi restricted to K,
/// and the anchor xhat = psi(yhat).
class FamilyContext {
public:
    FamilyContext(LinearQuotient quotient, std::vector<Eigen::VectorXd> base_compact, VectorSection psi,
                  int anchor_index, double tol = 1e-9);

    const LinearQuotient& quotient() const { return quotient_; }
    const std::vector<Eigen::VectorXd>& base() const { return base_; }
    int base_size() const { return static_cast<int>(base_.size()); }
    const VectorSection& psi() const { return psi_; }
    int anchor_index() const { return anchor_index_; }
    const Eigen::VectorXd& anchor() const { return psi_[static_cast<std::size_t>(anchor_index_)]; }
    /// Least intrinsic Lipschitz constant of psi over K, clamped at 1.
    double psi_lipschitz() const { return psi_lipschitz_; }

    /// ||A v(y) - lambda y|| <= tol for every base sample, i.e. v is a section
    /// of the lambda-scaled quotient data over K.
    bool is_section_at_scale(const VectorSection& values, double lambda, double tol = 1e-9) const;

private:
    LinearQuotient quotient_;
    std::vector<Eigen::VectorXd> base_;
    VectorSection psi_;
    int anchor_index_;
    double psi_lipschitz_;
};

/// One member of the scaled family: the graph values g with A g(y) = lambda y
/// plus the scale lambda itself. Scalar multiplication rescales both; the
/// adjoined zero element is a sentinel (not a section of any quotient).
class ScaledMember {
public:
    /// Default-constructs the zero sentinel.
    ScaledMember() = default;

    static ScaledMember zero();
    /// Member lambda * phi from a plain section phi (A phi(y) = y).
    static ScaledMember from_plain(const VectorSection& phi, double lambda);
    /// Member from already-scaled graph values (A values(y) = lambda y).
    static ScaledMember from_graph(VectorSection values, double lambda);

    bool is_zero() const { return zero_; }
    double scale() const { return scale_; }
    const VectorSection& values() const { return values_; }
    /// Plain representative values / lambda.
    VectorSection plain() const;

private:
    VectorSection values_;
    double scale_ = 0.0;
    bool zero_ = true;
};

/// delta * m: rescales section values and family scale together.
ScaledMember scale_member(double delta, const ScaledMember& m);

/// Pointwise sum with scale lambda1 + lambda2. Throws "degenerate scale" when
/// the scales cancel (the sum leaves the family).
ScaledMember add_members(const ScaledMember& a, const ScaledMember& b);

struct MemberCertificate {
    bool anchored = false;     // g(yhat) = lambda xhat
    bool section_ok = false;   // A g(y) = lambda y on K
    double min_constant = 0.0; // least L in the wrt-psi condition at scale lambda
    bool finite = false;
};

/// Certifies m against its scaled base (lambda psi at lambda xhat):
/// d(g(y), lambda psi(y)) <= L d(lambda psi(yhat), lambda psi(y))^alpha + d(...)
/// and reports the least such L.
MemberCertificate certify_member(const FamilyContext& ctx, const ScaledMember& m, double alpha = 1.0,
                                 double tol = 1e-9);

struct ClosureReport {
    ScaledMember sum_member;
    double sum_constant = 0.0; // wrt constant of the sum at scale sum(lambda_i)
    bool sum_is_section = false;
    bool sum_anchored = false;
    bool scalar_ok = false;       // delta * members[0] stays in the family at scale delta*lambda
    double scalar_constant = 0.0; // its wrt constant
};

/// Vector-space closure check: folds the member sum, validates it as a section
/// of the rescaled quotient data, certifies it against the rescaled base, and
/// checks a scalar multiple of the first member.
ClosureReport check_vector_space_closure(const FamilyContext& ctx, const std::vector<ScaledMember>& members,
                                         double delta_for_scalar = -1.0, double alpha = 1.0);

} // namespace fiberlip::family
