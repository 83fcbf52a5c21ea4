#include "fiberlip/family.hpp"

#include <cmath>
#include <utility>

#include "fiberlip/util.hpp"

namespace fiberlip::family {

FamilyContext::FamilyContext(LinearQuotient quotient, std::vector<Eigen::VectorXd> base_compact,
                             VectorSection psi, int anchor_index, double tol)
    : quotient_(std::move(quotient)),
      base_(std::move(base_compact)),
      psi_(std::move(psi)),
      anchor_index_(anchor_index),
      psi_lipschitz_(1.0) {
    if (base_.empty()) throw SpecError("base compact must be nonempty");
    if (psi_.size() != base_.size()) throw SpecError("base section must cover the base sample");
    if (anchor_index_ < 0 || anchor_index_ >= base_size()) throw SpecError("anchor index out of range");
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (base_[i].size() != quotient_.base_dim()) throw SpecError("base sample dimension mismatch");
        if (psi_[i].size() != quotient_.ambient_dim()) throw SpecError("section value dimension mismatch");
        if ((quotient_.matrix() * psi_[i] - base_[i]).norm() > tol)
            throw SpecError("psi is not a section of the quotient over K");
    }
    // least intrinsic Lipschitz constant of psi over K (alpha = 1), clamped at 1
    double lip = 0.0;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        for (std::size_t j = 0; j < base_.size(); ++j) {
            if (i == j) continue;
            const double fd = quotient_.fiber_distance(psi_[i], base_[j]);
            if (fd <= 0.0) continue;
            lip = std::max(lip, ((psi_[i] - psi_[j]).norm() - fd) / fd);
        }
    }
    psi_lipschitz_ = std::max(1.0, lip);
}

bool FamilyContext::is_section_at_scale(const VectorSection& values, double lambda, double tol) const {
    if (values.size() != base_.size()) return false;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (values[i].size() != quotient_.ambient_dim()) return false;
        if ((quotient_.matrix() * values[i] - lambda * base_[i]).norm() > tol) return false;
    }
    return true;
}

ScaledMember ScaledMember::zero() {
    return ScaledMember{};
}

ScaledMember ScaledMember::from_plain(const VectorSection& phi, double lambda) {
    if (lambda == 0.0) throw SpecError("member scale must be nonzero");
    VectorSection values;
    values.reserve(phi.size());
    for (const auto& v : phi) values.push_back(lambda * v);
    return from_graph(std::move(values), lambda);
}

ScaledMember ScaledMember::from_graph(VectorSection values, double lambda) {
    if (lambda == 0.0) throw SpecError("member scale must be nonzero");
    if (values.empty()) throw SpecError("member has no section values");
    ScaledMember m;
    m.values_ = std::move(values);
    m.scale_ = lambda;
    m.zero_ = false;
    return m;
}

VectorSection ScaledMember::plain() const {
    if (zero_) throw SpecError("zero sentinel has no plain representative");
    VectorSection out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v / scale_);
    return out;
}

ScaledMember scale_member(double delta, const ScaledMember& m) {
    if (m.is_zero() || delta == 0.0) return ScaledMember::zero();
    VectorSection values;
    values.reserve(m.values().size());
    for (const auto& v : m.values()) values.push_back(delta * v);
    return ScaledMember::from_graph(std::move(values), delta * m.scale());
}

ScaledMember add_members(const ScaledMember& a, const ScaledMember& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.values().size() != b.values().size()) throw SpecError("members live over different base samples");
    const double lambda = a.scale() + b.scale();
    if (lambda == 0.0) throw SpecError("degenerate scale: member scales cancel");
    VectorSection values;
    values.reserve(a.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) values.push_back(a.values()[i] + b.values()[i]);
    return ScaledMember::from_graph(std::move(values), lambda);
}

MemberCertificate certify_member(const FamilyContext& ctx, const ScaledMember& m, double alpha, double tol) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw SpecError("alpha must lie in (0, 1]");
    MemberCertificate cert;
    if (m.is_zero()) throw SpecError("zero sentinel is not certified against a base");
    const double lambda = m.scale();
    const auto& g = m.values();
    if (static_cast<int>(g.size()) != ctx.base_size()) throw SpecError("member does not cover the base sample");

    cert.section_ok = ctx.is_section_at_scale(g, lambda, tol);
    const std::size_t yhat = static_cast<std::size_t>(ctx.anchor_index());
    const Eigen::VectorXd anchor_scaled = lambda * ctx.anchor();
    cert.anchored = (g[yhat] - anchor_scaled).norm() <= tol;

    double best = 0.0;
    bool finite = true;
    for (std::size_t y = 0; y < g.size(); ++y) {
        const double lhs = (g[y] - lambda * ctx.psi()[y]).norm();
        const double base = (anchor_scaled - lambda * ctx.psi()[y]).norm();
        if (base <= tol) {
            if (lhs > tol) finite = false;
            continue;
        }
        const double ba = alpha == 1.0 ? base : std::pow(base, alpha);
        best = std::max(best, (lhs - base) / ba);
    }
    cert.min_constant = best;
    cert.finite = finite;
    return cert;
}

ClosureReport check_vector_space_closure(const FamilyContext& ctx, const std::vector<ScaledMember>& members,
                                         double delta_for_scalar, double alpha) {
    if (members.empty()) throw SpecError("closure check needs at least one member");
    ClosureReport out;
    out.sum_member = members.front();
    for (std::size_t i = 1; i < members.size(); ++i) out.sum_member = add_members(out.sum_member, members[i]);

    if (out.sum_member.is_zero()) throw SpecError("degenerate scale: member scales cancel");
    out.sum_is_section = ctx.is_section_at_scale(out.sum_member.values(), out.sum_member.scale());
    const auto sum_cert = certify_member(ctx, out.sum_member, alpha);
    out.sum_anchored = sum_cert.anchored;
    out.sum_constant = sum_cert.min_constant;

    const ScaledMember scaled = scale_member(delta_for_scalar, members.front());
    if (scaled.is_zero()) {
        out.scalar_ok = true; // 0 * m is the adjoined zero element
        out.scalar_constant = 0.0;
    } else {
        const auto cert = certify_member(ctx, scaled, alpha);
        out.scalar_ok = cert.section_ok && cert.anchored && cert.finite;
        out.scalar_constant = cert.min_constant;
    }
    return out;
}

} // namespace fiberlip::family
