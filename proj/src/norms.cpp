#include "fiberlip/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fiberlip/spaces.hpp"
#include "fiberlip/util.hpp"

namespace fiberlip::norms {

namespace {

void require_covers_base(const family::ScaledMember& m, const family::FamilyContext& ctx) {
    if (static_cast<int>(m.values().size()) != ctx.base_size())
        throw SpecError("section missing a base point");
}

double checked(const SeminormPaths& paths, double tol, const char* what) {
    if (std::abs(paths.direct - paths.reduced) > tol * std::max(1.0, std::abs(paths.direct)))
        throw std::logic_error(std::string(what) + ": scaled-fiber and reduced evaluation paths disagree");
    return paths.direct;
}

} // namespace

double sup_norm(const family::ScaledMember& m, const family::FamilyContext& ctx) {
    if (m.is_zero()) return 0.0;
    require_covers_base(m, ctx);
    double best = 0.0;
    for (const auto& v : m.values()) best = std::max(best, v.norm());
    return best;
}

SeminormPaths seminorm_v1_paths(const family::ScaledMember& m, const family::FamilyContext& ctx) {
    SeminormPaths out;
    if (m.is_zero()) return out;
    require_covers_base(m, ctx);
    const auto& q = ctx.quotient();
    const double lambda = m.scale();
    const Eigen::VectorXd yhat = q.label_of(ctx.anchor()); // pi(xhat)
    for (const auto& g : m.values()) {
        out.direct = std::max(out.direct, q.scaled_fiber_distance(g, yhat, lambda));
        out.reduced = std::max(out.reduced, std::abs(lambda) * q.fiber_distance(g / lambda, yhat));
    }
    return out;
}

double seminorm_v1(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol) {
    return checked(seminorm_v1_paths(m, ctx), tol, "seminorm_v1");
}

NormResult norm_v1(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol) {
    NormResult r;
    r.sup_part = sup_norm(m, ctx);
    r.semi_part = seminorm_v1(m, ctx, tol);
    r.total = r.sup_part + r.semi_part;
    return r;
}

SeminormPaths seminorm_v2_paths(const family::ScaledMember& m, const family::FamilyContext& ctx) {
    SeminormPaths out;
    if (m.is_zero()) return out;
    require_covers_base(m, ctx);
    const auto& q = ctx.quotient();
    const double lambda = m.scale();
    const Eigen::VectorXd anchor_scaled = lambda * ctx.anchor();
    for (const auto& y : ctx.base()) {
        out.direct = std::max(out.direct, q.scaled_fiber_distance(anchor_scaled, y, lambda));
        out.reduced = std::max(out.reduced, std::abs(lambda) * q.fiber_distance(ctx.anchor(), y));
    }
    return out;
}

double seminorm_v2(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol) {
    return checked(seminorm_v2_paths(m, ctx), tol, "seminorm_v2");
}

NormResult norm_v2(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol) {
    NormResult r;
    r.sup_part = sup_norm(m, ctx);
    r.semi_part = seminorm_v2(m, ctx, tol);
    r.total = r.sup_part + r.semi_part;
    return r;
}

std::vector<LimitRow> limit_check(const LinearQuotient& q, const std::vector<double>& base_samples,
                                  const family::VectorSection& phi, int t_index,
                                  const std::vector<double>& h_values) {
    if (q.base_dim() != 1) throw SpecError("limit_check needs a real-interval base");
    if (phi.size() != base_samples.size()) throw SpecError("section missing a base point");
    if (t_index < 0 || t_index >= static_cast<int>(base_samples.size()))
        throw SpecError("t outside sampled base");
    const double t = base_samples[static_cast<std::size_t>(t_index)];
    auto sample_at = [&](double value) {
        for (std::size_t i = 0; i < base_samples.size(); ++i)
            if (std::abs(base_samples[i] - value) <= 1e-12) return static_cast<int>(i);
        throw SpecError("t+h outside sampled base");
    };

    std::vector<LimitRow> rows;
    rows.reserve(h_values.size());
    const Eigen::VectorXd t_vec = Eigen::VectorXd::Constant(1, t);
    for (double h : h_values) {
        if (!(h > 0.0)) throw SpecError("h values must be positive");
        const int th_index = sample_at(t + h);
        const auto& phi_th = phi[static_cast<std::size_t>(th_index)];
        const auto& phi_t = phi[static_cast<std::size_t>(t_index)];
        const Eigen::VectorXd th_vec = Eigen::VectorXd::Constant(1, t + h);
        LimitRow row;
        row.h = h;
        row.ratio_forward = q.scaled_fiber_distance(h * phi_th, t_vec, h) / h;
        row.ratio_backward = q.scaled_fiber_distance(h * phi_t, th_vec, h) / h;
        row.bound = (phi_th - phi_t).norm();
        rows.push_back(row);
    }
    return rows;
}

AsymmetryReport asymmetry_demo(int resolution) {
    const auto sc = spaces::three_segment_space(resolution);
    const Fibration& f = sc.fibration;
    AsymmetryReport rep;

    // first display line: d(f(y), F_x) - d(f(z), F_x) <= d(f(y), f(z)) holds
    // for every map into X, checked here on all sampled triples of the
    // corrected section
    const int n = f.num_labels();
    double worst = -std::numeric_limits<double>::infinity();
    long count = 0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const double dy = f.dist_to_fiber(sc.corrected(y), x);
            for (int z = 0; z < n; ++z) {
                const double dz = f.dist_to_fiber(sc.corrected(z), x);
                const double slack = dy - dz - f.dist(sc.corrected(y), sc.corrected(z));
                worst = std::max(worst, slack);
                ++count;
            }
        }
    }
    // and on the written (non-section) assignment over the named stations
    for (int x = 0; x < n; ++x) {
        for (int yp : {sc.fx_point, sc.fy_point, sc.fz_point}) {
            for (int zp : {sc.fx_point, sc.fy_point, sc.fz_point}) {
                const double slack = f.dist_to_fiber(yp, x) - f.dist_to_fiber(zp, x) - f.dist(yp, zp);
                worst = std::max(worst, slack);
                ++count;
            }
        }
    }
    rep.triples_checked = count;
    rep.max_first_inequality_slack = worst;
    rep.general_inequality_ok = worst <= 1e-9;

    // the named triple with the assignment exactly as written
    rep.dist_fx_fiber_y = f.dist_to_fiber(sc.fx_point, sc.y_label);
    rep.dist_fx_fiber_z = f.dist_to_fiber(sc.fx_point, sc.z_label);
    rep.violation_lhs = rep.dist_fx_fiber_y - rep.dist_fx_fiber_z;
    rep.violation_rhs = f.dist(sc.fy_point, sc.fz_point);
    rep.paper_stated_lhs = std::sqrt(5.0 / 4.0);
    rep.recomputed_lhs_exact = (std::sqrt(1908.0) - std::sqrt(1325.0)) / 7.0;
    rep.notes.push_back(
        "the source's sqrt(5/4) does not match the stated segment endpoints; the recomputed "
        "difference (sqrt(1908)-sqrt(1325))/7 ~ 1.0400 still exceeds d(f(y),f(z)) = 1");
    rep.notes.push_back(
        "the {phi} seminorm is independent of the section values as defined; it is implemented "
        "literally (see norms::seminorm_v2)");
    return rep;
}

} // namespace fiberlip::norms
