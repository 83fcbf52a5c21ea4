#include "fiberlip/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fiberlip/util.hpp"

namespace fiberlip::ext {

namespace {

// squared Euclidean distance of two slice points
double slice_dist(double ax, double ay, double az, double bx, double by, double bz) {
    const double dx = ax - bx, dy = ay - by, dz = az - bz;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double branch_value(double t, double alpha_delta, double two_alpha_delta, int* branch) {
    if (std::abs(t) <= two_alpha_delta) {
        if (branch) *branch = 1;
        return 2.0 * (t - alpha_delta);
    }
    if (t > two_alpha_delta) {
        if (branch) *branch = 2;
        return t;
    }
    if (branch) *branch = 3;
    return 3.0 * t;
}

} // namespace

double ExtensionProblem::g(int i, double a, double b) const {
    return g_off[static_cast<std::size_t>(i)] + g_a[static_cast<std::size_t>(i)] * a +
           g_b[static_cast<std::size_t>(i)] * b;
}

Eigen::VectorXd ExtensionProblem::partial_value(double a, double b) const {
    Eigen::VectorXd x(2 + s);
    x[0] = a;
    x[1] = b;
    for (int i = 0; i < s; ++i) x[2 + i] = g(i, a, b);
    return x;
}

std::vector<Eigen::VectorXd> ExtensionProblem::partial_graph() const {
    std::vector<Eigen::VectorXd> graph;
    graph.reserve(static_cast<std::size_t>(part_a.n) * static_cast<std::size_t>(part_b.n));
    for (int ia = 0; ia < part_a.n; ++ia)
        for (int ib = 0; ib < part_b.n; ++ib) graph.push_back(partial_value(part_a.at(ia), part_b.at(ib)));
    return graph;
}

void ExtensionProblem::validate() const {
    if (s < 1) throw SpecError("extension problem needs s >= 1");
    if (!(k >= 1.0) || !(L >= 1.0)) throw SpecError("extension problem needs k >= 1 and L >= 1");
    if (!(rho_scale >= 1.0 / k - 1e-12 && rho_scale <= k + 1e-12))
        throw SpecError("rho_scale must lie in [1/k, k]");
    if (g_off.size() != static_cast<std::size_t>(s) || g_a.size() != static_cast<std::size_t>(s) ||
        g_b.size() != static_cast<std::size_t>(s))
        throw SpecError("partial-section coefficients must have s components");
    for (const GridAxis* ax : {&base_a, &base_b, &fiber_c})
        if (ax->n < 2) throw SpecError("grid axes need at least 2 samples");
    for (const GridAxis* ax : {&part_a, &part_b})
        if (ax->n < 1) throw SpecError("partial grid axes need at least 1 sample");
}

double delta(const ExtensionProblem& p, int i, double tau0, const Eigen::VectorXd& x0,
             const Eigen::VectorXd& x) {
    if (i < 0 || i >= p.s) throw SpecError("no level section for component " + std::to_string(i));
    // slice_i(x0) against the level representative (pi(x), tau0)
    return p.rho_scale * slice_dist(x0[0], x0[1], x0[2 + i], x[0], x[1], tau0);
}

BranchEval local_extension_branches(const ExtensionProblem& p, int i, const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& x) {
    const double tau0 = x0[2 + i];
    BranchEval out;
    out.t = x[2 + i] - tau0;
    out.delta = delta(p, i, tau0, x0, x);
    const double ad = p.alpha() * out.delta;
    out.value = branch_value(out.t, ad, 2.0 * ad, &out.branch);
    return out;
}

double local_extension(const ExtensionProblem& p, int i, const Eigen::VectorXd& x0,
                       const Eigen::VectorXd& x) {
    return local_extension_branches(p, i, x0, x).value;
}

double evaluate_component(const ExtensionProblem& p, int i, const Eigen::VectorXd& x) {
    if (i < 0 || i >= p.s) throw SpecError("component index out of range");
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    const double alpha = p.alpha();
    const double xa = x[0], xb = x[1], xc = x[2 + i];
    for (int ia = 0; ia < p.part_a.n; ++ia) {
        const double a0 = p.part_a.at(ia);
        for (int ib = 0; ib < p.part_b.n; ++ib) {
            const double b0 = p.part_b.at(ib);
            const double tau0 = p.g(i, a0, b0);
            const double d = p.rho_scale * slice_dist(a0, b0, tau0, xa, xb, tau0);
            const double t = xc - tau0;
            const double ad = alpha * d;
            best = std::max(best, branch_value(t, ad, 2.0 * ad, nullptr));
            any = true;
        }
    }
    if (!any) throw SpecError("empty partial graph");
    return best;
}

ExtensionResult global_extension(const ExtensionProblem& p) {
    p.validate();
    if (p.part_a.n <= 0 || p.part_b.n <= 0) throw SpecError("empty partial graph");
    ExtensionResult res;
    res.K_bound = p.K_bound();

    const int na = p.base_a.n, nb = p.base_b.n, nc = p.fiber_c.n;
    const std::size_t slice_size = static_cast<std::size_t>(na) * static_cast<std::size_t>(nb) *
                                   static_cast<std::size_t>(nc);

    res.f.assign(static_cast<std::size_t>(p.s), std::vector<double>(slice_size, 0.0));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 + p.s);

    for (int i = 0; i < p.s; ++i) {
        auto& grid = res.f[static_cast<std::size_t>(i)];
        std::size_t idx = 0;
        for (int ia = 0; ia < na; ++ia) {
            for (int ib = 0; ib < nb; ++ib) {
                for (int ic = 0; ic < nc; ++ic, ++idx) {
                    x.setZero();
                    x[0] = p.base_a.at(ia);
                    x[1] = p.base_b.at(ib);
                    x[2 + i] = p.fiber_c.at(ic);
                    grid[idx] = evaluate_component(p, i, x);
                }
            }
        }
    }

    // per-component Lipschitz scan over all slice-grid pairs
    for (int i = 0; i < p.s; ++i) {
        const auto& grid = res.f[static_cast<std::size_t>(i)];
        const std::size_t n = grid.size();
        std::vector<double> coord_a(n), coord_b(n), coord_c(n);
        {
            std::size_t idx = 0;
            for (int ia = 0; ia < na; ++ia)
                for (int ib = 0; ib < nb; ++ib)
                    for (int ic = 0; ic < nc; ++ic, ++idx) {
                        coord_a[idx] = p.base_a.at(ia);
                        coord_b[idx] = p.base_b.at(ib);
                        coord_c[idx] = p.fiber_c.at(ic);
                    }
        }
        const int workers = std::max(1, util::worker_threads());
        std::vector<double> chunk_max(static_cast<std::size_t>(workers), 0.0);
        util::parallel_chunks(n, [&](std::size_t chunk_id, std::size_t lo, std::size_t hi) {
            double best = 0.0;
            for (std::size_t u = lo; u < hi; ++u) {
                for (std::size_t v = u + 1; v < n; ++v) {
                    const double d = slice_dist(coord_a[u], coord_b[u], coord_c[u], coord_a[v], coord_b[v],
                                                coord_c[v]);
                    if (d <= 0.0) continue;
                    best = std::max(best, std::abs(grid[u] - grid[v]) / d);
                }
            }
            chunk_max[chunk_id] = best;
        });
        double lip = 0.0;
        for (double v : chunk_max) lip = std::max(lip, v);
        res.measured_lip_per_component.push_back(lip);

        // fiber pairs: (a, b) fixed, c varies
        double lower = std::numeric_limits<double>::infinity();
        double upper = 0.0;
        for (int ia = 0; ia < na; ++ia) {
            for (int ib = 0; ib < nb; ++ib) {
                const std::size_t off = (static_cast<std::size_t>(ia) * nb + ib) * nc;
                for (int c1 = 0; c1 < nc; ++c1) {
                    for (int c2 = c1 + 1; c2 < nc; ++c2) {
                        const double d = std::abs(p.fiber_c.at(c1) - p.fiber_c.at(c2));
                        if (d <= 0.0) continue;
                        const double r = std::abs(grid[off + c1] - grid[off + c2]) / d;
                        lower = std::min(lower, r);
                        upper = std::max(upper, r);
                    }
                }
            }
        }
        res.fiber_lower_per_component.push_back(lower);
        res.fiber_upper_per_component.push_back(upper);
    }

    res.measured_lip = *std::max_element(res.measured_lip_per_component.begin(),
                                         res.measured_lip_per_component.end());
    res.measured_fiber_lower = *std::min_element(res.fiber_lower_per_component.begin(),
                                                 res.fiber_lower_per_component.end());

    // zero-level containment at the partial-graph samples
    double worst = 0.0;
    for (const auto& x0 : p.partial_graph())
        for (int i = 0; i < p.s; ++i) worst = std::max(worst, std::abs(evaluate_component(p, i, x0)));
    res.containment_max_abs = worst;
    res.zero_set_ok = worst <= 1e-12;
    return res;
}

BranchContinuityProbe branch_continuity_probe(const ExtensionProblem& p, double delta_value) {
    BranchContinuityProbe probe;
    const double w = p.alpha() * delta_value;
    const double t_plus = 2.0 * w;
    probe.gap_plus = std::abs(2.0 * (t_plus - w) - t_plus);
    const double t_minus = -2.0 * w;
    probe.gap_minus = std::abs(2.0 * (t_minus - w) - 3.0 * t_minus);
    return probe;
}

VerificationReport verify_extension(const ExtensionProblem& p, const ExtensionResult& r) {
    VerificationReport rep;
    rep.K_bound = r.K_bound;
    rep.eps_grid = p.eps_grid;
    rep.measured_lip = r.measured_lip;
    rep.lip_ok = r.measured_lip <= r.K_bound * (1.0 + p.eps_grid);

    double worst = 0.0;
    for (const auto& x0 : p.partial_graph())
        for (int i = 0; i < p.s; ++i) worst = std::max(worst, std::abs(evaluate_component(p, i, x0)));
    rep.containment_max_abs = worst;
    rep.containment_ok = worst <= 1e-12;

    rep.fiber_lower = r.measured_fiber_lower;
    rep.fiber_lower_positive = r.measured_fiber_lower > 0.0;
    rep.fiber_upper = *std::max_element(r.fiber_upper_per_component.begin(), r.fiber_upper_per_component.end());
    rep.fiber_lower_reference = rep.fiber_upper > 0.0 ? 1.0 / rep.fiber_upper : 0.0;

    double gap = 0.0;
    const double base_step = std::max(p.base_a.step(), p.base_b.step());
    for (double mult : {1.0, 3.0, 7.5, 20.0}) {
        const auto probe = branch_continuity_probe(p, p.rho_scale * base_step * mult);
        gap = std::max(gap, std::max(probe.gap_plus, probe.gap_minus));
    }
    // boundary selection consistency on a constructed point: t = +2 alpha delta
    {
        const auto graph = p.partial_graph();
        const Eigen::VectorXd& x0 = graph[graph.size() / 2];
        Eigen::VectorXd x = Eigen::VectorXd::Zero(2 + p.s);
        x[0] = x0[0] + base_step;
        x[1] = x0[1];
        for (int i = 0; i < p.s; ++i) {
            const double d = delta(p, i, x0[2 + i], x0, x);
            x[2 + i] = x0[2 + i] + 2.0 * p.alpha() * d;
            const auto eval = local_extension_branches(p, i, x0, x);
            gap = std::max(gap, std::abs(eval.value - eval.t)); // branch 2 value is t
        }
    }
    rep.branch_gap_max = gap;
    rep.branch_continuity_ok = gap <= 1e-12;

    if (p.s >= 2) {
        // joint map on a coarse subgrid, sup-norm components (reported only)
        const int sub = 7;
        std::vector<Eigen::VectorXd> pts;
        std::vector<std::vector<double>> values;
        for (int ia = 0; ia < sub; ++ia) {
            for (int ib = 0; ib < sub; ++ib) {
                for (int ic = 0; ic < sub; ++ic) {
                    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 + p.s);
                    x[0] = p.base_a.lo + (p.base_a.hi - p.base_a.lo) * ia / (sub - 1);
                    x[1] = p.base_b.lo + (p.base_b.hi - p.base_b.lo) * ib / (sub - 1);
                    for (int i = 0; i < p.s; ++i)
                        x[2 + i] = p.fiber_c.lo +
                                   (p.fiber_c.hi - p.fiber_c.lo) * ((ic + i) % sub) / (sub - 1);
                    std::vector<double> fx(static_cast<std::size_t>(p.s));
                    for (int i = 0; i < p.s; ++i) fx[static_cast<std::size_t>(i)] = evaluate_component(p, i, x);
                    pts.push_back(x);
                    values.push_back(std::move(fx));
                }
            }
        }
        double joint = 0.0;
        for (std::size_t u = 0; u < pts.size(); ++u) {
            for (std::size_t v = u + 1; v < pts.size(); ++v) {
                const double d = (pts[u] - pts[v]).norm();
                if (d <= 0.0) continue;
                double num = 0.0;
                for (int i = 0; i < p.s; ++i)
                    num = std::max(num, std::abs(values[u][static_cast<std::size_t>(i)] -
                                                 values[v][static_cast<std::size_t>(i)]));
                joint = std::max(joint, num / d);
            }
        }
        rep.joint_measured_lip = joint;
    } else {
        rep.joint_measured_lip = r.measured_lip;
    }
    return rep;
}

} // namespace fiberlip::ext
