#include "fiberlip/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "fiberlip/extension.hpp"
#include "fiberlip/hoelder.hpp"
#include "fiberlip/norms.hpp"
#include "fiberlip/spaces.hpp"

namespace fiberlip::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---- independent oracle helpers (deliberately separate code paths) ----

double oracle_euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double oracle_koranyi(const std::vector<double>& p, const std::vector<double>& q) {
    const double dx = q[0] - p[0];
    const double dy = q[1] - p[1];
    const double dt = q[2] - p[2] + 0.5 * (-p[0] * q[1] + p[1] * q[0]);
    return std::pow((dx * dx + dy * dy) * (dx * dx + dy * dy) + 16.0 * dt * dt, 0.25);
}

// brute-force least Lipschitz constant with caller-supplied distance and
// fiber-distance evaluators
template <class Dist, class FiberDist>
double oracle_min_constant(int labels, const Section& phi, Dist dist, FiberDist fiber_dist) {
    double best = 0.0;
    for (int y1 = 0; y1 < labels; ++y1) {
        for (int y2 = 0; y2 < labels; ++y2) {
            if (y1 == y2) continue;
            const double d = dist(phi(y1), phi(y2));
            const double fd = fiber_dist(phi(y1), y2);
            best = std::max(best, (d - fd) / fd);
        }
    }
    return best;
}

struct MinConstantCase {
    std::string name;
    double lib = 0.0;
    double oracle = 0.0;
    bool exactness_ok = false;
};

MinConstantCase run_min_constant_case(const std::string& name, const Fibration& f, const Section& phi,
                                      double oracle_value) {
    MinConstantCase c;
    c.name = name;
    c.lib = hoelder::min_constant(f, phi, 1.0);
    c.oracle = oracle_value;
    bool ok = std::abs(c.lib - c.oracle) <= 1e-12 * std::max(1.0, std::abs(c.lib));
    ok = ok && hoelder::check_intrinsic_hoelder(f, phi, hoelder::HoelderParams(c.lib + 1e-9, 1.0)).holds;
    if (c.lib > 1e-6)
        ok = ok && !hoelder::check_intrinsic_hoelder(f, phi, hoelder::HoelderParams(c.lib - 1e-6, 1.0)).holds;
    c.exactness_ok = ok;
    return c;
}

// ---- criteria ----

CriterionResult criterion1_asymmetry() {
    CriterionResult r{1, "three-segment counterexample", false, 0.0, ""};
    const auto start = Clock::now();
    const auto rep = norms::asymmetry_demo(33);
    r.elapsed_ms = ms_since(start);
    const double exact_lhs = (std::sqrt(1908.0) - std::sqrt(1325.0)) / 7.0;
    const bool rhs_exact = rep.violation_rhs == 1.0;
    const bool lhs_ok = rep.violation_lhs > 1.0 && std::abs(rep.violation_lhs - exact_lhs) <= 1e-12;
    r.passed = rhs_exact && lhs_ok && rep.general_inequality_ok && r.elapsed_ms < 1000.0;
    std::ostringstream os;
    os << "rhs=" << rep.violation_rhs << " lhs=" << rep.violation_lhs << " triples=" << rep.triples_checked
       << " general_ok=" << rep.general_inequality_ok;
    r.detail = os.str();
    return r;
}

CriterionResult criterion2_lemma() {
    CriterionResult r{2, "scaling identity, 1000 randomized trials", false, 0.0, ""};
    const auto start = Clock::now();
    spaces::Rng rng(7);
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    int failures = 0;
    double max_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const LinearQuotient q = spaces::random_quotient(rng, 6);
        Eigen::VectorXd x1(q.ambient_dim()), y2(q.base_dim());
        for (int i = 0; i < q.ambient_dim(); ++i) x1[i] = urand(-5.0, 5.0);
        for (int i = 0; i < q.base_dim(); ++i) y2[i] = urand(-5.0, 5.0);
        double lambda = 0.0;
        while (std::abs(lambda) < 1e-3) lambda = urand(-10.0, 10.0);
        const auto check = lemma_homogeneity_check(q, x1, y2, lambda);
        max_err = std::max(max_err, std::abs(check.lhs - check.rhs));
        if (!check.ok) ++failures;
    }
    r.elapsed_ms = ms_since(start);
    r.passed = failures == 0 && r.elapsed_ms < 5000.0;
    std::ostringstream os;
    os << "failures=" << failures << "/1000 max_abs_err=" << max_err;
    r.detail = os.str();
    return r;
}

CriterionResult criterion3_cone_equivalence() {
    CriterionResult r{3, "cone avoidance equals the defining inequality", false, 0.0, ""};
    const auto start = Clock::now();
    spaces::Rng rng(20250809);
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    int mismatches = 0, held = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 12 + static_cast<int>(rng() % 117); // <= 128
        const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(n - 1, 14)));
        const Fibration f = spaces::random_finite_fibration({1000 + static_cast<std::uint64_t>(i), n, m});
        const Section phi = spaces::random_section(f, 3 * static_cast<std::uint64_t>(i) + 1);
        const double alpha = i % 4 == 0 ? 1.0 : urand(0.3, 1.0);
        double L;
        if (i % 2 == 0) {
            const double mc = hoelder::min_constant(f, phi, alpha);
            const double factor[4] = {0.8, 0.999, 1.001, 1.25};
            L = std::max(1e-6, mc * factor[(i / 2) % 4]);
        } else {
            L = std::exp(urand(-2.5, 2.0));
        }
        const hoelder::HoelderParams params(L, alpha);
        const bool via_ineq = hoelder::check_intrinsic_hoelder(f, phi, params).holds;
        const bool via_cones = hoelder::check_graph_avoids_cones(f, phi, params);
        if (via_ineq != via_cones) ++mismatches;
        if (via_ineq) ++held;
    }
    r.elapsed_ms = ms_since(start);
    r.passed = mismatches == 0 && r.elapsed_ms < 30000.0;
    std::ostringstream os;
    os << "mismatches=" << mismatches << "/200 held=" << held;
    r.detail = os.str();
    return r;
}

CriterionResult criterion4_min_constant() {
    CriterionResult r{4, "least-constant exactness against brute force", false, 0.0, ""};
    const auto start = Clock::now();
    std::vector<MinConstantCase> cases;

    {
        // slope graphs over pi = [1 0]: oracle fiber distance is |t1 - t2|
        for (double slope : {0.0, 3.0}) {
            auto sc = spaces::slope_graph_scenario(slope, -2.0, 3.0, 9);
            const auto& f = sc.fibration;
            const Section& phi = sc.sections.at("phi");
            auto dist = [&](int p, int q) { return oracle_euclid(f.total().point(p), f.total().point(q)); };
            auto fiber = [&](int p, int y) {
                return std::abs(f.total().point(p)[0] - f.label_coords(y)[0]);
            };
            cases.push_back(run_min_constant_case("slope" + std::to_string(slope), f, phi,
                                                  oracle_min_constant(f.num_labels(), phi, dist, fiber)));
        }
    }
    {
        auto sc = spaces::three_segment_space(17);
        const auto& f = sc.fibration;
        auto dist = [&](int p, int q) { return oracle_euclid(f.total().point(p), f.total().point(q)); };
        auto fiber = [&](int p, int y) {
            double best = std::numeric_limits<double>::infinity();
            for (int q : f.fiber(y)) best = std::min(best, oracle_euclid(f.total().point(p), f.total().point(q)));
            return best;
        };
        cases.push_back(run_min_constant_case("three_segment_corrected", f, sc.corrected,
                                              oracle_min_constant(f.num_labels(), sc.corrected, dist, fiber)));
    }
    {
        auto sc = spaces::koranyi_heisenberg({5, 5, 1.0});
        const auto& f = sc.fibration;
        auto dist = [&](int p, int q) { return oracle_koranyi(f.total().point(p), f.total().point(q)); };
        auto fiber = [&](int p, int y) {
            double best = std::numeric_limits<double>::infinity();
            for (int q : f.fiber(y)) best = std::min(best, oracle_koranyi(f.total().point(p), f.total().point(q)));
            return best;
        };
        cases.push_back(run_min_constant_case("koranyi_zero", f, sc.zero_section,
                                              oracle_min_constant(f.num_labels(), sc.zero_section, dist, fiber)));
    }
    for (int i = 0; i < 25; ++i) {
        const int n = 10 + (i * 5) % 55;
        const int m = 2 + i % 7;
        const Fibration f = spaces::random_finite_fibration({777 + static_cast<std::uint64_t>(i), n, m});
        const Section phi = spaces::random_section(f, 40 + static_cast<std::uint64_t>(i));
        const auto& matrix = f.total().matrix();
        auto dist = [&](int p, int q) { return matrix[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; };
        auto fiber = [&](int p, int y) {
            double best = std::numeric_limits<double>::infinity();
            for (int q : f.fiber(y))
                best = std::min(best, matrix[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
            return best;
        };
        cases.push_back(run_min_constant_case("random" + std::to_string(i), f, phi,
                                              oracle_min_constant(f.num_labels(), phi, dist, fiber)));
    }

    int failed = 0;
    double max_dev = 0.0;
    for (const auto& c : cases) {
        if (!c.exactness_ok) ++failed;
        max_dev = std::max(max_dev, std::abs(c.lib - c.oracle));
    }
    // frozen exact value for the collinear graph: sqrt(10) - 1
    const auto slope3 = cases[1];
    const bool slope3_exact = std::abs(slope3.lib - (std::sqrt(10.0) - 1.0)) <= 1e-9;

    r.elapsed_ms = ms_since(start);
    r.passed = failed == 0 && slope3_exact;
    std::ostringstream os;
    os << "cases=" << cases.size() << " failed=" << failed << " max_oracle_dev=" << max_dev
       << " slope3=" << slope3.lib;
    r.detail = os.str();
    return r;
}

CriterionResult criterion5_norm_axioms() {
    CriterionResult r{5, "norm axioms on 50 seeded families", false, 0.0, ""};
    const auto start = Clock::now();
    int violations = 0, skipped_pairs = 0;
    for (int fam = 0; fam < 50; ++fam) {
        spaces::Rng rng(90000 + static_cast<std::uint64_t>(fam));
        const auto ctx = spaces::random_family_context(rng, 6);
        std::vector<family::ScaledMember> members;
        for (int j = 0; j < 3; ++j) members.push_back(spaces::random_member(ctx, rng));

        auto norms_of = [&](const family::ScaledMember& m) {
            return std::pair{norms::norm_v1(m, ctx).total, norms::norm_v2(m, ctx).total};
        };
        // definiteness: the adjoined zero element only
        const auto zero = family::ScaledMember::zero();
        if (norms::norm_v1(zero, ctx).total != 0.0 || norms::norm_v2(zero, ctx).total != 0.0) ++violations;
        for (const auto& m : members) {
            const auto [n1, n2] = norms_of(m);
            if (!(n1 > 0.0) || !(n2 > 0.0)) ++violations;
            // absolute homogeneity and path agreement
            for (double delta : {-3.0, -1.0, 0.5, 2.0}) {
                const auto scaled = family::scale_member(delta, m);
                const auto [s1, s2] = norms_of(scaled);
                if (std::abs(s1 - std::abs(delta) * n1) > 1e-9) ++violations;
                if (std::abs(s2 - std::abs(delta) * n2) > 1e-9) ++violations;
            }
            const auto p1 = norms::seminorm_v1_paths(m, ctx);
            const auto p2 = norms::seminorm_v2_paths(m, ctx);
            if (std::abs(p1.direct - p1.reduced) > 1e-9) ++violations;
            if (std::abs(p2.direct - p2.reduced) > 1e-9) ++violations;
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (members[i].scale() + members[j].scale() == 0.0) {
                    ++skipped_pairs;
                    continue;
                }
                const auto sum = family::add_members(members[i], members[j]);
                if (norms::norm_v1(sum, ctx).total >
                    norms::norm_v1(members[i], ctx).total + norms::norm_v1(members[j], ctx).total + 1e-9)
                    ++violations;
                if (norms::norm_v2(sum, ctx).total >
                    norms::norm_v2(members[i], ctx).total + norms::norm_v2(members[j], ctx).total + 1e-9)
                    ++violations;
            }
        }
    }
    r.elapsed_ms = ms_since(start);
    r.passed = violations == 0 && r.elapsed_ms < 10000.0;
    std::ostringstream os;
    os << "violations=" << violations << " degenerate_pairs_skipped=" << skipped_pairs;
    r.detail = os.str();
    return r;
}

CriterionResult criterion6_extension() {
    CriterionResult r{6, "level-set extension at desk scale", false, 0.0, ""};
    const auto start = Clock::now();
    struct Config {
        double k, L, rho;
    };
    const Config configs[3] = {{1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}, {2.0, 1.0, 2.0}};
    int failed = 0;
    double worst_ratio = 0.0, worst_containment = 0.0, worst_gap = 0.0, min_fiber_lower = 1e300;
    for (int s : {1, 2}) {
        for (const auto& cfg : configs) {
            spaces::ExtensionScenarioConfig sc;
            sc.s = s;
            sc.k = cfg.k;
            sc.L = cfg.L;
            sc.rho_scale = cfg.rho;
            sc.base_res = 17;
            sc.fiber_res = 17;
            sc.part_res = 9;
            sc.fiber_half = 1.2;
            if (s == 1) {
                if (cfg.L > 1.5) {
                    sc.g_off = {0.0};
                    sc.g_a = {1.2};
                    sc.g_b = {0.9};
                } else {
                    sc.g_off = {0.1};
                    sc.g_a = {0.5};
                    sc.g_b = {0.5};
                }
            } else {
                sc.g_off = {0.0, 0.1};
                sc.g_a = {0.3, 0.0};
                sc.g_b = {0.0, 0.4};
            }
            const auto problem = spaces::extension_scenario(sc);
            const auto result = ext::global_extension(problem);
            const auto verify = ext::verify_extension(problem, result);

            bool ok = verify.containment_ok;
            for (double lip : result.measured_lip_per_component)
                ok = ok && lip <= result.K_bound * 1.05;
            ok = ok && verify.fiber_lower_positive && verify.branch_continuity_ok;
            if (!ok) ++failed;
            worst_ratio = std::max(worst_ratio, result.measured_lip / result.K_bound);
            worst_containment = std::max(worst_containment, verify.containment_max_abs);
            worst_gap = std::max(worst_gap, verify.branch_gap_max);
            min_fiber_lower = std::min(min_fiber_lower, verify.fiber_lower);
        }
    }
    r.elapsed_ms = ms_since(start);
    r.passed = failed == 0 && r.elapsed_ms < 60000.0;
    std::ostringstream os;
    os << "scenarios=6 failed=" << failed << " worst_lip/K=" << worst_ratio
       << " containment_max=" << worst_containment << " fiber_lower_min=" << min_fiber_lower
       << " branch_gap=" << worst_gap;
    r.detail = os.str();
    return r;
}

CriterionResult criterion7_limits() {
    CriterionResult r{7, "scaling limits on the parabola section", false, 0.0, ""};
    const auto start = Clock::now();
    const std::vector<double> hs = {1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> base = {0.0};
    for (double h : hs) base.push_back(h);
    std::sort(base.begin(), base.end());
    int t_index = 0;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (base[i] == 0.0) t_index = static_cast<int>(i);
    family::VectorSection phi;
    for (double y : base) phi.push_back(Eigen::Vector2d(y, y * y));
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    const LinearQuotient q(a);
    const auto rows = norms::limit_check(q, base, phi, t_index, hs);

    bool monotone = true, bounded = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            monotone = monotone && rows[i].ratio_forward < rows[i - 1].ratio_forward;
            monotone = monotone && rows[i].ratio_backward < rows[i - 1].ratio_backward;
        }
        bounded = bounded && rows[i].ratio_forward <= rows[i].bound + 1e-12;
        bounded = bounded && rows[i].ratio_backward <= rows[i].bound + 1e-12;
    }
    const bool final_small = rows.back().ratio_forward < 1e-3 && rows.back().ratio_backward < 1e-3;
    r.elapsed_ms = ms_since(start);
    r.passed = monotone && bounded && final_small;
    std::ostringstream os;
    os << "final_forward=" << rows.back().ratio_forward << " final_backward=" << rows.back().ratio_backward
       << " monotone=" << monotone << " bounded=" << bounded;
    r.detail = os.str();
    return r;
}

CriterionResult criterion8_closure() {
    CriterionResult r{8, "vector-space closure on 20 seeded member pairs", false, 0.0, ""};
    const auto start = Clock::now();
    int failures = 0;
    double max_constant = 0.0;
    for (int i = 0; i < 20; ++i) {
        spaces::Rng rng(5500 + static_cast<std::uint64_t>(i));
        const auto ctx = spaces::random_family_context(rng, 6);
        auto m1 = spaces::random_member(ctx, rng);
        auto m2 = spaces::random_member(ctx, rng);
        while (m1.scale() + m2.scale() == 0.0) m2 = spaces::random_member(ctx, rng);

        const auto report = family::check_vector_space_closure(ctx, {m1, m2}, -1.0, 1.0);
        const auto sum_cert = family::certify_member(ctx, report.sum_member, 1.0);
        bool ok = report.sum_is_section && report.sum_anchored && sum_cert.finite &&
                  std::isfinite(report.sum_constant) && report.scalar_ok;
        // negative control: the unscaled pointwise sum is not a section of the
        // original quotient data (it is one at scale lambda1 + lambda2)
        family::VectorSection raw_sum;
        for (std::size_t y = 0; y < m1.values().size(); ++y)
            raw_sum.push_back(m1.values()[y] + m2.values()[y]);
        ok = ok && !ctx.is_section_at_scale(raw_sum, 1.0) &&
             ctx.is_section_at_scale(raw_sum, m1.scale() + m2.scale());
        if (!ok) ++failures;
        max_constant = std::max(max_constant, report.sum_constant);
    }
    r.elapsed_ms = ms_since(start);
    r.passed = failures == 0;
    std::ostringstream os;
    os << "failures=" << failures << "/20 max_sum_constant=" << max_constant;
    r.detail = os.str();
    return r;
}

} // namespace

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    out.push_back(criterion1_asymmetry());
    out.push_back(criterion2_lemma());
    out.push_back(criterion3_cone_equivalence());
    out.push_back(criterion4_min_constant());
    out.push_back(criterion5_norm_axioms());
    out.push_back(criterion6_extension());
    out.push_back(criterion7_limits());
    out.push_back(criterion8_closure());
    return out;
}

int print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
    int failed = 0;
    for (const auto& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " ("
           << r.detail << ", " << r.elapsed_ms << " ms)\n";
        if (!r.passed) ++failed;
    }
    os << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed;
}

} // namespace fiberlip::acceptance
