#include <doctest.h>

#include <cmath>

#include "fiberlip/norms.hpp"
#include "fiberlip/spaces.hpp"
#include "fiberlip/util.hpp"

using namespace fiberlip;

namespace {

// context over pi = [1 0] on R^2 with psi flat and the anchor at the origin
family::FamilyContext grid_context(const std::vector<double>& ts) {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    std::vector<Eigen::VectorXd> base;
    family::VectorSection psi;
    int anchor = -1;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        base.push_back(Eigen::VectorXd::Constant(1, ts[i]));
        psi.push_back(Eigen::Vector2d(ts[i], 0.0));
        if (ts[i] == 0.0) anchor = static_cast<int>(i);
    }
    REQUIRE(anchor >= 0);
    return family::FamilyContext(LinearQuotient(a), base, psi, anchor);
}

family::ScaledMember slope_member(const std::vector<double>& ts, double slope, double lambda) {
    family::VectorSection phi;
    for (double t : ts) phi.push_back(Eigen::Vector2d(t, slope * t));
    return family::ScaledMember::from_plain(phi, lambda);
}

} // namespace

TEST_CASE("sup_norm") {
    const std::vector<double> ts = {-2.0, -1.0, 0.0, 1.0, 3.0};
    const auto ctx = grid_context(ts);
    CHECK(norms::sup_norm(family::ScaledMember::zero(), ctx) == 0.0);
    CHECK(norms::sup_norm(slope_member(ts, 0.0, 1.0), ctx) == doctest::Approx(3.0));
    CHECK(norms::sup_norm(slope_member(ts, 3.0, 1.0), ctx) ==
          doctest::Approx(3.0 * std::sqrt(10.0)).epsilon(1e-12));
    // missing base point
    family::VectorSection short_phi = {Eigen::Vector2d(0.0, 0.0)};
    CHECK_THROWS_AS(static_cast<void>(norms::sup_norm(family::ScaledMember::from_plain(short_phi, 1.0), ctx)),
                    SpecError);
}

TEST_CASE("seminorm_v1 evaluates the scaled fiber distance") {
    const std::vector<double> ts = {0.0, 1.0};
    const auto ctx = grid_context(ts);
    const auto member = slope_member(ts, 0.0, 2.0); // graph values (0,0), (2,0)
    const auto paths = norms::seminorm_v1_paths(member, ctx);
    CHECK(paths.direct == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(paths.reduced == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norms::seminorm_v1(member, ctx) == doctest::Approx(2.0));

    // |lambda| homogeneity: opposite scales agree
    const auto plus = slope_member(ts, 1.0, 1.0);
    const auto minus = slope_member(ts, 1.0, -1.0);
    CHECK(norms::seminorm_v1(plus, ctx) == doctest::Approx(norms::seminorm_v1(minus, ctx)).epsilon(1e-12));
}

TEST_CASE("norm_v1 totals and homogeneity") {
    const std::vector<double> ts = {0.0, 1.0};
    const auto ctx = grid_context(ts);
    CHECK(norms::norm_v1(family::ScaledMember::zero(), ctx).total == 0.0);

    const auto member = slope_member(ts, 0.0, 2.0);
    const auto r = norms::norm_v1(member, ctx);
    CHECK(r.sup_part == doctest::Approx(2.0));
    CHECK(r.semi_part == doctest::Approx(2.0));
    CHECK(r.total == doctest::Approx(r.sup_part + r.semi_part));

    const auto scaled = family::scale_member(3.0, member);
    CHECK(norms::norm_v1(scaled, ctx).total == doctest::Approx(3.0 * r.total).epsilon(1e-12));
}

TEST_CASE("seminorm_v2 depends only on scale, anchor, and base sample") {
    const std::vector<double> ts0 = {0.0};
    CHECK(norms::seminorm_v2(slope_member(ts0, 0.0, 1.0), grid_context(ts0)) == doctest::Approx(0.0));

    const std::vector<double> ts = {0.0, 1.0, -2.0};
    const auto ctx = grid_context(ts);
    const auto flat = slope_member(ts, 0.0, 1.0);
    CHECK(norms::seminorm_v2(flat, ctx) == doctest::Approx(2.0));
    CHECK(norms::seminorm_v2(slope_member(ts, 0.0, 3.0), ctx) == doctest::Approx(6.0));
    // literally independent of the section values
    CHECK(norms::seminorm_v2(slope_member(ts, 7.5, 1.0), ctx) ==
          doctest::Approx(norms::seminorm_v2(flat, ctx)));
}

TEST_CASE("norm_v2 totals and homogeneity") {
    const std::vector<double> ts = {0.0, 1.0, -2.0};
    const auto ctx = grid_context(ts);
    CHECK(norms::norm_v2(family::ScaledMember::zero(), ctx).total == 0.0);
    const auto member = slope_member(ts, 0.0, 1.0);
    const auto r = norms::norm_v2(member, ctx);
    CHECK(r.sup_part == doctest::Approx(2.0));
    CHECK(r.semi_part == doctest::Approx(2.0));
    CHECK(r.total == doctest::Approx(4.0));

    const auto scaled = family::scale_member(-2.0, member);
    CHECK(norms::norm_v2(scaled, ctx).total == doctest::Approx(2.0 * r.total).epsilon(1e-12));
}

TEST_CASE("scaling identity for linear quotients") {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    const LinearQuotient q(a);
    const Eigen::Vector2d x1(1.0, 4.0);
    const Eigen::VectorXd y2 = Eigen::VectorXd::Constant(1, 7.0);

    const auto id = lemma_homogeneity_check(q, x1, y2, 1.0);
    CHECK(id.lhs == id.rhs);
    CHECK(id.ok);

    const auto doubled = lemma_homogeneity_check(q, x1, y2, 2.0);
    CHECK(doubled.lhs == doctest::Approx(12.0));
    CHECK(doubled.rhs == doctest::Approx(12.0));
    CHECK(doubled.ok);

    CHECK_THROWS_AS(static_cast<void>(lemma_homogeneity_check(q, x1, y2, 0.0)), SpecError);

    spaces::Rng rng(99);
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    for (int trial = 0; trial < 50; ++trial) {
        const LinearQuotient rq = spaces::random_quotient(rng, 6);
        Eigen::VectorXd x(rq.ambient_dim()), y(rq.base_dim());
        for (int i = 0; i < rq.ambient_dim(); ++i) x[i] = urand(-5.0, 5.0);
        for (int i = 0; i < rq.base_dim(); ++i) y[i] = urand(-5.0, 5.0);
        double lam = 0.0;
        while (std::abs(lam) < 1e-3) lam = urand(-10.0, 10.0);
        CHECK(lemma_homogeneity_check(rq, x, y, lam).ok);
    }
}

TEST_CASE("limit ratios collapse for linear and quadratic sections") {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    const LinearQuotient q(a);
    const std::vector<double> hs = {1e-1, 1e-2, 1e-3};
    std::vector<double> base = {0.0, 1e-3, 1e-2, 1e-1};

    family::VectorSection linear, parabola;
    for (double y : base) {
        linear.push_back(Eigen::Vector2d(y, 0.0));
        parabola.push_back(Eigen::Vector2d(y, y * y));
    }
    const auto lin_rows = norms::limit_check(q, base, linear, 0, hs);
    for (const auto& row : lin_rows) {
        CHECK(row.ratio_forward == doctest::Approx(row.h).epsilon(1e-12));
        CHECK(row.ratio_backward == doctest::Approx(row.h).epsilon(1e-12));
        CHECK(row.bound == doctest::Approx(row.h).epsilon(1e-12));
    }

    const auto par_rows = norms::limit_check(q, base, parabola, 0, hs);
    for (std::size_t i = 0; i < par_rows.size(); ++i) {
        CHECK(par_rows[i].ratio_forward <= par_rows[i].bound + 1e-15);
        CHECK(par_rows[i].ratio_backward <= par_rows[i].bound + 1e-15);
        CHECK(par_rows[i].bound ==
              doctest::Approx(par_rows[i].h * std::sqrt(1.0 + par_rows[i].h * par_rows[i].h)));
        if (i > 0) {
            CHECK(par_rows[i].ratio_forward < par_rows[i - 1].ratio_forward);
            CHECK(par_rows[i].ratio_backward < par_rows[i - 1].ratio_backward);
        }
    }

    CHECK_THROWS_WITH_AS(static_cast<void>(norms::limit_check(q, base, parabola, 0, {0.05})),
                         doctest::Contains("outside sampled base"), SpecError);
}

TEST_CASE("three-segment asymmetry counterexample") {
    const auto rep = norms::asymmetry_demo(33);
    CHECK(rep.violation_rhs == 1.0); // d((8,7),(8,6)) exactly
    CHECK(rep.violation_lhs > 1.0);
    CHECK(rep.violation_lhs ==
          doctest::Approx((std::sqrt(1908.0) - std::sqrt(1325.0)) / 7.0).epsilon(1e-13));
    CHECK(rep.dist_fx_fiber_y == doctest::Approx(std::sqrt(1908.0) / 7.0).epsilon(1e-13));
    CHECK(rep.dist_fx_fiber_z == doctest::Approx(std::sqrt(1325.0) / 7.0).epsilon(1e-13));
    CHECK(rep.general_inequality_ok);
    CHECK(rep.max_first_inequality_slack <= 1e-9);
    CHECK(rep.paper_stated_lhs == doctest::Approx(std::sqrt(1.25)));
    CHECK(rep.triples_checked > 1000);
    CHECK(!rep.notes.empty());
}

TEST_CASE("norm axioms on seeded families") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        spaces::Rng rng(7000 + seed);
        const auto ctx = spaces::random_family_context(rng, 5);
        const auto m1 = spaces::random_member(ctx, rng);
        const auto m2 = spaces::random_member(ctx, rng);

        for (const auto* m : {&m1, &m2}) {
            const auto r1 = norms::norm_v1(*m, ctx);
            const auto r2 = norms::norm_v2(*m, ctx);
            CHECK(r1.total > 0.0);
            CHECK(r2.total > 0.0);
            for (double delta : {-3.0, -1.0, 0.5, 2.0}) {
                const auto scaled = family::scale_member(delta, *m);
                CHECK(std::abs(norms::norm_v1(scaled, ctx).total - std::abs(delta) * r1.total) <= 1e-9);
                CHECK(std::abs(norms::norm_v2(scaled, ctx).total - std::abs(delta) * r2.total) <= 1e-9);
            }
            const auto p1 = norms::seminorm_v1_paths(*m, ctx);
            const auto p2 = norms::seminorm_v2_paths(*m, ctx);
            CHECK(std::abs(p1.direct - p1.reduced) <= 1e-9);
            CHECK(std::abs(p2.direct - p2.reduced) <= 1e-9);
        }
        if (m1.scale() + m2.scale() != 0.0) {
            const auto sum = family::add_members(m1, m2);
            CHECK(norms::norm_v1(sum, ctx).total <=
                  norms::norm_v1(m1, ctx).total + norms::norm_v1(m2, ctx).total + 1e-9);
            CHECK(norms::norm_v2(sum, ctx).total <=
                  norms::norm_v2(m1, ctx).total + norms::norm_v2(m2, ctx).total + 1e-9);
        }
    }
}
