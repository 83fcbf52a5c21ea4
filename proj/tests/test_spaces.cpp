#include <doctest.h>

#include <cmath>

#include "fiberlip/hoelder.hpp"
#include "fiberlip/json_io.hpp"
#include "fiberlip/spaces.hpp"
#include "fiberlip/util.hpp"

using namespace fiberlip;

TEST_CASE("linear quotient fiber distances are exact projections") {
    SUBCASE("first-coordinate projection") {
        Eigen::MatrixXd a(1, 2);
        a << 1.0, 0.0;
        std::vector<Eigen::VectorXd> labels = {Eigen::VectorXd::Constant(1, 1.0),
                                               Eigen::VectorXd::Constant(1, 7.0)};
        const std::vector<Eigen::VectorXd> pts = {Eigen::Vector2d(1.0, 4.0), Eigen::Vector2d(7.0, 2.0)};
        const Fibration f = spaces::euclidean_linear_quotient(a, labels, pts);
        CHECK(f.dist_to_fiber(0, 1) == doctest::Approx(6.0));
    }
    SUBCASE("normalized diagonal projection") {
        Eigen::MatrixXd a(1, 2);
        a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        const LinearQuotient q(a);
        for (double t : {0.25, -1.5, 3.0})
            CHECK(q.fiber_distance(Eigen::Vector2d(0.0, 0.0), Eigen::VectorXd::Constant(1, t)) ==
                  doctest::Approx(std::abs(t)).epsilon(1e-12));
    }
    SUBCASE("projector residual for random full-rank matrices") {
        spaces::Rng rng(123);
        for (int trial = 0; trial < 20; ++trial) {
            const LinearQuotient q = spaces::random_quotient(rng, 4);
            Eigen::VectorXd x(q.ambient_dim()), y(q.base_dim());
            for (int i = 0; i < q.ambient_dim(); ++i) x[i] = std::generate_canonical<double, 53>(rng) * 4 - 2;
            for (int i = 0; i < q.base_dim(); ++i) y[i] = std::generate_canonical<double, 53>(rng) * 4 - 2;
            const Eigen::VectorXd nearest = q.nearest_in_fiber(x, y);
            CHECK((q.matrix() * nearest - y).norm() <= 1e-9);
            CHECK(q.fiber_distance(x, y) == doctest::Approx((x - nearest).norm()).epsilon(1e-12));
        }
    }
    SUBCASE("rank-deficient matrices are rejected") {
        Eigen::MatrixXd a(2, 3);
        a << 1, 2, 3, 2, 4, 6;
        CHECK_THROWS_WITH_AS(static_cast<void>(LinearQuotient(a)), doctest::Contains("rank-deficient"),
                             SpecError);
    }
}

TEST_CASE("three-segment sampling") {
    const auto sc = spaces::three_segment_space(9);
    const Fibration& f = sc.fibration;
    CHECK(f.fiber(sc.y_label).size() == 3); // all three segments cross x1 = 7

    // the segment starting at (1,4) is absent below x1 = 1
    const auto sc17 = spaces::three_segment_space(17);
    int half_label = -1;
    for (std::size_t i = 0; i < sc17.stations.size(); ++i)
        if (std::abs(sc17.stations[i] - 0.5) <= 1e-12) half_label = static_cast<int>(i);
    REQUIRE(half_label >= 0);
    CHECK(sc17.fibration.fiber(half_label).size() == 2);

    // segment 2 point over x1 = 7 is (7, 40/7)
    bool found = false;
    for (int p : f.fiber(sc.y_label)) {
        const auto& c = f.total().point(p);
        if (std::abs(c[1] - 40.0 / 7.0) <= 1e-12) found = true;
    }
    CHECK(found);

    // named points carry the written coordinates
    CHECK(f.total().point(sc.fx_point) == std::vector<double>{1.0, 4.0});
    CHECK(f.total().point(sc.fy_point) == std::vector<double>{8.0, 7.0});
    CHECK(f.total().point(sc.fz_point) == std::vector<double>{8.0, 6.0});

    // nearest-fiber corrections land on the third segment
    const auto& c7 = f.total().point(sc.corrected(sc.y_label));
    CHECK(c7[1] == doctest::Approx(6.5));
    const auto& c6 = f.total().point(sc.corrected(sc.z_label));
    CHECK(c6[1] == doctest::Approx(6.0));

    // forced stations are always sampled, at any resolution
    for (int res : {2, 3, 5}) {
        const auto coarse = spaces::three_segment_space(res);
        CHECK(coarse.x_label >= 0);
        CHECK(coarse.y_label >= 0);
        CHECK(coarse.z_label >= 0);
    }
}

TEST_CASE("Heisenberg scenario with the gauge distance") {
    const auto sc = spaces::koranyi_heisenberg({4, 3, 1.0});
    const Fibration& f = sc.fibration;
    CHECK(validate_section(f, sc.zero_section));

    // left invariance of the gauge distance on seeded coordinate triples
    spaces::Rng rng(5);
    auto rnd = [&]() { return std::generate_canonical<double, 53>(rng) * 2 - 1; };
    for (int trial = 0; trial < 200; ++trial) {
        const std::array<double, 3> g = {rnd(), rnd(), rnd()};
        const std::array<double, 3> p = {rnd(), rnd(), rnd()};
        const std::array<double, 3> q = {rnd(), rnd(), rnd()};
        CHECK(koranyi_dist(heisenberg_mul(g, p), heisenberg_mul(g, q)) ==
              doctest::Approx(koranyi_dist(p, q)).epsilon(1e-9));
    }

    // the gauge is a true metric on the sampled grid
    CHECK(validate_metric(f.total()).ok());

    // the zero section is intrinsically Lipschitz with a finite constant
    const double mc = hoelder::min_constant(f, sc.zero_section, 1.0);
    CHECK(std::isfinite(mc));
    CHECK(mc < 10.0);
    CHECK(hoelder::check_intrinsic_hoelder(f, sc.zero_section, hoelder::HoelderParams(mc + 1e-9, 1.0))
              .holds);
}

TEST_CASE("random fibrations are metric and deterministic") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Fibration f = spaces::random_finite_fibration({seed, 30, 7});
        CHECK(validate_metric(f.total()).ok());
    }
    const auto a = spaces::random_finite_fibration({12, 24, 6});
    const auto b = spaces::random_finite_fibration({12, 24, 6});
    CHECK(io::fibration_to_json(a, {}).dump() == io::fibration_to_json(b, {}).dump());

    // all-singleton fibers when |Y| = |X|
    const auto singletons = spaces::random_finite_fibration({4, 12, 12});
    for (int l = 0; l < singletons.num_labels(); ++l) CHECK(singletons.fiber(l).size() == 1);
    const Section s = spaces::random_section(singletons, 9);
    CHECK(validate_section(singletons, s));
}

TEST_CASE("extension scenario generation") {
    spaces::ExtensionScenarioConfig cfg;
    cfg.base_res = 7;
    cfg.fiber_res = 7;
    cfg.part_res = 5;
    SUBCASE("level planes for g = 0") {
        const auto p = spaces::extension_scenario(cfg);
        CHECK((p.partial_value(0.3, -0.2) - Eigen::Vector3d(0.3, -0.2, 0.0)).norm() == doctest::Approx(0.0));
        CHECK(p.K_bound() == doctest::Approx(6.0));
    }
    SUBCASE("certified affine partial sections") {
        cfg.g_off = {0.0};
        cfg.g_a = {0.5};
        cfg.g_b = {0.5};
        const auto p = spaces::extension_scenario(cfg);
        CHECK(p.g(0, 1.0, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("componentwise construction for s = 2") {
        cfg.s = 2;
        cfg.g_off = {0.0, 0.0};
        cfg.g_a = {0.3, 0.0};
        cfg.g_b = {0.0, 0.4};
        const auto p = spaces::extension_scenario(cfg);
        CHECK(p.s == 2);
        CHECK(p.partial_value(1.0, 1.0).size() == 4);
        CHECK(p.partial_value(1.0, 2.0)[2] == doctest::Approx(0.3));
        CHECK(p.partial_value(1.0, 2.0)[3] == doctest::Approx(0.8));
    }
}

TEST_CASE("generator dispatch is seed-deterministic") {
    for (const char* kind : {"euclidean_linear", "three_segment", "koranyi_heisenberg", "random_finite"}) {
        spaces::ScenarioConfig cfg;
        cfg.kind = kind;
        cfg.seed = 31;
        cfg.resolution = 5;
        cfg.num_points = 14;
        cfg.num_labels = 4;
        const auto once = spaces::generate(cfg);
        const auto twice = spaces::generate(cfg);
        CHECK(io::fibration_to_json(once.fibration, once.sections).dump() ==
              io::fibration_to_json(twice.fibration, twice.sections).dump());
        CHECK(validate_metric(once.fibration.total()).ok());
    }
    spaces::ScenarioConfig bad;
    bad.kind = "nonsense";
    CHECK_THROWS_AS(static_cast<void>(spaces::generate(bad)), SpecError);
}

TEST_CASE("random family members are sections through the anchor") {
    spaces::Rng rng(808);
    const auto ctx = spaces::random_family_context(rng, 6);
    CHECK(ctx.psi_lipschitz() >= 1.0);
    for (int i = 0; i < 4; ++i) {
        const auto m = spaces::random_member(ctx, rng);
        CHECK(ctx.is_section_at_scale(m.values(), m.scale(), 1e-8));
        const auto cert = family::certify_member(ctx, m, 1.0, 1e-8);
        CHECK(cert.anchored);
    }
}
