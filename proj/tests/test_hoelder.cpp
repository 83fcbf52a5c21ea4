#include <doctest.h>

#include <cmath>
#include <functional>

#include "fiberlip/family.hpp"
#include "fiberlip/hoelder.hpp"
#include "fiberlip/spaces.hpp"
#include "fiberlip/util.hpp"

using namespace fiberlip;

namespace {

// linear-quotient fibration over pi = [1 0] whose points are the graphs of
// the given height functions; returns one section per height function
struct LinearScenario {
    Fibration fibration;
    std::vector<Section> sections;
};

LinearScenario build_linear(const std::vector<double>& ts,
                            const std::vector<std::function<double(double)>>& heights) {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    std::vector<Eigen::VectorXd> labels;
    for (double t : ts) labels.push_back(Eigen::VectorXd::Constant(1, t));
    std::vector<Eigen::VectorXd> points;
    std::vector<Section> sections(heights.size());
    for (double t : ts) {
        for (std::size_t h = 0; h < heights.size(); ++h) {
            const Eigen::Vector2d p(t, heights[h](t));
            int idx = -1;
            for (std::size_t q = 0; q < points.size(); ++q)
                if ((points[q] - p).norm() <= 1e-14) idx = static_cast<int>(q);
            if (idx < 0) {
                points.push_back(p);
                idx = static_cast<int>(points.size()) - 1;
            }
            sections[h].assign.push_back(idx);
        }
    }
    return {spaces::euclidean_linear_quotient(a, std::move(labels), points), std::move(sections)};
}

const std::vector<double> kGrid = {-2.0, -1.25, -0.5, 0.0, 0.5, 1.0, 1.75, 3.0};

} // namespace

TEST_CASE("flat graphs satisfy the defining inequality at any constant") {
    auto sc = build_linear(kGrid, {[](double) { return 0.0; }});
    const auto cert =
        hoelder::check_intrinsic_hoelder(sc.fibration, sc.sections[0], hoelder::HoelderParams(0.01, 1.0));
    CHECK(cert.holds);
    CHECK(hoelder::min_constant(sc.fibration, sc.sections[0], 1.0) == doctest::Approx(0.0));
}

TEST_CASE("slope-3 graph: least constant is sqrt(10)-1") {
    auto sc = spaces::slope_graph_scenario(3.0, -2.0, 3.0, 9);
    const auto& phi = sc.sections.at("phi");
    const double mc = hoelder::min_constant(sc.fibration, phi, 1.0);
    // exact value from collinearity: every pair gives the same ratio
    CHECK(mc == doctest::Approx(std::sqrt(10.0) - 1.0).epsilon(1e-12));

    CHECK(hoelder::check_intrinsic_hoelder(sc.fibration, phi, hoelder::HoelderParams(2.17, 1.0)).holds);
    const auto failing =
        hoelder::check_intrinsic_hoelder(sc.fibration, phi, hoelder::HoelderParams(2.0, 1.0));
    CHECK(!failing.holds);
    REQUIRE(failing.witness.has_value());
    // worst pair has the largest base gap; ties resolve lexicographically
    CHECK(failing.witness->first == 0);
    CHECK(failing.witness->second == sc.fibration.num_labels() - 1);
}

TEST_CASE("single-label base holds vacuously") {
    auto sc = build_linear({0.5}, {[](double) { return 42.0; }});
    CHECK(hoelder::check_intrinsic_hoelder(sc.fibration, sc.sections[0], hoelder::HoelderParams(1e-6, 0.5))
              .holds);
}

TEST_CASE("min_constant exactness around the threshold") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        const Fibration f = spaces::random_finite_fibration({seed, 30, 6});
        const Section phi = spaces::random_section(f, seed);
        for (double alpha : {0.5, 1.0}) {
            const double mc = hoelder::min_constant(f, phi, alpha);
            CHECK(hoelder::check_intrinsic_hoelder(f, phi, hoelder::HoelderParams(mc + 1e-9, alpha)).holds);
            if (mc > 1e-6)
                CHECK(!hoelder::check_intrinsic_hoelder(f, phi, hoelder::HoelderParams(mc - 1e-6, alpha))
                           .holds);
        }
    }
}

TEST_CASE("holding is monotone in the constant") {
    const Fibration f = spaces::random_finite_fibration({31, 40, 8});
    const Section phi = spaces::random_section(f, 77);
    const double mc = hoelder::min_constant(f, phi, 1.0);
    for (double bump : {0.01, 0.5, 3.0})
        CHECK(hoelder::check_intrinsic_hoelder(f, phi, hoelder::HoelderParams(mc + bump, 1.0)).holds);
}

TEST_CASE("cone membership on the plane") {
    // points (0,0), (0,3), (1,0), (1,3) over labels {0,1}
    const Fibration f = spaces::euclidean_product_grid({0.0, 1.0}, {0.0, 3.0});
    int vertex = -1, same_fiber = -1, probe = -1;
    for (int p = 0; p < f.num_points(); ++p) {
        const auto& c = f.total().point(p);
        if (c[0] == 0.0 && c[1] == 0.0) vertex = p;
        if (c[0] == 0.0 && c[1] == 3.0) same_fiber = p;
        if (c[0] == 1.0 && c[1] == 3.0) probe = p;
    }
    const auto cone = hoelder::ConeSpec::plain(vertex, 1.0, 1.0);
    CHECK(!hoelder::cone_membership(f, cone, vertex));       // vertex never belongs
    CHECK(hoelder::cone_membership(f, cone, same_fiber));    // fiber distance vanishes
    CHECK(hoelder::cone_membership(f, cone, probe));         // 1*1 + 1 = 2 < sqrt(10)
}

TEST_CASE("graph avoidance agrees with the defining inequality") {
    auto sc = spaces::slope_graph_scenario(3.0, -2.0, 3.0, 9);
    const auto& phi = sc.sections.at("phi");
    CHECK(hoelder::check_graph_avoids_cones(sc.fibration, phi, hoelder::HoelderParams(2.17, 1.0)));
    CHECK(!hoelder::check_graph_avoids_cones(sc.fibration, phi, hoelder::HoelderParams(2.0, 1.0)));

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Fibration f = spaces::random_finite_fibration({seed, 20, 5});
        const Section s = spaces::random_section(f, seed * 13 + 5);
        spaces::Rng rng(seed);
        const double alpha = seed % 3 == 0 ? 1.0 : 0.3 + 0.7 * std::generate_canonical<double, 53>(rng);
        const double L = std::exp(-2.0 + 4.0 * std::generate_canonical<double, 53>(rng));
        const hoelder::HoelderParams params(L, alpha);
        CHECK(hoelder::check_graph_avoids_cones(f, s, params) ==
              hoelder::check_intrinsic_hoelder(f, s, params).holds);
    }
}

TEST_CASE("wrt-certificates") {
    auto clamp1 = [](double y) { return std::min(std::abs(y), 1.0); };
    auto steep = [](double y) { return 2.0 * std::abs(y); };
    auto sc = build_linear(kGrid, {[](double) { return 0.0; }, clamp1, steep});
    const Section& psi = sc.sections[0];
    const Section& phi = sc.sections[1];
    const Section& phi2 = sc.sections[2];
    const int anchor = psi(3); // (0, 0): shared by all three graphs

    // a section against itself has zero left-hand side
    CHECK(hoelder::check_hoelder_wrt(sc.fibration, psi, psi, anchor, hoelder::HoelderParams(1e-9, 1.0))
              .holds);
    // clamp graph: min(|y|, 1) <= (L+1)|y| already at L = 0.5
    CHECK(hoelder::check_hoelder_wrt(sc.fibration, phi, psi, anchor, hoelder::HoelderParams(1.0, 1.0)).holds);
    CHECK(hoelder::check_hoelder_wrt(sc.fibration, phi, psi, anchor, hoelder::HoelderParams(0.5, 1.0)).holds);
    // 2|y| > 1.5|y| fails, with a witness
    const auto bad =
        hoelder::check_hoelder_wrt(sc.fibration, phi2, psi, anchor, hoelder::HoelderParams(0.5, 1.0));
    CHECK(!bad.holds);
    CHECK(bad.witness.has_value());

    // anchor must lie on both graphs
    CHECK_THROWS_WITH_AS(static_cast<void>(hoelder::check_hoelder_wrt(sc.fibration, phi2, psi, psi(0),
                                                                      hoelder::HoelderParams(1.0, 1.0))),
                         doctest::Contains("anchor not shared"), SpecError);
}

TEST_CASE("bounded-base equivalence constants") {
    auto sc = build_linear(kGrid, {[](double) { return 0.0; }});
    const auto flat = hoelder::check_equivalence_bounded(sc.fibration, sc.sections[0], 1.0);
    CHECK(flat.L_form == doctest::Approx(0.0));
    CHECK(flat.K_form == doctest::Approx(1.0)); // d equals the fiber distance exactly
    CHECK(flat.bound_ok);

    for (std::uint64_t seed : {41u, 42u, 43u}) {
        const Fibration f = spaces::random_finite_fibration({seed, 26, 6});
        const Section phi = spaces::random_section(f, seed + 7);
        for (double alpha : {0.4, 0.8, 1.0}) {
            const auto eq = hoelder::check_equivalence_bounded(f, phi, alpha);
            CHECK(eq.L_form <= eq.K_form + 1e-9);
            CHECK(eq.bound_ok);
        }
    }
}

TEST_CASE("foliated equivalence on horizontal foliations") {
    // product grid holding the slope-3 graph and all horizontal translates
    std::vector<double> heights;
    for (double t : kGrid) heights.push_back(3.0 * t);
    const Fibration f = spaces::euclidean_product_grid(kGrid, heights);
    auto find_point = [&](double a, double b) {
        for (int p = 0; p < f.num_points(); ++p) {
            const auto& c = f.total().point(p);
            if (std::abs(c[0] - a) <= 1e-12 && std::abs(c[1] - b) <= 1e-12) return p;
        }
        throw SpecError("grid point missing");
    };
    Section phi;
    std::vector<Section> horizontals(kGrid.size());
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
        phi.assign.push_back(find_point(kGrid[i], 3.0 * kGrid[i]));
        for (std::size_t j = 0; j < kGrid.size(); ++j)
            horizontals[i].assign.push_back(find_point(kGrid[j], 3.0 * kGrid[i]));
    }
    std::unordered_map<int, Section> foliation;
    for (std::size_t i = 0; i < kGrid.size(); ++i) foliation[phi(static_cast<int>(i))] = horizontals[i];

    const double mc = std::sqrt(10.0) - 1.0;
    const auto both = hoelder::check_foliated_equivalence(f, phi, foliation,
                                                          hoelder::HoelderParams(mc + 1e-9, 1.0),
                                                          hoelder::HoelderParams(mc + 1e-9, 1.0));
    CHECK(both.dir12);
    CHECK(both.dir21);

    // constants differ between the two directions: at L2 = 1 the intrinsic
    // check fails while the wrt direction still holds at a larger L1
    const auto split = hoelder::check_foliated_equivalence(
        f, phi, foliation, hoelder::HoelderParams(5.0, 1.0), hoelder::HoelderParams(1.0, 1.0));
    CHECK(split.dir12);
    CHECK(!split.dir21);

    std::unordered_map<int, Section> missing = foliation;
    missing.erase(phi(0));
    CHECK_THROWS_WITH_AS(
        static_cast<void>(hoelder::check_foliated_equivalence(f, phi, missing,
                                                              hoelder::HoelderParams(1.0, 1.0),
                                                              hoelder::HoelderParams(1.0, 1.0))),
        doctest::Contains("foliation missing"), SpecError);
}

TEST_CASE("vector-space closure of scaled members") {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    std::vector<Eigen::VectorXd> base;
    family::VectorSection psi, phi1, phi2;
    for (double t : kGrid) {
        base.push_back(Eigen::VectorXd::Constant(1, t));
        psi.push_back(Eigen::Vector2d(t, 0.0));
        phi1.push_back(Eigen::Vector2d(t, 1.0 * t));
        phi2.push_back(Eigen::Vector2d(t, 2.0 * t));
    }
    const family::FamilyContext ctx(LinearQuotient(a), base, psi, 3); // anchor (0, 0)
    const auto m1 = family::ScaledMember::from_plain(phi1, 1.0);
    const auto m2 = family::ScaledMember::from_plain(phi2, 1.0);

    const auto report = family::check_vector_space_closure(ctx, {m1, m2}, -1.0, 1.0);
    CHECK(report.sum_member.scale() == doctest::Approx(2.0));
    CHECK(report.sum_is_section);
    CHECK(report.sum_anchored);
    // sum graph (2y, 3y) against 2*psi: ratio (3|y| - 2|y|) / 2|y| = 1/2
    CHECK(report.sum_constant == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.scalar_ok);
    // -phi1 against -psi: lhs and base both |y|, so the least constant clamps to 0
    CHECK(report.scalar_constant == doctest::Approx(0.0));

    // scales that cancel leave the family
    const auto m_neg = family::scale_member(-1.0, m1);
    CHECK_THROWS_WITH_AS(static_cast<void>(family::add_members(m1, m_neg)),
                         doctest::Contains("degenerate scale"), SpecError);

    // identity scalar: same member, same constant
    const auto same = family::scale_member(1.0, m1);
    CHECK(same.scale() == m1.scale());
    for (std::size_t i = 0; i < same.values().size(); ++i)
        CHECK((same.values()[i] - m1.values()[i]).norm() == doctest::Approx(0.0));

    // zero sentinel behaves as the neutral element
    const auto z = family::ScaledMember::zero();
    const auto m1z = family::add_members(m1, z);
    CHECK(m1z.scale() == m1.scale());
    CHECK(family::scale_member(0.0, m1).is_zero());

    // the unscaled pointwise sum is a section only of the rescaled data
    family::VectorSection raw;
    for (std::size_t i = 0; i < phi1.size(); ++i) raw.push_back(phi1[i] + phi2[i]);
    CHECK(!ctx.is_section_at_scale(raw, 1.0));
    CHECK(ctx.is_section_at_scale(raw, 2.0));
}

TEST_CASE("wrt-cone avoidance matches the wrt certificate") {
    auto clamp1 = [](double y) { return std::min(std::abs(y), 1.0); };
    auto steep = [](double y) { return 2.0 * std::abs(y); };
    auto sc = build_linear(kGrid, {[](double) { return 0.0; }, clamp1, steep});
    const Section& psi = sc.sections[0];
    const int anchor = psi(3); // (0, 0)

    for (std::size_t which : {1u, 2u}) {
        const Section& phi = sc.sections[which];
        for (double L : {0.5, 1.0, 2.0}) {
            const auto cone = hoelder::ConeSpec::wrt(sc.fibration, psi, anchor, L, 1.0);
            CHECK(!hoelder::cone_membership(sc.fibration, cone, anchor)); // vertex never belongs
            bool avoids = true;
            for (int y = 0; y < sc.fibration.num_labels(); ++y)
                if (hoelder::cone_membership(sc.fibration, cone, phi(y))) avoids = false;
            const auto cert =
                hoelder::check_hoelder_wrt(sc.fibration, phi, psi, anchor, hoelder::HoelderParams(L, 1.0));
            CHECK(avoids == cert.holds);
        }
    }
}

TEST_CASE("every section is wrt-Hoelder against itself") {
    for (std::uint64_t seed : {61u, 62u, 63u}) {
        const Fibration f = spaces::random_finite_fibration({seed, 22, 6});
        const Section phi = spaces::random_section(f, seed + 5);
        for (int y = 0; y < f.num_labels(); y += 2)
            CHECK(hoelder::check_hoelder_wrt(f, phi, phi, phi(y), hoelder::HoelderParams(0.3, 0.7)).holds);
    }
}

TEST_CASE("wrt self-certificate holds for random members") {
    spaces::Rng rng(505);
    const auto ctx = spaces::random_family_context(rng, 5);
    for (int i = 0; i < 5; ++i) {
        const auto m = spaces::random_member(ctx, rng);
        const auto cert = family::certify_member(ctx, m, 1.0);
        CHECK(cert.section_ok);
        CHECK(cert.anchored);
        CHECK(cert.finite);
    }
}
