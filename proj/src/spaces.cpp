#include "fiberlip/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fiberlip/hoelder.hpp"
#include "fiberlip/util.hpp"

namespace fiberlip::spaces {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(n > 1 ? lo + (hi - lo) * i / (n - 1) : lo);
    return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

Fibration euclidean_linear_quotient(const Eigen::MatrixXd& a, std::vector<Eigen::VectorXd> base_labels,
                                    const std::vector<Eigen::VectorXd>& points, double tol) {
    LinearQuotient quotient(a);
    std::vector<std::vector<double>> pts;
    std::vector<int> fiber_of;
    pts.reserve(points.size());
    fiber_of.reserve(points.size());
    for (const auto& x : points) {
        const Eigen::VectorXd y = a * x;
        int label = -1;
        for (std::size_t l = 0; l < base_labels.size(); ++l) {
            if ((y - base_labels[l]).norm() <= tol) {
                label = static_cast<int>(l);
                break;
            }
        }
        if (label < 0) throw SpecError("point does not project onto any base label");
        pts.push_back(to_std(x));
        fiber_of.push_back(label);
    }
    std::vector<std::string> names;
    std::vector<std::vector<double>> label_coords;
    names.reserve(base_labels.size());
    for (const auto& y : base_labels) {
        std::string name;
        for (long i = 0; i < y.size(); ++i) name += (i ? "," : "") + std::to_string(y[i]);
        names.push_back(name);
        label_coords.push_back(to_std(y));
    }
    Fibration f(MetricSpace::euclidean(std::move(pts)), std::move(fiber_of), std::move(names),
                std::move(label_coords));
    f.attach_affine(AffineFiberModel{std::move(quotient), std::move(base_labels)});
    return f;
}

GeneratedScenario slope_graph_scenario(double slope, double lo, double hi, int resolution) {
    if (resolution < 2) throw SpecError("resolution must be at least 2");
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    auto ts = linspace(lo, hi, resolution);
    if (lo < 0.0 && hi > 0.0) ts.push_back(0.0); // shared graph point of psi and phi
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
             ts.end());
    std::vector<Eigen::VectorXd> labels;
    for (double t : ts) labels.push_back(Eigen::VectorXd::Constant(1, t));

    std::vector<Eigen::VectorXd> points;
    Section psi, phi;
    for (double t : ts) {
        Eigen::Vector2d flat(t, 0.0);
        Eigen::Vector2d steep(t, slope * t);
        points.push_back(flat);
        psi.assign.push_back(static_cast<int>(points.size()) - 1);
        if ((steep - flat).norm() < 1e-15) {
            phi.assign.push_back(psi.assign.back()); // shared point, e.g. t = 0
        } else {
            points.push_back(steep);
            phi.assign.push_back(static_cast<int>(points.size()) - 1);
        }
    }
    GeneratedScenario out{euclidean_linear_quotient(a, std::move(labels), points), {}, "euclidean_linear"};
    out.sections["psi"] = std::move(psi);
    out.sections["phi"] = std::move(phi);
    return out;
}

Fibration euclidean_product_grid(const std::vector<double>& base_samples,
                                 const std::vector<double>& heights) {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 0.0;
    std::vector<Eigen::VectorXd> labels;
    for (double t : base_samples) labels.push_back(Eigen::VectorXd::Constant(1, t));
    std::vector<Eigen::VectorXd> points;
    points.reserve(base_samples.size() * heights.size());
    for (double t : base_samples)
        for (double h : heights) points.push_back(Eigen::Vector2d(t, h));
    return euclidean_linear_quotient(a, std::move(labels), points);
}

namespace {

struct SegmentDef {
    double x0, y0, x1, y1;
    bool covers(double x) const { return x >= x0 - 1e-12 && x <= x1 + 1e-12; }
    double height(double x) const { return y0 + (y1 - y0) * (x - x0) / (x1 - x0); }
};

constexpr SegmentDef kSegments[3] = {
    {0.0, 8.0, 8.0, 8.0}, // (0,8)-(8,8)
    {1.0, 4.0, 8.0, 6.0}, // (1,4)-(8,6)
    {0.0, 3.0, 8.0, 7.0}, // (0,3)-(8,7)
};

} // namespace

ThreeSegmentScenario three_segment_space(int resolution) {
    if (resolution < 2) throw SpecError("resolution must be at least 2");
    std::vector<double> stations = linspace(0.0, 8.0, resolution);
    for (double forced : {1.0, 6.0, 7.0, 8.0}) stations.push_back(forced);
    std::sort(stations.begin(), stations.end());
    stations.erase(std::unique(stations.begin(), stations.end(),
                               [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                   stations.end());

    std::vector<std::vector<double>> points;
    std::vector<int> fiber_of;
    std::vector<std::string> names;
    std::vector<std::vector<double>> label_coords;
    // point index per (station, segment), -1 when the segment does not cover it
    std::vector<std::array<int, 3>> seg_point(stations.size(), {-1, -1, -1});

    for (std::size_t si = 0; si < stations.size(); ++si) {
        const double x = stations[si];
        names.push_back(std::to_string(x));
        label_coords.push_back({x, 0.0});
        for (int seg = 0; seg < 3; ++seg) {
            if (!kSegments[seg].covers(x)) continue;
            points.push_back({x, kSegments[seg].height(x)});
            fiber_of.push_back(static_cast<int>(si));
            seg_point[si][static_cast<std::size_t>(seg)] = static_cast<int>(points.size()) - 1;
        }
    }
    Fibration fib(MetricSpace::three_segment(std::move(points)), std::move(fiber_of), std::move(names),
                  std::move(label_coords));

    auto station_index = [&](double x) {
        for (std::size_t i = 0; i < stations.size(); ++i)
            if (std::abs(stations[i] - x) <= 1e-12) return static_cast<int>(i);
        throw SpecError("station not sampled");
    };
    const int x_label = station_index(1.0);
    const int y_label = station_index(7.0);
    const int z_label = station_index(6.0);
    const int last = station_index(8.0);
    const int fx_point = seg_point[static_cast<std::size_t>(x_label)][1]; // (1,4) on segment 2
    const int fy_point = seg_point[static_cast<std::size_t>(last)][2];    // (8,7) on segment 3
    const int fz_point = seg_point[static_cast<std::size_t>(last)][1];    // (8,6) on segment 2

    // the segment (0,3)-(8,7) spans every station, so it defines a section
    Section s3;
    for (std::size_t si = 0; si < stations.size(); ++si) s3.assign.push_back(seg_point[si][2]);

    // corrected variant: move each written image to the nearest point of the
    // correct fiber; extend by the s3 section elsewhere
    auto nearest_in_fiber = [&](int label, int target) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int p : fib.fiber(label)) {
            const double d = fib.dist(p, target);
            if (d < best_d) {
                best_d = d;
                best = p;
            }
        }
        return best;
    };
    Section corrected = s3;
    corrected.assign[static_cast<std::size_t>(x_label)] = fx_point;
    corrected.assign[static_cast<std::size_t>(y_label)] = nearest_in_fiber(y_label, fy_point);
    corrected.assign[static_cast<std::size_t>(z_label)] = nearest_in_fiber(z_label, fz_point);

    // the assignment exactly as written: images over 7 and 6 live in the fiber over 8
    Section paper_literal = corrected;
    paper_literal.assign[static_cast<std::size_t>(y_label)] = fy_point;
    paper_literal.assign[static_cast<std::size_t>(z_label)] = fz_point;

    return ThreeSegmentScenario{std::move(fib),    std::move(stations), x_label,  y_label,
                                z_label,           fx_point,            fy_point, fz_point,
                                std::move(s3),     std::move(corrected), std::move(paper_literal)};
}

KoranyiScenario koranyi_heisenberg(const KoranyiConfig& config) {
    if (config.base_res < 2 || config.fiber_res < 2) throw SpecError("resolution must be at least 2");
    const int nt = config.fiber_res % 2 == 0 ? config.fiber_res + 1 : config.fiber_res; // hit t = 0
    const auto xs = linspace(-config.half_width, config.half_width, config.base_res);
    const auto ts = linspace(-config.half_width, config.half_width, nt);

    std::vector<std::vector<double>> points;
    std::vector<int> fiber_of;
    std::vector<std::string> names;
    std::vector<std::vector<double>> label_coords;
    Section zero;
    for (double x : xs) {
        for (double y : xs) {
            const int label = static_cast<int>(names.size());
            names.push_back(std::to_string(x) + "," + std::to_string(y));
            label_coords.push_back({x, y});
            int zero_idx = -1;
            for (double t : ts) {
                points.push_back({x, y, t});
                fiber_of.push_back(label);
                if (t == 0.0) zero_idx = static_cast<int>(points.size()) - 1;
            }
            zero.assign.push_back(zero_idx);
        }
    }
    Fibration fib(MetricSpace::koranyi(std::move(points)), std::move(fiber_of), std::move(names),
                  std::move(label_coords));
    return KoranyiScenario{std::move(fib), std::move(zero)};
}

Fibration random_finite_fibration(const RandomFibrationConfig& config) {
    const int n = config.num_points;
    const int m = config.num_labels;
    if (n < 1 || n > 512) throw SpecError("num_points must lie in [1, 512]");
    if (m < 1 || m > n) throw SpecError("num_labels must lie in [1, num_points]");
    Rng rng(config.seed);
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    auto add_edge = [&](int i, int j, double w) {
        auto& dij = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        auto& dji = d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        dij = std::min(dij, w);
        dji = std::min(dji, w);
    };
    // random spanning tree keeps the graph connected; extra edges add shortcuts
    for (int i = 1; i < n; ++i) add_edge(i, static_cast<int>(rng() % static_cast<std::uint64_t>(i)), urand(0.5, 2.0));
    for (int e = 0; e < n; ++e) {
        const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (i != j) add_edge(i, j, urand(0.5, 2.5));
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double via = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                   d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (via < d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
            }

    // surjective random partition: a shuffled prefix pins one point per label
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
    std::vector<int> fiber_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int p = order[static_cast<std::size_t>(i)];
        fiber_of[static_cast<std::size_t>(p)] = i < m ? i : static_cast<int>(rng() % static_cast<std::uint64_t>(m));
    }
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n)); // no coordinate payloads
    return Fibration(MetricSpace::graph_geodesic(std::move(points), std::move(d)), std::move(fiber_of));
}

Section random_section(const Fibration& f, std::uint64_t seed) {
    Rng rng(seed);
    Section s;
    s.assign.reserve(static_cast<std::size_t>(f.num_labels()));
    for (int l = 0; l < f.num_labels(); ++l) {
        const auto fiber = f.fiber(l);
        s.assign.push_back(fiber[static_cast<std::size_t>(rng() % fiber.size())]);
    }
    return s;
}

ext::ExtensionProblem extension_scenario(const ExtensionScenarioConfig& config) {
    ext::ExtensionProblem p;
    p.s = config.s;
    p.k = config.k;
    p.L = config.L;
    p.rho_scale = config.rho_scale;
    p.eps_grid = config.eps_grid;
    p.base_a = {-config.base_half, config.base_half, config.base_res};
    p.base_b = {-config.base_half, config.base_half, config.base_res};
    p.fiber_c = {-config.fiber_half, config.fiber_half, config.fiber_res};
    p.part_a = {-config.part_half, config.part_half, config.part_res};
    p.part_b = {-config.part_half, config.part_half, config.part_res};
    p.g_off = config.g_off;
    p.g_a = config.g_a;
    p.g_b = config.g_b;
    p.validate();

    // hypothesis checks on samples: rho/d ratio, tau Lipschitz, fiber biLipschitz
    Rng rng(config.s * 1000003u + 17u);
    auto sample_point = [&](bool on_graph) {
        Eigen::VectorXd x(2 + p.s);
        x[0] = p.base_a.lo + (p.base_a.hi - p.base_a.lo) * std::generate_canonical<double, 53>(rng);
        x[1] = p.base_b.lo + (p.base_b.hi - p.base_b.lo) * std::generate_canonical<double, 53>(rng);
        for (int i = 0; i < p.s; ++i)
            x[2 + i] = on_graph ? p.g(i, x[0], x[1])
                                : p.fiber_c.lo + (p.fiber_c.hi - p.fiber_c.lo) *
                                                     std::generate_canonical<double, 53>(rng);
        return x;
    };
    for (int trial = 0; trial < 64; ++trial) {
        const Eigen::VectorXd x = sample_point(false);
        Eigen::VectorXd xp = sample_point(false);
        const double d = (x - xp).norm();
        if (d <= 1e-12) continue;
        const double rho = p.rho_scale * d;
        if (rho < d / p.k - 1e-9 || rho > p.k * d + 1e-9)
            throw SpecError("hypothesis violated: rho is not k-biLipschitz to d");
        double dtau = 0.0;
        for (int i = 0; i < p.s; ++i) dtau = std::hypot(dtau, x[2 + i] - xp[2 + i]);
        if (dtau > p.k * d + 1e-9) throw SpecError("hypothesis violated: tau is not k-Lipschitz");
        // same-fiber pair
        xp = x;
        for (int i = 0; i < p.s; ++i)
            xp[2 + i] = p.fiber_c.lo + (p.fiber_c.hi - p.fiber_c.lo) *
                                           std::generate_canonical<double, 53>(rng);
        const double fd = (x - xp).norm();
        if (fd > 1e-12) {
            double ft = 0.0;
            for (int i = 0; i < p.s; ++i) ft = std::hypot(ft, x[2 + i] - xp[2 + i]);
            if (ft < fd / p.k - 1e-9 || ft > p.k * fd + 1e-9)
                throw SpecError("hypothesis violated: tau is not k-biLipschitz on fibers");
        }
    }

    // certify the partial section intrinsically L-Lipschitz (alpha = 1) on its
    // sample grid, with exact horizontal fiber distances
    {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2 + p.s);
        a(0, 0) = 1.0;
        a(1, 1) = 1.0;
        std::vector<Eigen::VectorXd> labels;
        std::vector<Eigen::VectorXd> points;
        Section phi;
        for (int ia = 0; ia < p.part_a.n; ++ia) {
            for (int ib = 0; ib < p.part_b.n; ++ib) {
                labels.push_back(Eigen::Vector2d(p.part_a.at(ia), p.part_b.at(ib)));
                points.push_back(p.partial_value(p.part_a.at(ia), p.part_b.at(ib)));
                phi.assign.push_back(static_cast<int>(points.size()) - 1);
            }
        }
        const Fibration partial_fib = euclidean_linear_quotient(a, std::move(labels), points);
        const auto cert = hoelder::check_intrinsic_hoelder(partial_fib, phi, hoelder::HoelderParams(p.L, 1.0));
        if (!cert.holds)
            throw SpecError("hypothesis violated: partial section is not intrinsically L-Lipschitz");
    }
    return p;
}

LinearQuotient random_quotient(Rng& rng, int kappa_max) {
    if (kappa_max < 2) throw SpecError("kappa_max must be at least 2");
    for (;;) {
        const int kappa = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(kappa_max - 1));
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(kappa - 1));
        Eigen::MatrixXd a(m, kappa);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < kappa; ++c)
                a(r, c) = -2.0 + 4.0 * std::generate_canonical<double, 53>(rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        if (svd.singularValues()(m - 1) < 0.3) continue; // keep conditioning sane
        return LinearQuotient(a);
    }
}

family::FamilyContext random_family_context(Rng& rng, int kappa_max) {
    LinearQuotient q = random_quotient(rng, kappa_max);
    const int m = q.base_dim();
    const int kappa = q.ambient_dim();
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };

    const int nk = 4 + static_cast<int>(rng() % 5);
    std::vector<Eigen::VectorXd> base;
    for (int i = 0; i < nk; ++i) {
        Eigen::VectorXd y(m);
        for (int c = 0; c < m; ++c) y[c] = urand(-2.0, 2.0);
        base.push_back(y);
    }
    // keep samples separated so fiber distances stay away from zero
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((base[i] - base[j]).norm() < 0.1) base[i][0] += 0.35 * static_cast<double>(i + 1);

    const Eigen::MatrixXd pker = q.kernel_projector();
    const Eigen::VectorXd yhat = base[0];
    Eigen::VectorXd w0(kappa);
    for (int c = 0; c < kappa; ++c) w0[c] = urand(-1.0, 1.0);
    const Eigen::VectorXd xhat = q.min_norm_preimage(yhat) + pker * w0;

    Eigen::MatrixXd wpsi(kappa, m);
    for (int r = 0; r < kappa; ++r)
        for (int c = 0; c < m; ++c) wpsi(r, c) = urand(-1.0, 1.0);

    family::VectorSection psi;
    for (const auto& y : base)
        psi.push_back(xhat + q.min_norm_preimage(y - yhat) + pker * (wpsi * (y - yhat)));
    return family::FamilyContext(std::move(q), std::move(base), std::move(psi), 0);
}

family::ScaledMember random_member(const family::FamilyContext& ctx, Rng& rng) {
    auto urand = [&](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    const auto& q = ctx.quotient();
    const int kappa = q.ambient_dim();
    const int m = q.base_dim();
    const Eigen::MatrixXd pker = q.kernel_projector();
    Eigen::MatrixXd w(kappa, m);
    for (int r = 0; r < kappa; ++r)
        for (int c = 0; c < m; ++c) w(r, c) = urand(-1.0, 1.0);

    const Eigen::VectorXd& yhat = ctx.base()[static_cast<std::size_t>(ctx.anchor_index())];
    family::VectorSection phi;
    for (const auto& y : ctx.base())
        phi.push_back(ctx.anchor() + q.min_norm_preimage(y - yhat) + pker * (w * (y - yhat)));

    double lambda = 0.0;
    while (std::abs(lambda) < 0.2) lambda = urand(-3.0, 3.0);
    return family::ScaledMember::from_plain(phi, lambda);
}

GeneratedScenario generate(const ScenarioConfig& config) {
    if (config.kind == "euclidean_linear") {
        if (!config.matrix.empty()) {
            // custom matrix: emit the min-norm section over a seeded base sample
            Eigen::MatrixXd a(static_cast<long>(config.matrix.size()),
                              static_cast<long>(config.matrix.front().size()));
            for (long r = 0; r < a.rows(); ++r)
                for (long c = 0; c < a.cols(); ++c)
                    a(r, c) = config.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            LinearQuotient q(a);
            Rng rng(config.seed);
            std::vector<Eigen::VectorXd> labels;
            std::vector<Eigen::VectorXd> points;
            Section phi;
            for (int i = 0; i < config.resolution; ++i) {
                Eigen::VectorXd y(q.base_dim());
                for (int c = 0; c < q.base_dim(); ++c)
                    y[c] = config.lo +
                           (config.hi - config.lo) * std::generate_canonical<double, 53>(rng);
                labels.push_back(y);
                points.push_back(q.min_norm_preimage(y));
                phi.assign.push_back(i);
            }
            GeneratedScenario out{euclidean_linear_quotient(a, std::move(labels), points), {}, config.kind};
            out.sections["phi"] = std::move(phi);
            return out;
        }
        return slope_graph_scenario(config.slope, config.lo, config.hi, config.resolution);
    }
    if (config.kind == "three_segment") {
        auto sc = three_segment_space(config.resolution);
        GeneratedScenario out{std::move(sc.fibration), {}, config.kind};
        out.sections["s3"] = std::move(sc.s3);
        out.sections["corrected"] = std::move(sc.corrected);
        return out;
    }
    if (config.kind == "koranyi_heisenberg") {
        KoranyiConfig kc;
        kc.base_res = config.resolution;
        kc.fiber_res = config.resolution;
        auto sc = koranyi_heisenberg(kc);
        GeneratedScenario out{std::move(sc.fibration), {}, config.kind};
        out.sections["zero"] = std::move(sc.zero_section);
        return out;
    }
    if (config.kind == "random_finite") {
        RandomFibrationConfig rc{config.seed, config.num_points, config.num_labels};
        GeneratedScenario out{random_finite_fibration(rc), {}, config.kind};
        out.sections["phi"] = random_section(out.fibration, config.seed + 1);
        return out;
    }
    throw SpecError("unknown scenario kind: " + config.kind);
}

} // namespace fiberlip::spaces
