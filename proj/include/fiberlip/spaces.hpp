#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fiberlip/extension.hpp"
#include "fiberlip/family.hpp"
#include "fiberlip/fibration.hpp"

namespace fiberlip::spaces {

using Rng = std::mt19937_64;

/// JSON-facing scenario description for the CLI. Seed fully determines every
/// generator's output; resolution is the sample count per axis.
struct ScenarioConfig {
    std::string kind; // euclidean_linear | three_segment | koranyi_heisenberg | random_finite | extension_scenario
    std::uint64_t seed = 0;
    int resolution = 9;
    // euclidean_linear
    std::vector<std::vector<double>> matrix; // pi; defaults to [1 0]
    double slope = 3.0;                      // slope of the generated "phi" section
    double lo = -2.0, hi = 3.0;              // base window
    // random_finite
    int num_points = 24;
    int num_labels = 6;
    // extension_scenario
    ext::ExtensionProblem extension; // bounds/coefficients; validated on generate
};

struct GeneratedScenario {
    Fibration fibration;
    std::map<std::string, Section> sections;
    std::string kind;
};

/// Fibration over a linear quotient: `points` are labeled by matching A x to
/// a base label within tol; the exact affine fiber model is attached.
Fibration euclidean_linear_quotient(const Eigen::MatrixXd& a, std::vector<Eigen::VectorXd> base_labels,
                                    const std::vector<Eigen::VectorXd>& points, double tol = 1e-9);

/// Graph-of-slope scenario over pi = [1 0] on R^2: base samples t in
/// [lo, hi], sections "psi" (t, 0) and "phi" (t, slope t), shared point at
/// t = 0 when sampled.
GeneratedScenario slope_graph_scenario(double slope, double lo, double hi, int resolution);

/// Product grid (y_i, h_j) over pi = first coordinate, for foliation tests.
Fibration euclidean_product_grid(const std::vector<double>& base_samples,
                                 const std::vector<double>& heights);

struct ThreeSegmentScenario {
    Fibration fibration;
    std::vector<double> stations;
    int x_label = -1, y_label = -1, z_label = -1; // stations 1, 7, 6
    int fx_point = -1, fy_point = -1, fz_point = -1; // (1,4), (8,7), (8,6)
    Section s3;         // section along the segment (0,3)-(8,7)
    Section corrected;  // nearest-fiber correction of the written assignment
    Section paper_literal; // the assignment exactly as written (not a section)
};

/// The union of the three segments (0,8)-(8,8), (1,4)-(8,6), (0,3)-(8,7)
/// over the base segment (0,0)-(8,0), first-coordinate projection, ambient
/// planar distance. Station values {1, 6, 7, 8} are always sampled exactly.
ThreeSegmentScenario three_segment_space(int resolution);

struct KoranyiConfig {
    int base_res = 5;  // samples per horizontal axis
    int fiber_res = 5; // samples along the center (made odd so t = 0 is hit)
    double half_width = 1.0;
};

struct KoranyiScenario {
    Fibration fibration;
    Section zero_section; // (x, y) -> (x, y, 0)
};

/// Heisenberg group sampled on a grid, Koranyi gauge distance, quotient by
/// the center: pi(x, y, t) = (x, y).
KoranyiScenario koranyi_heisenberg(const KoranyiConfig& config);

struct RandomFibrationConfig {
    std::uint64_t seed = 0;
    int num_points = 24; // <= 512
    int num_labels = 6;  // <= num_points
};

/// Shortest-path completion of a seeded random connected weighted graph with
/// a seeded random surjective label partition.
Fibration random_finite_fibration(const RandomFibrationConfig& config);

Section random_section(const Fibration& f, std::uint64_t seed);

struct ExtensionScenarioConfig {
    int s = 1;
    double k = 1.0;
    double L = 1.0;
    double rho_scale = 1.0;
    int base_res = 15;
    int fiber_res = 15;
    int part_res = 9;
    double base_half = 1.0;   // base window [-h, h]^2
    double fiber_half = 1.5;  // fiber window [-h, h]
    double part_half = 0.5;   // Y' window [-h, h]^2
    std::vector<double> g_off = {0.0}, g_a = {0.0}, g_b = {0.0};
    double eps_grid = 0.05;
};

/// Desk scenario for the level-set extension theorem. Validates the
/// hypotheses on samples and certifies the partial section intrinsically
/// L-Lipschitz (alpha = 1) before returning; throws "hypothesis violated"
/// when the declared L is too small.
ext::ExtensionProblem extension_scenario(const ExtensionScenarioConfig& config);

/// Seeded full-row-rank quotient matrix with bounded conditioning,
/// kappa in [2, kappa_max], m in [1, kappa-1].
LinearQuotient random_quotient(Rng& rng, int kappa_max = 6);

/// Seeded family context over a random quotient: base sample K, base section
/// psi through a random anchor.
family::FamilyContext random_family_context(Rng& rng, int kappa_max = 6);

/// Seeded member anchored at the context's anchor, |scale| in [0.2, 3].
family::ScaledMember random_member(const family::FamilyContext& ctx, Rng& rng);

/// Dispatch for the CLI `gen` subcommand (fibration-shaped kinds only).
GeneratedScenario generate(const ScenarioConfig& config);

} // namespace fiberlip::spaces
