#pragma once

#include <vector>

#include <Eigen/Dense>

namespace fiberlip::ext {

struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    double step() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }
    double at(int i) const { return n > 1 ? lo + (hi - lo) * i / (n - 1) : lo; }
};

/// Level-set extension problem on the Euclidean desk scenario:
/// X = R^(2+s) with pi = the horizontal projection (a, b), tau = the last s
/// coordinates, rho = rho_scale * d, level sections = coordinate planes, and
/// an affine partial section phi(u) = (u, g(u)) over the Y' sample window.
/// Per-component quantities are evaluated in the (a, b, c_i) slice, matching
/// the slice domains of the level sections; the joint map is assembled from
/// the per-component extensions.
struct ExtensionProblem {
    int s = 1;
    double k = 1.0;         // constant for rho and tau
    double L = 1.0;         // declared intrinsic Lipschitz constant of the partial section
    double rho_scale = 1.0; // rho = rho_scale * d with rho_scale in [1/k, k]
    double eps_grid = 0.05; // sampling allowance on the Lipschitz bound

    GridAxis base_a, base_b; // sampled horizontal window of X
    GridAxis fiber_c;        // sampled fiber axis, shared across components
    GridAxis part_a, part_b; // Y' sample window

    // affine partial data: g_i(a, b) = g_off[i] + g_a[i] a + g_b[i] b
    std::vector<double> g_off, g_a, g_b;

    double alpha() const { return k * L + 1.0; }
    double K_bound() const { return 2.0 * k * (L * k + 2.0); }
    double g(int i, double a, double b) const;
    /// Full (2+s)-dimensional partial-section value (u, g(u)).
    Eigen::VectorXd partial_value(double a, double b) const;
    /// All sampled partial-graph points.
    std::vector<Eigen::VectorXd> partial_graph() const;
    void validate() const;
};

/// delta_{i,tau0}(x) = rho(x0, phi_{i,tau0}(pi(x))) evaluated in the
/// component-i slice. Requires x0 in tau_i^{-1}(tau0).
double delta(const ExtensionProblem& p, int i, double tau0, const Eigen::VectorXd& x0,
             const Eigen::VectorXd& x);

struct BranchEval {
    double value = 0.0;
    int branch = 1; // 1: |t| <= 2 a d; 2: t > 2 a d; 3: t < -2 a d
    double t = 0.0;
    double delta = 0.0;
};

/// f_{x0,i}(x): the three-branch local extension with alpha = kL + 1.
/// Boundary ties select the first branch (values agree there).
double local_extension(const ExtensionProblem& p, int i, const Eigen::VectorXd& x0,
                       const Eigen::VectorXd& x);
BranchEval local_extension_branches(const ExtensionProblem& p, int i, const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& x);

/// f_i(x) = max over sampled partial-graph points x0 of f_{x0,i}(x).
double evaluate_component(const ExtensionProblem& p, int i, const Eigen::VectorXd& x);

struct ExtensionResult {
    double K_bound = 0.0;
    /// Per component, f sampled over the (a, b, c) slice grid, c fastest.
    std::vector<std::vector<double>> f;
    std::vector<double> measured_lip_per_component;
    std::vector<double> fiber_lower_per_component;
    std::vector<double> fiber_upper_per_component;
    double measured_lip = 0.0;        // max over components
    double measured_fiber_lower = 0.0; // min over components
    double containment_max_abs = 0.0;
    bool zero_set_ok = false; // containment_max_abs <= 1e-12
};

ExtensionResult global_extension(const ExtensionProblem& p);

struct BranchContinuityProbe {
    double gap_plus = 0.0;  // |branch1 - branch2| at t = +2 alpha delta
    double gap_minus = 0.0; // |branch1 - branch3| at t = -2 alpha delta
};

BranchContinuityProbe branch_continuity_probe(const ExtensionProblem& p, double delta_value);

struct VerificationReport {
    double K_bound = 0.0;
    double eps_grid = 0.0;
    double measured_lip = 0.0;
    bool lip_ok = false; // measured_lip <= K_bound * (1 + eps_grid)
    double containment_max_abs = 0.0;
    bool containment_ok = false; // <= 1e-12 at all partial-graph samples
    double fiber_lower = 0.0;
    bool fiber_lower_positive = false;
    double fiber_upper = 0.0;       // measured upper fiber constant K'
    double fiber_lower_reference = 0.0; // 1 / K'
    double branch_gap_max = 0.0;
    bool branch_continuity_ok = false; // <= 1e-12
    double joint_measured_lip = 0.0;   // s >= 2 joint map constant (reported only)
};

VerificationReport verify_extension(const ExtensionProblem& p, const ExtensionResult& r);

} // namespace fiberlip::ext
