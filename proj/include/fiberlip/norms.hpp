#pragma once

#include <string>
#include <vector>

#include "fiberlip/family.hpp"

namespace fiberlip::norms {

struct NormResult {
    double sup_part = 0.0;  // sup_K |phi(y)|
    double semi_part = 0.0; // [phi] or {phi}
    double total = 0.0;     // sup_part + semi_part
};

/// sup over K of the ambient norm of the member's graph values.
double sup_norm(const family::ScaledMember& m, const family::FamilyContext& ctx);

struct SeminormPaths {
    double direct = 0.0;  // distance to the scaled fiber, as defined
    double reduced = 0.0; // |lambda| times the unscaled fiber distance
};

/// [phi]-seminorm: sup_K of the distance from the graph value over y to the
/// fiber of the (1/lambda)-scaled quotient over pi(xhat). Both evaluation
/// paths are computed; they must agree to `tol` (scaling identity).
SeminormPaths seminorm_v1_paths(const family::ScaledMember& m, const family::FamilyContext& ctx);
double seminorm_v1(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol = 1e-9);
NormResult norm_v1(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol = 1e-9);

/// {phi}-seminorm: sup over y in K of the distance from lambda xhat to the
/// scaled fiber over y. Depends only on (lambda, xhat, K), not on the
/// section values; implemented literally as defined.
SeminormPaths seminorm_v2_paths(const family::ScaledMember& m, const family::FamilyContext& ctx);
double seminorm_v2(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol = 1e-9);
NormResult norm_v2(const family::ScaledMember& m, const family::FamilyContext& ctx, double tol = 1e-9);

struct LimitRow {
    double h = 0.0;
    double ratio_forward = 0.0;  // d(h phi(t+h), (1/h pi)^{-1}(t)) / h
    double ratio_backward = 0.0; // d(h phi(t), (1/h pi)^{-1}(t+h)) / h
    double bound = 0.0;          // d(phi(t+h), phi(t))
};

/// Ratio table for the two scaling limits on a real-interval base. The base
/// must sample t and every t+h exactly; phi gives one ambient value per
/// base sample.
std::vector<LimitRow> limit_check(const LinearQuotient& q, const std::vector<double>& base_samples,
                                  const family::VectorSection& phi, int t_index,
                                  const std::vector<double>& h_values);

struct AsymmetryReport {
    bool general_inequality_ok = false; // d(f(y),F_x) - d(f(z),F_x) <= d(f(y),f(z)) on all triples
    double max_first_inequality_slack = 0.0;
    long triples_checked = 0;
    double violation_lhs = 0.0; // d(f(x), F_y) - d(f(x), F_z) for the named triple
    double violation_rhs = 0.0; // d(f(y), f(z))
    double dist_fx_fiber_y = 0.0;
    double dist_fx_fiber_z = 0.0;
    double paper_stated_lhs = 0.0; // sqrt(5/4)
    double recomputed_lhs_exact = 0.0; // (sqrt(1908) - sqrt(1325)) / 7
    std::vector<std::string> notes;
};

/// Reproduces the three-segment counterexample: the one-sided triangle
/// comparison holds for every sampled triple, while the fiber-swapped
/// difference exceeds d(f(y), f(z)) on the named points.
AsymmetryReport asymmetry_demo(int resolution = 33);

} // namespace fiberlip::norms
