#pragma once

#include <optional>
#include <unordered_map>
#include <utility>

#include "fiberlip/fibration.hpp"

namespace fiberlip::hoelder {

/// Constants of the intrinsic Hoelder condition
/// d(phi(y1), phi(y2)) <= L D^alpha + D,  D = d(phi(y1), pi^{-1}(y2)).
/// alpha = 1 is the intrinsic Lipschitz case and is admitted.
struct HoelderParams {
    double L;
    double alpha;

    HoelderParams(double L_, double alpha_);
};

struct HoelderCertificate {
    bool holds = true;
    std::optional<std::pair<int, int>> witness; // worst (y1, y2), lexicographic tie-break
    double slack = 0.0;                         // max over pairs of lhs - rhs (violation magnitude)
};

enum class ConeKind { plain, wrt_psi };

/// Intrinsic cone data. `plain` is the graph-avoidance cone
///   R_{x,L} = {x' : L d(x', pi^{-1}(pi(x)))^alpha + d(x', pi^{-1}(pi(x))) < d(x', x)}
/// and `wrt_psi` the one-sided cone
///   C^psi_{xhat,L} = {x : d(x, psi(pi(x))) > L d(xhat, psi(pi(x)))^alpha + d(xhat, psi(pi(x)))}.
/// For wrt_psi cones the vertex is the anchor itself.
struct ConeSpec {
    int vertex;
    double L;
    double alpha;
    ConeKind kind = ConeKind::plain;
    std::optional<Section> psi;
    std::optional<int> anchor;

    static ConeSpec plain(int vertex, double L, double alpha);
    static ConeSpec wrt(const Fibration& f, Section psi, int anchor, double L, double alpha);
};

HoelderCertificate check_intrinsic_hoelder(const Fibration& f, const Section& phi, const HoelderParams& p);

/// Least L such that check_intrinsic_hoelder holds at (L, alpha):
/// max over ordered pairs y1 != y2 of (d(phi(y1), phi(y2)) - D) / D^alpha,
/// clamped below at 0. Finite models guarantee D > 0 off the diagonal.
double min_constant(const Fibration& f, const Section& phi, double alpha);

bool cone_membership(const Fibration& f, const ConeSpec& cone, int x_prime);

/// Graph avoidance form: phi(Y) does not meet R_{x,L} for any graph vertex x.
/// Agrees with check_intrinsic_hoelder on every input.
bool check_graph_avoids_cones(const Fibration& f, const Section& phi, const HoelderParams& p);

/// One-sided comparison against a base section psi anchored at a shared
/// graph point xhat = phi(yhat) = psi(yhat):
/// d(phi(y), psi(y)) <= L d(psi(yhat), psi(y))^alpha + d(psi(yhat), psi(y)).
/// Witness pairs are (y, yhat).
HoelderCertificate check_hoelder_wrt(const Fibration& f, const Section& phi, const Section& psi,
                                     int anchor_point, const HoelderParams& p);

struct EquivalenceBounds {
    double L_form = 0.0; // least L in the L D^alpha + D form
    double K_form = 0.0; // least K in the K D^alpha form
    bool bound_ok = false; // L_form <= K_form <= L_form + diam^(1-alpha)
};

/// Bounded-base equivalence of the two formulations, with the natural
/// constant relation verified on the instance.
EquivalenceBounds check_equivalence_bounded(const Fibration& f, const Section& phi, double alpha);

struct FoliatedEquivalence {
    bool dir12 = false; // phi is wrt-Hoelder against its foliation section at every graph point
    bool dir21 = false; // phi is intrinsically Hoelder
};

/// Two directions of the foliation equivalence at caller-supplied constants.
/// `foliation` maps each graph point index to a section through it.
FoliatedEquivalence check_foliated_equivalence(const Fibration& f, const Section& phi,
                                               const std::unordered_map<int, Section>& foliation,
                                               const HoelderParams& params1, const HoelderParams& params2);

} // namespace fiberlip::hoelder
