#include "fiberlip/hoelder.hpp"

#include <cmath>
#include <limits>

#include "fiberlip/util.hpp"

namespace fiberlip::hoelder {

namespace {

double pow_alpha(double d, double alpha) {
    return alpha == 1.0 ? d : std::pow(d, alpha);
}

} // namespace

HoelderParams::HoelderParams(double L_, double alpha_) : L(L_), alpha(alpha_) {
    if (!(L > 0.0)) throw SpecError("Hoelder constant L must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw SpecError("Hoelder exponent alpha must lie in (0, 1]");
}

ConeSpec ConeSpec::plain(int vertex, double L, double alpha) {
    HoelderParams check(L, alpha);
    return ConeSpec{vertex, L, alpha, ConeKind::plain, std::nullopt, std::nullopt};
}

ConeSpec ConeSpec::wrt(const Fibration& f, Section psi, int anchor, double L, double alpha) {
    HoelderParams check(L, alpha);
    require_section(f, psi, "cone base section");
    const int yhat = f.fiber_of(anchor);
    if (psi(yhat) != anchor) throw SpecError("cone anchor must lie on the base section's graph");
    return ConeSpec{anchor, L, alpha, ConeKind::wrt_psi, std::move(psi), anchor};
}

HoelderCertificate check_intrinsic_hoelder(const Fibration& f, const Section& phi, const HoelderParams& p) {
    require_section(f, phi, "check_intrinsic_hoelder");
    HoelderCertificate cert;
    cert.slack = -std::numeric_limits<double>::infinity();
    const int n = f.num_labels();
    for (int y1 = 0; y1 < n; ++y1) {
        for (int y2 = 0; y2 < n; ++y2) {
            const double d = f.dist(phi(y1), phi(y2));
            const double fd = f.dist_to_fiber(phi(y1), y2);
            const double slack = d - (p.L * pow_alpha(fd, p.alpha) + fd);
            if (slack > cert.slack) {
                cert.slack = slack;
                cert.witness = {y1, y2};
            }
        }
    }
    if (cert.slack <= 0.0 || !std::isfinite(cert.slack)) {
        cert.witness.reset();
        cert.holds = true;
        if (!std::isfinite(cert.slack)) cert.slack = 0.0;
    } else {
        cert.holds = false;
    }
    return cert;
}

double min_constant(const Fibration& f, const Section& phi, double alpha) {
    require_section(f, phi, "min_constant");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw SpecError("alpha must lie in (0, 1]");
    double best = 0.0;
    const int n = f.num_labels();
    for (int y1 = 0; y1 < n; ++y1) {
        for (int y2 = 0; y2 < n; ++y2) {
            if (y1 == y2) continue;
            const double d = f.dist(phi(y1), phi(y2));
            const double fd = f.dist_to_fiber(phi(y1), y2);
            if (fd <= 0.0) {
                if (d <= 0.0) continue;
                throw SpecError("degenerate fiber distance for distinct labels (non-metric model?)");
            }
            best = std::max(best, (d - fd) / pow_alpha(fd, alpha));
        }
    }
    return best;
}

bool cone_membership(const Fibration& f, const ConeSpec& cone, int x_prime) {
    if (x_prime < 0 || x_prime >= f.num_points()) throw SpecError("point index out of range");
    if (cone.kind == ConeKind::plain) {
        const double fd = f.dist_to_fiber(x_prime, f.fiber_of(cone.vertex));
        return cone.L * pow_alpha(fd, cone.alpha) + fd < f.dist(x_prime, cone.vertex);
    }
    const Section& psi = *cone.psi;
    const int rep = psi(f.fiber_of(x_prime));
    const double b = f.dist(*cone.anchor, rep);
    return f.dist(x_prime, rep) > cone.L * pow_alpha(b, cone.alpha) + b;
}

bool check_graph_avoids_cones(const Fibration& f, const Section& phi, const HoelderParams& p) {
    require_section(f, phi, "check_graph_avoids_cones");
    const int n = f.num_labels();
    for (int yv = 0; yv < n; ++yv) {
        const ConeSpec cone = ConeSpec::plain(phi(yv), p.L, p.alpha);
        for (int y = 0; y < n; ++y)
            if (cone_membership(f, cone, phi(y))) return false;
    }
    return true;
}

HoelderCertificate check_hoelder_wrt(const Fibration& f, const Section& phi, const Section& psi,
                                     int anchor_point, const HoelderParams& p) {
    require_section(f, phi, "check_hoelder_wrt phi");
    require_section(f, psi, "check_hoelder_wrt psi");
    if (anchor_point < 0 || anchor_point >= f.num_points()) throw SpecError("anchor point out of range");
    const int yhat = f.fiber_of(anchor_point);
    if (psi(yhat) != anchor_point || phi(yhat) != anchor_point)
        throw SpecError("anchor not shared: need phi(yhat) = psi(yhat) = xhat");

    HoelderCertificate cert;
    cert.slack = -std::numeric_limits<double>::infinity();
    const int n = f.num_labels();
    for (int y = 0; y < n; ++y) {
        const double lhs = f.dist(phi(y), psi(y));
        const double b = f.dist(psi(yhat), psi(y));
        const double slack = lhs - (p.L * pow_alpha(b, p.alpha) + b);
        if (slack > cert.slack) {
            cert.slack = slack;
            cert.witness = {y, yhat};
        }
    }
    if (cert.slack <= 0.0 || !std::isfinite(cert.slack)) {
        cert.witness.reset();
        cert.holds = true;
        if (!std::isfinite(cert.slack)) cert.slack = 0.0;
    } else {
        cert.holds = false;
    }
    return cert;
}

EquivalenceBounds check_equivalence_bounded(const Fibration& f, const Section& phi, double alpha) {
    require_section(f, phi, "check_equivalence_bounded");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw SpecError("alpha must lie in (0, 1]");
    EquivalenceBounds out;
    double diam = 0.0;
    const int n = f.num_labels();
    for (int y1 = 0; y1 < n; ++y1) {
        for (int y2 = 0; y2 < n; ++y2) {
            if (y1 == y2) continue;
            const double d = f.dist(phi(y1), phi(y2));
            const double fd = f.dist_to_fiber(phi(y1), y2);
            if (fd <= 0.0) {
                if (d <= 0.0) continue;
                throw SpecError("degenerate fiber distance for distinct labels");
            }
            const double fda = pow_alpha(fd, alpha);
            out.L_form = std::max(out.L_form, (d - fd) / fda);
            out.K_form = std::max(out.K_form, d / fda);
            diam = std::max(diam, fd);
        }
    }
    const double gap = alpha == 1.0 ? 1.0 : std::pow(diam, 1.0 - alpha);
    out.bound_ok = out.L_form <= out.K_form + 1e-9 && out.K_form <= out.L_form + gap + 1e-9;
    return out;
}

FoliatedEquivalence check_foliated_equivalence(const Fibration& f, const Section& phi,
                                               const std::unordered_map<int, Section>& foliation,
                                               const HoelderParams& params1, const HoelderParams& params2) {
    require_section(f, phi, "check_foliated_equivalence");
    FoliatedEquivalence out;
    out.dir12 = true;
    const int n = f.num_labels();
    for (int y = 0; y < n; ++y) {
        const int x = phi(y);
        const auto it = foliation.find(x);
        if (it == foliation.end()) throw SpecError("foliation missing a graph point");
        const Section& psi_x = it->second;
        if (!validate_section(f, psi_x)) throw SpecError("foliation entry is not a section");
        if (psi_x(y) != x) throw SpecError("foliation section does not pass through its graph point");
        if (!check_hoelder_wrt(f, phi, psi_x, x, params1).holds) out.dir12 = false;
    }
    out.dir21 = check_intrinsic_hoelder(f, phi, params2).holds;
    return out;
}

} // namespace fiberlip::hoelder
