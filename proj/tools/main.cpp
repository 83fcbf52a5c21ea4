#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiberlip/acceptance.hpp"
#include "fiberlip/extension.hpp"
#include "fiberlip/hoelder.hpp"
#include "fiberlip/json_io.hpp"
#include "fiberlip/norms.hpp"
#include "fiberlip/spaces.hpp"
#include "fiberlip/svg.hpp"
#include "fiberlip/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fiberlip;

namespace {

using Clock = std::chrono::steady_clock;

struct Emitter {
    std::string command;
    json inputs = json::object();
    std::optional<std::string> out_dir;
    Clock::time_point start = Clock::now();

    void note_spec_file(const std::string& path, const std::string& text) {
        inputs["spec_path"] = path;
        inputs["spec_digest"] = util::hex64(util::fnv1a64(text));
    }

    // exit 0 when ok, 1 when a mathematical check failed
    int finish(const json& findings, bool ok) const {
        json report;
        report["schema"] = io::kSchema;
        report["command"] = command;
        report["digest"] = util::hex64(util::fnv1a64(command + inputs.dump()));
        report["findings"] = findings;
        report["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (out_dir) {
            fs::create_directories(*out_dir);
            io::write_json_file((fs::path(*out_dir) / "report.json").string(), report);
            std::cout << (ok ? "ok" : "FAILED") << ": report written to " << *out_dir << "/report.json\n";
        } else {
            std::cout << report.dump(2) << "\n";
        }
        return ok ? 0 : 1;
    }

    void emit_extra(const std::string& filename, const std::string& content) const {
        if (!out_dir) return;
        fs::create_directories(*out_dir);
        svg::write_text_file((fs::path(*out_dir) / filename).string(), content);
    }
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json certificate_json(const Fibration& f, const hoelder::HoelderCertificate& cert) {
    json j;
    j["holds"] = cert.holds;
    j["slack"] = cert.slack;
    if (cert.witness)
        j["witness"] = {f.label_name(cert.witness->first), f.label_name(cert.witness->second)};
    else
        j["witness"] = nullptr;
    return j;
}

const Section& need_section(const io::LoadedSpec& spec, const std::string& name) {
    const auto it = spec.sections.find(name);
    if (it == spec.sections.end()) throw SpecError("spec has no section named '" + name + "'");
    return it->second;
}

spaces::ExtensionScenarioConfig extension_config_from_json(const json& doc) {
    spaces::ExtensionScenarioConfig cfg;
    cfg.s = doc.value("s", 1);
    cfg.k = doc.value("k", 1.0);
    cfg.L = doc.value("L", 1.0);
    cfg.rho_scale = doc.value("rho_scale", 1.0);
    cfg.base_res = doc.value("base_res", 15);
    cfg.fiber_res = doc.value("fiber_res", 15);
    cfg.part_res = doc.value("part_res", 9);
    cfg.base_half = doc.value("base_half", 1.0);
    cfg.fiber_half = doc.value("fiber_half", 1.5);
    cfg.part_half = doc.value("part_half", 0.5);
    cfg.eps_grid = doc.value("eps_grid", 0.05);
    cfg.g_off = doc.value("g_off", std::vector<double>(static_cast<std::size_t>(cfg.s), 0.0));
    cfg.g_a = doc.value("g_a", std::vector<double>(static_cast<std::size_t>(cfg.s), 0.0));
    cfg.g_b = doc.value("g_b", std::vector<double>(static_cast<std::size_t>(cfg.s), 0.0));
    return cfg;
}

json extension_config_to_json(const spaces::ExtensionScenarioConfig& cfg) {
    json doc;
    doc["schema"] = io::kSchema;
    doc["kind"] = "extension_scenario";
    doc["s"] = cfg.s;
    doc["k"] = cfg.k;
    doc["L"] = cfg.L;
    doc["rho_scale"] = cfg.rho_scale;
    doc["base_res"] = cfg.base_res;
    doc["fiber_res"] = cfg.fiber_res;
    doc["part_res"] = cfg.part_res;
    doc["base_half"] = cfg.base_half;
    doc["fiber_half"] = cfg.fiber_half;
    doc["part_half"] = cfg.part_half;
    doc["eps_grid"] = cfg.eps_grid;
    doc["g_off"] = cfg.g_off;
    doc["g_a"] = cfg.g_a;
    doc["g_b"] = cfg.g_b;
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fiberlip: computational checks for intrinsic Lipschitz/Hoelder sections of metric "
                 "fibrations (FIBERLIP_THREADS caps scan parallelism)"};
    app.require_subcommand(1);

    std::string spec_path, section_name = "phi", base_section_name = "psi", out_dir, out_file, kind,
                csv_path;
    double L = 1.0, alpha = 1.0, tol = 1e-9, lambda = 2.0, slope = 3.0;
    std::uint64_t seed = 0;
    int trials = 1000, resolution = 9, vertex = -1, point = -1, anchor = -1;
    int gen_points = 24, gen_labels = 6, ext_s = 1;
    double ext_k = 1.0, ext_L = 1.0, ext_rho = 1.0;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_dir, "output directory"); };

    auto* c_validate = app.add_subcommand("validate", "validate metric axioms and sections of a spec");
    c_validate->add_option("--spec", spec_path, "fibration spec JSON")->required();
    c_validate->add_option("--tol", tol, "validation tolerance");
    add_out(c_validate);

    auto* c_check = app.add_subcommand("check-hoelder", "intrinsic Hoelder certificate for a section");
    c_check->add_option("--spec", spec_path)->required();
    c_check->add_option("--section", section_name);
    c_check->add_option("--L", L)->required();
    c_check->add_option("--alpha", alpha);
    add_out(c_check);

    auto* c_min = app.add_subcommand("min-constant", "least intrinsic Hoelder constant of a section");
    c_min->add_option("--spec", spec_path)->required();
    c_min->add_option("--section", section_name);
    c_min->add_option("--alpha", alpha);
    add_out(c_min);

    auto* c_cones = app.add_subcommand("cones", "cone avoidance check (and single membership queries)");
    c_cones->add_option("--spec", spec_path)->required();
    c_cones->add_option("--section", section_name);
    c_cones->add_option("--L", L)->required();
    c_cones->add_option("--alpha", alpha);
    c_cones->add_option("--vertex", vertex, "vertex point index for a membership query");
    c_cones->add_option("--point", point, "query point index");
    add_out(c_cones);

    auto* c_wrt = app.add_subcommand("wrt", "Hoelder-with-respect-to-a-section certificate");
    c_wrt->add_option("--spec", spec_path)->required();
    c_wrt->add_option("--section", section_name);
    c_wrt->add_option("--base-section", base_section_name);
    c_wrt->add_option("--anchor", anchor, "shared graph point index")->required();
    c_wrt->add_option("--L", L)->required();
    c_wrt->add_option("--alpha", alpha);
    add_out(c_wrt);

    auto* c_norms = app.add_subcommand("norms", "both section-space norms on a grid scenario");
    c_norms->add_option("--resolution", resolution);
    c_norms->add_option("--lambda", lambda);
    c_norms->add_option("--slope", slope);
    c_norms->add_option("--tol", tol);
    add_out(c_norms);

    auto* c_lemma = app.add_subcommand("lemma", "randomized scaling-identity trials");
    c_lemma->add_option("--trials", trials);
    c_lemma->add_option("--seed", seed);
    c_lemma->add_option("--tol", tol);
    add_out(c_lemma);

    auto* c_limits = app.add_subcommand("limits", "scaling-limit ratio table on the parabola section");
    add_out(c_limits);

    int asym_resolution = 33;
    auto* c_asym = app.add_subcommand("asymmetry", "three-segment counterexample report and scene");
    c_asym->add_option("--resolution", asym_resolution);
    add_out(c_asym);

    auto* c_extend = app.add_subcommand("extend", "level-set extension scenario run");
    c_extend->add_option("--spec", spec_path, "extension scenario JSON")->required();
    c_extend->add_option("--csv", csv_path, "also write f samples as CSV");
    add_out(c_extend);

    auto* c_gen = app.add_subcommand("gen", "emit a scenario as a JSON spec");
    c_gen->add_option("--kind", kind,
                      "euclidean_linear | three_segment | koranyi_heisenberg | random_finite | "
                      "extension_scenario")
        ->required();
    c_gen->add_option("--seed", seed);
    c_gen->add_option("--resolution", resolution);
    c_gen->add_option("--slope", slope);
    c_gen->add_option("--num-points", gen_points);
    c_gen->add_option("--num-labels", gen_labels);
    c_gen->add_option("--s", ext_s);
    c_gen->add_option("--k", ext_k);
    c_gen->add_option("--L", ext_L);
    c_gen->add_option("--rho", ext_rho);
    c_gen->add_option("--out", out_file, "output spec file")->required();

    auto* c_suite = app.add_subcommand("suite", "run the full acceptance battery");
    add_out(c_suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) {
            Emitter em{"validate"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.inputs["tol"] = tol;
            em.out_dir = c_validate->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto spec = io::load_fibration_spec(io::parse_json_text(text, spec_path));
            const auto report = validate_metric(spec.fibration.total(), tol);
            json findings;
            findings["metric_violations"] = report.total;
            findings["truncated"] = report.truncated;
            json vs = json::array();
            for (const auto& v : report.violations) {
                vs.push_back({{"kind", violation_kind_name(v.kind)},
                              {"i", v.i},
                              {"j", v.j},
                              {"k", v.k},
                              {"magnitude", v.magnitude}});
                if (vs.size() >= 64) break;
            }
            findings["violations"] = vs;
            bool ok = report.ok();
            json sections = json::object();
            for (const auto& [name, s] : spec.sections) {
                const bool valid = validate_section(spec.fibration, s);
                sections[name] = valid;
                ok = ok && valid;
            }
            findings["sections"] = sections;
            return em.finish(findings, ok);
        }

        if (c_check->parsed()) {
            Emitter em{"check-hoelder"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.inputs["section"] = section_name;
            em.inputs["L"] = L;
            em.inputs["alpha"] = alpha;
            em.out_dir = c_check->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto spec = io::load_fibration_spec(io::parse_json_text(text, spec_path));
            const auto cert = hoelder::check_intrinsic_hoelder(spec.fibration, need_section(spec, section_name),
                                                               hoelder::HoelderParams(L, alpha));
            if (!cert.holds && cert.witness)
                std::cerr << "violating pair: (" << spec.fibration.label_name(cert.witness->first) << ", "
                          << spec.fibration.label_name(cert.witness->second) << ") slack " << cert.slack
                          << "\n";
            return em.finish(certificate_json(spec.fibration, cert), cert.holds);
        }

        if (c_min->parsed()) {
            Emitter em{"min-constant"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.inputs["section"] = section_name;
            em.inputs["alpha"] = alpha;
            em.out_dir = c_min->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto spec = io::load_fibration_spec(io::parse_json_text(text, spec_path));
            const auto& phi = need_section(spec, section_name);
            const double mc = hoelder::min_constant(spec.fibration, phi, alpha);
            const bool holds_above =
                hoelder::check_intrinsic_hoelder(spec.fibration, phi, hoelder::HoelderParams(mc + 1e-9, alpha))
                    .holds;
            const bool fails_below =
                mc <= 1e-6 ||
                !hoelder::check_intrinsic_hoelder(spec.fibration, phi, hoelder::HoelderParams(mc - 1e-6, alpha))
                     .holds;
            json findings{{"min_constant", mc},
                          {"holds_at_plus_1e-9", holds_above},
                          {"fails_at_minus_1e-6", fails_below}};
            return em.finish(findings, holds_above && fails_below);
        }

        if (c_cones->parsed()) {
            Emitter em{"cones"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.inputs["section"] = section_name;
            em.inputs["L"] = L;
            em.inputs["alpha"] = alpha;
            em.out_dir = c_cones->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto spec = io::load_fibration_spec(io::parse_json_text(text, spec_path));
            const auto& phi = need_section(spec, section_name);
            json findings;
            bool ok;
            if (point >= 0) {
                if (vertex < 0) throw SpecError("--point needs --vertex");
                const auto cone = hoelder::ConeSpec::plain(vertex, L, alpha);
                const bool member = hoelder::cone_membership(spec.fibration, cone, point);
                findings["member"] = member;
                ok = true;
            } else {
                const hoelder::HoelderParams params(L, alpha);
                const bool avoids = hoelder::check_graph_avoids_cones(spec.fibration, phi, params);
                const bool agrees =
                    avoids == hoelder::check_intrinsic_hoelder(spec.fibration, phi, params).holds;
                findings["graph_avoids_cones"] = avoids;
                findings["agrees_with_inequality"] = agrees;
                ok = avoids && agrees;
                const auto& pts = spec.fibration.total().points();
                if (!pts.empty() && pts.front().size() == 2) {
                    const auto cone = hoelder::ConeSpec::plain(phi(0), L, alpha);
                    em.emit_extra("cones.svg", svg::cone_scene(spec.fibration, phi, cone));
                }
            }
            return em.finish(findings, ok);
        }

        if (c_wrt->parsed()) {
            Emitter em{"wrt"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.inputs["section"] = section_name;
            em.inputs["base_section"] = base_section_name;
            em.inputs["anchor"] = anchor;
            em.inputs["L"] = L;
            em.inputs["alpha"] = alpha;
            em.out_dir = c_wrt->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto spec = io::load_fibration_spec(io::parse_json_text(text, spec_path));
            const auto cert =
                hoelder::check_hoelder_wrt(spec.fibration, need_section(spec, section_name),
                                           need_section(spec, base_section_name), anchor,
                                           hoelder::HoelderParams(L, alpha));
            return em.finish(certificate_json(spec.fibration, cert), cert.holds);
        }

        if (c_norms->parsed()) {
            Emitter em{"norms"};
            em.inputs["resolution"] = resolution;
            em.inputs["lambda"] = lambda;
            em.inputs["slope"] = slope;
            em.out_dir = c_norms->count("--out") ? std::optional(out_dir) : std::nullopt;
            if (lambda == 0.0) throw SpecError("--lambda must be nonzero");

            // grid context over pi = [1 0]: psi flat, anchor at the origin
            Eigen::MatrixXd a(1, 2);
            a << 1.0, 0.0;
            std::vector<double> ts;
            for (int i = 0; i < resolution; ++i)
                ts.push_back(-2.0 + 5.0 * i / std::max(1, resolution - 1));
            ts.push_back(0.0);
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            std::vector<Eigen::VectorXd> base;
            family::VectorSection psi, phi;
            int anchor_idx = 0;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                base.push_back(Eigen::VectorXd::Constant(1, ts[i]));
                psi.push_back(Eigen::Vector2d(ts[i], 0.0));
                phi.push_back(Eigen::Vector2d(ts[i], slope * ts[i]));
                if (ts[i] == 0.0) anchor_idx = static_cast<int>(i);
            }
            const family::FamilyContext ctx(LinearQuotient(a), base, psi, anchor_idx);
            const auto member = family::ScaledMember::from_plain(phi, lambda);

            const auto r1 = norms::norm_v1(member, ctx, tol);
            const auto r2 = norms::norm_v2(member, ctx, tol);
            const auto p1 = norms::seminorm_v1_paths(member, ctx);
            const auto p2 = norms::seminorm_v2_paths(member, ctx);
            const auto scaled = family::scale_member(-2.0, member);
            const bool homog =
                std::abs(norms::norm_v1(scaled, ctx, tol).total - 2.0 * r1.total) <= 1e-9 &&
                std::abs(norms::norm_v2(scaled, ctx, tol).total - 2.0 * r2.total) <= 1e-9;
            json findings;
            findings["norm_v1"] = {{"sup", r1.sup_part}, {"semi", r1.semi_part}, {"total", r1.total}};
            findings["norm_v2"] = {{"sup", r2.sup_part}, {"semi", r2.semi_part}, {"total", r2.total}};
            findings["paths_v1"] = {{"direct", p1.direct}, {"reduced", p1.reduced}};
            findings["paths_v2"] = {{"direct", p2.direct}, {"reduced", p2.reduced}};
            findings["homogeneity_at_minus2"] = homog;
            findings["psi_lipschitz"] = ctx.psi_lipschitz();
            const bool ok = homog && std::abs(p1.direct - p1.reduced) <= tol &&
                            std::abs(p2.direct - p2.reduced) <= tol;
            return em.finish(findings, ok);
        }

        if (c_lemma->parsed()) {
            Emitter em{"lemma"};
            em.inputs["trials"] = trials;
            em.inputs["seed"] = seed;
            em.out_dir = c_lemma->count("--out") ? std::optional(out_dir) : std::nullopt;
            spaces::Rng rng(seed);
            auto urand = [&](double lo, double hi) {
                return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
            };
            int failures = 0;
            double max_err = 0.0;
            for (int t = 0; t < trials; ++t) {
                const LinearQuotient q = spaces::random_quotient(rng, 6);
                Eigen::VectorXd x1(q.ambient_dim()), y2(q.base_dim());
                for (int i = 0; i < q.ambient_dim(); ++i) x1[i] = urand(-5.0, 5.0);
                for (int i = 0; i < q.base_dim(); ++i) y2[i] = urand(-5.0, 5.0);
                double lam = 0.0;
                while (std::abs(lam) < 1e-3) lam = urand(-10.0, 10.0);
                const auto check = lemma_homogeneity_check(q, x1, y2, lam, tol);
                if (!check.ok) ++failures;
                max_err = std::max(max_err, std::abs(check.lhs - check.rhs));
            }
            json findings{{"trials", trials}, {"failures", failures}, {"max_abs_err", max_err}};
            std::cout << (trials - failures) << "/" << trials << " ok\n";
            return em.finish(findings, failures == 0);
        }

        if (c_limits->parsed()) {
            Emitter em{"limits"};
            em.out_dir = c_limits->count("--out") ? std::optional(out_dir) : std::nullopt;
            const std::vector<double> hs = {1e-1, 1e-2, 1e-3, 1e-4};
            std::vector<double> base = {0.0};
            for (double h : hs) base.push_back(h);
            std::sort(base.begin(), base.end());
            family::VectorSection phi;
            for (double y : base) phi.push_back(Eigen::Vector2d(y, y * y));
            Eigen::MatrixXd a(1, 2);
            a << 1.0, 0.0;
            int t_index = 0;
            for (std::size_t i = 0; i < base.size(); ++i)
                if (base[i] == 0.0) t_index = static_cast<int>(i);
            const auto rows = norms::limit_check(LinearQuotient(a), base, phi, t_index, hs);
            json table = json::array();
            bool monotone = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                table.push_back({{"h", rows[i].h},
                                 {"ratio_forward", rows[i].ratio_forward},
                                 {"ratio_backward", rows[i].ratio_backward},
                                 {"bound", rows[i].bound}});
                if (i > 0)
                    monotone = monotone && rows[i].ratio_forward < rows[i - 1].ratio_forward &&
                               rows[i].ratio_backward < rows[i - 1].ratio_backward;
            }
            const bool small = rows.back().ratio_forward < 1e-3 && rows.back().ratio_backward < 1e-3;
            json findings{{"rows", table}, {"monotone", monotone}, {"final_below_1e-3", small}};
            return em.finish(findings, monotone && small);
        }

        if (c_asym->parsed()) {
            Emitter em{"asymmetry"};
            em.inputs["resolution"] = asym_resolution;
            em.out_dir = c_asym->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto rep = norms::asymmetry_demo(asym_resolution);
            em.emit_extra("scene.svg", svg::three_segment_scene(spaces::three_segment_space(asym_resolution)));
            json findings;
            findings["general_inequality_ok"] = rep.general_inequality_ok;
            findings["max_first_inequality_slack"] = rep.max_first_inequality_slack;
            findings["triples_checked"] = rep.triples_checked;
            findings["violation_lhs"] = rep.violation_lhs;
            findings["violation_rhs"] = rep.violation_rhs;
            findings["dist_fx_fiber_y"] = rep.dist_fx_fiber_y;
            findings["dist_fx_fiber_z"] = rep.dist_fx_fiber_z;
            findings["paper_stated_lhs"] = rep.paper_stated_lhs;
            findings["recomputed_lhs_exact"] = rep.recomputed_lhs_exact;
            findings["notes"] = rep.notes;
            const bool ok = rep.general_inequality_ok && rep.violation_lhs > rep.violation_rhs;
            return em.finish(findings, ok);
        }

        if (c_extend->parsed()) {
            Emitter em{"extend"};
            const std::string text = read_text(spec_path);
            em.note_spec_file(spec_path, text);
            em.out_dir = c_extend->count("--out") ? std::optional(out_dir) : std::nullopt;
            const json doc = io::parse_json_text(text, spec_path);
            const auto cfg = extension_config_from_json(doc);
            const auto problem = spaces::extension_scenario(cfg);
            const auto result = ext::global_extension(problem);
            const auto verify = ext::verify_extension(problem, result);
            json findings;
            findings["K_bound"] = result.K_bound;
            findings["measured_lip"] = result.measured_lip;
            findings["measured_lip_per_component"] = result.measured_lip_per_component;
            findings["zero_set_ok"] = result.zero_set_ok;
            findings["containment_max_abs"] = verify.containment_max_abs;
            findings["fiber_lower"] = verify.fiber_lower;
            findings["fiber_upper"] = verify.fiber_upper;
            findings["fiber_lower_reference"] = verify.fiber_lower_reference;
            findings["branch_gap_max"] = verify.branch_gap_max;
            findings["eps_grid"] = verify.eps_grid;
            findings["lip_ok"] = verify.lip_ok;
            findings["joint_measured_lip"] = verify.joint_measured_lip;
            if (!csv_path.empty() || em.out_dir) {
                const std::string path = !csv_path.empty()
                                             ? csv_path
                                             : (fs::path(*em.out_dir) / "f_samples.csv").string();
                if (em.out_dir) fs::create_directories(*em.out_dir);
                std::ofstream csv(path);
                csv << "component,a,b,c,f\n";
                for (int i = 0; i < problem.s; ++i) {
                    std::size_t idx = 0;
                    for (int ia = 0; ia < problem.base_a.n; ++ia)
                        for (int ib = 0; ib < problem.base_b.n; ++ib)
                            for (int ic = 0; ic < problem.fiber_c.n; ++ic, ++idx)
                                csv << i << "," << problem.base_a.at(ia) << "," << problem.base_b.at(ib)
                                    << "," << problem.fiber_c.at(ic) << ","
                                    << result.f[static_cast<std::size_t>(i)][idx] << "\n";
                }
            }
            const bool ok = verify.lip_ok && verify.containment_ok && verify.fiber_lower_positive &&
                            verify.branch_continuity_ok;
            return em.finish(findings, ok);
        }

        if (c_gen->parsed()) {
            if (kind == "extension_scenario") {
                spaces::ExtensionScenarioConfig cfg;
                cfg.s = ext_s;
                cfg.k = ext_k;
                cfg.L = ext_L;
                cfg.rho_scale = ext_rho;
                cfg.g_off.assign(static_cast<std::size_t>(ext_s), 0.0);
                cfg.g_a.assign(static_cast<std::size_t>(ext_s), 0.3);
                cfg.g_b.assign(static_cast<std::size_t>(ext_s), 0.2);
                spaces::extension_scenario(cfg); // validate before writing
                io::write_json_file(out_file, extension_config_to_json(cfg));
            } else {
                spaces::ScenarioConfig cfg;
                cfg.kind = kind;
                cfg.seed = seed;
                cfg.resolution = resolution;
                cfg.slope = slope;
                cfg.num_points = gen_points;
                cfg.num_labels = gen_labels;
                const auto sc = spaces::generate(cfg);
                io::write_json_file(out_file, io::fibration_to_json(sc.fibration, sc.sections));
            }
            std::cout << "wrote " << out_file << "\n";
            return 0;
        }

        if (c_suite->parsed()) {
            Emitter em{"suite"};
            em.out_dir = c_suite->count("--out") ? std::optional(out_dir) : std::nullopt;
            const auto results = acceptance::run_all();
            const int failed = acceptance::print_results(results, std::cout);
            json list = json::array();
            for (const auto& r : results)
                list.push_back({{"id", r.id},
                                {"name", r.name},
                                {"passed", r.passed},
                                {"detail", r.detail},
                                {"elapsed_ms", r.elapsed_ms}});
            return em.finish(json{{"criteria", list}, {"failed", failed}}, failed == 0);
        }
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
