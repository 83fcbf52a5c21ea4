#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#ifndef FIBERLIP_CLI_PATH
#error "FIBERLIP_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("fiberlip_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd =
        std::string(FIBERLIP_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json findings_of(const RunResult& r) {
    return json::parse(r.out).at("findings");
}

} // namespace

TEST_CASE("gen + validate + check-hoelder round trip") {
    const fs::path spec = work_dir() / "slope.json";
    CHECK(run_cli("gen --kind euclidean_linear --resolution 9 --out " + spec.string()).exit_code == 0);
    CHECK(run_cli("validate --spec " + spec.string()).exit_code == 0);

    // least constant of the slope-3 graph is sqrt(10)-1 ~ 2.1623
    const auto fail = run_cli("check-hoelder --spec " + spec.string() + " --section phi --L 2 --alpha 1");
    CHECK(fail.exit_code == 1);
    CHECK(findings_of(fail).at("holds") == false);
    CHECK(fail.err.find("violating pair") != std::string::npos);

    const auto pass = run_cli("check-hoelder --spec " + spec.string() + " --section phi --L 2.17 --alpha 1");
    CHECK(pass.exit_code == 0);
    CHECK(findings_of(pass).at("holds") == true);

    const auto mc = run_cli("min-constant --spec " + spec.string() + " --section phi --alpha 1");
    CHECK(mc.exit_code == 0);
    CHECK(std::abs(findings_of(mc).at("min_constant").get<double>() - 2.1622776601683795) < 1e-9);

    const auto cones = run_cli("cones --spec " + spec.string() + " --section phi --L 2.17 --alpha 1");
    CHECK(cones.exit_code == 0);
    CHECK(findings_of(cones).at("agrees_with_inequality") == true);

    const auto member = run_cli("cones --spec " + spec.string() +
                                " --section phi --L 1 --alpha 1 --vertex 0 --point 0");
    CHECK(member.exit_code == 0);
    CHECK(findings_of(member).at("member") == false); // a vertex never belongs to its own cone
}

TEST_CASE("validate flags broken metrics with exit 1") {
    const fs::path spec = work_dir() / "broken.json";
    json doc;
    doc["space"] = {{"backend", "matrix"},
                    {"points", {json::array(), json::array(), json::array()}},
                    {"dist", {{0.0, 1.0, 3.0}, {1.0, 0.0, 1.0}, {3.0, 1.0, 0.0}}}};
    doc["fibers"] = {{"0", "a"}, {"1", "a"}, {"2", "b"}};
    std::ofstream(spec) << doc.dump(2);
    const auto r = run_cli("validate --spec " + spec.string());
    CHECK(r.exit_code == 1);
    CHECK(findings_of(r).at("metric_violations").get<int>() > 0);
}

TEST_CASE("findings are byte-identical across runs") {
    const fs::path spec = work_dir() / "det.json";
    REQUIRE(run_cli("gen --kind random_finite --seed 5 --num-points 20 --num-labels 5 --out " +
                    spec.string())
                .exit_code == 0);
    const auto a = run_cli("min-constant --spec " + spec.string() + " --section phi --alpha 1");
    const auto b = run_cli("min-constant --spec " + spec.string() + " --section phi --alpha 1");
    CHECK(findings_of(a).dump() == findings_of(b).dump());
    CHECK(json::parse(a.out).at("digest") == json::parse(b.out).at("digest"));
}

TEST_CASE("asymmetry emits report and scene") {
    const fs::path out = work_dir() / "asym";
    const auto r = run_cli("asymmetry --out " + out.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(std::ifstream(out / "report.json"));
    CHECK(report.at("findings").at("violation_rhs") == 1.0);
    CHECK(report.at("findings").at("violation_lhs").get<double>() > 1.0);
    CHECK(report.at("findings").at("general_inequality_ok") == true);
    std::ifstream svg(out / "scene.svg");
    std::string first_line;
    std::getline(svg, first_line);
    CHECK(first_line.find("<svg") != std::string::npos);
}

TEST_CASE("lemma and limits subcommands") {
    const auto lemma = run_cli("lemma --trials 100 --seed 7");
    CHECK(lemma.exit_code == 0);
    CHECK(lemma.out.find("100/100 ok") != std::string::npos);

    const auto limits = run_cli("limits");
    CHECK(limits.exit_code == 0);
    CHECK(findings_of(limits).at("monotone") == true);
}

TEST_CASE("norms subcommand reports both norms") {
    const auto r = run_cli("norms --resolution 7 --lambda 2");
    CHECK(r.exit_code == 0);
    const auto f = findings_of(r);
    CHECK(f.at("norm_v1").at("total").get<double>() > 0.0);
    CHECK(f.at("norm_v2").at("total").get<double>() > 0.0);
    CHECK(f.at("homogeneity_at_minus2") == true);
}

TEST_CASE("extend runs a generated scenario") {
    const fs::path spec = work_dir() / "ext.json";
    json doc = {{"kind", "extension_scenario"}, {"s", 1},        {"k", 1.0},       {"L", 1.0},
                {"rho_scale", 1.0},             {"base_res", 9}, {"fiber_res", 9}, {"part_res", 5},
                {"g_off", {0.0}},               {"g_a", {0.3}},  {"g_b", {0.2}}};
    std::ofstream(spec) << doc.dump(2);
    const fs::path out = work_dir() / "ext_out";
    const fs::path csv = work_dir() / "f.csv";
    const auto r = run_cli("extend --spec " + spec.string() + " --csv " + csv.string() + " --out " +
                           out.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(std::ifstream(out / "report.json"));
    CHECK(report.at("findings").at("zero_set_ok") == true);
    CHECK(report.at("findings").at("lip_ok") == true);
    std::ifstream csv_in(csv);
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "component,a,b,c,f");
}

TEST_CASE("gen emits extension scenarios") {
    const fs::path spec = work_dir() / "gen_ext.json";
    CHECK(run_cli("gen --kind extension_scenario --s 1 --k 1 --L 1 --out " + spec.string()).exit_code == 0);
    CHECK(run_cli("extend --spec " + spec.string()).exit_code == 0);
}

TEST_CASE("malformed and missing specs exit with code 2") {
    const fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{ \"space\": [,] }";
    const auto r = run_cli("validate --spec " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("malformed JSON") != std::string::npos);

    CHECK(run_cli("validate --spec " + (work_dir() / "nope.json").string()).exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("wrt subcommand") {
    // shared graph point at t = 0 between psi (flat) and phi (slope)
    const fs::path spec = work_dir() / "wrt.json";
    REQUIRE(run_cli("gen --kind euclidean_linear --resolution 9 --out " + spec.string()).exit_code == 0);
    const json doc = json::parse(std::ifstream(spec));
    // find the shared point index: the flat graph value over label "0.0*"
    int anchor = -1;
    const auto& points = doc.at("space").at("points");
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i][0].get<double>() == 0.0 && points[i][1].get<double>() == 0.0)
            anchor = static_cast<int>(i);
    REQUIRE(anchor >= 0);
    const auto hold = run_cli("wrt --spec " + spec.string() +
                              " --section phi --base-section psi --anchor " + std::to_string(anchor) +
                              " --L 3.1 --alpha 1");
    CHECK(hold.exit_code == 0);
    const auto fail = run_cli("wrt --spec " + spec.string() +
                              " --section phi --base-section psi --anchor " + std::to_string(anchor) +
                              " --L 1.5 --alpha 1");
    CHECK(fail.exit_code == 1);
}
