#include "fiberlip/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fiberlip/util.hpp"

namespace fiberlip::svg {

namespace {

struct Viewport {
    double x0, x1, y0, y1;
    double width = 640.0, height = 480.0, margin = 40.0;

    double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
    double sy(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void line(std::ostringstream& os, const Viewport& vp, double ax, double ay, double bx, double by,
          const std::string& style) {
    os << "  <line x1=\"" << num(vp.sx(ax)) << "\" y1=\"" << num(vp.sy(ay)) << "\" x2=\"" << num(vp.sx(bx))
       << "\" y2=\"" << num(vp.sy(by)) << "\" " << style << "/>\n";
}

void circle(std::ostringstream& os, const Viewport& vp, double x, double y, double r,
            const std::string& style) {
    os << "  <circle cx=\"" << num(vp.sx(x)) << "\" cy=\"" << num(vp.sy(y)) << "\" r=\"" << num(r) << "\" "
       << style << "/>\n";
}

void text(std::ostringstream& os, const Viewport& vp, double x, double y, const std::string& s) {
    os << "  <text x=\"" << num(vp.sx(x) + 5) << "\" y=\"" << num(vp.sy(y) - 5)
       << "\" font-size=\"11\" font-family=\"monospace\">" << s << "</text>\n";
}

} // namespace

std::string three_segment_scene(const spaces::ThreeSegmentScenario& sc) {
    Viewport vp{-0.5, 8.5, -1.0, 9.0};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << vp.width << "\" height=\"" << vp.height
       << "\">\n";
    // base segment and the three lines
    line(os, vp, 0, 0, 8, 0, "stroke=\"#444\" stroke-width=\"2\"");
    line(os, vp, 0, 8, 8, 8, "stroke=\"#1f77b4\" stroke-width=\"2\"");
    line(os, vp, 1, 4, 8, 6, "stroke=\"#2ca02c\" stroke-width=\"2\"");
    line(os, vp, 0, 3, 8, 7, "stroke=\"#9467bd\" stroke-width=\"2\"");
    // highlighted fibers over x1 = 6 and x1 = 7
    for (double station : {6.0, 7.0}) {
        line(os, vp, station, 0, station, 8.5, "stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
        const int label = station == 6.0 ? sc.z_label : sc.y_label;
        for (int p : sc.fibration.fiber(label)) {
            const auto& pt = sc.fibration.total().point(p);
            circle(os, vp, pt[0], pt[1], 4, "fill=\"#d62728\"");
        }
    }
    // named points of the counterexample
    const auto& fx = sc.fibration.total().point(sc.fx_point);
    const auto& fy = sc.fibration.total().point(sc.fy_point);
    const auto& fz = sc.fibration.total().point(sc.fz_point);
    circle(os, vp, fx[0], fx[1], 5, "fill=\"#000\"");
    text(os, vp, fx[0], fx[1], "f(x)=(1,4)");
    circle(os, vp, fy[0], fy[1], 5, "fill=\"#000\"");
    text(os, vp, fy[0], fy[1], "f(y)=(8,7)");
    circle(os, vp, fz[0], fz[1], 5, "fill=\"#000\"");
    text(os, vp, fz[0], fz[1], "f(z)=(8,6)");
    for (double station : {1.0, 6.0, 7.0}) {
        circle(os, vp, station, 0, 3, "fill=\"#444\"");
        text(os, vp, station, -0.6, "x1=" + num(station));
    }
    os << "</svg>\n";
    return os.str();
}

std::string cone_scene(const Fibration& f, const Section& phi, const hoelder::ConeSpec& cone) {
    const auto& pts = f.total().points();
    if (pts.empty() || pts.front().size() != 2) throw SpecError("cone scene needs planar points");
    double x0 = pts[0][0], x1 = pts[0][0], y0 = pts[0][1], y1 = pts[0][1];
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    const double padx = std::max(0.5, 0.05 * (x1 - x0));
    const double pady = std::max(0.5, 0.05 * (y1 - y0));
    Viewport vp{x0 - padx, x1 + padx, y0 - pady, y1 + pady};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << vp.width << "\" height=\"" << vp.height
       << "\">\n";
    for (int p = 0; p < f.num_points(); ++p) {
        const bool member = hoelder::cone_membership(f, cone, p);
        circle(os, vp, pts[static_cast<std::size_t>(p)][0], pts[static_cast<std::size_t>(p)][1],
               member ? 4 : 2, member ? "fill=\"#d62728\"" : "fill=\"#bbb\"");
    }
    for (int y = 0; y < f.num_labels(); ++y) {
        const auto& p = pts[static_cast<std::size_t>(phi(y))];
        circle(os, vp, p[0], p[1], 3, "fill=\"#1f77b4\"");
    }
    const auto& v = pts[static_cast<std::size_t>(cone.vertex)];
    circle(os, vp, v[0], v[1], 7, "fill=\"none\" stroke=\"#000\" stroke-width=\"2\"");
    text(os, vp, v[0], v[1], "vertex");
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot write " + path);
    out << content;
}

} // namespace fiberlip::svg
