#include "psense/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psense {

namespace {

constexpr double kScale = 40.0;
constexpr double kPad = 30.0;

struct Frame {
    double minx, miny, maxx, maxy;
    double ox;  // panel x offset in document space

    double X(double x) const { return ox + kPad + (x - minx) * kScale; }
    double Y(double y) const { return kPad + (maxy - y) * kScale; }  // y grows upwards
    double width() const { return (maxx - minx) * kScale + 2 * kPad; }
    double height() const { return (maxy - miny) * kScale + 2 * kPad; }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

// face center: average of its edge midpoints
std::pair<double, double> face_center(const PlanarComplex& cx, int f) {
    double sx = 0, sy = 0;
    int n = 0;
    for (int e : cx.faces[std::size_t(f)]) {
        auto [u, v] = cx.edges[std::size_t(e)];
        sx += (cx.coords[std::size_t(u)][0] + cx.coords[std::size_t(v)][0]) / 2;
        sy += (cx.coords[std::size_t(u)][1] + cx.coords[std::size_t(v)][1]) / 2;
        ++n;
    }
    if (f == cx.outer_face) {
        // push the outer dual vertex outside the patch for readability
        return {sx / n, sy / n - 1.2};
    }
    return {sx / n, sy / n};
}

void draw_panel(std::ostringstream& os, const PlanarComplex& cx, const RenderPanel& p,
                const Frame& fr) {
    os << "<g>\n";
    if (!p.title.empty())
        os << "<text x=\"" << fmt(fr.ox + kPad) << "\" y=\"18\" font-size=\"14\" "
           << "font-family=\"sans-serif\">" << p.title << "</text>\n";

    for (auto& [region, fill] : p.regions)
        for (int v : region)
            os << "<circle cx=\"" << fmt(fr.X(cx.coords[std::size_t(v)][0])) << "\" cy=\""
               << fmt(fr.Y(cx.coords[std::size_t(v)][1])) << "\" r=\"13\" fill=\"" << fill
               << "\" fill-opacity=\"0.35\"/>\n";

    for (std::size_t e = 0; e < cx.n_edges(); ++e) {
        auto [u, v] = cx.edges[e];
        os << "<line x1=\"" << fmt(fr.X(cx.coords[std::size_t(u)][0])) << "\" y1=\""
           << fmt(fr.Y(cx.coords[std::size_t(u)][1])) << "\" x2=\""
           << fmt(fr.X(cx.coords[std::size_t(v)][0])) << "\" y2=\""
           << fmt(fr.Y(cx.coords[std::size_t(v)][1])) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    }

    for (auto& [chain, color] : p.chains)
        for (int e : chain.indices()) {
            auto [u, v] = cx.edges[std::size_t(e)];
            os << "<line x1=\"" << fmt(fr.X(cx.coords[std::size_t(u)][0])) << "\" y1=\""
               << fmt(fr.Y(cx.coords[std::size_t(u)][1])) << "\" x2=\""
               << fmt(fr.X(cx.coords[std::size_t(v)][0])) << "\" y2=\""
               << fmt(fr.Y(cx.coords[std::size_t(v)][1])) << "\" stroke=\"" << color
               << "\" stroke-width=\"4\" stroke-linecap=\"round\"/>\n";
        }

    for (auto& [loop, color] : p.loops) {
        for (const auto& cyc : loop.dual_cycles) {
            std::ostringstream pts;
            for (int f : cyc) {
                auto [x, y] = face_center(cx, f);
                pts << fmt(fr.X(x)) << "," << fmt(fr.Y(y)) << " ";
            }
            if (!cyc.empty()) {
                auto [x0, y0] = face_center(cx, cyc.front());
                pts << fmt(fr.X(x0)) << "," << fmt(fr.Y(y0));
            }
            os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
        }
    }

    for (std::size_t v = 0; v < cx.n_vertices(); ++v)
        os << "<circle cx=\"" << fmt(fr.X(cx.coords[v][0])) << "\" cy=\""
           << fmt(fr.Y(cx.coords[v][1])) << "\" r=\"3\" fill=\"#444444\"/>\n";

    for (int v : p.highlight_vertices)
        os << "<circle cx=\"" << fmt(fr.X(cx.coords[std::size_t(v)][0])) << "\" cy=\""
           << fmt(fr.Y(cx.coords[std::size_t(v)][1]))
           << "\" r=\"8\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\"/>\n";
    os << "</g>\n";
}

}  // namespace

std::string render_svg(const PlanarComplex& cx, const std::vector<RenderPanel>& panels) {
    double minx = 1e30, miny = 1e30, maxx = -1e30, maxy = -1e30;
    for (auto& c : cx.coords) {
        minx = std::min(minx, c[0]);
        maxx = std::max(maxx, c[0]);
        miny = std::min(miny, c[1]);
        maxy = std::max(maxy, c[1]);
    }
    miny -= 1.5;  // room for the outer dual vertex

    Frame base{minx, miny, maxx, maxy, 0};
    double pw = base.width(), ph = base.height() + 10;
    double total_w = pw * double(std::max<std::size_t>(panels.size(), 1));

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(total_w)
       << "\" height=\"" << fmt(ph) << "\" viewBox=\"0 0 " << fmt(total_w) << " " << fmt(ph)
       << "\">\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        Frame fr = base;
        fr.ox = double(i) * pw;
        draw_panel(os, cx, panels[i], fr);
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

const char* kChainColors[] = {"#d62728", "#9467bd", "#2ca02c", "#ff7f0e",
                              "#1f77b4", "#8c564b", "#e377c2", "#7f7f7f"};

void add_family(RenderPanel& p, const SignalFamily& family) {
    for (std::size_t a = 0; a < family.chains.size(); ++a)
        p.chains.emplace_back(family.chains[a].edges, kChainColors[a % 8]);
}

}  // namespace

RenderPanel panel_for_obstruction(const PlanarComplex& cx, const SignalFamily& family,
                                  const Obstruction& ob) {
    (void)cx;
    RenderPanel p;
    p.title = std::string("obstruction: ") + to_string(ob.kind) + " at " + ob.stage;
    add_family(p, family);
    for (auto& comp : ob.components) p.regions.emplace_back(comp, "#ffcc00");
    p.highlight_vertices = ob.evidence_cells;
    return p;
}

std::vector<RenderPanel> panels_for_holes(const PlanarComplex& cx, const SignalFamily& family,
                                          const HoleConfig& holes) {
    (void)cx;
    std::vector<RenderPanel> out(4);
    out[0].title = "witness 1";
    add_family(out[0], family);
    out[0].loops.emplace_back(holes.w1, "#1f77b4");

    out[1].title = "guided region and first hole";
    add_family(out[1], family);
    out[1].loops.emplace_back(holes.w1, "#1f77b4");
    out[1].regions.emplace_back(holes.omega0, "#aec7e8");
    out[1].regions.emplace_back(holes.r0, "#1f77b4");

    out[2].title = "witness 2";
    add_family(out[2], family);
    out[2].loops.emplace_back(holes.w2, "#ff7f0e");
    out[2].regions.emplace_back(holes.r0, "#1f77b4");

    out[3].title = "second hole";
    add_family(out[3], family);
    out[3].loops.emplace_back(holes.w2, "#ff7f0e");
    out[3].regions.emplace_back(holes.omega1, "#ffbb78");
    out[3].regions.emplace_back(holes.r0, "#1f77b4");
    out[3].regions.emplace_back(holes.r1, "#ff7f0e");
    return out;
}

}  // namespace psense
