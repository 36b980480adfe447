#include "psense/complex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace psense {

int PlanarComplex::edge_between(int u, int v) const {
    for (int e : vertex_edges[std::size_t(u)])
        if (other_endpoint(e, u) == v) return e;
    return -1;
}

std::vector<int> PlanarComplex::neighbors(int v) const {
    std::vector<int> out;
    for (int e : vertex_edges[std::size_t(v)]) out.push_back(other_endpoint(e, v));
    return out;
}

namespace {

void finalize(PlanarComplex& cx) {
    const std::size_t nv = cx.coords.size();
    const std::size_t ne = cx.edges.size();
    const std::size_t nf = cx.faces.size();

    cx.vertex_edges.assign(nv, {});
    for (std::size_t e = 0; e < ne; ++e) {
        auto [u, v] = cx.edges[e];
        if (u < 0 || v < 0 || std::size_t(u) >= nv || std::size_t(v) >= nv)
            throw std::invalid_argument("complex: edge references a missing vertex");
        if (u == v) throw std::invalid_argument("complex: self-loop edge");
        cx.vertex_edges[std::size_t(u)].push_back(int(e));
        cx.vertex_edges[std::size_t(v)].push_back(int(e));
    }

    cx.D = gf2::BitMatrix(nv, ne);
    for (std::size_t e = 0; e < ne; ++e) {
        cx.D.set(std::size_t(cx.edges[e].first), e);
        cx.D.set(std::size_t(cx.edges[e].second), e);
    }

    cx.B = gf2::BitMatrix(ne, nf);
    cx.edge_faces.assign(ne, {});
    for (std::size_t f = 0; f < nf; ++f) {
        for (int e : cx.faces[f]) {
            if (e < 0 || std::size_t(e) >= ne)
                throw std::invalid_argument("complex: face references a missing edge");
            cx.B.flip(std::size_t(e), f);  // mod-2 incidence
            cx.edge_faces[std::size_t(e)].push_back(int(f));
        }
    }

    for (std::size_t e = 0; e < ne; ++e)
        if (cx.edge_faces[e].size() != 2)
            throw std::invalid_argument("complex: edge " + std::to_string(e) +
                                        " does not lie on exactly two faces");

    // connectivity
    if (nv == 0) throw std::invalid_argument("complex: empty vertex set");
    std::vector<char> seen(nv, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!q.empty()) {
        int v = q.front(); q.pop_front();
        for (int e : cx.vertex_edges[std::size_t(v)]) {
            int w = cx.other_endpoint(e, v);
            if (!seen[std::size_t(w)]) { seen[std::size_t(w)] = 1; ++cnt; q.push_back(w); }
        }
    }
    if (cnt != nv) throw std::invalid_argument("complex: vertex graph is disconnected");

    if (std::ptrdiff_t(nv) - std::ptrdiff_t(ne) + std::ptrdiff_t(nf) != 2)
        throw std::invalid_argument("complex: Euler characteristic of the extended complex is not 2");

    // boundary-of-boundary vanishes
    for (std::size_t f = 0; f < nf; ++f) {
        gf2::BitVec col(nf);
        col.set(f);
        if (cx.D.mul(cx.B.mul(col)).any())
            throw std::invalid_argument("complex: D*B != 0 at face " + std::to_string(f));
    }
}

}  // namespace

PlanarComplex build_grid(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("build_grid: need at least one plaquette");
    PlanarComplex cx;
    const int W = w + 1, H = h + 1;
    auto vid = [&](int x, int y) { return y * W + x; };
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            cx.coords.push_back({double(x), double(y)});

    // horizontal edges first, then vertical
    auto hedge = [&](int x, int y) { return y * w + x; };
    auto vedge = [&](int x, int y) { return w * H + y * W + x; };
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < w; ++x)
            cx.edges.emplace_back(vid(x, y), vid(x + 1, y));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < W; ++x)
            cx.edges.emplace_back(vid(x, y), vid(x, y + 1));

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            cx.faces.push_back({hedge(x, y), vedge(x + 1, y), hedge(x, y + 1), vedge(x, y)});

    // outer face: boundary edges walked around the patch
    std::vector<int> outer;
    for (int x = 0; x < w; ++x) outer.push_back(hedge(x, 0));
    for (int y = 0; y < h; ++y) outer.push_back(vedge(w, y));
    for (int x = w - 1; x >= 0; --x) outer.push_back(hedge(x, h));
    for (int y = h - 1; y >= 0; --y) outer.push_back(vedge(0, y));
    cx.faces.push_back(outer);
    cx.outer_face = int(cx.faces.size()) - 1;
    cx.grid = {w, h};

    finalize(cx);
    return cx;
}

namespace {

// Face tracing from a rotation system: each directed edge belongs to one
// face; the successor of (u -> v) is the edge after (v, u) in the rotation
// at v, traversed back out of v.
std::vector<std::vector<int>> trace_faces(const std::vector<std::pair<int, int>>& edges,
                                          std::size_t nv,
                                          const std::map<int, std::vector<int>>& rotation) {
    std::vector<std::vector<int>> rot(nv);
    for (auto& [v, order] : rotation) {
        if (v < 0 || std::size_t(v) >= nv)
            throw std::invalid_argument("rotation: unknown vertex");
        rot[std::size_t(v)] = order;
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (rot[v].empty())
            throw std::invalid_argument("rotation: missing order for vertex " + std::to_string(v));

    auto next_in_rot = [&](int v, int e) {
        const auto& r = rot[std::size_t(v)];
        auto it = std::find(r.begin(), r.end(), e);
        if (it == r.end()) throw std::invalid_argument("rotation: edge missing at vertex");
        ++it;
        return it == r.end() ? r.front() : *it;
    };

    // directed edge = (edge id, orientation bit: 0 means from .first to .second)
    std::set<std::pair<int, int>> used;
    std::vector<std::vector<int>> faces;
    for (std::size_t e0 = 0; e0 < edges.size(); ++e0) {
        for (int dir0 = 0; dir0 < 2; ++dir0) {
            if (used.count({int(e0), dir0})) continue;
            std::vector<int> cycle;
            int e = int(e0), dir = dir0;
            do {
                used.insert({e, dir});
                cycle.push_back(e);
                int head = dir == 0 ? edges[std::size_t(e)].second : edges[std::size_t(e)].first;
                int ne = next_in_rot(head, e);
                e = ne;
                dir = edges[std::size_t(ne)].first == head ? 0 : 1;
            } while (!used.count({e, dir}));
            faces.push_back(std::move(cycle));
        }
    }
    return faces;
}

double face_area(const std::vector<int>& cycle, const std::vector<std::pair<int, int>>& edges,
                 const std::vector<std::array<double, 2>>& coords) {
    // Walk the cycle recovering vertex order, then shoelace.
    if (cycle.empty()) return 0.0;
    std::vector<int> verts;
    auto [a, b] = edges[std::size_t(cycle[0])];
    int prev = a, cur = b;
    if (cycle.size() > 1) {
        auto [c, d] = edges[std::size_t(cycle[1])];
        if (a == c || a == d) { prev = b; cur = a; }
    }
    verts.push_back(prev);
    verts.push_back(cur);
    for (std::size_t i = 1; i + 1 < cycle.size(); ++i) {
        auto [u, v] = edges[std::size_t(cycle[i])];
        int nxt = (u == cur) ? v : u;
        verts.push_back(nxt);
        cur = nxt;
    }
    double s = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto& p = coords[std::size_t(verts[i])];
        auto& q = coords[std::size_t(verts[(i + 1) % verts.size()])];
        s += p[0] * q[1] - q[0] * p[1];
    }
    return s / 2.0;
}

}  // namespace

PlanarComplex build_extended(std::vector<std::array<double, 2>> vertices,
                             std::vector<std::pair<int, int>> edges,
                             std::vector<std::vector<int>> interior_faces,
                             const std::map<int, std::vector<int>>& rotation) {
    PlanarComplex cx;
    cx.coords = std::move(vertices);
    cx.edges = std::move(edges);

    if (!interior_faces.empty()) {
        cx.faces = std::move(interior_faces);
        // outer face: edges used by exactly one interior face, walked into a cycle
        std::vector<int> use(cx.edges.size(), 0);
        for (auto& f : cx.faces)
            for (int e : f) ++use[std::size_t(e)];
        std::vector<int> boundary;
        for (std::size_t e = 0; e < cx.edges.size(); ++e) {
            if (use[e] == 1) boundary.push_back(int(e));
            else if (use[e] != 2)
                throw std::invalid_argument("complex: edge " + std::to_string(e) +
                                            " lies on " + std::to_string(use[e]) + " interior faces");
        }
        if (boundary.empty())
            throw std::invalid_argument("complex: no boundary edges; input is not a planar patch");
        cx.faces.push_back(boundary);
    } else if (!rotation.empty()) {
        auto traced = trace_faces(cx.edges, cx.coords.size(), rotation);
        // outer face = the clockwise-traced cycle (negative area)
        int outer = -1;
        double best = 0;
        for (std::size_t i = 0; i < traced.size(); ++i) {
            double a = face_area(traced[i], cx.edges, cx.coords);
            if (a < best) { best = a; outer = int(i); }
        }
        if (outer < 0) throw std::invalid_argument("complex: rotation tracing found no outer face");
        for (std::size_t i = 0; i < traced.size(); ++i)
            if (int(i) != outer) cx.faces.push_back(traced[i]);
        cx.faces.push_back(traced[std::size_t(outer)]);
    } else {
        throw std::invalid_argument("complex: need interior faces or a rotation system");
    }
    cx.outer_face = int(cx.faces.size()) - 1;
    finalize(cx);
    return cx;
}

Chain make_chain(const PlanarComplex& cx, int grade, const std::vector<int>& cells) {
    std::size_t n = grade == 0 ? cx.n_vertices() : grade == 1 ? cx.n_edges() : cx.n_faces();
    if (grade < 0 || grade > 2) throw std::invalid_argument("make_chain: bad grade");
    return Chain{grade, gf2::BitVec::from_indices(n, cells)};
}

gf2::BitVec path_edges(const PlanarComplex& cx, const std::vector<int>& vertex_path) {
    gf2::BitVec c(cx.n_edges());
    for (std::size_t i = 0; i + 1 < vertex_path.size(); ++i) {
        int e = cx.edge_between(vertex_path[i], vertex_path[i + 1]);
        if (e < 0)
            throw std::invalid_argument("path_edges: vertices " + std::to_string(vertex_path[i]) +
                                        " and " + std::to_string(vertex_path[i + 1]) +
                                        " are not adjacent");
        c.flip(std::size_t(e));
    }
    return c;
}

Chain boundary(const PlanarComplex& cx, const Chain& c) {
    if (c.grade != 1) throw std::invalid_argument("boundary: expected a grade-1 chain");
    if (c.coeffs.size() != cx.n_edges()) throw std::invalid_argument("boundary: chain size mismatch");
    return Chain{0, cx.D.mul(c.coeffs)};
}

int pairing(const gf2::BitVec& cochain, const gf2::BitVec& chain) {
    return gf2::BitVec::dot(cochain, chain);
}

gf2::BitVec potential_from_cocycle(const PlanarComplex& cx, const gf2::BitVec& w,
                                   int reference_vertex) {
    if (w.size() != cx.n_edges()) throw std::invalid_argument("potential: cochain size mismatch");
    gf2::BitVec bt = cx.B.transposed().mul(w);
    if (bt.any()) throw NotACocycle(bt.lowest_set());

    gf2::BitVec t(cx.n_vertices());
    std::vector<char> seen(cx.n_vertices(), 0);
    std::deque<int> q{reference_vertex};
    seen[std::size_t(reference_vertex)] = 1;
    while (!q.empty()) {
        int v = q.front(); q.pop_front();
        for (int e : cx.vertex_edges[std::size_t(v)]) {
            int u = cx.other_endpoint(e, v);
            bool val = t.get(std::size_t(v)) ^ w.get(std::size_t(e));
            if (!seen[std::size_t(u)]) {
                seen[std::size_t(u)] = 1;
                t.set(std::size_t(u), val);
                q.push_back(u);
            }
        }
    }
    if (cx.D.transposed().mul(t) != w)
        throw std::logic_error("potential: reconstruction failed");
    return t;
}

namespace {

CellView make_view_impl(std::size_t nv, const std::vector<std::pair<int, int>>& edges,
                        std::vector<std::vector<int>> face_cycles,
                        const gf2::BitMatrix* D, const gf2::BitMatrix* B) {
    CellView v;
    v.nv = nv;
    v.ne = edges.size();
    v.nf = face_cycles.size();
    v.edges = edges;
    v.face_cycles = std::move(face_cycles);
    v.D = D;
    v.B = B;
    v.vertex_edges.assign(nv, {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        v.vertex_edges[std::size_t(edges[e].first)].push_back(int(e));
        v.vertex_edges[std::size_t(edges[e].second)].push_back(int(e));
    }
    v.edge_faces.assign(v.ne, {-1, -1});
    for (std::size_t f = 0; f < v.face_cycles.size(); ++f) {
        for (int e : v.face_cycles[f]) {
            auto& ef = v.edge_faces[std::size_t(e)];
            if (ef[0] == -1) ef[0] = int(f);
            else if (ef[1] == -1) ef[1] = int(f);
            else throw std::logic_error("view: edge on more than two faces");
        }
    }
    for (std::size_t e = 0; e < v.ne; ++e)
        if (v.edge_faces[e][1] == -1)
            throw std::logic_error("view: edge " + std::to_string(e) + " on fewer than two faces");
    return v;
}

}  // namespace

CellView make_view(const PlanarComplex& cx) {
    return make_view_impl(cx.n_vertices(), cx.edges, cx.faces, &cx.D, &cx.B);
}

CellView make_view(const QuotientComplex& q) {
    std::vector<std::vector<int>> cycles;
    for (std::size_t f = 0; f < q.base->n_faces(); ++f) {
        if (q.face_map[f] == -1) continue;
        std::vector<int> cyc;
        for (int e : q.base->faces[f])
            if (q.edge_map[std::size_t(e)] != -1) cyc.push_back(q.edge_map[std::size_t(e)]);
        cycles.push_back(std::move(cyc));
    }
    return make_view_impl(q.n_vertices, q.edges, std::move(cycles), &q.D, &q.B);
}

gf2::BitVec view_potential(const CellView& view, const gf2::BitVec& w) {
    if (w.size() != view.ne) throw std::invalid_argument("view_potential: cochain size mismatch");
    gf2::BitVec bt = view.B->transposed().mul(w);
    if (bt.any()) throw NotACocycle(bt.lowest_set());
    gf2::BitVec t(view.nv);
    std::vector<char> seen(view.nv, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
        int v = q.front(); q.pop_front();
        for (int e : view.vertex_edges[std::size_t(v)]) {
            int u = view.other(e, v);
            if (!seen[std::size_t(u)]) {
                seen[std::size_t(u)] = 1;
                t.set(std::size_t(u), t.get(std::size_t(v)) ^ w.get(std::size_t(e)));
                q.push_back(u);
            }
        }
    }
    if (view.D->transposed().mul(t) != w)
        throw std::logic_error("view_potential: reconstruction failed");
    return t;
}

bool region_connected(const PlanarComplex& cx, const std::vector<int>& region) {
    if (region.empty()) return false;
    std::set<int> in(region.begin(), region.end());
    std::set<int> seen{*in.begin()};
    std::deque<int> q{*in.begin()};
    while (!q.empty()) {
        int v = q.front(); q.pop_front();
        for (int u : cx.neighbors(v))
            if (in.count(u) && !seen.count(u)) { seen.insert(u); q.push_back(u); }
    }
    return seen.size() == in.size();
}

std::vector<int> carrier_edges(const PlanarComplex& cx, const std::vector<int>& region) {
    std::set<int> in(region.begin(), region.end());
    std::vector<int> out;
    for (std::size_t e = 0; e < cx.n_edges(); ++e)
        if (in.count(cx.edges[e].first) && in.count(cx.edges[e].second)) out.push_back(int(e));
    return out;
}

std::vector<int> carrier_faces(const PlanarComplex& cx, const std::vector<int>& region) {
    auto ce = carrier_edges(cx, region);
    std::set<int> ces(ce.begin(), ce.end());
    std::vector<int> out;
    for (std::size_t f = 0; f < cx.n_faces(); ++f) {
        bool all = !cx.faces[f].empty();
        for (int e : cx.faces[f])
            if (!ces.count(e)) { all = false; break; }
        if (all) out.push_back(int(f));
    }
    return out;
}

bool region_disklike(const PlanarComplex& cx, const std::vector<int>& region) {
    if (region.empty() || !region_connected(cx, region)) return false;
    std::set<int> uniq(region.begin(), region.end());
    auto chi = std::ptrdiff_t(uniq.size()) - std::ptrdiff_t(carrier_edges(cx, region).size())
               + std::ptrdiff_t(carrier_faces(cx, region).size());
    return chi == 1;
}

QuotientComplex collapse(const PlanarComplex& cx, const std::vector<std::vector<int>>& regions) {
    QuotientComplex q;
    q.base = &cx;
    q.collapsed_regions.reserve(regions.size());
    for (auto region : regions) {
        std::sort(region.begin(), region.end());
        region.erase(std::unique(region.begin(), region.end()), region.end());
        q.collapsed_regions.push_back(std::move(region));
    }

    std::vector<int> region_of(cx.n_vertices(), -1);
    for (std::size_t r = 0; r < q.collapsed_regions.size(); ++r) {
        const auto& reg = q.collapsed_regions[r];
        if (!region_connected(cx, reg))
            throw std::invalid_argument("collapse: region " + std::to_string(r) + " is disconnected");
        if (!region_disklike(cx, reg))
            throw std::invalid_argument("collapse: region " + std::to_string(r) + " is not disk-like");
        for (int v : reg) {
            if (region_of[std::size_t(v)] != -1)
                throw std::invalid_argument("collapse: regions overlap at vertex " + std::to_string(v));
            region_of[std::size_t(v)] = int(r);
        }
    }

    // surviving vertices keep relative order; marked vertices appended
    q.vertex_map.assign(cx.n_vertices(), -1);
    int next = 0;
    for (std::size_t v = 0; v < cx.n_vertices(); ++v)
        if (region_of[v] == -1) q.vertex_map[v] = next++;
    q.marked_vertices.resize(q.collapsed_regions.size());
    for (std::size_t r = 0; r < q.collapsed_regions.size(); ++r) {
        q.marked_vertices[r] = next++;
        for (int v : q.collapsed_regions[r]) q.vertex_map[std::size_t(v)] = q.marked_vertices[r];
    }
    q.n_vertices = std::size_t(next);

    // surviving edges: endpoints not both inside one region
    q.edge_map.assign(cx.n_edges(), -1);
    for (std::size_t e = 0; e < cx.n_edges(); ++e) {
        auto [u, v] = cx.edges[e];
        int ru = region_of[std::size_t(u)], rv = region_of[std::size_t(v)];
        if (ru != -1 && ru == rv) continue;  // collapsed
        q.edge_map[e] = int(q.edges.size());
        q.edges.emplace_back(q.vertex_map[std::size_t(u)], q.vertex_map[std::size_t(v)]);
        q.edge_lift.push_back(int(e));
    }

    // surviving faces: those with at least one surviving boundary edge
    q.face_map.assign(cx.n_faces(), -1);
    int nf = 0;
    for (std::size_t f = 0; f < cx.n_faces(); ++f) {
        bool alive = false;
        for (int e : cx.faces[f])
            if (q.edge_map[std::size_t(e)] != -1) { alive = true; break; }
        if (alive) q.face_map[f] = nf++;
    }
    q.face_count_ = std::size_t(nf);

    q.D = gf2::BitMatrix(q.n_vertices, q.edges.size());
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [u, v] = q.edges[e];
        if (u == v)
            throw std::logic_error("collapse: surviving edge became a loop");
        q.D.set(std::size_t(u), e);
        q.D.set(std::size_t(v), e);
    }
    q.B = gf2::BitMatrix(q.edges.size(), std::size_t(nf));
    for (std::size_t f = 0; f < cx.n_faces(); ++f) {
        if (q.face_map[f] == -1) continue;
        for (int e : cx.faces[f])
            if (q.edge_map[std::size_t(e)] != -1)
                q.B.flip(std::size_t(q.edge_map[std::size_t(e)]), std::size_t(q.face_map[f]));
    }

    // D*B = 0 and trivial H1 (cycles = plaquette boundaries) on the quotient
    for (std::size_t f = 0; f < std::size_t(nf); ++f) {
        gf2::BitVec col{std::size_t(nf)};
        col.set(f);
        if (q.D.mul(q.B.mul(col)).any())
            throw std::logic_error("collapse: quotient D*B != 0");
    }
    std::size_t cycles = q.edges.size() - q.D.rank();
    if (cycles != q.B.rank())
        throw std::logic_error("collapse: quotient has nontrivial H1");

    return q;
}

gf2::BitVec QuotientComplex::project_chain1(const gf2::BitVec& base_chain) const {
    if (base_chain.size() != base->n_edges())
        throw std::invalid_argument("project_chain1: chain size mismatch");
    gf2::BitVec out(edges.size());
    for (int e : base_chain.indices())
        if (edge_map[std::size_t(e)] != -1) out.set(std::size_t(edge_map[std::size_t(e)]));
    return out;
}

gf2::BitVec QuotientComplex::lift_chain1(const gf2::BitVec& quotient_chain) const {
    if (quotient_chain.size() != edges.size())
        throw std::invalid_argument("lift_chain1: chain size mismatch");
    gf2::BitVec out(base->n_edges());
    for (int e : quotient_chain.indices()) out.set(std::size_t(edge_lift[std::size_t(e)]));
    return out;
}

}  // namespace psense
