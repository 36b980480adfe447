#include "psense/witness.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace psense {

namespace {

std::map<int, int> chain_degrees(const PlanarComplex& cx, const gf2::BitVec& edges) {
    std::map<int, int> deg;
    for (int e : edges.indices()) {
        ++deg[cx.edges[std::size_t(e)].first];
        ++deg[cx.edges[std::size_t(e)].second];
    }
    return deg;
}

}  // namespace

std::pair<int, int> chain_endpoints(const PlanarComplex& cx, const gf2::BitVec& edges) {
    auto deg = chain_degrees(cx, edges);
    std::vector<int> odd;
    for (auto& [v, d] : deg)
        if (d % 2) odd.push_back(v);
    if (odd.size() != 2)
        throw std::invalid_argument("chain_endpoints: chain has " + std::to_string(odd.size()) +
                                    " odd-degree vertices, expected 2");
    return {odd[0], odd[1]};
}

std::vector<int> chain_interior_vertices(const PlanarComplex& cx, const gf2::BitVec& edges) {
    auto deg = chain_degrees(cx, edges);
    std::vector<int> out;
    for (auto& [v, d] : deg)
        if (d == 2) out.push_back(v);
    return out;
}

void validate_family(const PlanarComplex& cx, const SignalFamily& family,
                     bool require_edge_disjoint) {
    if (family.chains.empty()) throw std::invalid_argument("family: no chains");
    for (std::size_t i = 0; i < family.chains.size(); ++i) {
        const auto& c = family.chains[i];
        std::string tag = "chain " + std::to_string(i);
        if (c.edges.size() != cx.n_edges())
            throw std::invalid_argument(tag + ": edge vector size mismatch");
        if (!c.edges.any()) throw std::invalid_argument(tag + ": empty support");

        auto deg = chain_degrees(cx, c.edges);
        std::vector<int> ones;
        for (auto& [v, d] : deg) {
            if (d > 2) throw std::invalid_argument(tag + ": vertex " + std::to_string(v) +
                                                   " has chain degree " + std::to_string(d));
            if (d == 1) ones.push_back(v);
        }
        if (ones.size() != 2)
            throw std::invalid_argument(tag + ": support is not a simple open path");
        // connected + no cycle: |edges| = |support vertices| - 1
        if (c.edges.weight() + 1 != deg.size())
            throw std::invalid_argument(tag + ": support is disconnected or closes a loop");
        std::pair<int, int> got{ones[0], ones[1]};
        std::pair<int, int> want{std::min(c.u, c.v), std::max(c.u, c.v)};
        if (want != got)
            throw std::invalid_argument(tag + ": endpoint metadata does not match the support");
    }
    if (require_edge_disjoint) {
        for (std::size_t i = 0; i < family.chains.size(); ++i)
            for (std::size_t j = i + 1; j < family.chains.size(); ++j)
                for (int e : family.chains[j].edges.indices())
                    if (family.chains[i].edges.get(std::size_t(e)))
                        throw std::invalid_argument("chains " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " share edge " +
                                                    std::to_string(e));
    }
}

EndpointGraph endpoint_graph(const SignalFamily& family) {
    EndpointGraph g;
    std::set<int> nodes;
    for (const auto& c : family.chains) {
        nodes.insert(c.u);
        nodes.insert(c.v);
        g.eta.emplace_back(c.u, c.v);
    }
    g.nodes.assign(nodes.begin(), nodes.end());
    return g;
}

std::variant<TwoColoring, OddCycle> bipartite_certificate(const EndpointGraph& g) {
    std::map<int, int> color;
    std::map<int, std::pair<int, int>> parent;  // vertex -> (parent vertex, chain id)
    // adjacency
    std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (other, chain id)
    for (std::size_t a = 0; a < g.eta.size(); ++a) {
        auto [u, v] = g.eta[a];
        if (u == v) return OddCycle{{int(a)}};
        adj[u].emplace_back(v, int(a));
        adj[v].emplace_back(u, int(a));
    }
    for (int root : g.nodes) {
        if (color.count(root)) continue;
        color[root] = 0;
        parent[root] = {-1, -1};
        std::deque<int> q{root};
        while (!q.empty()) {
            int v = q.front(); q.pop_front();
            for (auto [u, a] : adj[v]) {
                if (!color.count(u)) {
                    color[u] = color[v] ^ 1;
                    parent[u] = {v, a};
                    q.push_back(u);
                } else if (color[u] == color[v]) {
                    // walk both vertices up to the root collecting chain ids
                    auto trail = [&](int x) {
                        std::vector<std::pair<int, int>> t;  // (vertex, chain to parent)
                        while (parent[x].first != -1) {
                            t.emplace_back(x, parent[x].second);
                            x = parent[x].first;
                        }
                        t.emplace_back(x, -1);
                        return t;
                    };
                    auto tu = trail(u), tv = trail(v);
                    // drop the common suffix above the least common ancestor
                    while (tu.size() > 1 && tv.size() > 1 &&
                           tu[tu.size() - 1].first == tv[tv.size() - 1].first &&
                           tu[tu.size() - 2].first == tv[tv.size() - 2].first) {
                        tu.pop_back();
                        tv.pop_back();
                    }
                    OddCycle cyc;
                    cyc.chains.push_back(a);
                    for (std::size_t i = 0; i + 1 < tu.size(); ++i) cyc.chains.push_back(tu[i].second);
                    for (std::size_t i = 0; i + 1 < tv.size(); ++i) cyc.chains.push_back(tv[i].second);
                    std::sort(cyc.chains.begin(), cyc.chains.end());
                    cyc.chains.erase(std::unique(cyc.chains.begin(), cyc.chains.end()),
                                     cyc.chains.end());
                    return cyc;
                }
            }
        }
    }
    return TwoColoring{std::move(color)};
}

std::optional<std::vector<int>> odd_closed_dependency(const PlanarComplex& cx,
                                                      const SignalFamily& family) {
    const std::size_t m = family.chains.size();
    gf2::BitMatrix stacked(cx.n_vertices(), m);
    for (std::size_t a = 0; a < m; ++a) {
        gf2::BitVec b = cx.D.mul(family.chains[a].edges);
        for (int v : b.indices()) stacked.set(std::size_t(v), a);
    }
    for (const auto& k : stacked.kernel_basis())
        if (k.weight() % 2 == 1) return k.indices();
    return std::nullopt;
}

bool WitnessLoop::simple() const {
    if (dual_cycles.size() != 1) return false;
    std::set<int> seen(dual_cycles[0].begin(), dual_cycles[0].end());
    return seen.size() == dual_cycles[0].size();
}

const std::vector<int>& WitnessLoop::dual_trace() const {
    static const std::vector<int> empty;
    return dual_cycles.empty() ? empty : dual_cycles[0];
}

std::optional<WitnessLoop> decompose_witness(const CellView& view, const gf2::BitVec& cochain) {
    if (cochain.size() != view.ne) throw std::invalid_argument("decompose_witness: size mismatch");
    if (!cochain.any()) return std::nullopt;
    if (view.B->transposed().mul(cochain).any()) return std::nullopt;

    // crossing ports: positions of crossed edges around each face cycle,
    // paired consecutively (the non-crossing arc matching of a cut)
    std::map<int, std::vector<int>> ports;  // face -> positions, ascending
    for (std::size_t f = 0; f < view.nf; ++f) {
        const auto& cyc = view.face_cycles[f];
        for (std::size_t p = 0; p < cyc.size(); ++p)
            if (cochain.get(std::size_t(cyc[p]))) ports[int(f)].push_back(int(p));
        if (ports.count(int(f)) && ports[int(f)].size() % 2)
            throw std::logic_error("decompose_witness: odd crossing count on a closed cochain");
    }

    // port = (face, index into ports[face]); partner pairs 2i <-> 2i+1
    std::set<std::pair<int, int>> used;
    WitnessLoop w;
    w.cochain = cochain;
    for (auto& [f0, ps0] : ports) {
        for (std::size_t i0 = 0; i0 < ps0.size(); ++i0) {
            if (used.count({f0, int(i0)})) continue;
            const std::pair<int, int> start{f0, int(i0)};
            std::vector<int> cycle;
            std::pair<int, int> port = start;
            bool closed = false;
            while (!closed) {
                auto [f, i] = port;
                cycle.push_back(f);
                int j = i ^ 1;  // matched partner in this face
                used.insert({f, i});
                used.insert({f, j});
                int exit_edge =
                    view.face_cycles[std::size_t(f)][std::size_t(ports[f][std::size_t(j)])];
                const auto& ef = view.edge_faces[std::size_t(exit_edge)];
                int nf = ef[0] == f ? ef[1] : ef[0];
                const auto& ps = ports[nf];
                int found = -1;
                for (std::size_t t = 0; t < ps.size(); ++t) {
                    if (view.face_cycles[std::size_t(nf)][std::size_t(ps[t])] != exit_edge) continue;
                    if (std::pair<int, int>{nf, int(t)} == start) {
                        closed = true;
                        found = int(t);
                        break;
                    }
                    if (found == -1 && !used.count({nf, int(t)})) found = int(t);
                }
                if (found == -1)
                    throw std::logic_error("decompose_witness: lost a crossing port");
                port = {nf, found};
            }
            w.dual_cycles.push_back(std::move(cycle));
        }
    }
    w.side1 = view_potential(view, cochain);
    return w;
}

std::optional<WitnessLoop> trace_witness(const CellView& view, const gf2::BitVec& cochain) {
    auto w = decompose_witness(view, cochain);
    if (!w || !w->simple()) return std::nullopt;
    return w;
}

bool verify_odd_witness(const CellView& view, const WitnessLoop& w,
                        const std::vector<gf2::BitVec>& chains) {
    if (view.B->transposed().mul(w.cochain).any()) return false;
    auto traced = decompose_witness(view, w.cochain);
    if (!traced || traced->dual_cycles.size() != w.dual_cycles.size()) return false;
    for (const auto& c : chains)
        if (pairing(w.cochain, c) != 1) return false;
    return true;
}

namespace {

// Cut cochain of a vertex set: edges with exactly one endpoint inside.
gf2::BitVec cut_of(const CellView& view, const std::vector<char>& in) {
    gf2::BitVec w(view.ne);
    for (std::size_t e = 0; e < view.ne; ++e)
        if (in[std::size_t(view.edges[e].first)] != in[std::size_t(view.edges[e].second)])
            w.set(e);
    return w;
}

// 0-1 BFS from the current set to a target vertex; stepping onto a
// prefer-avoid vertex costs 1, other steps cost 0. Returns the path from a
// set vertex to target (exclusive of the set), or empty when unreachable.
std::vector<int> route_to(const CellView& view, const std::vector<char>& in,
                          int target, const std::vector<char>& forbidden,
                          const std::vector<char>& avoid) {
    std::vector<int> dist(view.nv, -1), par(view.nv, -1);
    std::vector<char> settled(view.nv, 0);
    std::deque<int> dq;
    for (std::size_t v = 0; v < view.nv; ++v)
        if (in[v]) { dist[v] = 0; dq.push_back(int(v)); }
    while (!dq.empty()) {
        int v = dq.front(); dq.pop_front();
        if (settled[std::size_t(v)]) continue;
        settled[std::size_t(v)] = 1;
        if (v == target) break;
        for (int e : view.vertex_edges[std::size_t(v)]) {
            int u = view.other(e, v);
            if (forbidden[std::size_t(u)] || in[std::size_t(u)]) continue;
            int nd = dist[std::size_t(v)] + (avoid[std::size_t(u)] ? 1 : 0);
            if (dist[std::size_t(u)] == -1 || nd < dist[std::size_t(u)]) {
                dist[std::size_t(u)] = nd;
                par[std::size_t(u)] = v;
                if (avoid[std::size_t(u)]) dq.push_back(u);
                else dq.push_front(u);
            }
        }
    }
    if (dist[std::size_t(target)] == -1) return {};
    std::vector<int> path;
    for (int v = target; v != -1 && !in[std::size_t(v)]; v = par[std::size_t(v)])
        path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

// Vertex sequence around a face cycle: entry i is the vertex shared by
// cycle edges i-1 and i.
std::vector<int> face_vertex_walk(const CellView& view, const std::vector<int>& cycle) {
    std::vector<int> verts(cycle.size(), -1);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int ep = cycle[(i + cycle.size() - 1) % cycle.size()];
        int ec = cycle[i];
        auto [a, b] = view.edges[std::size_t(ec)];
        auto [c, d] = view.edges[std::size_t(ep)];
        if (a == c || a == d) verts[i] = a;
        else if (b == c || b == d) verts[i] = b;
        else throw std::logic_error("face_vertex_walk: cycle edges do not share a vertex");
    }
    return verts;
}

}  // namespace

std::optional<WitnessLoop> simple_cut_loop(const CellView& view,
                                           const std::vector<int>& seeds,
                                           const std::vector<int>& forbidden,
                                           const std::vector<int>& prefer_avoid) {
    if (seeds.empty()) return std::nullopt;
    std::vector<char> in(view.nv, 0), forb(view.nv, 0), avoid(view.nv, 0);
    for (int v : forbidden) forb[std::size_t(v)] = 1;
    for (int v : prefer_avoid) avoid[std::size_t(v)] = 1;
    for (int v : seeds) {
        if (forb[std::size_t(v)]) return std::nullopt;
        in[std::size_t(v)] = 1;
    }

    // connect the seeds (Steiner-style, nearest first)
    {
        std::vector<char> comp(view.nv, 0);
        std::deque<int> q{seeds[0]};
        comp[std::size_t(seeds[0])] = 1;
        while (!q.empty()) {
            int v = q.front(); q.pop_front();
            for (int e : view.vertex_edges[std::size_t(v)]) {
                int u = view.other(e, v);
                if (in[std::size_t(u)] && !comp[std::size_t(u)]) {
                    comp[std::size_t(u)] = 1;
                    q.push_back(u);
                }
            }
        }
        std::vector<char> connected = comp;
        for (int s : seeds) {
            if (connected[std::size_t(s)]) continue;
            auto path = route_to(view, connected, s, forb, avoid);
            if (path.empty()) return std::nullopt;
            for (int v : path) { in[std::size_t(v)] = 1; connected[std::size_t(v)] = 1; }
            // other seeds may have been swept up
            std::deque<int> q2{s};
            while (!q2.empty()) {
                int v = q2.front(); q2.pop_front();
                for (int e : view.vertex_edges[std::size_t(v)]) {
                    int u = view.other(e, v);
                    if (in[std::size_t(u)] && !connected[std::size_t(u)]) {
                        connected[std::size_t(u)] = 1;
                        q2.push_back(u);
                    }
                }
            }
        }
    }

    // repair until the cut is one simple dual cycle
    for (std::size_t iter = 0; iter <= view.nv + view.nf + 4; ++iter) {
        gf2::BitVec w = cut_of(view, in);
        if (!w.any()) return std::nullopt;  // set swallowed everything reachable

        // face with more than two crossings -> merge the runs around it
        int bad_face = -1;
        std::vector<int> crossings(view.nf, 0);
        for (int e : w.indices())
            for (int f : view.edge_faces[std::size_t(e)]) ++crossings[std::size_t(f)];
        for (std::size_t f = 0; f < view.nf; ++f)
            if (crossings[f] > 2) { bad_face = int(f); break; }

        if (bad_face >= 0) {
            const auto& cycle = view.face_cycles[std::size_t(bad_face)];
            auto verts = face_vertex_walk(view, cycle);
            const std::size_t n = verts.size();
            // gap arcs: maximal runs of outside vertices (cyclic)
            std::vector<std::pair<std::size_t, std::size_t>> gaps;  // [start, length]
            for (std::size_t i = 0; i < n; ++i) {
                if (in[std::size_t(verts[i])]) continue;
                std::size_t prev = (i + n - 1) % n;
                if (!in[std::size_t(verts[prev])]) continue;  // not a gap start
                std::size_t len = 0;
                while (!in[std::size_t(verts[(i + len) % n])]) ++len;
                gaps.push_back({i, len});
            }
            if (gaps.size() < 2) return std::nullopt;  // inconsistent; bail to fallback
            // absorb the shortest arc free of forbidden vertices; one gap
            // always remains, so the set never seals the face on its own
            std::stable_sort(gaps.begin(), gaps.end(),
                             [](auto& a, auto& b) { return a.second < b.second; });
            bool fixed = false;
            for (auto [start, len] : gaps) {
                bool ok = true;
                for (std::size_t k = 0; k < len; ++k)
                    if (forb[std::size_t(verts[(start + k) % n])]) { ok = false; break; }
                if (!ok) continue;
                for (std::size_t k = 0; k < len; ++k)
                    in[std::size_t(verts[(start + k) % n])] = 1;
                fixed = true;
                break;
            }
            if (!fixed) return std::nullopt;
            continue;
        }

        auto traced = trace_witness(view, w);
        if (traced) {
            // forbidden vertices must all sit on the outer side of the loop
            for (int v : forbidden)
                if (traced->side1.get(std::size_t(v)) == traced->side1.get(std::size_t(seeds[0])))
                    return std::nullopt;
            return traced;
        }

        // several disjoint cycles: absorb complement components without
        // forbidden vertices (smallest first, deterministic)
        std::vector<int> comp_id(view.nv, -1);
        std::vector<std::vector<int>> comps;
        for (std::size_t v = 0; v < view.nv; ++v) {
            if (in[v] || comp_id[v] != -1) continue;
            std::vector<int> comp{int(v)};
            comp_id[v] = int(comps.size());
            std::deque<int> q{int(v)};
            while (!q.empty()) {
                int x = q.front(); q.pop_front();
                for (int e : view.vertex_edges[std::size_t(x)]) {
                    int u = view.other(e, x);
                    if (!in[std::size_t(u)] && comp_id[std::size_t(u)] == -1) {
                        comp_id[std::size_t(u)] = int(comps.size());
                        comp.push_back(u);
                        q.push_back(u);
                    }
                }
            }
            comps.push_back(std::move(comp));
        }
        std::vector<std::size_t> absorbable;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            bool has_forb = false;
            for (int v : comps[i])
                if (forb[std::size_t(v)]) { has_forb = true; break; }
            if (!has_forb) absorbable.push_back(i);
        }
        if (absorbable.size() == comps.size()) return std::nullopt;  // would swallow all
        if (absorbable.empty()) return std::nullopt;  // several forbidden components
        std::stable_sort(absorbable.begin(), absorbable.end(), [&](std::size_t a, std::size_t b) {
            return comps[a].size() < comps[b].size();
        });
        for (int v : comps[absorbable.front()]) in[std::size_t(v)] = 1;
    }
    return std::nullopt;
}

namespace {

// Exhaustive search over the span of the closed-cochain basis, Gray-code
// order; returns the first simple all-odd loop. Bails out after a fixed
// number of trace attempts so pathological families fall through to the
// algebraic representative.
std::optional<WitnessLoop> exhaustive_witness(const CellView& view,
                                              const std::vector<gf2::BitVec>& chains) {
    auto basis = view.B->transposed().kernel_basis();
    if (basis.size() > kWitnessEnumerationLimit || chains.size() > 63) return std::nullopt;
    const std::size_t d = basis.size();
    std::vector<std::uint64_t> sig(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < chains.size(); ++a)
            if (gf2::BitVec::dot(basis[i], chains[a])) sig[i] |= std::uint64_t(1) << a;
    const std::uint64_t want = chains.empty() ? 0 : (std::uint64_t(1) << chains.size()) - 1;

    gf2::BitVec w(view.ne);
    std::uint64_t cur = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t total = std::uint64_t(1) << d;
    for (std::uint64_t g = 1; g < total; ++g) {
        // Gray step: toggle basis vector indexed by the lowest set bit of g
        unsigned bit = unsigned(__builtin_ctzll(g));
        w ^= basis[bit];
        cur ^= sig[bit];
        if (cur == want && w.any()) {
            auto traced = trace_witness(view, w);
            if (traced) return traced;
            if (++attempts > 100000) return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

WitnessLoop synthesize_witness_on(const CellView& view,
                                  const std::vector<gf2::BitVec>& chains,
                                  const std::vector<std::pair<int, int>>& endpoints,
                                  const std::vector<int>& prefer_avoid,
                                  std::optional<int> grow_vertex) {
    SignalFamily shim;
    for (auto [u, v] : endpoints) {
        SignalChain c;
        c.u = u;
        c.v = v;
        shim.chains.push_back(std::move(c));
    }
    auto cert = bipartite_certificate(endpoint_graph(shim));
    if (std::holds_alternative<OddCycle>(cert))
        throw WitnessSynthesisError("no odd witness: endpoint graph has an odd cycle",
                                    std::get<OddCycle>(cert).chains);
    const auto& coloring = std::get<TwoColoring>(cert).color;

    // the loop interior grows over one endpoint class
    int lowest = endpoints.empty() ? 0 : std::min(endpoints[0].first, endpoints[0].second);
    for (auto [u, v] : endpoints) lowest = std::min({lowest, u, v});
    if (grow_vertex) {
        if (!coloring.count(*grow_vertex))
            throw std::invalid_argument("synthesize_witness_on: grow vertex is not an endpoint");
        lowest = *grow_vertex;
    }
    int grow_color = coloring.at(lowest);
    std::vector<int> u0, u1;
    for (auto& [v, col] : coloring) (col == grow_color ? u0 : u1).push_back(v);

    auto loop = simple_cut_loop(view, u0, u1, prefer_avoid);
    if (!loop) loop = exhaustive_witness(view, chains);
    if (!loop) {
        // algebraic representative: the cut of the grown endpoint class.
        // Always closed and all-odd; its support may split into several
        // dual cycles on lattices too tight for one simple loop.
        gf2::BitVec t(view.nv);
        for (int v : u0) t.set(std::size_t(v));
        loop = decompose_witness(view, view.D->transposed().mul(t));
    }
    if (!loop)
        throw WitnessSynthesisError("witness synthesis failed despite bipartite endpoint graph");
    if (!verify_odd_witness(view, *loop, chains))
        throw std::logic_error("synthesized witness fails odd-parity verification");
    return *loop;
}

WitnessLoop synthesize_simple_witness(const PlanarComplex& cx, const SignalFamily& family) {
    validate_family(cx, family);
    CellView view = make_view(cx);
    std::vector<gf2::BitVec> chains;
    std::vector<std::pair<int, int>> endpoints;
    std::vector<int> interiors;
    for (const auto& c : family.chains) {
        chains.push_back(c.edges);
        endpoints.emplace_back(c.u, c.v);
        for (int v : chain_interior_vertices(cx, c.edges)) interiors.push_back(v);
    }
    return synthesize_witness_on(view, chains, endpoints, interiors);
}

}  // namespace psense
