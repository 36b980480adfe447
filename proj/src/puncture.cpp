#include "psense/puncture.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace psense {

const char* to_string(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::non_bipartite: return "non_bipartite";
        case ObstructionKind::not_cleanly_openable: return "not_cleanly_openable";
        case ObstructionKind::disconnected_candidate: return "disconnected_candidate";
    }
    return "?";
}

std::vector<int> guided_region(const PlanarComplex& cx, const WitnessLoop& w,
                               const std::vector<int>& side_hint_endpoints) {
    if (side_hint_endpoints.empty())
        throw std::invalid_argument("guided_region: no hinted endpoints");
    bool side = w.side1.get(std::size_t(side_hint_endpoints[0]));
    for (int v : side_hint_endpoints)
        if (w.side1.get(std::size_t(v)) != side)
            throw std::invalid_argument(
                "guided_region: hinted endpoints lie on both sides of the witness");
    std::vector<int> out;
    for (std::size_t v = 0; v < cx.n_vertices(); ++v)
        if (w.side1.get(v) == side) out.push_back(int(v));
    return out;
}

namespace {

std::set<int> family_interiors(const PlanarComplex& cx, const SignalFamily& family) {
    std::set<int> out;
    for (const auto& c : family.chains)
        for (int v : chain_interior_vertices(cx, c.edges)) out.insert(v);
    return out;
}

}  // namespace

std::variant<std::vector<int>, Obstruction> clean_open(const PlanarComplex& cx,
                                                       const std::vector<int>& omega,
                                                       const std::vector<int>& assigned_endpoints,
                                                       const SignalFamily& family) {
    std::set<int> in_omega(omega.begin(), omega.end());
    for (int v : assigned_endpoints)
        if (!in_omega.count(v))
            throw std::invalid_argument("clean_open: assigned endpoint " + std::to_string(v) +
                                        " outside the guided region");

    auto interiors = family_interiors(cx, family);
    std::set<int> assigned(assigned_endpoints.begin(), assigned_endpoints.end());

    // an assigned endpoint that is non-terminal on another chain can never
    // join a clean hole
    for (int v : assigned_endpoints)
        if (interiors.count(v)) {
            Obstruction ob;
            ob.kind = ObstructionKind::not_cleanly_openable;
            ob.blocked_vertices = {v};
            ob.evidence_cells = {v};
            return ob;
        }

    std::set<int> allowed;
    for (int v : omega)
        if (!interiors.count(v)) allowed.insert(v);

    // connected components of the allowed region
    std::map<int, int> comp_of;
    std::vector<std::vector<int>> comps;
    for (int v : allowed) {
        if (comp_of.count(v)) continue;
        int id = int(comps.size());
        comps.push_back({});
        std::deque<int> q{v};
        comp_of[v] = id;
        while (!q.empty()) {
            int x = q.front(); q.pop_front();
            comps[std::size_t(id)].push_back(x);
            for (int u : cx.neighbors(x))
                if (allowed.count(u) && !comp_of.count(u)) { comp_of[u] = id; q.push_back(u); }
        }
    }

    std::set<int> endpoint_comps;
    for (int v : assigned_endpoints) endpoint_comps.insert(comp_of.at(v));
    if (endpoint_comps.size() > 1) {
        Obstruction ob;
        ob.kind = ObstructionKind::disconnected_candidate;
        for (int c : endpoint_comps) {
            auto cp = comps[std::size_t(c)];
            std::sort(cp.begin(), cp.end());
            ob.components.push_back(cp);
        }
        for (int v : omega)
            if (interiors.count(v)) ob.blocked_vertices.push_back(v);
        ob.evidence_cells = ob.blocked_vertices;
        return ob;
    }

    // smallest connected superset of the endpoints: attach each endpoint in
    // id order by its breadth-first shortest path inside the allowed set
    std::vector<int> goals(assigned.begin(), assigned.end());
    std::set<int> hole{goals.front()};
    for (std::size_t gi = 1; gi < goals.size(); ++gi) {
        int target = goals[gi];
        if (hole.count(target)) continue;
        std::map<int, int> par;
        std::deque<int> q;
        for (int v : hole) { par[v] = v; q.push_back(v); }
        while (!q.empty() && !par.count(target)) {
            int v = q.front(); q.pop_front();
            for (int u : cx.neighbors(v)) {
                if (!allowed.count(u) || par.count(u)) continue;
                par[u] = v;
                q.push_back(u);
            }
        }
        for (int v = target; !hole.count(v); v = par.at(v)) hole.insert(v);
    }

    std::vector<int> r(hole.begin(), hole.end());
    // the minimal closure may still pinch off enclosed pockets; absorb
    // allowed pockets so the hole is disk-like
    while (!region_disklike(cx, r)) {
        // complement components not touching the patch boundary-free side:
        // absorb the smallest fully-allowed pocket
        std::set<int> in_r(r.begin(), r.end());
        std::vector<std::vector<int>> pockets;
        std::map<int, int> pid;
        for (std::size_t v = 0; v < cx.n_vertices(); ++v) {
            if (in_r.count(int(v)) || pid.count(int(v))) continue;
            int id = int(pockets.size());
            pockets.push_back({});
            std::deque<int> q{int(v)};
            pid[int(v)] = id;
            while (!q.empty()) {
                int x = q.front(); q.pop_front();
                pockets[std::size_t(id)].push_back(x);
                for (int u : cx.neighbors(x))
                    if (!in_r.count(u) && !pid.count(u)) { pid[u] = id; q.push_back(u); }
            }
        }
        if (pockets.size() <= 1) {
            Obstruction ob;
            ob.kind = ObstructionKind::not_cleanly_openable;
            ob.blocked_vertices.assign(r.begin(), r.end());
            ob.evidence_cells = ob.blocked_vertices;
            return ob;
        }
        std::sort(pockets.begin(), pockets.end(),
                  [](auto& a, auto& b) { return a.size() < b.size(); });
        bool absorbed = false;
        for (auto& p : pockets) {
            if (&p == &pockets.back()) break;  // keep the outside
            bool ok = true;
            for (int v : p)
                if (!allowed.count(v)) { ok = false; break; }
            if (!ok) continue;
            for (int v : p) in_r.insert(v);
            r.assign(in_r.begin(), in_r.end());
            absorbed = true;
            break;
        }
        if (!absorbed) {
            Obstruction ob;
            ob.kind = ObstructionKind::not_cleanly_openable;
            for (auto& p : pockets)
                if (&p != &pockets.back())
                    for (int v : p)
                        if (!allowed.count(v)) ob.blocked_vertices.push_back(v);
            ob.evidence_cells = ob.blocked_vertices;
            return ob;
        }
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<int> rough_boundary(const PlanarComplex& cx, const std::vector<int>& hole,
                                const std::vector<int>& other_hole) {
    std::set<int> off(hole.begin(), hole.end());
    off.insert(other_hole.begin(), other_hole.end());
    std::vector<int> out;
    for (int v : hole)
        for (int u : cx.neighbors(v))
            if (!off.count(u)) { out.push_back(v); break; }
    return out;
}

void validate_holes(const PlanarComplex& cx, const SignalFamily& family, const HoleConfig& holes) {
    std::set<int> r0(holes.r0.begin(), holes.r0.end());
    std::set<int> r1(holes.r1.begin(), holes.r1.end());
    for (int v : holes.r0)
        if (r1.count(v)) throw std::invalid_argument("holes: R0 and R1 overlap at " + std::to_string(v));
    std::set<int> o0(holes.omega0.begin(), holes.omega0.end());
    std::set<int> o1(holes.omega1.begin(), holes.omega1.end());
    for (int v : holes.r0)
        if (!o0.count(v)) throw std::invalid_argument("holes: R0 not contained in omega0");
    for (int v : holes.r1)
        if (!o1.count(v)) throw std::invalid_argument("holes: R1 not contained in omega1");
    if (!region_disklike(cx, holes.r0)) throw std::invalid_argument("holes: R0 is not disk-like");
    if (!region_disklike(cx, holes.r1)) throw std::invalid_argument("holes: R1 is not disk-like");

    auto interiors = family_interiors(cx, family);
    for (int v : interiors)
        if (r0.count(v) || r1.count(v))
            throw std::invalid_argument("holes: non-terminal vertex " + std::to_string(v) +
                                        " of a prescribed chain lies in a hole");
    for (std::size_t a = 0; a < family.chains.size(); ++a) {
        const auto& c = family.chains[a];
        int in0 = int(r0.count(c.u)) + int(r0.count(c.v));
        int in1 = int(r1.count(c.u)) + int(r1.count(c.v));
        if (in0 != 1 || in1 != 1)
            throw std::invalid_argument("holes: chain " + std::to_string(a) +
                                        " does not end once on each hole");
    }
}

std::variant<HoleConfig, Obstruction> synthesize_holes(const PlanarComplex& cx,
                                                       const SignalFamily& family) {
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

    HoleConfig out;

    // (1) first witness and its guided side
    try {
        out.w1 = synthesize_witness_on(view, chains, endpoints, interiors);
    } catch (const WitnessSynthesisError& err) {
        Obstruction ob;
        ob.kind = ObstructionKind::non_bipartite;
        ob.stage = "witness1";
        ob.odd_cycle = err.odd_cycle;
        return ob;
    }

    // endpoints split into the two sides of w1; pick the smaller side
    std::vector<int> side_a, side_b;
    for (std::size_t v = 0; v < cx.n_vertices(); ++v)
        (out.w1.side1.get(v) ? side_a : side_b).push_back(int(v));
    std::set<int> sa(side_a.begin(), side_a.end());
    std::vector<int> ep_a, ep_b;
    for (auto [u, v] : endpoints) {
        (sa.count(u) ? ep_a : ep_b).push_back(u);
        (sa.count(v) ? ep_a : ep_b).push_back(v);
    }
    bool a_first = side_a.size() < side_b.size() ||
                   (side_a.size() == side_b.size() && sa.count(0));
    out.omega0 = a_first ? side_a : side_b;
    std::vector<int> assigned0 = a_first ? ep_a : ep_b;
    std::vector<int> assigned1 = a_first ? ep_b : ep_a;
    std::sort(assigned0.begin(), assigned0.end());
    assigned0.erase(std::unique(assigned0.begin(), assigned0.end()), assigned0.end());
    std::sort(assigned1.begin(), assigned1.end());
    assigned1.erase(std::unique(assigned1.begin(), assigned1.end()), assigned1.end());

    // (2) open the first hole
    auto r0_or = clean_open(cx, out.omega0, assigned0, family);
    if (std::holds_alternative<Obstruction>(r0_or)) {
        auto ob = std::get<Obstruction>(r0_or);
        ob.stage = "clean_open_r0";
        return ob;
    }
    out.r0 = std::get<std::vector<int>>(r0_or);

    // (3) collapse the first hole; the quotient endpoint graph is a star
    // around the marked vertex, so a second witness always exists
    QuotientComplex quo = collapse(cx, {out.r0});
    CellView qview = make_view(quo);
    int rhat = quo.marked_vertices[0];

    std::vector<gf2::BitVec> qchains;
    std::vector<std::pair<int, int>> qendpoints;
    std::set<int> star_ends;
    for (std::size_t a = 0; a < chains.size(); ++a) {
        qchains.push_back(quo.project_chain1(chains[a]));
        int pu = quo.vertex_map[std::size_t(endpoints[a].first)];
        int pv = quo.vertex_map[std::size_t(endpoints[a].second)];
        if (pu != rhat && pv != rhat)
            throw std::logic_error("synthesize_holes: projected chain misses the marked vertex");
        qendpoints.emplace_back(pu, pv);
        star_ends.insert(pu == rhat ? pv : pu);
    }
    {
        auto cert = bipartite_certificate(
            [&] { SignalFamily f; for (auto [u, v] : qendpoints) { SignalChain c; c.u = u; c.v = v; f.chains.push_back(c);} return endpoint_graph(f); }());
        if (!std::holds_alternative<TwoColoring>(cert))
            throw std::logic_error("synthesize_holes: quotient endpoint star is not bipartite");
    }

    std::vector<int> qinteriors;
    for (int v : interiors)
        if (quo.vertex_map[std::size_t(v)] != rhat) qinteriors.push_back(quo.vertex_map[std::size_t(v)]);

    WitnessLoop qw2;
    try {
        // grow around the collapsed vertex: the quotient endpoint graph is a
        // star, so this side is exactly the first hole's neighborhood and the
        // other side guides the second hole
        qw2 = synthesize_witness_on(qview, qchains, qendpoints, qinteriors, rhat);
    } catch (const WitnessSynthesisError& err) {
        Obstruction ob;
        ob.kind = ObstructionKind::non_bipartite;
        ob.stage = "witness2";
        ob.odd_cycle = err.odd_cycle;
        return ob;
    }

    // lift the second witness to the base complex
    auto lifted = decompose_witness(view, quo.lift_chain1(qw2.cochain));
    if (!lifted) throw std::logic_error("synthesize_holes: lifted witness does not decompose");
    out.w2 = *lifted;

    // (4) second guided region: the side holding the remaining endpoints,
    // away from R0
    std::vector<int> remaining(assigned1.begin(), assigned1.end());
    out.omega1 = guided_region(cx, out.w2, remaining);
    {
        std::set<int> o1(out.omega1.begin(), out.omega1.end());
        for (int v : out.r0)
            if (o1.count(v))
                throw std::invalid_argument(
                    "synthesize_holes: second witness side contains the first hole");
    }
    auto r1_or = clean_open(cx, out.omega1, assigned1, family);
    if (std::holds_alternative<Obstruction>(r1_or)) {
        auto ob = std::get<Obstruction>(r1_or);
        ob.stage = "clean_open_r1";
        return ob;
    }
    out.r1 = std::get<std::vector<int>>(r1_or);

    std::sort(out.omega0.begin(), out.omega0.end());
    std::sort(out.omega1.begin(), out.omega1.end());
    out.rough_boundary0 = rough_boundary(cx, out.r0, out.r1);
    out.rough_boundary1 = rough_boundary(cx, out.r1, out.r0);

    validate_holes(cx, family, out);
    return out;
}

WitnessLoop separator_witness(const PlanarComplex& cx, const HoleConfig& holes) {
    CellView view = make_view(cx);
    auto loop = simple_cut_loop(view, holes.r0, holes.r1);
    if (!loop)
        throw std::runtime_error(
            "separator_witness: no simple separating loop fits between the holes");
    return *loop;
}

}  // namespace psense
