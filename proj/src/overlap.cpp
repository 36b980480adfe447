#include "psense/overlap.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace psense {

const char* to_string(BackboneClass c) {
    switch (c) {
        case BackboneClass::open_chain: return "open_chain";
        case BackboneClass::branched: return "branched";
        case BackboneClass::cyclic: return "cyclic";
    }
    return "?";
}

namespace {

std::vector<int> shared_qubits(const QubitTriple& a, const QubitTriple& b) {
    std::vector<int> out;
    for (int q : a)
        if (std::find(b.begin(), b.end(), q) != b.end()) out.push_back(q);
    return out;
}

void require_triples(const std::vector<QubitTriple>& chains) {
    for (std::size_t i = 0; i < chains.size(); ++i) {
        std::set<int> uniq(chains[i].begin(), chains[i].end());
        if (uniq.size() != 3)
            throw std::invalid_argument("overlap: chain " + std::to_string(i) +
                                        " is not a three-qubit support");
    }
}

}  // namespace

std::vector<Rule1Violation> rule1_pairwise(const std::vector<QubitTriple>& chains) {
    require_triples(chains);
    std::vector<Rule1Violation> out;
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = i + 1; j < chains.size(); ++j) {
            auto sh = shared_qubits(chains[i], chains[j]);
            if (sh.size() == 2) {
                out.push_back({int(i), int(j), sh, false});
            } else if (sh.size() == 3) {
                out.push_back({int(i), int(j), sh, true});
            }
        }
    return out;
}

BackboneResult backbone(const std::vector<QubitTriple>& chains) {
    if (!rule1_pairwise(chains).empty())
        throw std::invalid_argument("backbone: rule 1 violations present");
    BackboneResult res;
    res.graph.n = int(chains.size());
    std::map<int, std::vector<std::size_t>> pairs_at_qubit;
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = i + 1; j < chains.size(); ++j) {
            auto sh = shared_qubits(chains[i], chains[j]);
            if (sh.size() == 1) {
                pairs_at_qubit[sh[0]].push_back(res.graph.pairs.size());
                res.graph.pairs.push_back({int(i), int(j), sh[0]});
            }
        }

    for (auto& [q, ps] : pairs_at_qubit)
        if (ps.size() >= 2) res.branch_qubits.push_back(q);

    // connected components over the overlap graph
    std::vector<int> comp(chains.size(), -1);
    std::vector<std::vector<int>> adj(chains.size());
    for (auto& p : res.graph.pairs) {
        adj[std::size_t(p.a)].push_back(p.b);
        adj[std::size_t(p.b)].push_back(p.a);
    }
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (comp[i] != -1) continue;
        int id = int(res.components.size());
        res.components.push_back({});
        std::deque<int> q{int(i)};
        comp[i] = id;
        while (!q.empty()) {
            int v = q.front(); q.pop_front();
            res.components[std::size_t(id)].push_back(v);
            for (int u : adj[std::size_t(v)])
                if (comp[std::size_t(u)] == -1) { comp[std::size_t(u)] = id; q.push_back(u); }
        }
    }

    for (auto& nodes : res.components) {
        std::sort(nodes.begin(), nodes.end());
        std::size_t edges_inside = 0;
        bool high_degree = false;
        for (int v : nodes)
            if (adj[std::size_t(v)].size() >= 3) high_degree = true;
        for (auto& p : res.graph.pairs)
            if (comp[std::size_t(p.a)] == comp[std::size_t(nodes[0])]) ++edges_inside;
        bool multi_pair_qubit = false;
        for (auto& [q, ps] : pairs_at_qubit) {
            if (ps.size() < 2) continue;
            if (comp[std::size_t(res.graph.pairs[ps[0]].a)] == comp[std::size_t(nodes[0])])
                multi_pair_qubit = true;
        }
        if (high_degree || multi_pair_qubit)
            res.classification.push_back(BackboneClass::branched);
        else if (edges_inside >= nodes.size())
            res.classification.push_back(BackboneClass::cyclic);
        else
            res.classification.push_back(BackboneClass::open_chain);
    }
    return res;
}

namespace {

// Is the set of chains (as overlap-graph nodes) a simple open path?
// Returns the path order when it is.
std::optional<std::vector<int>> as_path(const std::vector<int>& nodes,
                                        const std::vector<OverlapGraph::Pair>& pairs) {
    std::set<int> in(nodes.begin(), nodes.end());
    std::map<int, std::vector<int>> adj;
    for (auto& p : pairs) {
        if (!in.count(p.a) || !in.count(p.b)) continue;
        adj[p.a].push_back(p.b);
        adj[p.b].push_back(p.a);
    }
    if (nodes.size() == 1) return std::vector<int>{nodes[0]};
    std::vector<int> ends;
    for (int v : nodes) {
        auto d = adj.count(v) ? adj[v].size() : 0;
        if (d > 2 || d == 0) return std::nullopt;
        if (d == 1) ends.push_back(v);
    }
    if (ends.size() != 2) return std::nullopt;
    std::vector<int> order{std::min(ends[0], ends[1])};
    std::set<int> seen{order[0]};
    while (order.size() < nodes.size()) {
        bool advanced = false;
        for (int u : adj[order.back()])
            if (!seen.count(u)) {
                order.push_back(u);
                seen.insert(u);
                advanced = true;
                break;
            }
        if (!advanced) return std::nullopt;  // disconnected remainder
    }
    return order;
}

}  // namespace

CompatibilityVerdict rule4_endpoint_patch(const std::vector<QubitTriple>& chains,
                                          const BackboneResult& bb) {
    CompatibilityVerdict v;
    for (std::size_t ci = 0; ci < bb.components.size(); ++ci) {
        const auto& nodes = bb.components[ci];
        if (bb.classification[ci] == BackboneClass::open_chain) continue;

        // try to peel one patch chain off the component
        bool saved = false;
        std::optional<int> interior_junction;
        for (int patch : nodes) {
            std::vector<int> rest;
            for (int x : nodes)
                if (x != patch) rest.push_back(x);
            if (rest.empty()) continue;
            auto order = as_path(rest, bb.graph.pairs);
            if (!order) continue;

            // the patch must attach exactly at the junction qubit of an end
            // pair of the remaining backbone
            std::vector<OverlapGraph::Pair> touching;
            for (auto& p : bb.graph.pairs)
                if (p.a == patch || p.b == patch) touching.push_back(p);
            if (touching.empty()) continue;
            std::set<int> junctions;
            for (auto& p : touching) junctions.insert(p.shared_qubit);
            if (junctions.size() != 1) continue;  // patch touches at several qubits
            int jq = *junctions.begin();

            auto end_pair_qubit = [&](int i0, int i1) -> std::optional<int> {
                for (auto& p : bb.graph.pairs) {
                    if ((p.a == (*order)[std::size_t(i0)] && p.b == (*order)[std::size_t(i1)]) ||
                        (p.b == (*order)[std::size_t(i0)] && p.a == (*order)[std::size_t(i1)]))
                        return p.shared_qubit;
                }
                return std::nullopt;
            };
            if (order->size() < 2) continue;
            std::optional<int> left = end_pair_qubit(0, 1);
            std::optional<int> right = end_pair_qubit(int(order->size()) - 2, int(order->size()) - 1);
            if ((left && *left == jq) || (right && *right == jq)) {
                saved = true;
                break;
            }
            interior_junction = jq;  // a patch shape, but away from the ends
        }
        if (!saved && interior_junction) {
            v.accepted = false;
            v.violated_rule = 4;
            v.detail = "extra chain attached away from a backbone end";
            v.evidence_cells = {*interior_junction};
            return v;
        }
        if (!saved) {
            v.accepted = false;
            if (bb.classification[ci] == BackboneClass::cyclic) {
                v.violated_rule = 3;
                v.detail = "overlap backbone closes into a loop";
                v.evidence_cells = nodes;
            } else {
                v.violated_rule = 2;
                v.detail = "overlap backbone branches";
                v.evidence_cells = bb.branch_qubits;
            }
            return v;
        }
    }
    v.accepted = true;
    return v;
}

CompatibilityVerdict check_overlap_family(const std::vector<QubitTriple>& chains) {
    auto r1 = rule1_pairwise(chains);
    if (!r1.empty()) {
        CompatibilityVerdict v;
        v.accepted = false;
        v.violated_rule = 1;
        v.detail = r1.front().duplicate ? "identical supports under two labels"
                                        : "two chains share two data qubits";
        v.evidence_cells = r1.front().shared;
        return v;
    }
    return rule4_endpoint_patch(chains, backbone(chains));
}

VerifyReport verify_overlap_logical(const PlanarComplex& cx, const SignalFamily& family,
                                    const HoleConfig& holes) {
    validate_family(cx, family, /*require_edge_disjoint=*/false);
    return verify_common_logical(cx, family, holes);
}

std::vector<QubitTriple> family_to_triples(const SignalFamily& family) {
    std::vector<QubitTriple> out;
    for (const auto& c : family.chains) {
        auto idx = c.edges.indices();
        out.push_back(QubitTriple(idx.begin(), idx.end()));
    }
    return out;
}

}  // namespace psense
