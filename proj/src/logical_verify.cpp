#include "psense/logical_verify.hpp"

#include <algorithm>
#include <set>

namespace psense {

RelativePair make_relative_pair(const PlanarComplex& cx,
                                const std::vector<std::vector<int>>& holes) {
    RelativePair p;
    p.quotient = collapse(cx, holes);
    p.marked = p.quotient.marked_vertices;
    return p;
}

int relative_h1_dim(const RelativePair& pair) {
    const auto& q = pair.quotient;
    std::vector<bool> keep(q.n_vertices, true);
    for (int v : pair.marked) keep[std::size_t(v)] = false;
    auto restricted = q.D.keep_rows(keep);
    std::size_t z1 = q.n_edges() - restricted.rank();
    std::size_t b1 = q.B.rank();
    return int(z1) - int(b1);
}

bool is_bridge(const PlanarComplex& cx, const RelativePair& pair, const gf2::BitVec& chain,
               bool require_clean_simple_path) {
    const auto& q = pair.quotient;
    if (require_clean_simple_path) {
        for (int v : chain_interior_vertices(cx, chain)) {
            for (std::size_t r = 0; r < q.collapsed_regions.size(); ++r)
                if (std::find(q.collapsed_regions[r].begin(), q.collapsed_regions[r].end(), v) !=
                    q.collapsed_regions[r].end())
                    throw IllegalChain("is_bridge: pass-through vertex " + std::to_string(v) +
                                       " of the chain was swallowed by a hole", v);
        }
    }
    gf2::BitVec proj = q.project_chain1(chain);
    gf2::BitVec bnd = q.D.mul(proj);
    std::set<int> marked(pair.marked.begin(), pair.marked.end());
    for (int v : bnd.indices())
        if (!marked.count(v))
            throw IllegalChain("is_bridge: chain ends at active vertex " + std::to_string(v), v);
    if (pair.marked.size() != 2) return false;
    gf2::BitVec want(q.n_vertices);
    want.set(std::size_t(pair.marked[0]));
    want.set(std::size_t(pair.marked[1]));
    return bnd == want;
}

bool same_logical_class(const RelativePair& pair, const gf2::BitVec& c1, const gf2::BitVec& c2) {
    const auto& q = pair.quotient;
    gf2::BitVec diff = q.project_chain1(c1) ^ q.project_chain1(c2);
    return q.B.in_image(diff);
}

VerifyReport verify_common_logical(const PlanarComplex& cx, const SignalFamily& family,
                                   const HoleConfig& holes) {
    validate_family(cx, family, /*require_edge_disjoint=*/false);
    VerifyReport rep;
    rep.reference_chain = 0;
    RelativePair pair = make_relative_pair(cx, {holes.r0, holes.r1});
    const auto& q = pair.quotient;

    const gf2::BitVec& ref = family.chains[0].edges;
    gf2::BitVec ref_proj = q.project_chain1(ref);
    bool ref_ok = true;
    try {
        if (!is_bridge(cx, pair, ref, true)) ref_ok = false;
    } catch (const IllegalChain&) {
        ref_ok = false;
    }
    rep.reference_nontrivial = ref_ok && !q.B.in_image(ref_proj);

    rep.ok = rep.reference_nontrivial;
    for (std::size_t a = 0; a < family.chains.size(); ++a) {
        ChainReport cr;
        const auto& c = family.chains[a].edges;
        try {
            cr.bridge = is_bridge(cx, pair, c, true);
            if (!cr.bridge) {
                cr.error = "not a bridge between the two holes";
            } else {
                gf2::BitVec diff = q.project_chain1(c) ^ ref_proj;
                auto s = q.B.solve(diff);
                if (s) {
                    cr.class_ok = true;
                    cr.stabilizer_faces = s->indices();
                } else {
                    cr.error = "not stabilizer-equivalent to the reference chain";
                }
            }
        } catch (const IllegalChain& err) {
            cr.error = err.what();
        }
        if (!cr.bridge || !cr.class_ok) rep.ok = false;
        rep.chains.push_back(std::move(cr));
    }
    return rep;
}

}  // namespace psense
