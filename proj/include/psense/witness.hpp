#ifndef PSENSE_WITNESS_HPP
#define PSENSE_WITNESS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "psense/complex.hpp"

namespace psense {

// One prescribed signal: a simple primal path of data-qubit edges with an
// unknown coupling strength attached.
struct SignalChain {
    gf2::BitVec edges;
    int u = -1, v = -1;       // endpoints
    double lambda = 1.0;      // coupling (angular frequency)
    std::string label;
};

struct SignalFamily {
    std::vector<SignalChain> chains;
};

// Degree-1 vertices of an edge chain (throws unless there are exactly two).
std::pair<int, int> chain_endpoints(const PlanarComplex& cx, const gf2::BitVec& edges);
// Pass-through vertices (chain degree 2).
std::vector<int> chain_interior_vertices(const PlanarComplex& cx, const gf2::BitVec& edges);

// Checks every chain is a simple path with matching endpoint metadata and,
// when required, pairwise edge-disjoint supports.
void validate_family(const PlanarComplex& cx, const SignalFamily& family,
                     bool require_edge_disjoint = true);

// Abstract multigraph with one edge per chain between its endpoints.
struct EndpointGraph {
    std::vector<int> nodes;                  // distinct endpoint vertices, ascending
    std::vector<std::pair<int, int>> eta;    // per chain
};

EndpointGraph endpoint_graph(const SignalFamily& family);

struct TwoColoring {
    std::map<int, int> color;  // endpoint vertex -> 0/1
};
struct OddCycle {
    std::vector<int> chains;  // chain ids forming an odd cycle
};

std::variant<TwoColoring, OddCycle> bipartite_certificate(const EndpointGraph& g);

// Odd-cardinality subset A with D(xor of c_a over A) = 0, if one exists.
std::optional<std::vector<int>> odd_closed_dependency(const PlanarComplex& cx,
                                                      const SignalFamily& family);

// Closed loop on the dual lattice. The cochain records crossed edges;
// dual_cycles is its deterministic decomposition into closed dual walks
// (one simple cycle in the clean case); side1 is one of the two vertex
// sides cut out by the loop (potential with t(0) = 0, vertices colored 1).
//
// A loop is `simple` when the decomposition is a single cycle visiting
// each face at most once. Constructive synthesis produces simple loops;
// on tight lattices only the algebraic representative may exist, whose
// support can revisit faces.
struct WitnessLoop {
    gf2::BitVec cochain;
    std::vector<std::vector<int>> dual_cycles;
    gf2::BitVec side1;

    bool simple() const;
    const std::vector<int>& dual_trace() const;  // first cycle
};

// Decomposes a closed cochain into dual cycles (ports paired in face-cycle
// order); nullopt when the support is empty or the cochain is not closed.
std::optional<WitnessLoop> decompose_witness(const CellView& view, const gf2::BitVec& cochain);

// Strict variant: additionally requires one simple cycle.
std::optional<WitnessLoop> trace_witness(const CellView& view, const gf2::BitVec& cochain);

bool verify_odd_witness(const CellView& view, const WitnessLoop& w,
                        const std::vector<gf2::BitVec>& chains);

struct WitnessSynthesisError : std::runtime_error {
    std::vector<int> odd_cycle;  // nonempty when the family is not bipartite
    explicit WitnessSynthesisError(const std::string& msg, std::vector<int> cyc = {})
        : std::runtime_error(msg), odd_cycle(std::move(cyc)) {}
};

// Grows a connected vertex set from `seeds` (avoiding `forbidden`, routing
// around `prefer_avoid` when possible) until its cut is one simple dual
// cycle; the seeds end up strictly inside, the forbidden set outside.
std::optional<WitnessLoop> simple_cut_loop(const CellView& view,
                                           const std::vector<int>& seeds,
                                           const std::vector<int>& forbidden,
                                           const std::vector<int>& prefer_avoid = {});

// Generic synthesis on a view: chains given as edge cochains with endpoint
// pairs. The loop interior grows over the endpoint class of grow_vertex
// (default: the lowest endpoint id). Throws WitnessSynthesisError carrying
// the odd cycle when no odd witness can exist.
WitnessLoop synthesize_witness_on(const CellView& view,
                                  const std::vector<gf2::BitVec>& chains,
                                  const std::vector<std::pair<int, int>>& endpoints,
                                  const std::vector<int>& prefer_avoid = {},
                                  std::optional<int> grow_vertex = std::nullopt);

WitnessLoop synthesize_simple_witness(const PlanarComplex& cx, const SignalFamily& family);

// Enumeration bound for the exhaustive fallback: dimension of the closed
// cochain space that can still be walked exhaustively.
inline constexpr std::size_t kWitnessEnumerationLimit = 30;

}  // namespace psense

#endif
