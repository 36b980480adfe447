#ifndef PSENSE_OVERLAP_HPP
#define PSENSE_OVERLAP_HPP

#include <optional>
#include <string>
#include <vector>

#include "psense/logical_verify.hpp"

namespace psense {

// Chains here are three-qubit Z supports given as sorted qubit-id triples.
using QubitTriple = std::vector<int>;

struct Rule1Violation {
    int a = -1, b = -1;
    std::vector<int> shared;
    bool duplicate = false;  // identical support under two labels
};

// Pairs sharing two qubits (forbidden) or all three (duplicates).
std::vector<Rule1Violation> rule1_pairwise(const std::vector<QubitTriple>& chains);

// Chains as nodes; an edge per pair sharing exactly one qubit.
struct OverlapGraph {
    int n = 0;
    struct Pair {
        int a, b, shared_qubit;
    };
    std::vector<Pair> pairs;
};

enum class BackboneClass { open_chain, branched, cyclic };
const char* to_string(BackboneClass c);

struct BackboneResult {
    OverlapGraph graph;
    std::vector<std::vector<int>> components;   // chain ids per component
    std::vector<BackboneClass> classification;  // per component
    std::vector<int> branch_qubits;             // qubits where the pattern diverges
};

// Requires rule 1 to pass. A component is an open chain when it is a
// simple path in the overlap graph; it branches when a node has degree
// three or a qubit is shared by several overlap pairs; otherwise a cycle
// marks it cyclic.
BackboneResult backbone(const std::vector<QubitTriple>& chains);

struct CompatibilityVerdict {
    bool accepted = false;
    std::optional<int> violated_rule;
    std::string detail;
    std::vector<int> evidence_cells;  // offending qubits or chain ids
};

// Accepts open backbones, plus at most one extra chain per component
// attached at the junction qubit of an end pair and not extendable.
CompatibilityVerdict rule4_endpoint_patch(const std::vector<QubitTriple>& chains,
                                          const BackboneResult& bb);

// Full rule pipeline producing one verdict.
CompatibilityVerdict check_overlap_family(const std::vector<QubitTriple>& chains);

// Placed-instance cross-validation: all chains must share one logical
// class on the punctured patch.
VerifyReport verify_overlap_logical(const PlanarComplex& cx, const SignalFamily& family,
                                    const HoleConfig& holes);

std::vector<QubitTriple> family_to_triples(const SignalFamily& family);

}  // namespace psense

#endif
