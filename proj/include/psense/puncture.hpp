#ifndef PSENSE_PUNCTURE_HPP
#define PSENSE_PUNCTURE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psense/witness.hpp"

namespace psense {

// Two rough holes with the witnesses and witness-guided regions that
// produced them. Holes are the star checks turned off; every prescribed
// chain must end once on each rough boundary with its interior active.
struct HoleConfig {
    WitnessLoop w1, w2;
    std::vector<int> omega0, omega1;  // witness-guided vertex regions
    std::vector<int> r0, r1;          // actual rough holes
    std::vector<int> rough_boundary0, rough_boundary1;
};

enum class ObstructionKind { non_bipartite, not_cleanly_openable, disconnected_candidate };

struct Obstruction {
    ObstructionKind kind;
    std::string stage;                        // which construction step failed
    std::vector<int> odd_cycle;               // chain ids (non_bipartite)
    std::vector<int> blocked_vertices;        // excluded non-terminal vertices in the way
    std::vector<std::vector<int>> components; // split candidate region
    std::vector<int> evidence_cells;          // render-ready vertex list
};

const char* to_string(ObstructionKind k);

// Side of the witness containing the hinted endpoints; throws when the
// hinted endpoints straddle the loop.
std::vector<int> guided_region(const PlanarComplex& cx, const WitnessLoop& w,
                               const std::vector<int>& side_hint_endpoints);

// Minimal connected clean hole inside omega containing the assigned
// endpoints: breadth-first closure through vertices that are not
// non-terminal on any prescribed chain.
std::variant<std::vector<int>, Obstruction> clean_open(const PlanarComplex& cx,
                                                       const std::vector<int>& omega,
                                                       const std::vector<int>& assigned_endpoints,
                                                       const SignalFamily& family);

// Full two-stage synthesis: first witness, first hole, quotient, second
// witness, second hole. Obstructions are tagged with the failing stage.
std::variant<HoleConfig, Obstruction> synthesize_holes(const PlanarComplex& cx,
                                                       const SignalFamily& family);

// Simple dual loop separating the two holes: boundary of a grown
// neighborhood of R0 that avoids R1. Throws when no such loop fits.
WitnessLoop separator_witness(const PlanarComplex& cx, const HoleConfig& holes);

// Invariant checks shared by synthesis and deserialized configs; throws on
// violation.
void validate_holes(const PlanarComplex& cx, const SignalFamily& family, const HoleConfig& holes);

// Hole vertices adjacent to the active region.
std::vector<int> rough_boundary(const PlanarComplex& cx, const std::vector<int>& hole,
                                const std::vector<int>& other_hole);

}  // namespace psense

#endif
