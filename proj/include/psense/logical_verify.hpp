#ifndef PSENSE_LOGICAL_VERIFY_HPP
#define PSENSE_LOGICAL_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "psense/puncture.hpp"

namespace psense {

// Quotient with every hole collapsed to a marked vertex; A is the marked
// set (zero, one or two vertices).
struct RelativePair {
    QuotientComplex quotient;
    std::vector<int> marked;  // quotient ids of the collapsed holes
};

RelativePair make_relative_pair(const PlanarComplex& cx,
                                const std::vector<std::vector<int>>& holes);

// dim of relative 1-cycles modulo plaquette boundaries:
// (|E| - rank of D restricted to unmarked vertices) - rank(B).
int relative_h1_dim(const RelativePair& pair);

struct IllegalChain : std::runtime_error {
    int vertex;  // active endpoint, or swallowed pass-through vertex
    explicit IllegalChain(const std::string& what, int v)
        : std::runtime_error(what), vertex(v) {}
};

// True when the projected chain runs from one marked vertex to the other.
// Throws IllegalChain when the projected boundary leaves the marked set;
// with require_clean_simple_path also when a pass-through vertex of the
// chain sits inside a hole.
bool is_bridge(const PlanarComplex& cx, const RelativePair& pair, const gf2::BitVec& chain,
               bool require_clean_simple_path = false);

// Stabilizer equivalence: the projected difference lies in im(B).
bool same_logical_class(const RelativePair& pair, const gf2::BitVec& c1, const gf2::BitVec& c2);

struct ChainReport {
    bool bridge = false;
    bool class_ok = false;
    std::vector<int> stabilizer_faces;  // quotient face ids of the solved 2-chain
    std::string error;
};

struct VerifyReport {
    bool ok = false;
    int reference_chain = 0;
    bool reference_nontrivial = false;
    std::vector<ChainReport> chains;
};

// Common-logical-action check: reference = first chain; asserts it is a
// nontrivial bridge and every chain is stabilizer-equivalent to it.
VerifyReport verify_common_logical(const PlanarComplex& cx, const SignalFamily& family,
                                   const HoleConfig& holes);

}  // namespace psense

#endif
