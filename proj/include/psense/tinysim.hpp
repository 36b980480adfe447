#ifndef PSENSE_TINYSIM_HPP
#define PSENSE_TINYSIM_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psense/complex.hpp"
#include "psense/rng.hpp"
#include "psense/witness.hpp"

namespace psense {

// n-qubit Pauli operator i^phase * X^x Z^z with phase mod 4.
struct PauliString {
    int n = 0;
    gf2::BitVec x, z;
    int phase = 0;

    static PauliString identity(int n);
    static PauliString z_string(int n, const std::vector<int>& qubits);
    static PauliString x_string(int n, const std::vector<int>& qubits);

    bool is_identity() const { return !x.any() && !z.any() && phase == 0; }
    bool hermitian() const { return phase % 2 == 0; }
};

bool commutes(const PauliString& a, const PauliString& b);
PauliString mul(const PauliString& a, const PauliString& b);

std::string to_string(const PauliString& p);

// Stabilizer generators plus tracked logical representatives and the
// classical record of measurement outcomes.
struct StabilizerTableau {
    int n = 0;
    std::vector<PauliString> generators;
    bool has_logical = false;
    PauliString xbar, zbar;
    std::vector<std::pair<std::string, int>> pauli_frame;  // (measured op, outcome)
};

using State = std::vector<std::complex<double>>;

// Dense code-space data: orthonormal basis of the joint +1 eigenspace.
struct CodeSpace {
    int n = 0;
    int k = 0;  // logical qubits
    std::vector<PauliString> generators;
    std::vector<State> basis;  // 2^k orthonormal vectors
};

struct TinyCode {
    StabilizerTableau tab;
    CodeSpace space;
    std::vector<int> hole0, hole1;
    gf2::BitVec zbar_chain;    // reference bridge (edge set)
    gf2::BitVec xbar_cochain;  // separator loop (edge set)
};

// Cap on the dense simulation size; PSENSE_QUBIT_CAP overrides.
int qubit_cap();

// Code on the patch with star checks turned off inside the two holes.
// Plaquettes stay on all interior faces; edges interior to a hole carry
// single-Z checks. With two disk-like holes exactly one logical qubit
// remains and Z = Z(reference bridge), X = X(separator loop).
TinyCode build_code(const PlanarComplex& cx, const std::vector<int>& hole0,
                    const std::vector<int>& hole1,
                    std::optional<gf2::BitVec> zbar_chain = std::nullopt,
                    std::optional<gf2::BitVec> xbar_cochain = std::nullopt);

struct LogicalAction {
    bool in_normalizer = false;
    char op = 'I';                      // 'I' (stabilizer), 'X', 'Y' or 'Z'
    std::complex<double> coeff{0, 0};   // scalar in front of the logical op
};

// Dense classification of P_C op P_C against the logical basis matrices.
LogicalAction logical_action(const PauliString& op, const CodeSpace& code);

// Measurement of an operator that anticommutes with at least one
// generator: basis change, logical-representative fixup, replacement by
// the signed outcome. Returns the outcome (+1/-1), drawn from the seed.
int measure_update(StabilizerTableau& tab, const PauliString& q, std::uint64_t outcome_seed);

struct UncorrectableRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Max over Pauli operators on the region and over logical states of the
// expectation-value spread. Throws UncorrectableRegion when the region
// supports a full logical representative.
double local_blindness(const TinyCode& code, const std::vector<int>& region_edges);

// --- dense helpers -------------------------------------------------------

void apply_pauli(const PauliString& p, const State& in, State& out);
State apply_pauli(const PauliString& p, const State& in);
// v <- (v + sign * P v) / 2, unnormalized.
void apply_half_projector(const PauliString& p, int sign, State& v);
std::complex<double> inner(const State& a, const State& b);
double norm(const State& a);
void normalize(State& a);
// Projection onto the code space of `code` (product of half-projectors).
State project_code(const CodeSpace& code, State v);
std::complex<double> expectation(const PauliString& p, const State& v);
// Bloch vector of an encoded state w.r.t. the tableau's representatives.
std::array<double, 3> logical_bloch(const StabilizerTableau& tab, const State& v);
// Dense measurement matching a tableau outcome; returns the outcome
// probability and leaves the normalized post-measurement state in v.
double measure_dense(State& v, const PauliString& q, int outcome);

}  // namespace psense

#endif
