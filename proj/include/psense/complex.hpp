#ifndef PSENSE_COMPLEX_HPP
#define PSENSE_COMPLEX_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psense/gf2.hpp"

namespace psense {

// Planar cell complex extended to a sphere by an outer face. Vertices carry
// star checks, edges carry data qubits, interior faces carry plaquettes.
struct PlanarComplex {
    std::vector<std::array<double, 2>> coords;    // per-vertex embedding
    std::vector<std::pair<int, int>> edges;       // (u, v)
    std::vector<std::vector<int>> faces;          // edge-id cycles; last one is the outer face
    int outer_face = -1;

    gf2::BitMatrix D;  // |V| x |E| edge-vertex incidence
    gf2::BitMatrix B;  // |E| x |F| face-edge incidence

    std::vector<std::vector<int>> vertex_edges;   // incident edge ids, ascending
    std::vector<std::vector<int>> edge_faces;     // exactly two face ids per edge

    std::optional<std::pair<int, int>> grid;      // set when built from a w x h plaquette grid

    std::size_t n_vertices() const { return coords.size(); }
    std::size_t n_edges() const { return edges.size(); }
    std::size_t n_faces() const { return faces.size(); }
    std::size_t n_interior_faces() const { return faces.size() - 1; }

    int other_endpoint(int edge, int v) const {
        auto [a, b] = edges[std::size_t(edge)];
        return a == v ? b : a;
    }
    // Edge id joining u and v, or -1.
    int edge_between(int u, int v) const;
    std::vector<int> neighbors(int v) const;
};

// Axis-aligned grid of w x h plaquettes with integer coordinates.
// Vertex (x, y) has id y*(w+1)+x.
PlanarComplex build_grid(int w, int h);

// General construction from explicit cells. Interior faces may be given
// directly or traced from a rotation system (counterclockwise incident edge
// order per vertex). The outer face is derived and appended.
PlanarComplex build_extended(std::vector<std::array<double, 2>> vertices,
                             std::vector<std::pair<int, int>> edges,
                             std::vector<std::vector<int>> interior_faces,
                             const std::map<int, std::vector<int>>& rotation = {});

struct Chain {
    int grade = 1;       // 0, 1 or 2
    gf2::BitVec coeffs;  // over vertices, edges or faces
};

Chain make_chain(const PlanarComplex& cx, int grade, const std::vector<int>& cells);

// Edge chain through consecutive vertices; throws when two consecutive
// vertices are not adjacent.
gf2::BitVec path_edges(const PlanarComplex& cx, const std::vector<int>& vertex_path);

// D c for a grade-1 chain; for a simple path this is the endpoint pair.
Chain boundary(const PlanarComplex& cx, const Chain& c);

// <w, c> = parity of common support of an edge cochain and an edge chain.
int pairing(const gf2::BitVec& cochain, const gf2::BitVec& chain);

struct NotACocycle : std::runtime_error {
    int face;
    explicit NotACocycle(int f)
        : std::runtime_error("cochain is not closed at face " + std::to_string(f)), face(f) {}
};

// Vertex coloring t with w = D^T t and t(v0) = 0 at the lowest vertex id,
// built by a breadth-first path sum. Throws NotACocycle when B^T w != 0.
gf2::BitVec potential_from_cocycle(const PlanarComplex& cx, const gf2::BitVec& w,
                                   int reference_vertex = 0);

// Quotient of the base complex with one or more disk-like vertex regions each
// collapsed to a single marked vertex.
struct QuotientComplex {
    const PlanarComplex* base = nullptr;
    std::vector<std::vector<int>> collapsed_regions;
    std::vector<int> marked_vertices;  // quotient ids, one per region

    std::size_t n_vertices = 0;
    std::vector<int> vertex_map;  // base vertex -> quotient vertex
    std::vector<int> edge_map;    // base edge -> quotient edge or -1
    std::vector<int> face_map;    // base face -> quotient face or -1
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_lift;   // quotient edge -> base edge

    gf2::BitMatrix D;  // quotient incidence
    gf2::BitMatrix B;

    std::size_t n_edges() const { return edges.size(); }
    std::size_t n_faces() const { return face_map.empty() ? 0 : face_count_; }

    // Projection of a base edge chain: collapsed edges are dropped.
    gf2::BitVec project_chain1(const gf2::BitVec& base_chain) const;
    // Lift of a quotient edge chain back to surviving base edges.
    gf2::BitVec lift_chain1(const gf2::BitVec& quotient_chain) const;

    std::size_t face_count_ = 0;
};

// Uniform combinatorial view over a base or quotient complex, used by the
// witness machinery. Face cycles keep the base ordering (with collapsed
// edges filtered out for quotients).
struct CellView {
    std::size_t nv = 0, ne = 0, nf = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> vertex_edges;
    std::vector<std::array<int, 2>> edge_faces;
    std::vector<std::vector<int>> face_cycles;
    const gf2::BitMatrix* D = nullptr;
    const gf2::BitMatrix* B = nullptr;

    int other(int e, int v) const {
        auto [a, b] = edges[std::size_t(e)];
        return a == v ? b : a;
    }
};

CellView make_view(const PlanarComplex& cx);
CellView make_view(const QuotientComplex& q);

// Vertex two-coloring t with w = D^T t, t(0) = 0, for a closed cochain on
// any view (BFS path sum).
gf2::BitVec view_potential(const CellView& view, const gf2::BitVec& w);

// Connectivity of a vertex set in the base complex.
bool region_connected(const PlanarComplex& cx, const std::vector<int>& region);

// Disk-likeness: the closed carrier (region vertices, edges inside, faces
// whose corners all lie inside) is connected with Euler characteristic 1.
bool region_disklike(const PlanarComplex& cx, const std::vector<int>& region);

// Edges with both endpoints in the region.
std::vector<int> carrier_edges(const PlanarComplex& cx, const std::vector<int>& region);
// Faces all of whose boundary edges lie in the carrier.
std::vector<int> carrier_faces(const PlanarComplex& cx, const std::vector<int>& region);

QuotientComplex collapse(const PlanarComplex& cx, const std::vector<std::vector<int>>& regions);

}  // namespace psense

#endif
