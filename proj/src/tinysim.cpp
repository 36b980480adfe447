#include "psense/tinysim.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <set>

namespace psense {

PauliString PauliString::identity(int n) {
    PauliString p;
    p.n = n;
    p.x = gf2::BitVec(std::size_t(n));
    p.z = gf2::BitVec(std::size_t(n));
    return p;
}

PauliString PauliString::z_string(int n, const std::vector<int>& qubits) {
    PauliString p = identity(n);
    for (int q : qubits) p.z.flip(std::size_t(q));
    return p;
}

PauliString PauliString::x_string(int n, const std::vector<int>& qubits) {
    PauliString p = identity(n);
    for (int q : qubits) p.x.flip(std::size_t(q));
    return p;
}

bool commutes(const PauliString& a, const PauliString& b) {
    return (gf2::BitVec::dot(a.x, b.z) ^ gf2::BitVec::dot(a.z, b.x)) == 0;
}

PauliString mul(const PauliString& a, const PauliString& b) {
    PauliString p;
    p.n = a.n;
    p.x = a.x ^ b.x;
    p.z = a.z ^ b.z;
    p.phase = (a.phase + b.phase + 2 * gf2::BitVec::dot(a.z, b.x)) % 4;
    return p;
}

std::string to_string(const PauliString& p) {
    static const char* ph[] = {"+", "+i", "-", "-i"};
    std::string s = ph[p.phase];
    for (int q = 0; q < p.n; ++q) {
        bool xb = p.x.get(std::size_t(q)), zb = p.z.get(std::size_t(q));
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

int qubit_cap() {
    if (const char* env = std::getenv("PSENSE_QUBIT_CAP")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 14;
}

// --- dense helpers ---------------------------------------------------------

namespace {

std::uint32_t low_mask(const gf2::BitVec& bits) {
    std::uint32_t m = 0;
    for (int i : bits.indices()) m |= std::uint32_t(1) << i;
    return m;
}

std::complex<double> phase_factor(int phase) {
    switch (phase & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

void apply_pauli(const PauliString& p, const State& in, State& out) {
    const std::size_t dim = in.size();
    out.assign(dim, {0, 0});
    const std::uint32_t xm = low_mask(p.x), zm = low_mask(p.z);
    const std::complex<double> f = phase_factor(p.phase);
    for (std::uint32_t m = 0; m < dim; ++m) {
        double sgn = (std::popcount(m & zm) & 1) ? -1.0 : 1.0;
        out[m ^ xm] += f * sgn * in[m];
    }
}

State apply_pauli(const PauliString& p, const State& in) {
    State out;
    apply_pauli(p, in, out);
    return out;
}

void apply_half_projector(const PauliString& p, int sign, State& v) {
    State pv = apply_pauli(p, v);
    for (std::size_t m = 0; m < v.size(); ++m)
        v[m] = 0.5 * (v[m] + double(sign) * pv[m]);
}

std::complex<double> inner(const State& a, const State& b) {
    std::complex<double> s{0, 0};
    for (std::size_t m = 0; m < a.size(); ++m) s += std::conj(a[m]) * b[m];
    return s;
}

double norm(const State& a) { return std::sqrt(std::real(inner(a, a))); }

void normalize(State& a) {
    double nn = norm(a);
    if (nn < 1e-300) throw std::runtime_error("normalize: zero state");
    for (auto& c : a) c /= nn;
}

State project_code(const CodeSpace& code, State v) {
    for (const auto& g : code.generators) apply_half_projector(g, +1, v);
    return v;
}

std::complex<double> expectation(const PauliString& p, const State& v) {
    return inner(v, apply_pauli(p, v));
}

std::array<double, 3> logical_bloch(const StabilizerTableau& tab, const State& v) {
    PauliString ybar = mul(tab.xbar, tab.zbar);
    ybar.phase = (ybar.phase + 1) % 4;
    return {std::real(expectation(tab.xbar, v)), std::real(expectation(ybar, v)),
            std::real(expectation(tab.zbar, v))};
}

double measure_dense(State& v, const PauliString& q, int outcome) {
    State pv = apply_pauli(q, v);
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = 0.5 * (v[m] + double(outcome) * pv[m]);
    double p = norm(v);
    if (p * p < 1e-18) throw std::runtime_error("measure_dense: outcome has zero probability");
    for (auto& c : v) c /= p;
    return p * p;
}

// --- code construction ------------------------------------------------------

namespace {

// Independence of Pauli generators via symplectic elimination on (x|z) rows.
bool symplectically_independent(const std::vector<PauliString>& gens, int n) {
    std::vector<std::vector<std::uint64_t>> rows;
    const std::size_t words = (std::size_t(2 * n) + 63) / 64;
    for (const auto& g : gens) {
        std::vector<std::uint64_t> r(words, 0);
        for (int i : g.x.indices()) r[std::size_t(i) / 64] |= std::uint64_t(1) << (i % 64);
        for (int i : g.z.indices())
            r[std::size_t(i + n) / 64] |= std::uint64_t(1) << ((i + n) % 64);
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < std::size_t(2 * n) && rank < rows.size(); ++c) {
        std::size_t w = c / 64;
        std::uint64_t bit = std::uint64_t(1) << (c % 64);
        std::size_t p = rank;
        while (p < rows.size() && !(rows[p][w] & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i][w] & bit))
                for (std::size_t j = 0; j < words; ++j) rows[i][j] ^= rows[rank][j];
        ++rank;
    }
    return rank == gens.size();
}

// Shortest bridge between the holes whose interior vertices stay active.
gf2::BitVec reference_bridge(const PlanarComplex& cx, const std::vector<int>& hole0,
                             const std::vector<int>& hole1) {
    std::set<int> h0(hole0.begin(), hole0.end()), h1(hole1.begin(), hole1.end());
    std::vector<int> par(cx.n_vertices(), -2);
    std::deque<int> q;
    for (int v : hole0) { par[std::size_t(v)] = -1; q.push_back(v); }
    int found = -1;
    while (!q.empty() && found < 0) {
        int v = q.front(); q.pop_front();
        for (int u : cx.neighbors(v)) {
            if (par[std::size_t(u)] != -2) continue;
            if (h0.count(u)) continue;
            par[std::size_t(u)] = v;
            if (h1.count(u)) { found = u; break; }
            q.push_back(u);
        }
    }
    if (found < 0) throw std::runtime_error("build_code: holes are not connected by active vertices");
    std::vector<int> path{found};
    for (int v = par[std::size_t(found)]; v != -1; v = par[std::size_t(v)]) {
        path.push_back(v);
        if (par[std::size_t(v)] == -1) break;
    }
    std::reverse(path.begin(), path.end());
    return path_edges(cx, path);
}

}  // namespace

TinyCode build_code(const PlanarComplex& cx, const std::vector<int>& hole0,
                    const std::vector<int>& hole1, std::optional<gf2::BitVec> zbar_chain,
                    std::optional<gf2::BitVec> xbar_cochain) {
    const int n = int(cx.n_edges());
    if (n > qubit_cap())
        throw std::invalid_argument("build_code: " + std::to_string(n) +
                                    " data qubits exceed the cap of " + std::to_string(qubit_cap()));

    std::set<int> off(hole0.begin(), hole0.end());
    off.insert(hole1.begin(), hole1.end());
    if (off.size() != hole0.size() + hole1.size())
        throw std::invalid_argument("build_code: holes overlap");

    TinyCode code;
    code.hole0 = hole0;
    code.hole1 = hole1;
    auto& tab = code.tab;
    tab.n = n;

    // star checks on active vertices; drop the last star when no hole
    // breaks the all-stars dependency
    std::vector<int> active;
    for (std::size_t v = 0; v < cx.n_vertices(); ++v)
        if (!off.count(int(v))) active.push_back(int(v));
    bool unpunctured = hole0.empty() && hole1.empty();
    for (std::size_t i = 0; i + (unpunctured ? 1 : 0) < active.size(); ++i)
        tab.generators.push_back(PauliString::x_string(n, cx.vertex_edges[std::size_t(active[i])]));

    // plaquettes on interior faces, skipping faces buried inside a hole
    std::set<int> buried;
    for (int f : carrier_faces(cx, hole0)) buried.insert(f);
    for (int f : carrier_faces(cx, hole1)) buried.insert(f);
    for (std::size_t f = 0; f + 1 < cx.n_faces(); ++f)
        if (!buried.count(int(f)))
            tab.generators.push_back(PauliString::z_string(n, cx.faces[f]));

    // single-Z checks on hole-interior edges
    for (int e : carrier_edges(cx, hole0)) tab.generators.push_back(PauliString::z_string(n, {e}));
    for (int e : carrier_edges(cx, hole1)) tab.generators.push_back(PauliString::z_string(n, {e}));

    for (std::size_t i = 0; i < tab.generators.size(); ++i)
        for (std::size_t j = i + 1; j < tab.generators.size(); ++j)
            if (!commutes(tab.generators[i], tab.generators[j]))
                throw std::logic_error("build_code: generators " + std::to_string(i) + " and " +
                                       std::to_string(j) + " anticommute");
    if (!symplectically_independent(tab.generators, n))
        throw std::logic_error("build_code: generators are dependent");

    const int k = n - int(tab.generators.size());
    if (k < 0 || k > 1)
        throw std::invalid_argument("build_code: configuration encodes " + std::to_string(k) +
                                    " logical qubits, expected 0 or 1");

    if (k == 1) {
        code.zbar_chain = zbar_chain ? *zbar_chain : reference_bridge(cx, hole0, hole1);
        if (xbar_cochain) {
            code.xbar_cochain = *xbar_cochain;
        } else {
            CellView view = make_view(cx);
            auto loop = simple_cut_loop(view, hole0, hole1);
            if (!loop) throw std::runtime_error("build_code: no separating loop for the X logical");
            code.xbar_cochain = loop->cochain;
        }
        tab.zbar = PauliString::z_string(n, code.zbar_chain.indices());
        tab.xbar = PauliString::x_string(n, code.xbar_cochain.indices());
        tab.has_logical = true;
        for (const auto& g : tab.generators) {
            if (!commutes(g, tab.zbar)) throw std::logic_error("build_code: Z logical hits a check");
            if (!commutes(g, tab.xbar)) throw std::logic_error("build_code: X logical hits a check");
        }
        if (commutes(tab.zbar, tab.xbar))
            throw std::logic_error("build_code: logical X and Z commute");
    }

    // dense code basis: valid Z-basis labels satisfy every Z-type check;
    // the Z-logical parity labels the 2^k classes
    auto& space = code.space;
    space.n = n;
    space.k = k;
    space.generators = tab.generators;
    const std::size_t dim = std::size_t(1) << n;

    std::vector<std::uint32_t> zmasks;
    for (const auto& g : tab.generators)
        if (!g.x.any()) zmasks.push_back(low_mask(g.z));
    std::uint32_t zbar_mask = tab.has_logical ? low_mask(tab.zbar.z) : 0;

    std::set<int> classes_needed;
    for (int c = 0; c < (1 << k); ++c) classes_needed.insert(c);
    for (std::uint32_t m = 0; m < dim && !classes_needed.empty(); ++m) {
        bool valid = true;
        for (auto zm : zmasks)
            if (std::popcount(m & zm) & 1) { valid = false; break; }
        if (!valid) continue;
        int cls = k == 1 ? (std::popcount(m & zbar_mask) & 1) : 0;
        if (!classes_needed.count(cls)) continue;
        State v(dim, {0, 0});
        v[m] = 1.0;
        v = project_code(space, v);
        double nn = norm(v);
        if (nn < 1e-12) throw std::logic_error("build_code: valid label projected to zero");
        for (auto& c : v) c /= nn;
        space.basis.push_back(std::move(v));
        classes_needed.erase(cls);
    }
    if (!classes_needed.empty())
        throw std::logic_error("build_code: could not assemble the code basis");
    // order the basis so index 0 is the +1 eigenvector of the Z logical and
    // the X logical acts with a +1 matrix element
    if (k == 1) {
        if (std::real(expectation(tab.zbar, space.basis[0])) < 0)
            std::swap(space.basis[0], space.basis[1]);
        std::complex<double> c = inner(space.basis[0], apply_pauli(tab.xbar, space.basis[1]));
        if (std::real(c) < 0)
            for (auto& amp : space.basis[1]) amp = -amp;
    }
    return code;
}

LogicalAction logical_action(const PauliString& op, const CodeSpace& code) {
    const std::size_t nb = code.basis.size();
    std::vector<std::vector<std::complex<double>>> M(nb, std::vector<std::complex<double>>(nb));
    for (std::size_t j = 0; j < nb; ++j) {
        State col = apply_pauli(op, code.basis[j]);
        for (std::size_t i = 0; i < nb; ++i) M[i][j] = inner(code.basis[i], col);
    }
    const double tol = 1e-9;
    LogicalAction act;
    if (nb == 1) {
        std::complex<double> a = M[0][0];
        if (std::abs(a) < tol) return act;
        act.in_normalizer = true;
        act.op = 'I';
        act.coeff = a;
        return act;
    }

    // the basis is normalized so the logical X/Y/Z act as the standard
    // Pauli matrices; decompose M against them
    std::vector<std::vector<std::vector<std::complex<double>>>> sig;
    sig.push_back({{1.0, 0.0}, {0.0, 1.0}});                      // I
    sig.push_back({{0.0, 1.0}, {1.0, 0.0}});                      // X
    sig.push_back({{0.0, {0, -1.0}}, {{0, 1.0}, 0.0}});           // Y
    sig.push_back({{1.0, 0.0}, {0.0, -1.0}});                     // Z
    const char names[] = {'I', 'X', 'Y', 'Z'};

    std::array<std::complex<double>, 4> coeff{};
    for (int s = 0; s < 4; ++s) {
        std::complex<double> c{0, 0};
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j) c += std::conj(sig[std::size_t(s)][i][j]) * M[i][j];
        coeff[std::size_t(s)] = c / 2.0;
    }
    int nonzero = -1;
    for (int s = 0; s < 4; ++s) {
        if (std::abs(coeff[std::size_t(s)]) > tol) {
            if (nonzero != -1)
                throw std::logic_error("logical_action: projection is not a single logical Pauli");
            nonzero = s;
        }
    }
    if (nonzero == -1) return act;  // non-normalizer
    act.in_normalizer = true;
    act.op = names[nonzero];
    act.coeff = coeff[std::size_t(nonzero)];
    return act;
}

int measure_update(StabilizerTableau& tab, const PauliString& q, std::uint64_t outcome_seed) {
    if (!q.hermitian()) throw std::invalid_argument("measure_update: operator is not Hermitian");
    int p = -1;
    for (std::size_t i = 0; i < tab.generators.size(); ++i)
        if (!commutes(q, tab.generators[i])) { p = int(i); break; }
    if (p < 0)
        throw std::invalid_argument(
            "measure_update: operator commutes with every generator; use logical_action");

    PauliString pivot = tab.generators[std::size_t(p)];
    for (std::size_t i = 0; i < tab.generators.size(); ++i)
        if (int(i) != p && !commutes(q, tab.generators[i]))
            tab.generators[i] = mul(tab.generators[i], pivot);
    if (tab.has_logical) {
        if (!commutes(q, tab.zbar)) tab.zbar = mul(tab.zbar, pivot);
        if (!commutes(q, tab.xbar)) tab.xbar = mul(tab.xbar, pivot);
    }

    std::uint64_t s = outcome_seed;
    int outcome = (splitmix64(s) & 1) ? 1 : -1;
    PauliString replacement = q;
    if (outcome < 0) replacement.phase = (replacement.phase + 2) % 4;
    tab.generators[std::size_t(p)] = replacement;
    tab.pauli_frame.emplace_back(to_string(q), outcome);
    return outcome;
}

double local_blindness(const TinyCode& code, const std::vector<int>& region_edges) {
    const int n = code.space.n;
    for (int e : region_edges)
        if (e < 0 || e >= n) throw std::invalid_argument("local_blindness: bad edge id");
    const std::size_t r = region_edges.size();
    if (r == 0) return 0.0;

    // logical states: Z/X/Y eigenstates of the encoded qubit
    std::vector<State> states;
    if (code.space.k == 0) {
        states.push_back(code.space.basis[0]);
    } else {
        const State& b0 = code.space.basis[0];
        const State& b1 = code.space.basis[1];
        const double s2 = std::sqrt(0.5);
        auto mix = [&](std::complex<double> a0, std::complex<double> a1) {
            State v(b0.size());
            for (std::size_t m = 0; m < v.size(); ++m) v[m] = a0 * b0[m] + a1 * b1[m];
            return v;
        };
        states.push_back(b0);
        states.push_back(b1);
        states.push_back(mix(s2, s2));
        states.push_back(mix(s2, -s2));
        states.push_back(mix(s2, {0, s2}));
        states.push_back(mix(s2, {0, -s2}));
    }

    double max_dev = 0.0;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < r; ++i) combos *= 4;
    for (std::uint64_t pat = 1; pat < combos; ++pat) {
        PauliString op = PauliString::identity(n);
        std::uint64_t rem = pat;
        for (std::size_t i = 0; i < r; ++i) {
            int kind = int(rem & 3);
            rem >>= 2;
            int e = region_edges[i];
            if (kind == 1) op.x.set(std::size_t(e));
            else if (kind == 2) op.z.set(std::size_t(e));
            else if (kind == 3) {  // Y = i X Z
                op.x.set(std::size_t(e));
                op.z.set(std::size_t(e));
                op.phase = (op.phase + 1) % 4;
            }
        }
        LogicalAction act = logical_action(op, code.space);
        if (act.in_normalizer && act.op != 'I')
            throw UncorrectableRegion("region supports a logical " + std::string(1, act.op) +
                                      " representative");
        std::vector<std::complex<double>> ev;
        for (const auto& st : states) ev.push_back(expectation(op, st));
        for (std::size_t i = 0; i < ev.size(); ++i)
            for (std::size_t j = i + 1; j < ev.size(); ++j)
                max_dev = std::max(max_dev, std::abs(ev[i] - ev[j]));
    }
    return max_dev;
}

}  // namespace psense
