#include "psense/json_io.hpp"

#include <fstream>

namespace psense {

PlanarComplex lattice_from_json(const json& j) {
    if (j.contains("grid")) {
        auto g = j.at("grid");
        if (!g.is_array() || g.size() != 2)
            throw std::invalid_argument("lattice: grid must be [width, height]");
        return build_grid(g[0].get<int>(), g[1].get<int>());
    }
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("lattice: need either grid or vertices+edges");
    std::vector<std::array<double, 2>> verts;
    for (auto& v : j.at("vertices")) verts.push_back({v[0].get<double>(), v[1].get<double>()});
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    std::vector<std::vector<int>> faces;
    if (j.contains("faces"))
        for (auto& f : j.at("faces")) faces.push_back(f.get<std::vector<int>>());
    std::map<int, std::vector<int>> rotation;
    if (j.contains("rotation"))
        for (auto& [k, v] : j.at("rotation").items())
            rotation[std::stoi(k)] = v.get<std::vector<int>>();
    return build_extended(std::move(verts), std::move(edges), std::move(faces), rotation);
}

SignalFamily family_from_json(const json& j, const PlanarComplex& cx) {
    if (!j.is_array()) throw std::invalid_argument("family: expected a JSON array of chains");
    SignalFamily f;
    for (auto& c : j) {
        SignalChain ch;
        ch.edges = gf2::BitVec::from_indices(cx.n_edges(), c.at("edges").get<std::vector<int>>());
        if (c.contains("endpoints")) {
            ch.u = c.at("endpoints")[0].get<int>();
            ch.v = c.at("endpoints")[1].get<int>();
        } else {
            auto [u, v] = chain_endpoints(cx, ch.edges);
            ch.u = u;
            ch.v = v;
        }
        ch.lambda = c.value("lambda", 1.0);
        ch.label = c.value("label", "c" + std::to_string(f.chains.size() + 1));
        f.chains.push_back(std::move(ch));
    }
    return f;
}

json family_to_json(const SignalFamily& f) {
    json out = json::array();
    for (const auto& c : f.chains)
        out.push_back({{"edges", c.edges.indices()},
                       {"endpoints", {c.u, c.v}},
                       {"lambda", c.lambda},
                       {"label", c.label}});
    return out;
}

json witness_to_json(const WitnessLoop& w) {
    return {{"edges", w.cochain.indices()},
            {"dual_cycles", w.dual_cycles},
            {"simple", w.simple()},
            {"side1", w.side1.indices()}};
}

json holes_to_json(const HoleConfig& h) {
    return {{"R0", h.r0},       {"R1", h.r1},
            {"w1", h.w1.cochain.indices()}, {"w2", h.w2.cochain.indices()},
            {"omega0", h.omega0}, {"omega1", h.omega1},
            {"rough_boundary0", h.rough_boundary0},
            {"rough_boundary1", h.rough_boundary1}};
}

HoleConfig holes_from_json(const json& j, const PlanarComplex& cx) {
    HoleConfig h;
    h.r0 = j.at("R0").get<std::vector<int>>();
    h.r1 = j.at("R1").get<std::vector<int>>();
    h.omega0 = j.value("omega0", h.r0);
    h.omega1 = j.value("omega1", h.r1);
    CellView view = make_view(cx);
    auto load_loop = [&](const char* key, WitnessLoop& into) {
        if (!j.contains(key)) return;
        auto w = gf2::BitVec::from_indices(cx.n_edges(), j.at(key).get<std::vector<int>>());
        auto traced = decompose_witness(view, w);
        if (!traced)
            throw std::invalid_argument(std::string("holes: ") + key +
                                        " is not a closed dual cochain");
        into = *traced;
    };
    load_loop("w1", h.w1);
    load_loop("w2", h.w2);
    h.rough_boundary0 = rough_boundary(cx, h.r0, h.r1);
    h.rough_boundary1 = rough_boundary(cx, h.r1, h.r0);
    return h;
}

json schedule_to_json(const Schedule& s) {
    json segs = json::array();
    for (const auto& seg : s.segments) {
        json act = json::array();
        for (auto [chain, sign] : seg.active) act.push_back({{"chain", chain}, {"sign", sign}});
        segs.push_back({{"dur", rat_to_string(seg.duration)}, {"active", act}});
    }
    json moves = json::array();
    for (const auto& steps : s.hole_moves) {
        json lst = json::array();
        for (const auto& st : steps) lst.push_back({{"kind", st.kind}, {"cell", st.cell}});
        moves.push_back(lst);
    }
    return {{"mode", s.mode == Schedule::Mode::parallel ? "parallel" : "sequential"},
            {"t", rat_to_string(s.t)},
            {"T", rat_to_string(s.dwell)},
            {"segments", segs},
            {"hole_moves", moves}};
}

json ramsey_to_json(const RamseyResult& r) {
    json out = {{"q_true", r.q_true}, {"t", r.t},       {"nu", r.nu},
                {"batches", r.batches}, {"seed", r.seed}, {"estimates", r.estimates},
                {"mean_estimate", r.mean_estimate},       {"fisher", r.fisher},
                {"fringe_warning", r.fringe_warning}};
    if (r.variance) out["variance"] = *r.variance;
    return out;
}

json verify_report_to_json(const VerifyReport& r) {
    json chains = json::array();
    for (const auto& c : r.chains) {
        json jc = {{"bridge", c.bridge},
                   {"class_ok", c.class_ok},
                   {"stabilizer_decomposition", c.stabilizer_faces}};
        if (!c.error.empty()) jc["error"] = c.error;
        chains.push_back(jc);
    }
    return {{"ok", r.ok},
            {"reference_chain", r.reference_chain},
            {"reference_nontrivial", r.reference_nontrivial},
            {"chains", chains}};
}

json obstruction_to_json(const Obstruction& ob) {
    json out = {{"kind", to_string(ob.kind)}, {"stage", ob.stage},
                {"evidence_cells", ob.evidence_cells}};
    if (!ob.odd_cycle.empty()) out["odd_cycle"] = ob.odd_cycle;
    if (!ob.blocked_vertices.empty()) out["blocked_vertices"] = ob.blocked_vertices;
    if (!ob.components.empty()) out["components"] = ob.components;
    return out;
}

json verdict_to_json(const CompatibilityVerdict& v) {
    json out = {{"accepted", v.accepted}, {"evidence", v.evidence_cells}};
    if (v.violated_rule) out["violated_rule"] = *v.violated_rule;
    if (!v.detail.empty()) out["detail"] = v.detail;
    return out;
}

std::vector<Rat> weights_from_string(const std::string& spec) {
    std::vector<Rat> out;
    std::string cur;
    for (char ch : spec + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(rat_from_string(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);  // throws with byte position on malformed input
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace psense
