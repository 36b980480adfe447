// psense: punctured surface-code sensing toolkit, command-line front end.
//
// Subcommands: check, synthesize, verify, schedule, simulate, overlap, run.
// Exit codes: 0 ok, 1 input error, 2 no odd witness, 3 clean-open
// obstruction, 4 logical verification failure, 5 schedule error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "psense/json_io.hpp"
#include "psense/rng.hpp"
#include "psense/svg.hpp"
#include "psense/tinysim.hpp"

namespace fs = std::filesystem;
using namespace psense;

namespace {

constexpr const char* kVersion = "psense 0.1.0";

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Manifest {
    json j;
    std::string hash;
};

Manifest make_manifest(const std::string& subcommand, const std::vector<std::string>& inputs,
                       std::uint64_t seed, const json& overrides) {
    Manifest m;
    m.j = {{"tool", kVersion},
           {"subcommand", subcommand},
           {"inputs", inputs},
           {"seed", seed},
           {"overrides", overrides}};
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(m.j.dump())));
    m.hash = buf;
    m.j["hash"] = m.hash;
    return m;
}

void emit(const json& report, const std::string& out_dir, const std::string& name) {
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_json_file((fs::path(out_dir) / name).string(), report);
    }
    std::cout << report.dump(2) << "\n";
}

void emit_svg(const std::string& path, const std::string& body) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << body;
}

int seed_derived(std::uint64_t seed, const char* component) {
    return int(derive_seed(seed, fnv1a(component)) & 0x7fffffff);
}

struct CommonArgs {
    std::string lattice_path, family_path, out_dir, svg_path;
    std::uint64_t seed = 0;
    bool hole_min = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"punctured surface-code sensing toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonArgs common;
    std::string weights_spec = "1";
    std::string t_spec = "1";
    long long nu = 100000;
    int batches = 200;
    std::string mode = "parallel";
    double q_direct = M_PI / 2;
    double t_direct = 1.0;
    std::string holes_path;

    auto add_common = [&](CLI::App* cmd, bool need_family = true) {
        cmd->add_option("--lattice", common.lattice_path, "lattice JSON file")->required();
        if (need_family)
            cmd->add_option("--family", common.family_path, "signal family JSON file")->required();
        cmd->add_option("--out-dir", common.out_dir, "directory for output files");
        cmd->add_option("--svg", common.svg_path, "SVG rendering output path");
        cmd->add_option("--seed", common.seed, "base seed; subcomponents derive their own");
        cmd->add_flag("--hole-min", common.hole_min, "shorten witness loops when possible");
    };

    auto* c_check = app.add_subcommand("check", "odd-witness criterion with certificate");
    add_common(c_check);

    auto* c_synth = app.add_subcommand("synthesize", "construct the two rough holes");
    add_common(c_synth);

    auto* c_verify = app.add_subcommand("verify", "common-logical-action verification");
    add_common(c_verify);
    c_verify->add_option("--holes", holes_path, "hole configuration JSON (default: synthesize)");

    auto* c_sched = app.add_subcommand("schedule", "compile a sensing schedule");
    c_sched->add_option("--weights", weights_spec, "comma-separated rational weights")->required();
    c_sched->add_option("--t", t_spec, "effective logical time (rational)");
    c_sched->add_option("--mode", mode, "parallel|seq");
    c_sched->add_option("--out-dir", common.out_dir, "directory for output files");
    c_sched->add_option("--seed", common.seed, "base seed");

    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo Ramsey estimation");
    c_sim->add_option("--q", q_direct, "true value of the normalized target");
    c_sim->add_option("--t", t_direct, "effective logical time");
    c_sim->add_option("--nu", nu, "repetitions per estimate");
    c_sim->add_option("--batches", batches, "independent batches");
    c_sim->add_option("--seed", common.seed, "base seed");
    c_sim->add_option("--out-dir", common.out_dir, "directory for output files");

    auto* c_overlap = app.add_subcommand("overlap", "three-body overlap design rules");
    c_overlap->add_option("--family", common.family_path, "family JSON (abstract qubit triples)")
        ->required();
    c_overlap->add_option("--lattice", common.lattice_path, "lattice JSON for placed checks");
    c_overlap->add_option("--holes", holes_path, "holes JSON for placed checks");
    c_overlap->add_option("--out-dir", common.out_dir, "directory for output files");

    auto* c_run = app.add_subcommand("run", "full pipeline: witness, holes, verify, schedule, simulate");
    add_common(c_run);
    c_run->add_option("--weights", weights_spec, "comma-separated rational weights");
    c_run->add_option("--t", t_spec, "effective logical time (rational)");
    c_run->add_option("--nu", nu, "repetitions per estimate");
    c_run->add_option("--batches", batches, "independent batches");
    c_run->add_option("--mode", mode, "parallel|seq");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_check)) {
            auto lat = load_json_file(common.lattice_path);
            auto famj = load_json_file(common.family_path);
            auto cx = lattice_from_json(lat);
            auto fam = family_from_json(famj, cx);
            validate_family(cx, fam);
            auto man = make_manifest("check", {common.lattice_path, common.family_path},
                                     common.seed, json::object());
            json report{{"manifest", man.j}};
            auto cert = bipartite_certificate(endpoint_graph(fam));
            if (std::holds_alternative<OddCycle>(cert)) {
                report["witness_exists"] = false;
                report["odd_cycle"] = std::get<OddCycle>(cert).chains;
                emit(report, common.out_dir, "check.json");
                return 2;
            }
            auto w = synthesize_simple_witness(cx, fam);
            report["witness_exists"] = true;
            report["witness"] = witness_to_json(w);
            emit(report, common.out_dir, "check.json");
            return 0;
        }

        if (app.got_subcommand(c_synth) || app.got_subcommand(c_verify) ||
            app.got_subcommand(c_run)) {
            auto lat = load_json_file(common.lattice_path);
            auto famj = load_json_file(common.family_path);
            auto cx = lattice_from_json(lat);
            auto fam = family_from_json(famj, cx);
            validate_family(cx, fam);

            const char* sub = app.got_subcommand(c_synth)   ? "synthesize"
                              : app.got_subcommand(c_verify) ? "verify"
                                                             : "run";
            auto man = make_manifest(sub, {common.lattice_path, common.family_path}, common.seed,
                                     json{{"weights", weights_spec}, {"t", t_spec},
                                          {"mode", mode}, {"nu", nu}});
            json report{{"manifest", man.j}};

            std::optional<HoleConfig> holes;
            if (app.got_subcommand(c_verify) && !holes_path.empty()) {
                holes = holes_from_json(load_json_file(holes_path), cx);
            } else {
                auto res = synthesize_holes(cx, fam);
                if (std::holds_alternative<Obstruction>(res)) {
                    auto& ob = std::get<Obstruction>(res);
                    report["obstruction"] = obstruction_to_json(ob);
                    emit_svg(common.svg_path,
                             render_svg(cx, {panel_for_obstruction(cx, fam, ob)}));
                    emit(report, common.out_dir, std::string(sub) + ".json");
                    return ob.kind == ObstructionKind::non_bipartite ? 2 : 3;
                }
                holes = std::get<HoleConfig>(res);
            }
            report["holes"] = holes_to_json(*holes);
            emit_svg(common.svg_path, render_svg(cx, panels_for_holes(cx, fam, *holes)));

            if (app.got_subcommand(c_synth)) {
                emit(report, common.out_dir, "synthesize.json");
                return 0;
            }

            auto vrep = verify_common_logical(cx, fam, *holes);
            report["verification"] = verify_report_to_json(vrep);
            if (!vrep.ok) {
                emit(report, common.out_dir, std::string(sub) + ".json");
                return 4;
            }
            if (app.got_subcommand(c_verify)) {
                emit(report, common.out_dir, "verify.json");
                return 0;
            }

            // run: schedule + Monte-Carlo (+ oracle trace when small enough)
            Schedule sched;
            WeightSpec wspec;
            try {
                auto raw = weights_from_string(weights_spec);
                if (raw.size() == 1 && fam.chains.size() > 1)
                    raw.assign(fam.chains.size(), raw[0]);
                if (raw.size() != fam.chains.size())
                    throw std::invalid_argument("weights count does not match the family");
                wspec = normalize(raw);
                Rat t = rat_from_string(t_spec);
                sched = (mode == "seq" || mode == "sequential")
                            ? compile_sequential(wspec, t)
                            : compile_parallel(wspec, t);
            } catch (const std::exception& e) {
                report["schedule_error"] = e.what();
                emit(report, common.out_dir, "run.json");
                return 5;
            }
            report["schedule"] = schedule_to_json(sched);

            double q_true = 0;
            for (std::size_t a = 0; a < fam.chains.size(); ++a)
                q_true += boost::rational_cast<double>(wspec.normalized[a]) *
                          fam.chains[a].lambda;
            double t_d = boost::rational_cast<double>(sched.t);
            auto rr = simulate(q_true, t_d, nu, derive_seed(common.seed, fnv1a("ramsey")),
                               batches);
            report["ramsey"] = ramsey_to_json(rr);

            if (cx.n_edges() <= std::size_t(qubit_cap())) {
                auto code = build_code(cx, holes->r0, holes->r1,
                                       fam.chains[0].edges);
                json trace = json::array();
                for (const auto& c : fam.chains) {
                    auto act = logical_action(
                        PauliString::z_string(int(cx.n_edges()), c.edges.indices()), code.space);
                    trace.push_back({{"label", c.label},
                                     {"in_normalizer", act.in_normalizer},
                                     {"op", std::string(1, act.op)},
                                     {"coeff_re", act.coeff.real()}});
                }
                report["oracle_trace"] = trace;
            }
            emit(report, common.out_dir, "run.json");
            return 0;
        }

        if (app.got_subcommand(c_sched)) {
            auto wspec = normalize(weights_from_string(weights_spec));
            Rat t = rat_from_string(t_spec);
            Schedule sched = (mode == "seq" || mode == "sequential")
                                 ? compile_sequential(wspec, t)
                                 : compile_parallel(wspec, t);
            auto man = make_manifest("schedule", {}, common.seed,
                                     json{{"weights", weights_spec}, {"t", t_spec}, {"mode", mode}});
            json report{{"manifest", man.j}, {"schedule", schedule_to_json(sched)}};
            emit(report, common.out_dir, "schedule.json");
            return 0;
        }

        if (app.got_subcommand(c_sim)) {
            auto man = make_manifest("simulate", {}, common.seed,
                                     json{{"q", q_direct}, {"t", t_direct}, {"nu", nu},
                                          {"batches", batches}});
            auto rr = simulate(q_direct, t_direct, nu,
                               derive_seed(common.seed, fnv1a("ramsey")), batches);
            json report{{"manifest", man.j}, {"ramsey", ramsey_to_json(rr)}};
            emit(report, common.out_dir, "simulate.json");
            return 0;
        }

        if (app.got_subcommand(c_overlap)) {
            auto famj = load_json_file(common.family_path);
            auto man = make_manifest("overlap", {common.family_path}, common.seed, json::object());
            json report{{"manifest", man.j}};

            std::vector<QubitTriple> triples;
            for (auto& c : famj) triples.push_back(c.at("edges").get<std::vector<int>>());
            auto verdict = check_overlap_family(triples);
            report["verdict"] = verdict_to_json(verdict);

            if (!common.lattice_path.empty() && !holes_path.empty() && verdict.accepted) {
                auto cx = lattice_from_json(load_json_file(common.lattice_path));
                auto fam = family_from_json(famj, cx);
                auto holes = holes_from_json(load_json_file(holes_path), cx);
                auto vrep = verify_overlap_logical(cx, fam, holes);
                report["placed_verification"] = verify_report_to_json(vrep);
                if (!vrep.ok) {
                    emit(report, common.out_dir, "overlap.json");
                    return 4;
                }
            }
            emit(report, common.out_dir, "overlap.json");
            return verdict.accepted ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
