#ifndef PSENSE_JSON_IO_HPP
#define PSENSE_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "psense/logical_verify.hpp"
#include "psense/overlap.hpp"
#include "psense/protocol.hpp"
#include "psense/puncture.hpp"

namespace psense {

using json = nlohmann::json;

// Lattice: {"grid":[w,h]} or {"vertices":[[x,y],...],"edges":[[u,v],...],
// "faces":[[e,...],...],"rotation":{"v":[e,...]}}.
PlanarComplex lattice_from_json(const json& j);

// Family: [{"edges":[ids],"endpoints":[u,v],"lambda":x,"label":s}, ...].
SignalFamily family_from_json(const json& j, const PlanarComplex& cx);
json family_to_json(const SignalFamily& f);

json holes_to_json(const HoleConfig& h);
HoleConfig holes_from_json(const json& j, const PlanarComplex& cx);

json witness_to_json(const WitnessLoop& w);

json schedule_to_json(const Schedule& s);
json ramsey_to_json(const RamseyResult& r);
json verify_report_to_json(const VerifyReport& r);
json obstruction_to_json(const Obstruction& ob);
json verdict_to_json(const CompatibilityVerdict& v);

std::vector<Rat> weights_from_string(const std::string& spec);  // "1,-1/2,3"

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace psense

#endif
