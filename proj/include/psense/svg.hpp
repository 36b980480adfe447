#ifndef PSENSE_SVG_HPP
#define PSENSE_SVG_HPP

#include <string>
#include <vector>

#include "psense/puncture.hpp"

namespace psense {

// One drawable layer over the lattice.
struct RenderPanel {
    std::string title;
    std::vector<std::pair<gf2::BitVec, std::string>> chains;   // edge sets + color
    std::vector<std::pair<WitnessLoop, std::string>> loops;    // dual loops + color
    std::vector<std::pair<std::vector<int>, std::string>> regions;  // vertex sets + fill
    std::vector<int> highlight_vertices;  // evidence cells, drawn on top
};

// SVG 1.1 document with the panels side by side.
std::string render_svg(const PlanarComplex& cx, const std::vector<RenderPanel>& panels);

RenderPanel panel_for_obstruction(const PlanarComplex& cx, const SignalFamily& family,
                                  const Obstruction& ob);
std::vector<RenderPanel> panels_for_holes(const PlanarComplex& cx, const SignalFamily& family,
                                          const HoleConfig& holes);

}  // namespace psense

#endif
