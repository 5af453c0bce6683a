#pragma once

#include <optional>
#include <string>

#include "crossmin/model.hpp"

namespace crossmin {

// Static SVG of the host drawing: one polyline per pipe, clusters as dots,
// pipe weights as labels, transversal crossings marked. With orders, the
// strands are laid out schematically inside each pipe. Deterministic output.
std::string render_svg(const Instance& inst,
                       const std::optional<PipeOrderSet>& orders = std::nullopt);

}  // namespace crossmin
