#pragma once

#include <string>

#include "crossmin/model.hpp"

namespace crossmin {

// Instance text format (UTF-8, line oriented, '#' comments):
//   cluster <id> <x> <y>
//   pipe <id> <u> <v> [: x1 y1 x2 y2 ...]
//   vertex <id>
//   edge <id> <a> <b>
//   mapv <vertex-id> <cluster-id>
//   mape <edge-id> <pipe-id>
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Order file: one line per pipe, in canonical pipe orientation:
//   order <pipe-id> : <edge-id> <edge-id> ...
PipeOrderSet parse_orders(const std::string& text);
std::string serialize_orders(const PipeOrderSet& orders);

}  // namespace crossmin
