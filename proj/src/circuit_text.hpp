#pragma once

#include <string>

#include "circuit.hpp"

namespace psc {

// Textual circuit format. Line-oriented; '#' starts a comment. Layout:
//
//   circuit
//   n 3
//   k 1
//   basis add 1              # optional; must restate the canonical value
//   node 0 x 1
//   node 1 r 1
//   node 2 const 5/2
//   node 3 gate add 0 1
//   node 4 gate max 3 2
//   output 4
//   rand 1 discrete 0 1      # optional distribution block, one line per r_j
//   end
//
// Node ids must be consecutive from 0 in file order (topological). Random
// input distributions: "uniform <lo> <hi> <denominator_bound>",
// "discrete <v1> <v2> ...", "point <v>".
Circuit parse_circuit(const std::string& text);
Circuit load_circuit(const std::string& path);
std::string circuit_str(const Circuit& c);
void save_circuit(const Circuit& c, const std::string& path);

}  // namespace psc
