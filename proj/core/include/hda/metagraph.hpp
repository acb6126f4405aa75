#pragma once

#include "hda/propertope.hpp"

namespace hda {

// Metagraph of an n-dimensional propertope:
//   {"type":"metagraph","dim":n,"levels":[L1, L2, …, Ln]}
// Ln holds one entry, the graph sequence of the propertope itself. Each
// entry of Lk (k ≥ 2) is an array of graph objects (one per output), and
// each graph object is graph.json plus "labels", the 1-based input slot of
// every vertex. The entries of L(k-1) are the decorations of the vertices on
// level k, entry by entry in slot order. L1 holds elements of P.
// A 0-dimensional propertope is {"type":"metagraph","dim":0,"color":c}.
json encode_metagraph(const Propertope& g);

// Throws Error(Schema/Arity/Validation) whose message starts with the
// position of the offending part, e.g. "levels[2][0][1].edges: …".
Propertope decode_metagraph(const json& m, const PropPtr& base);

}  // namespace hda
