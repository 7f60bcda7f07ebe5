#pragma once
// Canonical labeling of vertex-bicolored edge-colored multigraphs by iterated
// color refinement with backtracking on refined orbits. Two graphs have equal
// canonical forms iff they are isomorphic (bicolor-, edge-color- and
// mark-preserving).

#include <string>

#include "gem/colored_graph.hpp"

namespace gem {

std::string canonical_form(const ColoredGraph& g);

bool isomorphic(const ColoredGraph& a, const ColoredGraph& b);

// Reference oracle: tries all black/white relabelings. Only for small graphs.
bool isomorphic_brute_force(const ColoredGraph& a, const ColoredGraph& b);

}  // namespace gem
