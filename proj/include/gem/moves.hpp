#pragma once
// Local moves on colored graphs: dipole insertion/contraction, flips,
// rho-pair switching, connected sums, color-0 contraction, handle detection.
// Moves are pure: they return a new graph plus a record. Topology flags are
// tri-state and "preserved" is only claimed under decidable side conditions.

#include <optional>
#include <string>
#include <vector>

#include "gem/colored_graph.hpp"

namespace gem {

enum class TopologyFlag { Preserved, ConnectedSum, Unknown };

enum class MoveKind { DipoleInsert, DipoleContract, Flip, RhoSwitch, ConnectedSumMove, Color0Contract };

struct MoveRecord {
    MoveKind kind;
    std::vector<int> vertices;  // affected vertices (original indices)
    std::vector<int> edges;     // affected edges (original indices)
    int delta_score = 0;
    int delta_zero_score = 0;
    int common_cycles = -1;     // I2 of a rho-switch, else -1
    bool disconnects = false;
    TopologyFlag topology = TopologyFlag::Unknown;
    // old edge index -> new edge index (-1 if the edge was removed)
    std::vector<int> edge_remap;
};

struct MoveError : std::runtime_error {
    explicit MoveError(const std::string& m) : std::runtime_error(m) {}
};

// The pair (b,w) must be joined by exactly the edges of colors I and must be a
// dipole: b and w lie in different components once the colors of I are deleted.
std::pair<ColoredGraph, MoveRecord> dipole_contract(const ColoredGraph& g, int b, int w);

// Inserts a pair joined by the colors in `colors` across the given target
// edges (one per complementary color, all in one component of the complement).
std::pair<ColoredGraph, MoveRecord> dipole_insert(const ColoredGraph& g, const std::vector<int>& colors,
                                                  const std::vector<int>& target_edges);

// Exchange of the white endpoints of two same-colored edges that are incident
// to the two vertices of an h-dipole with 1 <= h <= D-1.
std::pair<ColoredGraph, MoveRecord> flip(const ColoredGraph& g, int e1, int e2);

// Bipartiteness-preserving exchange of two distinct color-0 edges.
// delta Phi_0 = D - 2*I2 where I2 counts colors i with f, f' in distinct
// (0,i)-cycles.
std::pair<ColoredGraph, MoveRecord> rho_switch(const ColoredGraph& g, int f, int fp);

// Graph connected sum: delete black v1 of g1 and white v2 of g2 (or the other
// way around), rejoin half-edges color by color.
ColoredGraph connected_sum(const ColoredGraph& g1, int v1, const ColoredGraph& g2, int v2);

// Contract a color-0 edge joining two distinct bubbles; Phi_0 is unchanged.
std::pair<ColoredGraph, MoveRecord> contract_color0_edge(const ColoredGraph& g, int e);

// All (D-1)-pairs whose four remaining edges lie on one bicolored cycle.
std::vector<std::pair<int, int>> find_handles(const ColoredGraph& g);

// Number of colors i such that edges f, fp lie in distinct (i, c)-cycles for
// c the common color of f and fp (the I2 of a switch).
int common_cycle_deficiency(const ColoredGraph& g, int f, int fp);

}  // namespace gem
