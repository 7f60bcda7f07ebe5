#pragma once
// Pairings and coverings of bubbles, optimal-pairing search, the contracted
// Eulerian graph and its polychromatic circuit rank, and the scaling /
// coefficient report. All arithmetic here is exact.

#include <functional>
#include <optional>
#include <vector>

#include "gem/colored_graph.hpp"

namespace gem {

// A black-white perfect matching of a bubble's vertices, stored as pairs
// (black, white) sorted by black vertex.
using Pairing = std::vector<std::pair<int, int>>;

// Yields all (V/2)! pairings in lexicographic order (by white assigned to each
// black in increasing black order). Returning false from the callback stops.
void enumerate_pairings(const ColoredGraph& bubble, const std::function<bool(const Pairing&)>& cb);
long count_pairings(const ColoredGraph& bubble);

// The closed graph obtained by joining each pair with a color-0 edge.
ColoredGraph covering(const ColoredGraph& bubble, const Pairing& omega);

// Zero-score of the covering, computed without building it.
int covering_zero_score(const ColoredGraph& bubble, const Pairing& omega);

struct OptimalPairings {
    int max_zero_score = 0;
    std::vector<Pairing> pairings;     // all argmax pairings, lexicographic
    std::vector<std::pair<int, int>> forced_pairs;  // large h-pairs fixed up front
};

// Exhaustive search with forced large-h-pair fixing. Cap bounds V/2.
OptimalPairings optimal_pairings(const ColoredGraph& bubble, int cap_half_vertices = 10);

// The Eulerian graph B_{/Omega}: one node per pair, one directed color-i edge
// per color-i edge of the bubble.
struct ContractedGraph {
    int n_nodes = 0;
    std::vector<int> colors;
    // per color: successor node of each node (a permutation)
    std::vector<std::vector<int>> succ;
    int circuit_rank() const;                 // L = E - V + K
    int monochromatic_circuit_rank() const;   // sum over colors of cycle counts
    int lm() const { return circuit_rank() - monochromatic_circuit_rank(); }
};

ContractedGraph contracted_graph(const ColoredGraph& bubble, const Pairing& omega);
int lm(const ColoredGraph& bubble, const Pairing& omega);

// delta_0 = D + (D-1)(V/2 - 1) - Phi_0(covering) = L_m(B_/Omega).
int delta0(const ColoredGraph& bubble, const Pairing& omega);

enum class EvidenceMode { TreesAssumed, Enumerated };

struct CoefficientReport {
    int dim = 0;                       // D: the bubble has colors 1..D
    int n_vertices = 0;
    int phi = 0;                       // Phi(B)
    int phi0_opt = 0;                  // Phi_0 of an optimal covering
    std::vector<Pairing> optimal;      // all optimal pairings
    Rational tilde_a, a, s, delta;     // exact
    EvidenceMode evidence = EvidenceMode::TreesAssumed;
    bool trees_maximal_known = false;  // true only when enumeration certified it
};

// Trees-assumed mode: tilde_a = Phi_0^opt - D, s = L_m(optimal),
// a = (tilde_a + Phi)/V, Delta = D(D-1)/4 - a.
CoefficientReport coefficients(const ColoredGraph& bubble, int cap_half_vertices = 10);

// Non-connected bubble of k components: tilde_a = (k-1)D + sum tilde_a_j,
// s = 1 - k + sum s_j, a = ((k-1)D + sum a_j V_j)/V. For k = 1 this returns
// the component report unchanged.
CoefficientReport coefficients_nonconnected(const std::vector<CoefficientReport>& components, int D);

}  // namespace gem
