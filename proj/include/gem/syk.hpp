#pragma once
// Classification of unicellular coverings by their order delta_0 = L_m,
// pruning and scheme extraction on stacked maps, chain generating functions,
// and the LO/NLO counting for 2n-point functions of the complex colored SYK
// model. Only the bipartite sector is implemented.

#include <string>
#include <vector>

#include "gem/pairings.hpp"
#include "gem/series.hpp"
#include "gem/stacked.hpp"

namespace gem {

struct SykOrder {
    int delta0 = 0;      // L(Psi(B, Omega)) = L_m(B_/Omega)
    bool connected = false;
    int amplitude_exponent = 0;  // 1 - n - L for an n-marked contribution
};

// Requires a bipartite connected bubble; Omega is the pairing induced by the
// covering's color-0 edges.
SykOrder classify_order(const ColoredGraph& bubble, const Pairing& omega);

// Removes unmarked leaves recursively (contracts melonic contributions).
// Whites and colored vertices both prune; distinguished or marked vertices
// stay. The circuit rank is unchanged.
StackedMap prune(const StackedMap& m);

struct Scheme {
    // vertices: colored or white, degree >= 3 or marked/distinguished
    struct Vertex {
        int color = -1;  // -1 for white
        bool marked = false;
        int degree = 0;
    };
    std::vector<Vertex> vertices;
    struct SchemeEdge {
        int a = 0, b = 0;
        bool chain = false;       // replaced a maximal degree-2 alternating path
        int chain_whites = 0;     // whites inside the collapsed chain
        int end_color_a = -1, end_color_b = -1;  // colors of the chain's end edges
    };
    std::vector<SchemeEdge> edges;
    int circuit_rank = 0;  // the order k
};

// Requires a pruned, rooted map (at least one marked corner or distinguished
// white); vacuum inputs are rejected as ambiguous.
Scheme to_scheme(const StackedMap& m);

// ---- chain generating functions (closed forms of the six chain types) ----

enum class ChainKind { BB_ii, BB_ij, WW_ii, WW_ij, WB_ii, WB_ij, WW_ii_star, WB_ii_star };

struct ChainSeries {
    int shift_white = 0;  // power of z_white multiplying the series in y
    int shift_black = 0;  // power of z_black
    std::vector<BigInt> y_coeffs;  // series in y = z_white * z_black
};

ChainSeries chain_gf(ChainKind kind, int D, int order);

// Composite closed forms expanded as exact series in z.
// G4_LO  = D(D-1) z G_T^{D+2} / (1 - (D-1) z G_T^D)
// G2_NLO = (D(D-1)/2) [ y^2 (2G_T + D - 2 + 2y G_T (D-1)(G_T^2 - 1))
//                        / ((1+y)(1-(D-1)y)^2) ]_{y = z G_T^D}
std::vector<BigInt> composite_gf(const std::string& name, int D, int order);

// D-ary tree series G_T = 1 + z G_T^D (melonic graphs one dimension down).
std::vector<BigInt> tree_series(int D, int order);

// ---- brute-force covering counts ----

struct OrderCountRow {
    int v = 0;          // half vertices of the bubble
    BigInt rooted = 0;  // labeled count / (v!)^2; marks are ordered
};

// Enumerates connected bubbles with V = 2v <= 2 v_max, all pairings, all
// canonical placements of n_marks ordered marked colored edges (at most one
// per bicolored cycle), filtered to delta_0 = k.
std::vector<OrderCountRow> count_by_order(int D, int k, int n_marks, int v_max);

}  // namespace gem
