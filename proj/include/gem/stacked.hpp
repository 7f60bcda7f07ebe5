#pragma once
// Stacked maps: the bijection image of (colored graph, pairing). Colored star
// vertices carry cyclic orders of incident edges, white vertices carry one
// edge per color with no cyclic order. Maps are stored as rotation systems;
// faces of bicolored submaps are the orbits of rotation-after-involution.
// Twists of the general bijection are realized by reversing the rotation of
// the lower-color stars during face traversal; the bubble-restricted variant
// orients color-0 edges white-to-black and needs no twists.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gem/colored_graph.hpp"
#include "gem/pairings.hpp"

namespace gem {

struct StackedStar {
    int color = -1;
    std::vector<int> order;  // edge ids, counterclockwise
    int marked_gap = -1;     // corner between order[p] and order[p+1 mod deg]
};

struct StackedEdge {
    int star = -1;
    int pos = -1;    // position inside star.order
    int white = -1;
    int color = -1;
};

struct StackedMap {
    std::vector<int> colors;
    int n_whites = 0;
    bool zero_reversed = false;  // color-0 edges oriented white->black (bubble-restricted bijection)
    std::vector<StackedEdge> edges;
    std::vector<StackedStar> stars;
    std::vector<char> white_distinguished;  // used by the color-0 induced bijection

    int white_edge(int w, int color) const;  // edge id or -1
    int degree(int s) const { return (int)stars[s].order.size(); }
    int n_edges() const { return (int)edges.size(); }
    int n_marked() const;
    // circuit rank of the underlying graph (whites + stars)
    int circuit_rank() const;
    int n_components() const;
    void check() const;  // structural invariants
};

struct SubmapFaces {
    int faces = 0;
    int interior_faces = 0;  // faces meeting no marked corner
    long vertices = 0, edge_count = 0, components = 0;
    long circuit_rank = 0;
    long genus = 0;  // summed over components: 2K - 2g = V - E + F
};

// Faces of the (i,j)-bicolored submap. With `twisted`, the star rotations of
// color min(i,j) are reversed, which realizes the twist factors of the
// general bijection on orientable submaps.
SubmapFaces bicolored_faces(const StackedMap& m, int i, int j, bool twisted);

// ---- bijections ----

// General bijection: all edges oriented black->white.
StackedMap psi(const ColoredGraph& g, const Pairing& omega);
// Bubble-restricted variant: color-0 edges oriented white->black; the
// (0,i)-cycles of g become untwisted faces of the (0,i)-submaps.
StackedMap psi0(const ColoredGraph& g, const Pairing& omega);

// Inverse of either variant (the orientation flag is stored in the map).
std::pair<ColoredGraph, Pairing> psi_inverse(const StackedMap& m);

// Pairing induced by color i: Psi(g minus color i, pairs = color-i edges).
// For i = 0, marked color-0 edges become distinguished white vertices.
StackedMap psi_color(const ColoredGraph& g, int i);

// Zero-score of a bubble-restricted stacked map: sum over i of F_int(0,i).
int stacked_zero_score(const StackedMap& m);
// Score transport for the general bijection: sum of twisted (i,j) face counts.
int stacked_score(const StackedMap& m);

// Canonically add q marked color-0 edges to g in G_D^q along the paths
// alternating pairs of omega and color-0 edges.
ColoredGraph canonical_close(const ColoredGraph& g, const Pairing& omega);

// ---- edge unhooking ----

struct UnhookResult {
    StackedMap map;
    int i2 = 0;               // colors whose (0,i)-submap runs two faces along e
    int delta_zero_score = 0; // D - 2*I2, verified against recount by callers
    bool bridge = false;
    int new_star = -1;        // the added degree-1 color-0 star
};

// e must be incident to a color-0 star and not flank its marked corner.
UnhookResult unhook(const StackedMap& m, int e);
// Inverse: merge the degree-1 star of e back into star s at gap position p.
StackedMap hook(const StackedMap& m, int e, int s, int p);

// ---- projections, exploration, boundary ----

struct ProjectedMap {
    int n_bubbles = 0;
    int n_black = 0;           // color-0 stars
    long n_edges = 0;          // color-0 edges
    int components = 0;
    long circuit_rank = 0;
    std::vector<int> bubble_of_white;
};

ProjectedMap projected(const StackedMap& m);
bool stacked_is_tree(const StackedMap& m);

struct ExplorationReport {
    bool connected = false;
    int whites_visited_once = 0;
    int whites_unvisited = 0;
};

// Face exploration: the underlying colored graph is connected iff every white
// vertex is reached both through an outgoing and an incoming monochromatic face.
ExplorationReport face_exploration_connected(const StackedMap& m);

struct BoundaryOfMap {
    ColoredGraph boundary;     // in G_{D-1}, colors 1..D, vertices 2 per marked corner
    Pairing induced_pairing;   // (black, white) of each marked corner
    int phi0_boundary_covering = 0;  // Phi_0 of the covering by the induced pairing
};

BoundaryOfMap boundary_of_map(const StackedMap& m);

// ---- simplified bijection ----

struct SimplifiedMap {
    // whites = bubbles, blacks = color-0 stars
    int n_whites = 0;
    std::vector<std::vector<int>> white_order;   // edge ids, cyclic; meaningful iff embedded
    std::vector<char> white_embedded;
    std::vector<std::vector<int>> black_order;   // edge ids, cyclic
    std::vector<int> black_marked_gap;
    std::vector<std::vector<int>> edge_colors;   // color set per edge
    std::vector<std::pair<int, int>> edge_ends;  // (white, black)
    int color_submap_faces(int i) const;         // faces of the color-i edge-subset map
};

struct SimplifiedBijectionError : std::runtime_error {
    explicit SimplifiedBijectionError(const std::string& m) : std::runtime_error(m) {}
};

// Requires, per bubble: at most one non-leaf star per color, and all stars of
// degree >= 3 share one cyclic order of the pairs. Throws otherwise.
SimplifiedMap simplified_map(const ColoredGraph& g, const Pairing& omega);

// ---- quartic melonic specialization ----

// Combinatorial map with edges colored in 1..D and optional marked corners,
// at most one per vertex. Darts 2e (black-to-first) and 2e+1.
struct ColoredMap {
    int D = 0;
    std::vector<int> edge_color;
    std::vector<std::vector<int>> vertex_darts;  // cyclic, counterclockwise
    std::vector<int> marked_gap;                 // per vertex, -1 if none
    int n_edges() const { return (int)edge_color.size(); }
    int n_vertices() const { return (int)vertex_darts.size(); }
    int n_marks() const;
    int components() const;
    long circuit_rank() const;
    // color-i submap data (isolated vertices dropped)
    SubmapFaces color_submap(int i) const;
    // faces of the whole map
    int faces() const;
};

// Bijection of quartic melonic gluings: g in G_D^q(B_4^m) -> colored map.
ColoredMap quartic_map(const ColoredGraph& g);
ColoredGraph quartic_map_inverse(const ColoredMap& m);

struct QuarticDecomposition {
    int D = 0;
    long lm = 0;
    std::vector<long> sub_l;      // L(Gamma^(i)) per color 1..D
    std::vector<long> sub_g;      // g(Gamma^(i)) per color 1..D
    long delta = 0;               // D*Lm + (D-2)*sum L + 2*sum g (vacuum)
    long delta_direct = 0;        // D + (D-1)E - sum F_int, must agree
    std::string order_label;      // "tree", "single-monochromatic-cycle", ...
    int q = 0;
    long boundary_lower_bound = 0;  // 1 + (D-1)(q + Lm(boundary/Omega)) for q >= 1
};

QuarticDecomposition quartic_decomposition(const ColoredMap& m);

// ---- export ----

std::string stacked_to_dot(const StackedMap& m);

}  // namespace gem
