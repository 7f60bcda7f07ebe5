#pragma once
// Edge-colored bipartite multigraphs dual to colored triangulations.
// A graph with colors {0..D} and every color at every vertex is closed;
// a graph with colors {1..D} is a bubble (the boundary of a building block);
// a graph where q black and q white vertices miss color 0 is a boundary-case
// graph in G_D^q.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gem {

using Rational = mpq_class;
using BigInt = mpz_class;

struct Edge {
    int u = -1;  // black endpoint
    int v = -1;  // white endpoint
    int color = -1;
};

class ColoredGraph {
  public:
    ColoredGraph() = default;
    ColoredGraph(int dimension, int n_vertices) : dim_(dimension) {
        is_black_.assign(n_vertices, false);
        for (int i = 0; i < n_vertices; i++) is_black_[i] = (i % 2 == 1);
    }

    int dimension() const { return dim_; }
    int n_vertices() const { return (int)is_black_.size(); }
    int n_edges() const { return (int)edges_.size(); }
    bool black(int v) const { return is_black_[v]; }
    void set_vertex_color(int v, bool black) { is_black_[v] = black; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& marked_edges() const { return marked_; }
    bool edge_marked(int e) const;

    // Adds an edge, normalizing (u,v) to (black, white). Returns its index.
    int add_edge(int u, int v, int color);
    void mark_edge(int e);
    void unmark_edge(int e);

    // Incidence: edge of a given color at a vertex, or -1.
    int incident(int v, int color) const;
    // The neighbor of v along its color-c edge (asserts the edge exists).
    int neighbor(int v, int color) const;

    // Sorted list of colors that actually appear on edges.
    std::vector<int> color_set() const;
    // One less than the number of distinct colors: the D of the closed-graph
    // view of this graph (bubbles in G_{D-1} have D colors 1..D).
    int effective_degree() const { return (int)color_set().size() - 1; }

    bool connected() const;
    int n_components() const;
    std::vector<int> component_ids() const;  // per vertex

    bool operator==(const ColoredGraph& o) const {
        return dim_ == o.dim_ && is_black_ == o.is_black_ && edge_triples() == o.edge_triples() &&
               marked_ == o.marked_;
    }

    std::vector<std::array<int, 3>> edge_triples() const;

  private:
    int dim_ = 0;
    std::vector<bool> is_black_;
    std::vector<Edge> edges_;
    std::vector<int> marked_;
    mutable std::vector<int> inc_;  // lazily built incidence table
    mutable bool inc_valid_ = false;
    void build_incidence() const;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// `.gem` text format, see README.
ColoredGraph parse_gem(const std::string& text);
std::string serialize_gem(const ColoredGraph& g);
ColoredGraph load_gem_file(const std::string& path);

enum class Regularity { Closed, Bubble, BoundaryCase, Irregular };

struct ValidationReport {
    bool bipartite = false;
    bool balanced = false;   // same number of black and white vertices
    bool connected = false;
    Regularity regularity = Regularity::Irregular;
    int boundary_q = 0;      // for BoundaryCase: number of missing color-0 pairs
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

ValidationReport validate(const ColoredGraph& g);

// ---- scores ----

struct BicoloredCycles {
    int count = 0;
    std::vector<std::vector<int>> cycles;  // vertex lists, one per cycle
};

// The (i,j)-subgraph of a properly colored graph is a disjoint union of even
// cycles; open (i,j)-paths through missing edges are not counted.
BicoloredCycles bicolored_cycles(const ColoredGraph& g, int i, int j);

struct DegreeReport {
    int score = 0;                      // Phi
    int zero_score = 0;                 // Phi_0 (only meaningful when color 0 present)
    std::map<std::pair<int, int>, int> per_pair;  // Phi_{i,j}, i<j
    Rational gurau_degree = 0;
    std::vector<std::pair<std::vector<int>, long>> jacket_genera;  // (cyclic color order, genus)
};

int score(const ColoredGraph& g);
int zero_score(const ColoredGraph& g);
std::map<std::pair<int, int>, int> score_per_pair(const ColoredGraph& g);
int weighted_score(const ColoredGraph& g, const std::vector<std::pair<int, int>>& excluded_pairs);

// D' + D'(D'-1)/4 * V - Phi over the graph's own color set (D' = #colors-1).
// Requires a closed connected view; exact rational, integral for bipartite input.
Rational gurau_degree(const ColoredGraph& g);

struct Jacket {
    std::vector<int> cycle;  // cyclic order of colors, canonical representative
    long faces = 0;
    long genus = 0;
};

// All (#colors-1)!/2 jackets of a closed connected graph.
std::vector<Jacket> jackets(const ColoredGraph& g);
DegreeReport degree_report(const ColoredGraph& g);

// ---- simplices ----

struct SimplexCensus {
    std::vector<long> n;  // n[k] = number of k-simplices, k = 0..D
    long euler_alternating_sum() const;
};

SimplexCensus simplex_census(const ColoredGraph& g);

struct Euler3dReport {
    bool euler_zero = false;
    bool all_residues_spherical = false;  // every 3-color component has genus 0
    bool manifold() const { return all_residues_spherical; }
};

// Complete manifold test in D=3: residue genus test plus the Euler check.
Euler3dReport euler_check_3d(const ColoredGraph& g);

// ---- boundary ----

// Boundary graph of g in G_D^q: one vertex per degree-D vertex of g, a color-i
// edge per maximal (0,i)-alternating path between them. Empty for closed g.
ColoredGraph boundary_graph(const ColoredGraph& g);

// ---- melonic ----

struct MelonicWitness {
    bool melonic = false;
    // Pairs contracted in order; the last pair is the final elementary melon.
    std::vector<std::pair<int, int>> contraction_sequence;
    // Canonical pairing (black,white) of the original vertices when melonic.
    std::vector<std::pair<int, int>> canonical_pairing;
};

// True iff repeated contraction of maximal-multiplicity pairs reaches the
// elementary melon over the graph's color set.
MelonicWitness is_melonic(const ColoredGraph& g);

// ---- export ----

std::string to_dot(const ColoredGraph& g);

}  // namespace gem
