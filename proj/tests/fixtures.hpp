#pragma once
// Shared graph builders for the test suites: the bubbles studied in the
// summary tables, plus small closed graphs.

#include <numeric>
#include <vector>

#include "gem/colored_graph.hpp"
#include "gem/pairings.hpp"

namespace fixtures {

using gem::ColoredGraph;

inline gem::Rational rat(long p, long q = 1) {
    gem::Rational r(p, q);
    r.canonicalize();
    return r;
}

// Bubble with colors 1..D from one permutation per color: blacks 0..v-1 are
// vertices 2i, whites sigma_c(i) are vertices 2j+1.
inline ColoredGraph from_perms(int D, const std::vector<std::vector<int>>& sigma) {
    int v = (int)sigma.at(0).size();
    ColoredGraph g(D, 2 * v);
    for (int i = 0; i < v; i++) {
        g.set_vertex_color(2 * i, true);
        g.set_vertex_color(2 * i + 1, false);
    }
    for (int c = 1; c <= D; c++)
        for (int i = 0; i < v; i++) g.add_edge(2 * i, 2 * sigma[c - 1][i] + 1, c);
    return g;
}

// Closed graph with colors 0..D from one permutation per color.
inline ColoredGraph closed_from_perms(int D, const std::vector<std::vector<int>>& sigma) {
    int v = (int)sigma.at(0).size();
    ColoredGraph g(D, 2 * v);
    for (int i = 0; i < v; i++) {
        g.set_vertex_color(2 * i, true);
        g.set_vertex_color(2 * i + 1, false);
    }
    for (int c = 0; c <= D; c++)
        for (int i = 0; i < v; i++) g.add_edge(2 * i, 2 * sigma[c][i] + 1, c);
    return g;
}

inline std::vector<int> idp(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<int> shift(int n, int s) {
    std::vector<int> p(n);
    for (int i = 0; i < n; i++) p[i] = ((i + s) % n + n) % n;
    return p;
}

// The elementary melon: the unique closed graph on two vertices.
inline ColoredGraph elementary_melon(int D) {
    std::vector<std::vector<int>> s(D + 1, {0});
    return closed_from_perms(D, s);
}

// Elementary bubble (colors 1..D, two vertices).
inline ColoredGraph elementary_bubble(int D) {
    std::vector<std::vector<int>> s(D, {0});
    return from_perms(D, s);
}

// k-cyclic bubble of size 2p: cycle alternating k parallel edges (colors
// 1..k) and D-k parallel edges (colors k+1..D).
inline ColoredGraph cyclic_bubble(int D, int k, int p) {
    std::vector<std::vector<int>> s;
    for (int c = 1; c <= D; c++) s.push_back(c <= k ? fixtures::idp(p) : fixtures::shift(p, 1));
    return from_perms(D, s);
}

// K33: the complete bipartite toroidal bubble in D=3.
inline ColoredGraph k33() { return from_perms(3, {idp(3), shift(3, 1), shift(3, 2)}); }

// Bipyramid over a 2p-gon: the 2p-prism with aligned ring colors 1,2 and
// straight rungs of color 3 (octahedron for p = 2). The two rings carry
// opposite bipartitions so the rungs are black-white.
inline ColoredGraph bipyramid(int p) {
    int n = 2 * p;  // ring length
    ColoredGraph g(3, 2 * n);
    auto up = [&](int i) { return i % n; };
    auto lo = [&](int i) { return n + i % n; };
    for (int i = 0; i < n; i++) {
        g.set_vertex_color(up(i), i % 2 == 0);
        g.set_vertex_color(lo(i), i % 2 == 1);
    }
    for (int i = 0; i < n; i++) {
        int c = (i % 2 == 0) ? 1 : 2;
        g.add_edge(up(i), up(i + 1), c);
        g.add_edge(lo(i), lo(i + 1), c);
    }
    for (int i = 0; i < n; i++) g.add_edge(up(i), lo(i), 3);
    return g;
}

inline ColoredGraph octahedron() { return bipyramid(2); }

// Toroidal ring bubble K_q in D=3: ring of q pairs with same-colored double
// gaps; at least three distinct gap colors.
inline ColoredGraph toroidal(int q, const std::vector<int>& gap_colors) {
    // pair k = (black k, white k); internal color = the color not in
    // {gap[k-1], gap[k]}; gap k joins pair k and k+1 with two edges
    ColoredGraph g(3, 2 * q);
    for (int k = 0; k < q; k++) {
        g.set_vertex_color(2 * k, true);
        g.set_vertex_color(2 * k + 1, false);
    }
    for (int k = 0; k < q; k++) {
        int gl = gap_colors[(k + q - 1) % q], gr = gap_colors[k];
        int internal = 6 - gl - gr;  // colors sum to 1+2+3 = 6
        g.add_edge(2 * k, 2 * k + 1, internal);
    }
    for (int k = 0; k < q; k++) {
        int kn = (k + 1) % q;
        g.add_edge(2 * k, 2 * kn + 1, gap_colors[k]);
        g.add_edge(2 * kn, 2 * k + 1, gap_colors[k]);
    }
    return g;
}

// Ring bubble in dimension D: q pairs joined by (D-2) internal colors, gaps
// of one color each; generalizes bipyramids (gap colors alternating) and
// handles (>= 3 gap colors).
inline ColoredGraph ring_bubble(int D, const std::vector<int>& gap_colors) {
    int q = (int)gap_colors.size();
    ColoredGraph g(D, 2 * q);
    for (int k = 0; k < q; k++) {
        g.set_vertex_color(2 * k, true);
        g.set_vertex_color(2 * k + 1, false);
    }
    for (int k = 0; k < q; k++) {
        int gl = gap_colors[(k + q - 1) % q], gr = gap_colors[k];
        for (int c = 1; c <= D; c++)
            if (c != gl && c != gr) g.add_edge(2 * k, 2 * k + 1, c);
    }
    for (int k = 0; k < q; k++) {
        int kn = (k + 1) % q;
        g.add_edge(2 * k, 2 * kn + 1, gap_colors[k]);
        g.add_edge(2 * kn, 2 * k + 1, gap_colors[k]);
    }
    return g;
}

// The D=6 bubble of the conjugate pair: the six colors realize the six
// distinct permutations of three elements.
inline ColoredGraph d6_bubble() {
    return from_perms(6, {idp(3), shift(3, 1), {1, 0, 2}, {2, 1, 0}, shift(3, 2), {0, 2, 1}});
}

// Its mirror: exchanging black and white inverts each permutation, which
// swaps the two 3-cycles (colors 2 and 5 here).
inline ColoredGraph d6_bubble_conj() {
    return from_perms(6, {idp(3), shift(3, 2), {1, 0, 2}, {2, 1, 0}, shift(3, 1), {0, 2, 1}});
}

// Quartic melonic bubble in dimension D with distinguished color i.
inline ColoredGraph quartic_bubble(int D, int i) {
    std::vector<std::vector<int>> s;
    for (int c = 1; c <= D; c++) s.push_back(c == i ? fixtures::shift(2, 1) : fixtures::idp(2));
    return from_perms(D, s);
}

// Sextic D=4 bubbles of the summary table.
inline ColoredGraph sextic_k33_plus() {
    // K33 with color-4 edges parallel to an optimal pairing
    return from_perms(4, {idp(3), shift(3, 1), shift(3, 2), {0, 2, 1}});
}

inline ColoredGraph sextic_meander() {
    // pairs with crossing sets {2,3}, {3,4}, {2,3,4}: sigma_1 = id,
    // sigma_2 = (ac), sigma_3 = (abc), sigma_4 = (bc)
    return from_perms(4, {idp(3), {2, 1, 0}, {1, 2, 0}, {0, 2, 1}});
}

inline ColoredGraph sextic_k33_like() {
    // deleting color 4 gives K33; colors 3 and 4 are parallel
    return from_perms(4, {{2, 1, 0}, {1, 0, 2}, {0, 2, 1}, {0, 2, 1}});
}

}  // namespace fixtures
