#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "gem/canonical.hpp"
#include "gem/stacked.hpp"

using namespace gem;
namespace fx = fixtures;

namespace {

ColoredGraph random_closed(int D, int k, std::mt19937& rng) {
    while (true) {
        std::vector<std::vector<int>> sigma;
        for (int c = 0; c <= D; c++) {
            auto p = fx::idp(k);
            std::shuffle(p.begin(), p.end(), rng);
            sigma.push_back(p);
        }
        ColoredGraph g = fx::closed_from_perms(D, sigma);
        if (g.connected()) return g;
    }
}

Pairing random_pairing(const ColoredGraph& g, std::mt19937& rng) {
    std::vector<int> blacks, whites;
    for (int v = 0; v < g.n_vertices(); v++) (g.black(v) ? blacks : whites).push_back(v);
    std::shuffle(whites.begin(), whites.end(), rng);
    Pairing p;
    for (size_t i = 0; i < blacks.size(); i++) p.push_back({blacks[i], whites[i]});
    std::sort(p.begin(), p.end());
    return p;
}

// encode (g, omega) for round-trip comparison: pairs become pseudo-edges of a
// fresh color D+1
ColoredGraph augment(const ColoredGraph& g, const Pairing& om) {
    ColoredGraph h(g.dimension() + 1, g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) h.set_vertex_color(v, g.black(v));
    std::vector<int> remap(g.n_edges());
    for (int e = 0; e < g.n_edges(); e++) remap[e] = h.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).color);
    for (int e : g.marked_edges()) h.mark_edge(remap[e]);
    for (auto [b, w] : om) h.add_edge(b, w, g.dimension() + 1);
    return h;
}

}  // namespace

TEST_CASE("psi: elementary melon with its unique pairing") {
    ColoredGraph m = fx::elementary_melon(3);
    Pairing om{{0, 1}};
    StackedMap sm = psi(m, om);
    CHECK(sm.n_whites == 1);
    CHECK(sm.n_edges() == 4);       // one edge per color
    CHECK(sm.stars.size() == 4);    // all leaves
    for (auto& st : sm.stars) CHECK(st.order.size() == 1);
    CHECK(sm.circuit_rank() == 0);
}

TEST_CASE("psi round trip and face transport on random inputs") {
    std::mt19937 rng(41);
    for (int t = 0; t < 120; t++) {
        int D = (t % 2 == 0) ? 3 : 4;
        int k = 2 + (int)(rng() % 3);  // V <= 8
        ColoredGraph g = random_closed(D, k, rng);
        Pairing om = random_pairing(g, rng);
        StackedMap sm = psi(g, om);
        auto [g2, om2] = psi_inverse(sm);
        CHECK(isomorphic(augment(g, om), augment(g2, om2)));
        // color i<j cycles map to faces of the twisted (i,j)-submap
        auto per = score_per_pair(g);
        for (int i = 0; i <= D; i++)
            for (int j = i + 1; j <= D; j++) {
                auto f = bicolored_faces(sm, i, j, /*twisted=*/true);
                CHECK(f.faces == per.at({i, j}));
            }
        CHECK(stacked_score(sm) == score(g));
    }
}

TEST_CASE("psi0 round trip and zero-score transport") {
    std::mt19937 rng(43);
    for (int t = 0; t < 120; t++) {
        int D = (t % 2 == 0) ? 3 : 4;
        ColoredGraph g = random_closed(D, 2 + (int)(rng() % 3), rng);
        Pairing om = random_pairing(g, rng);
        StackedMap sm = psi0(g, om);
        auto [g2, om2] = psi_inverse(sm);
        CHECK(isomorphic(augment(g, om), augment(g2, om2)));
        for (int j = 1; j <= D; j++) {
            auto f = bicolored_faces(sm, 0, j, /*twisted=*/false);
            CHECK(f.faces == bicolored_cycles(g, 0, j).count);
        }
        CHECK(stacked_zero_score(sm) == zero_score(g));
    }
}

TEST_CASE("psi_color") {
    // melonic g on canonical pairs gives a tree
    ColoredGraph q = fx::quartic_bubble(3, 1);
    ColoredGraph cov = covering(q, is_melonic(q).canonical_pairing);
    StackedMap tree = psi_color(cov, 0);
    CHECK(stacked_is_tree(tree));
    CHECK(tree.circuit_rank() == 0);

    // covering via color 0: L = L_m = delta0
    auto ok = optimal_pairings(fx::k33());
    ColoredGraph kcov = covering(fx::k33(), ok.pairings.front());
    StackedMap km = psi_color(kcov, 0);
    CHECK(km.circuit_rank() == lm(fx::k33(), ok.pairings.front()));

    // elementary melon: single white with D leaves after removing color i
    ColoredGraph m = fx::elementary_melon(3);
    StackedMap sm = psi_color(m, 2);
    CHECK(sm.n_whites == 1);
    CHECK(sm.n_edges() == 3);
    CHECK_THROWS(psi_color(m, 7));
}

TEST_CASE("unhooking law on random stacked maps") {
    std::mt19937 rng(47);
    int done = 0;
    for (int t = 0; t < 400 && done < 120; t++) {
        int D = (t % 2 == 0) ? 3 : 4;
        ColoredGraph g = random_closed(D, 2 + (int)(rng() % 3), rng);
        Pairing om = random_pairing(g, rng);
        StackedMap sm = psi0(g, om);
        int phi0 = stacked_zero_score(sm);
        // unhook a random color-0 edge
        std::vector<int> zedges;
        for (int e = 0; e < sm.n_edges(); e++)
            if (sm.edges[e].color == 0) zedges.push_back(e);
        int e = zedges[rng() % zedges.size()];
        int old_star = sm.edges[e].star, old_pos = sm.edges[e].pos;
        auto res = unhook(sm, e);
        CHECK(stacked_zero_score(res.map) == phi0 + D - 2 * res.i2);
        CHECK(res.delta_zero_score == D - 2 * res.i2);
        // hook it back: the fresh star is appended last, so old indices hold
        StackedMap back = hook(res.map, e, old_star, old_pos);
        CHECK(stacked_zero_score(back) == phi0);
        auto [gb, omb] = psi_inverse(back);
        CHECK(isomorphic(augment(g, om), augment(gb, omb)));
        done++;
    }
    CHECK(done >= 100);
}

TEST_CASE("bridge unhooking splits the degree") {
    // a tree of two quartic bubbles: unhooking a bridge splits delta additively
    ColoredGraph q = fx::quartic_bubble(3, 1);
    auto canon = is_melonic(q).canonical_pairing;
    // two copies glued by a 0-switch of their coverings
    ColoredGraph cov = covering(q, canon);
    ColoredGraph two(3, 8);
    for (int v = 0; v < 8; v++) two.set_vertex_color(v, v % 2 == 0);
    for (const Edge& e : cov.edges()) {
        two.add_edge(e.u, e.v, e.color);
        two.add_edge(e.u + 4, e.v + 4, e.color);
    }
    // swap two color-0 edges across the copies
    int f = two.incident(0, 0), fp = two.incident(4, 0);
    const Edge& ef = two.edge(f);
    const Edge& eg = two.edge(fp);
    ColoredGraph glued(3, 8);
    for (int v = 0; v < 8; v++) glued.set_vertex_color(v, v % 2 == 0);
    for (int e = 0; e < two.n_edges(); e++) {
        const Edge& ed = two.edge(e);
        if (e == f)
            glued.add_edge(ef.u, eg.v, 0);
        else if (e == fp)
            glued.add_edge(eg.u, ef.v, 0);
        else
            glued.add_edge(ed.u, ed.v, ed.color);
    }
    REQUIRE(glued.connected());
    // use the bubble pairing induced by the quartic structure
    StackedMap sm = psi0(glued, Pairing{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    int phi0 = stacked_zero_score(sm);
    bool found_bridge = false;
    for (int e = 0; e < sm.n_edges() && !found_bridge; e++) {
        if (sm.edges[e].color != 0) continue;
        auto res = unhook(sm, e);
        if (!res.bridge) continue;
        found_bridge = true;
        CHECK(stacked_zero_score(res.map) == phi0 + 3);  // I2 = 0 on a bridge
        CHECK(res.i2 == 0);
    }
    CHECK(found_bridge);
}

TEST_CASE("projected map and trees") {
    ColoredGraph q = fx::quartic_bubble(3, 1);
    auto canon = is_melonic(q).canonical_pairing;
    ColoredGraph cov = covering(q, canon);
    StackedMap sm = psi0(cov, canon);
    auto pr = projected(sm);
    CHECK(pr.n_bubbles == 1);
    CHECK(stacked_is_tree(sm));

    // bijection built with the canonical pairing, covering from the other
    // pairing: a unicellular non-tree
    Pairing other{{0, 3}, {2, 1}};
    StackedMap sm2 = psi0(covering(q, other), canon);
    CHECK_FALSE(stacked_is_tree(sm2));
}

TEST_CASE("face exploration detects connectivity of the underlying graph") {
    std::mt19937 rng(53);
    int connected_seen = 0, split_seen = 0;
    for (int t = 0; t < 200; t++) {
        int D = 3;
        // possibly disconnected: two melons, pairing may or may not mix them
        std::vector<std::vector<int>> sigma(D + 1, fx::idp(2));
        ColoredGraph g = fx::closed_from_perms(D, sigma);  // two elementary melons
        REQUIRE_FALSE(g.connected());
        Pairing om = random_pairing(g, rng);
        StackedMap sm = psi(g, om);
        auto rep = face_exploration_connected(sm);
        CHECK_FALSE(rep.connected);
        CHECK(rep.whites_visited_once % 2 == 0);
        if (rep.whites_visited_once > 0) split_seen++;

        ColoredGraph h = random_closed(3, 3, rng);
        Pairing om2 = random_pairing(h, rng);
        auto rep2 = face_exploration_connected(psi(h, om2));
        CHECK(rep2.connected);
        connected_seen++;
    }
    CHECK(connected_seen > 0);
    CHECK(split_seen > 0);
}

TEST_CASE("canonical close and boundary of map") {
    // one marked corner: the boundary is the elementary bubble
    ColoredGraph m = fx::elementary_melon(3);
    ColoredGraph open(3, 2);
    open.set_vertex_color(0, true);
    open.set_vertex_color(1, false);
    for (int c = 1; c <= 3; c++) open.add_edge(0, 1, c);
    Pairing om{{0, 1}};
    ColoredGraph closed = canonical_close(open, om);
    CHECK(closed.n_edges() == 4);
    CHECK(closed.marked_edges().size() == 1);
    StackedMap sm = psi0(closed, om);
    auto bd = boundary_of_map(sm);
    CHECK(isomorphic(bd.boundary, fx::elementary_bubble(3)));
}

TEST_CASE("boundary consistency: map boundary equals graph boundary (exhaustive small)") {
    // all bubbles with V <= 4 (D = 3), all pairings, one or two marks
    std::mt19937 rng(59);
    for (int v : {1, 2}) {
        std::vector<int> base = fx::idp(v);
        std::vector<std::vector<int>> sigma{base, base, base};
        std::vector<int> p2 = base, p3 = base;
        do {
            sigma[1] = p2;
            p3 = base;
            do {
                sigma[2] = p3;
                ColoredGraph b = fx::from_perms(3, sigma);
                if (!b.connected()) continue;
                enumerate_pairings(b, [&](const Pairing& om) {
                    ColoredGraph cov = covering(b, om);
                    // delete one color-0 edge, re-close canonically
                    for (int e = 0; e < cov.n_edges(); e++) {
                        if (cov.edge(e).color != 0) continue;
                        ColoredGraph open(cov.dimension(), cov.n_vertices());
                        for (int x = 0; x < cov.n_vertices(); x++) open.set_vertex_color(x, cov.black(x));
                        for (int e2 = 0; e2 < cov.n_edges(); e2++)
                            if (e2 != e) open.add_edge(cov.edge(e2).u, cov.edge(e2).v, cov.edge(e2).color);
                        ColoredGraph closed = canonical_close(open, om);
                        StackedMap sm = psi0(closed, om);
                        auto bd = boundary_of_map(sm);
                        ColoredGraph expect = boundary_graph(open);
                        CHECK(isomorphic(bd.boundary, expect));
                        // score relation: Phi_0(closed unmarked view) =
                        // Phi_0(open) + Phi_0(boundary covering)
                        CHECK(zero_score(closed) == zero_score(open) + bd.phi0_boundary_covering);
                    }
                    return true;
                });
            } while (std::next_permutation(p3.begin(), p3.end()));
        } while (std::next_permutation(p2.begin(), p2.end()));
    }
}

TEST_CASE("simplified map") {
    // K33 with an optimal pairing: degree-3 non-embedded whites
    ColoredGraph k = fx::k33();
    auto ok = optimal_pairings(k);
    ColoredGraph cov = covering(k, ok.pairings.front());
    SimplifiedMap sk = simplified_map(cov, ok.pairings.front());
    CHECK(sk.n_whites == 1);
    CHECK_FALSE(sk.white_embedded[0]);
    CHECK(sk.white_order[0].size() == 3);
    for (int i = 1; i <= 3; i++) CHECK(sk.color_submap_faces(i) == bicolored_cycles(cov, 0, i).count);

    // meander bubble: embedded degree-3 white
    ColoredGraph me = fx::sextic_meander();
    Pairing om{{0, 1}, {2, 3}, {4, 5}};
    ColoredGraph mcov = covering(me, om);
    SimplifiedMap sm = simplified_map(mcov, om);
    CHECK(sm.white_embedded[0]);
    for (int i = 1; i <= 4; i++) CHECK(sm.color_submap_faces(i) == bicolored_cycles(mcov, 0, i).count);

    // k-cyclic bubbles: allowed valencies = p
    ColoredGraph cy = fx::cyclic_bubble(4, 2, 3);
    auto oc = optimal_pairings(cy);
    ColoredGraph ccov = covering(cy, oc.pairings.front());
    SimplifiedMap sc = simplified_map(ccov, oc.pairings.front());
    CHECK(sc.white_order[0].size() == 3);
    for (int i = 1; i <= 4; i++) CHECK(sc.color_submap_faces(i) == bicolored_cycles(ccov, 0, i).count);

    // octahedron with an optimal pairing fails the predicate
    ColoredGraph oct = fx::octahedron();
    auto oo = optimal_pairings(oct);
    ColoredGraph ocov = covering(oct, oo.pairings.front());
    CHECK_THROWS_AS(simplified_map(ocov, oo.pairings.front()), SimplifiedBijectionError);
}

TEST_CASE("quartic map bijection and decomposition") {
    // tree: two quartic bubbles glued acyclically
    ColoredGraph q = fx::quartic_bubble(3, 1);
    ColoredGraph cov = covering(q, is_melonic(q).canonical_pairing);
    ColoredMap m1 = quartic_map(cov);
    CHECK(m1.n_edges() == 1);
    auto d1 = quartic_decomposition(m1);
    CHECK(d1.delta == 0);
    CHECK(d1.order_label == "tree");

    // round trip through the inverse
    ColoredGraph back = quartic_map_inverse(m1);
    CHECK(isomorphic(back, cov));

    // single monochromatic cycle: delta = D - 2
    // build a map with one vertex and one loop of color 1
    ColoredMap loopmap;
    loopmap.D = 4;
    loopmap.edge_color = {1};
    loopmap.vertex_darts = {{0, 1}};
    loopmap.marked_gap = {-1};
    auto d2 = quartic_decomposition(loopmap);
    CHECK(d2.delta == 2);  // D - 2
    CHECK(d2.order_label == "single-monochromatic-cycle");
    ColoredGraph lg = quartic_map_inverse(loopmap);
    CHECK(validate(lg).regularity == Regularity::Closed);
    CHECK(gurau_degree(lg) == 2);
    ColoredMap lm2 = quartic_map(lg);
    CHECK(isomorphic(quartic_map_inverse(lm2), lg));

    // boundary case: one mark
    ColoredMap marked = m1;
    marked.marked_gap[0] = 0;
    auto d3 = quartic_decomposition(marked);
    CHECK(d3.q == 1);
    CHECK(d3.delta == d3.delta_direct);
    CHECK(d3.delta >= d3.boundary_lower_bound);
}

TEST_CASE("quartic map round trips on random quartic gluings") {
    std::mt19937 rng(61);
    for (int t = 0; t < 40; t++) {
        // random gluing of 3 quartic bubbles in D = 3: 6 pairs
        std::vector<ColoredGraph> bubbles;
        ColoredGraph g(3, 12);
        int off = 0;
        for (int c = 0; c < 3; c++) {
            ColoredGraph q = fx::quartic_bubble(3, 1 + (int)(rng() % 3));
            for (int v = 0; v < 4; v++) g.set_vertex_color(off + v, q.black(v));
            for (const Edge& e : q.edges()) g.add_edge(off + e.u, off + e.v, e.color);
            off += 4;
        }
        std::vector<int> blacks, whites;
        for (int v = 0; v < 12; v++) (g.black(v) ? blacks : whites).push_back(v);
        std::shuffle(whites.begin(), whites.end(), rng);
        for (size_t i = 0; i < blacks.size(); i++) g.add_edge(blacks[i], whites[i], 0);
        if (!g.connected()) continue;
        ColoredMap m = quartic_map(g);
        CHECK(isomorphic(quartic_map_inverse(m), g));
        auto d = quartic_decomposition(m);
        CHECK(d.delta == gurau_degree(g));
    }
}
