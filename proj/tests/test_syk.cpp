#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "gem/syk.hpp"

using namespace gem;
namespace fx = fixtures;

TEST_CASE("classify order") {
    ColoredGraph q = fx::quartic_bubble(3, 1);
    auto w = is_melonic(q);
    CHECK(classify_order(q, w.canonical_pairing).delta0 == 0);

    auto ok = optimal_pairings(fx::k33());
    auto r = classify_order(fx::k33(), ok.pairings.front());
    CHECK(r.delta0 == 1);
    CHECK(r.connected);
    CHECK(r.amplitude_exponent == 1 - 0 - 1);

    // an NLO covering: quartic bubble with the non-canonical pairing in D = 3
    // has delta0 = D - 2 = 1
    Pairing other{{0, 3}, {2, 1}};
    CHECK(classify_order(q, other).delta0 == 1);
}

TEST_CASE("prune preserves the circuit rank and removes unmarked leaves") {
    std::mt19937 rng(67);
    for (int t = 0; t < 60; t++) {
        // random covering of a random bubble, classified through color 0
        std::vector<std::vector<int>> sigma;
        for (int c = 0; c < 3; c++) {
            auto p = fx::idp(3);
            std::shuffle(p.begin(), p.end(), rng);
            sigma.push_back(p);
        }
        ColoredGraph b = fx::from_perms(3, sigma);
        if (!b.connected()) continue;
        auto p = Pairing{};
        std::vector<int> w = fx::idp(3);
        std::shuffle(w.begin(), w.end(), rng);
        for (int i = 0; i < 3; i++) p.push_back({2 * i, 2 * w[i] + 1});
        std::sort(p.begin(), p.end());
        ColoredGraph cov = covering(b, p);
        // mark one colored edge (canonical: it is alone on its cycles)
        cov.mark_edge(cov.incident(0, 1));
        StackedMap m = psi_color(cov, 0);
        int L = m.circuit_rank();
        StackedMap pruned = prune(m);
        CHECK(pruned.circuit_rank() == L);
        // no unmarked leaves remain
        std::vector<int> wd(pruned.n_whites, 0);
        for (auto& e : pruned.edges) wd[e.white]++;
        for (int s = 0; s < (int)pruned.stars.size(); s++)
            if (pruned.stars[s].order.size() == 1) CHECK(pruned.stars[s].marked_gap >= 0);
        for (int ww = 0; ww < pruned.n_whites; ww++)
            if (wd[ww] <= 1) CHECK(pruned.white_distinguished[ww]);
    }
}

TEST_CASE("tree with one marked corner prunes to a single marked vertex") {
    ColoredGraph q = fx::quartic_bubble(3, 1);
    ColoredGraph cov = covering(q, is_melonic(q).canonical_pairing);
    cov.mark_edge(cov.incident(0, 1));  // mark a colored edge
    StackedMap m = psi_color(cov, 0);
    REQUIRE(stacked_is_tree(m));
    StackedMap pruned = prune(m);
    CHECK(pruned.n_edges() == 0);
    CHECK(pruned.stars.size() == 1);
    CHECK(pruned.stars[0].marked_gap >= 0);
}

TEST_CASE("to_scheme") {
    // NLO 2-point contribution: quartic bubble, non-canonical pairing, one mark
    ColoredGraph q = fx::quartic_bubble(3, 1);
    ColoredGraph cov = covering(q, Pairing{{0, 3}, {2, 1}});
    cov.mark_edge(cov.incident(0, 2));
    StackedMap m = psi_color(cov, 0);
    StackedMap pruned = prune(m);
    Scheme sc = to_scheme(pruned);
    CHECK(sc.circuit_rank == 1);
    // delta0 is preserved through pruning and chain collapse
    CHECK(sc.circuit_rank == m.circuit_rank());

    // unrooted vacuum input is rejected
    ColoredGraph cov2 = covering(q, Pairing{{0, 3}, {2, 1}});
    StackedMap m2 = psi_color(cov2, 0);
    CHECK_THROWS(to_scheme(prune(m2)));
}

TEST_CASE("chain generating functions") {
    // BB_ij: first coefficient in z_white is 1 (a bare white vertex)
    auto c = chain_gf(ChainKind::BB_ij, 3, 6);
    CHECK(c.shift_white == 1);
    CHECK(c.shift_black == 0);
    CHECK(c.y_coeffs[0] == 1);
    // BB_ii starts at y^2/z_black: one white and one black inside
    auto c2 = chain_gf(ChainKind::BB_ii, 3, 6);
    CHECK(c2.y_coeffs[0] == 0);
    CHECK(c2.y_coeffs[1] == 0);
    CHECK(c2.y_coeffs[2] == 2);  // D - 1
    // series identities: WW_ij = z_black^2 BB_ij etc. hold by construction;
    // check the linear combination (D-1)y^2 S2 + y S2 = y(1 + (D-1)y)S2 is
    // the geometric series 1/(1-(D-1)y) shifted: D G_bb_ii + D(D-1) G_bb_ij
    int D = 3, n = 8;
    auto s1 = chain_gf(ChainKind::BB_ii, D, n).y_coeffs;
    auto s2 = chain_gf(ChainKind::BB_ij, D, n).y_coeffs;
    // combination in y with z_black = z_white = sqrt(y) bookkeeping:
    // D*S1 + D(D-1)*y*S2 should equal D(D-1) y / (1 - (D-1)y) ... y^k coeff
    for (int k = 1; k <= n; k++) {
        BigInt lhs = BigInt(D) * s1[k] + BigInt(D) * BigInt(D - 1) * s2[k - 1];
        BigInt rhs = BigInt(D) * BigInt(D - 1);
        for (int t = 1; t < k; t++) rhs *= (D - 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("composite generating functions") {
    // G4_LO order z^1 is D(D-1)
    for (int D : {3, 4}) {
        auto g4 = composite_gf("G4_LO", D, 4);
        CHECK(g4[0] == 0);
        CHECK(g4[1] == D * (D - 1));
    }
    // D=3 order z^2 coefficient: 42 (computed by expanding the closed form)
    auto g4 = composite_gf("G4_LO", 3, 5);
    CHECK(g4[2] == 42);
    // G2_NLO: lowest order z^2 with coefficient D(D-1)/2 * (2 + D - 2) = D^2(D-1)/2
    for (int D : {3, 4}) {
        auto g2 = composite_gf("G2_NLO", D, 4);
        CHECK(g2[0] == 0);
        CHECK(g2[1] == 0);
        CHECK(g2[2] == D * D * (D - 1) / 2);
    }
    CHECK_THROWS(composite_gf("nope", 3, 3));
}

TEST_CASE("count_by_order cross-checks the series at small sizes") {
    // LO 4-point: delta0 = 0, two ordered marks
    auto rows = count_by_order(3, 0, 2, 3);
    auto g4 = composite_gf("G4_LO", 3, 3);
    for (auto& r : rows) CHECK(r.rooted == g4[r.v]);
    // NLO 2-point: delta0 = 1, one mark
    auto rows2 = count_by_order(3, 1, 1, 3);
    auto g2 = composite_gf("G2_NLO", 3, 3);
    for (auto& r : rows2) CHECK(r.rooted == g2[r.v]);
    // LO 2-point: delta0 = 0, one mark of any color: D copies of the tree series
    auto rows3 = count_by_order(3, 0, 1, 3);
    auto gt = tree_series(3, 3);
    for (auto& r : rows3) CHECK(r.rooted == BigInt(3) * gt[r.v]);
    CHECK_THROWS(count_by_order(3, 0, 1, 7));
}
