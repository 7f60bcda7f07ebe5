#include "gem/syk.hpp"

#include <algorithm>
#include <numeric>

namespace gem {

SykOrder classify_order(const ColoredGraph& bubble, const Pairing& omega) {
    auto rep = validate(bubble);
    if (!rep.bipartite) throw std::runtime_error("syk: non-bipartite input (real sector is out of scope)");
    SykOrder out;
    out.connected = rep.connected;
    StackedMap m = psi(bubble, omega);
    out.delta0 = m.circuit_rank();
    int check = lm(bubble, omega);
    if (check != out.delta0) throw std::runtime_error("syk: circuit rank disagrees with L_m");
    int n = (int)bubble.marked_edges().size();
    out.amplitude_exponent = 1 - n - out.delta0;
    return out;
}

StackedMap prune(const StackedMap& m_in) {
    // rebuild iteratively: drop unmarked leaves (degree-1 stars, and whites of
    // degree 1 after star removals)
    StackedMap m = m_in;
    while (true) {
        std::vector<int> white_deg(m.n_whites, 0);
        for (const auto& e : m.edges) white_deg[e.white]++;
        int victim_star = -1, victim_white = -1;
        for (int s = 0; s < (int)m.stars.size() && victim_star < 0; s++)
            if (m.stars[s].order.size() == 1 && m.stars[s].marked_gap < 0) {
                int w = m.edges[m.stars[s].order[0]].white;
                if (white_deg[w] > 1 || m.white_distinguished[w]) victim_star = s;
            }
        if (victim_star < 0) {
            for (int w = 0; w < m.n_whites && victim_white < 0; w++)
                if (white_deg[w] == 1 && !m.white_distinguished[w]) {
                    int e = -1;
                    for (int x = 0; x < m.n_edges(); x++)
                        if (m.edges[x].white == w) e = x;
                    const StackedStar& st = m.stars[m.edges[e].star];
                    if (st.order.size() > 1 || st.marked_gap >= 0) victim_white = w;
                }
        }
        if (victim_star < 0 && victim_white < 0) return m;

        // remove one pendant edge and its leaf endpoint
        int edge_to_drop, star_side, white_side;
        if (victim_star >= 0) {
            edge_to_drop = m.stars[victim_star].order[0];
            star_side = victim_star;
            white_side = -1;
        } else {
            edge_to_drop = -1;
            for (int x = 0; x < m.n_edges(); x++)
                if (m.edges[x].white == victim_white) edge_to_drop = x;
            star_side = -1;
            white_side = victim_white;
        }
        StackedMap n;
        n.colors = m.colors;
        n.zero_reversed = m.zero_reversed;
        std::vector<int> wmap(m.n_whites, -1), smap(m.stars.size(), -1), emap(m.n_edges(), -1);
        for (int w = 0; w < m.n_whites; w++) {
            if (w == white_side) continue;
            wmap[w] = n.n_whites++;
            n.white_distinguished.push_back(m.white_distinguished[w]);
        }
        for (int s = 0; s < (int)m.stars.size(); s++) {
            if (s == star_side) continue;
            StackedStar st;
            st.color = m.stars[s].color;
            smap[s] = (int)n.stars.size();
            n.stars.push_back(st);
        }
        for (int e = 0; e < m.n_edges(); e++) {
            if (e == edge_to_drop) continue;
            emap[e] = (int)n.edges.size();
            StackedEdge ed = m.edges[e];
            ed.white = wmap[ed.white];
            ed.star = smap[ed.star];
            n.edges.push_back(ed);
        }
        for (int s = 0; s < (int)m.stars.size(); s++) {
            if (smap[s] < 0) continue;
            StackedStar& st = n.stars[smap[s]];
            const StackedStar& old = m.stars[s];
            int removed_pos = -1;
            for (int t = 0; t < (int)old.order.size(); t++) {
                if (old.order[t] == edge_to_drop) {
                    removed_pos = t;
                    continue;
                }
                n.edges[emap[old.order[t]]].pos = (int)st.order.size();
                st.order.push_back(emap[old.order[t]]);
            }
            st.marked_gap = old.marked_gap;
            if (removed_pos >= 0 && st.marked_gap >= 0) {
                // the two corners flanking the pruned edge merge; the mark
                // survives on the merged corner
                int d = (int)old.order.size();
                int nd = d - 1;
                if (nd == 0)
                    st.marked_gap = 0;  // bare marked vertex
                else if (st.marked_gap == removed_pos || st.marked_gap == (removed_pos - 1 + d) % d)
                    st.marked_gap = (removed_pos == 0) ? nd - 1 : removed_pos - 1;
                else if (st.marked_gap > removed_pos)
                    st.marked_gap--;
            }
        }
        m = std::move(n);
    }
}

Scheme to_scheme(const StackedMap& m) {
    bool rooted = false;
    for (const auto& st : m.stars)
        if (st.marked_gap >= 0) rooted = true;
    for (char d : m.white_distinguished)
        if (d) rooted = true;
    if (!rooted) throw std::runtime_error("to_scheme: unrooted vacuum input is ambiguous");

    // degrees
    std::vector<int> white_deg(m.n_whites, 0);
    for (const auto& e : m.edges) white_deg[e.white]++;
    for (int s = 0; s < (int)m.stars.size(); s++)
        if ((int)m.stars[s].order.size() <= 1 && m.stars[s].marked_gap < 0)
            throw std::runtime_error("to_scheme: unmarked leaf present (input not pruned)");
    for (int w = 0; w < m.n_whites; w++)
        if (white_deg[w] <= 1 && !m.white_distinguished[w])
            throw std::runtime_error("to_scheme: unmarked white leaf present (input not pruned)");
    auto star_keep = [&](int s) { return (int)m.stars[s].order.size() >= 3 || m.stars[s].marked_gap >= 0; };
    auto white_keep = [&](int w) { return white_deg[w] >= 3 || m.white_distinguished[w]; };

    Scheme sc;
    std::vector<int> star_vid(m.stars.size(), -1), white_vid(m.n_whites, -1);
    for (int s = 0; s < (int)m.stars.size(); s++)
        if (star_keep(s)) {
            star_vid[s] = (int)sc.vertices.size();
            sc.vertices.push_back({m.stars[s].color, m.stars[s].marked_gap >= 0, (int)m.stars[s].order.size()});
        }
    for (int w = 0; w < m.n_whites; w++)
        if (white_keep(w)) {
            white_vid[w] = (int)sc.vertices.size();
            sc.vertices.push_back({-1, (bool)m.white_distinguished[w], white_deg[w]});
        }

    // walk maximal chains of degree-2 unmarked vertices between kept vertices
    std::vector<char> edge_seen(m.n_edges(), 0);
    auto is_kept_side = [&](int e, bool star_end) {
        return star_end ? star_vid[m.edges[e].star] >= 0 : white_vid[m.edges[e].white] >= 0;
    };
    for (int e0 = 0; e0 < m.n_edges(); e0++) {
        for (int side0 : {0, 1}) {  // 0 = start from star end, 1 = from white end
            if (edge_seen[e0]) continue;
            if (!is_kept_side(e0, side0 == 0)) continue;
            // walk away from the kept endpoint through degree-2 vertices
            int start_v = side0 == 0 ? star_vid[m.edges[e0].star] : white_vid[m.edges[e0].white];
            int whites_inside = 0;
            int e = e0;
            bool at_star = (side0 == 1);  // next endpoint to inspect
            int hops = 0;
            while (true) {
                edge_seen[e] = 1;
                if (at_star) {
                    int s = m.edges[e].star;
                    if (star_vid[s] >= 0) {
                        Scheme::SchemeEdge se;
                        se.a = start_v;
                        se.b = star_vid[s];
                        se.chain = hops > 0;
                        se.chain_whites = whites_inside;
                        se.end_color_a = m.edges[e0].color;
                        se.end_color_b = m.edges[e].color;
                        sc.edges.push_back(se);
                        break;
                    }
                    // degree-2 star: continue through the other edge
                    const StackedStar& st = m.stars[s];
                    int other = st.order[0] == e ? st.order[1] : st.order[0];
                    e = other;
                    at_star = false;
                    hops++;
                } else {
                    int w = m.edges[e].white;
                    if (white_vid[w] >= 0) {
                        Scheme::SchemeEdge se;
                        se.a = start_v;
                        se.b = white_vid[w];
                        se.chain = hops > 0;
                        se.chain_whites = whites_inside;
                        se.end_color_a = m.edges[e0].color;
                        se.end_color_b = m.edges[e].color;
                        sc.edges.push_back(se);
                        break;
                    }
                    whites_inside++;
                    int other = -1;
                    for (int x = 0; x < m.n_edges(); x++)
                        if (x != e && m.edges[x].white == w) other = x;
                    e = other;
                    at_star = true;
                    hops++;
                }
            }
        }
    }
    sc.circuit_rank = (int)sc.edges.size() - (int)sc.vertices.size() + 1;
    int lm_check = m.circuit_rank();
    if (sc.circuit_rank != lm_check) throw std::runtime_error("to_scheme: circuit rank not preserved");
    return sc;
}

// ---- chain generating functions ----

namespace {

// base series in y: S1 = (D-1) y^2 / ((1+y)(1-(D-1)y)),
//                   S2 = 1 / ((1+y)(1-(D-1)y))
std::vector<BigInt> base_s2(int D, int n) {
    std::vector<BigInt> den(n + 1, 0);
    // (1+y)(1-(D-1)y) = 1 + (2-D) y - (D-1) y^2
    den[0] = 1;
    if (n >= 1) den[1] = 2 - D;
    if (n >= 2) den[2] = -(D - 1);
    return series_inverse(den, n);
}

std::vector<BigInt> base_s1(int D, int n) {
    auto s2 = base_s2(D, n);
    std::vector<BigInt> out(n + 1, 0);
    for (int k = 2; k <= n; k++) out[k] = BigInt(D - 1) * s2[k - 2];
    return out;
}

std::vector<BigInt> add(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); i++) a[i] += b[i];
    return a;
}

std::vector<BigInt> one(int n) {
    std::vector<BigInt> v(n + 1, 0);
    v[0] = 1;
    return v;
}

}  // namespace

ChainSeries chain_gf(ChainKind kind, int D, int order) {
    if (order > 1000) throw std::runtime_error("chain_gf: order cap exceeded");
    ChainSeries out;
    auto s1 = base_s1(D, order);
    auto s2 = base_s2(D, order);
    switch (kind) {
        case ChainKind::BB_ii:  // (1/z_black) S1
            out.shift_white = 0;
            out.shift_black = -1;
            out.y_coeffs = s1;
            break;
        case ChainKind::BB_ij:  // z_white S2
            out.shift_white = 1;
            out.shift_black = 0;
            out.y_coeffs = s2;
            break;
        case ChainKind::WW_ij:  // z_black^2 z_white S2
            out.shift_white = 1;
            out.shift_black = 2;
            out.y_coeffs = s2;
            break;
        case ChainKind::WW_ii:  // z_black (1 + S1)
            out.shift_white = 0;
            out.shift_black = 1;
            out.y_coeffs = add(one(order), s1);
            break;
        case ChainKind::WB_ij:  // z_black z_white S2
            out.shift_white = 1;
            out.shift_black = 1;
            out.y_coeffs = s2;
            break;
        case ChainKind::WB_ii:  // 1 + S1
            out.shift_white = 0;
            out.shift_black = 0;
            out.y_coeffs = add(one(order), s1);
            break;
        case ChainKind::WW_ii_star:  // z_black S1
            out.shift_white = 0;
            out.shift_black = 1;
            out.y_coeffs = s1;
            break;
        case ChainKind::WB_ii_star:  // S1
            out.shift_white = 0;
            out.shift_black = 0;
            out.y_coeffs = s1;
            break;
    }
    return out;
}

std::vector<BigInt> tree_series(int D, int order) {
    SeriesSpec spec;
    spec.terms.push_back({1, 1, D});
    return series_solve(spec, order);
}

std::vector<BigInt> composite_gf(const std::string& name, int D, int order) {
    int n = order;
    auto gt = tree_series(D, n);
    // y(z) = z G_T^D
    auto gtD = series_pow(gt, D, n);
    std::vector<BigInt> y(n + 1, 0);
    for (int k = 1; k <= n; k++) y[k] = gtD[k - 1];
    if (name == "G4_LO") {
        // D(D-1) z G_T^{D+2} / (1 - (D-1) z G_T^D)
        auto num = series_pow(gt, D + 2, n);
        std::vector<BigInt> znum(n + 1, 0);
        for (int k = 1; k <= n; k++) znum[k] = num[k - 1] * BigInt(D) * BigInt(D - 1);
        std::vector<BigInt> den = one(n);
        for (int k = 0; k <= n; k++) den[k] -= BigInt(D - 1) * y[k];
        return series_mul(znum, series_inverse(den, n), n);
    }
    if (name == "G2_NLO") {
        // (D(D-1)/2) y^2 (2G_T + D-2 + 2y G_T (D-1)(G_T^2-1)) / ((1+y)(1-(D-1)y)^2)
        auto gt2 = series_mul(gt, gt, n);
        std::vector<BigInt> gts = gt2;
        gts[0] -= 1;  // G_T^2 - 1
        auto tail = series_mul(series_mul(y, gt, n), gts, n);
        std::vector<BigInt> numpart(n + 1, 0);
        for (int k = 0; k <= n; k++) numpart[k] = 2 * gt[k] + 2 * BigInt(D - 1) * tail[k];
        numpart[0] += D - 2;
        auto y2 = series_mul(y, y, n);
        auto num = series_mul(y2, numpart, n);
        // denominator (1+y)(1-(D-1)y)^2 evaluated at y(z)
        std::vector<BigInt> oneplus = one(n);
        for (int k = 0; k <= n; k++) oneplus[k] += y[k];
        std::vector<BigInt> onemin = one(n);
        for (int k = 0; k <= n; k++) onemin[k] -= BigInt(D - 1) * y[k];
        auto den = series_mul(oneplus, series_mul(onemin, onemin, n), n);
        auto res = series_mul(num, series_inverse(den, n), n);
        // multiply by D(D-1)/2 (always an integer times the series)
        BigInt half_num = BigInt(D) * BigInt(D - 1);
        for (auto& c : res) {
            BigInt t = c * half_num;
            if (t % 2 != 0) throw std::runtime_error("G2_NLO: non-integer coefficient");
            c = t / 2;
        }
        return res;
    }
    throw std::runtime_error("composite_gf: unknown name " + name);
}

// ---- brute-force covering counts ----

std::vector<OrderCountRow> count_by_order(int D, int k, int n_marks, int v_max) {
    if (2 * v_max > 12) throw std::runtime_error("count_by_order: cap exceeded");
    std::vector<OrderCountRow> rows;
    for (int v = 1; v <= v_max; v++) {
        OrderCountRow row;
        row.v = v;
        BigInt labeled = 0;
        // sigma_1 = id gauge; sigma_2..sigma_D free; tau over pairings
        std::vector<std::vector<int>> sigma(D + 1);
        std::vector<int> base(v);
        std::iota(base.begin(), base.end(), 0);
        sigma[1] = base;

        // connectivity of the bubble given sigmas
        auto bubble_connected = [&]() {
            std::vector<int> id(v);
            std::iota(id.begin(), id.end(), 0);
            std::function<int(int)> find = [&](int x) {
                while (id[x] != x) x = id[x] = id[id[x]];
                return x;
            };
            for (int c = 2; c <= D; c++)
                for (int i = 0; i < v; i++) {
                    int a = find(i), b = find(sigma[c][i]);
                    if (a != b) id[a] = b;
                }
            int roots = 0;
            for (int i = 0; i < v; i++)
                if (find(i) == i) roots++;
            return roots == 1;
        };

        std::function<void(int)> rec = [&](int c) {
            if (c > D) {
                if (!bubble_connected()) return;
                // all pairings tau
                std::vector<int> tau(base);
                do {
                    // cycle sizes per color of tau^{-1} sigma_c; the (0,c)-cycles
                    int phi0 = 0;
                    std::vector<int> inv_tau(v);
                    for (int i = 0; i < v; i++) inv_tau[tau[i]] = i;
                    std::vector<long> group_sizes;
                    for (int c2 = 1; c2 <= D; c2++) {
                        std::vector<char> seen(v, 0);
                        for (int i = 0; i < v; i++) {
                            if (seen[i]) continue;
                            int len = 0, x = i;
                            while (!seen[x]) {
                                seen[x] = 1;
                                len++;
                                x = inv_tau[sigma[c2][x]];
                            }
                            phi0++;
                            group_sizes.push_back(len);
                        }
                    }
                    int lm_val = (D - 1) * v + 1 - phi0;
                    if (lm_val == k) {
                        if (n_marks == 0) {
                            labeled += 1;
                        } else {
                            // ordered tuples of distinct colored edges, at most
                            // one per bicolored cycle: n! e_n(group sizes)
                            std::vector<BigInt> en(n_marks + 1, 0);
                            en[0] = 1;
                            for (long s : group_sizes)
                                for (int t = n_marks; t >= 1; t--) en[t] += en[t - 1] * s;
                            BigInt fact = 1;
                            for (int t = 2; t <= n_marks; t++) fact *= t;
                            labeled += en[n_marks] * fact;
                        }
                    }
                } while (std::next_permutation(tau.begin(), tau.end()));
                return;
            }
            std::vector<int> perm(base);
            do {
                sigma[c] = perm;
                rec(c + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(2);
        if (n_marks == 0) {
            row.rooted = labeled;  // labeled mode only for vacuum counts
        } else {
            BigInt denom = 1;
            for (int t = 2; t <= v; t++) denom *= t;
            if (labeled % denom != 0) throw std::runtime_error("count_by_order: symmetry division not exact");
            row.rooted = labeled / denom;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gem
