#include "gem/stacked.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gem {

namespace {

int mod(int a, int b) { return ((a % b) + b) % b; }

struct Dsu {
    std::vector<int> id;
    explicit Dsu(int n) : id(n) { std::iota(id.begin(), id.end(), 0); }
    int find(int x) {
        while (id[x] != x) x = id[x] = id[id[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) id[a] = b;
    }
    int count() {
        int k = 0;
        for (int v = 0; v < (int)id.size(); v++)
            if (find(v) == v) k++;
        return k;
    }
};

}  // namespace

int StackedMap::white_edge(int w, int color) const {
    for (int e = 0; e < n_edges(); e++)
        if (edges[e].white == w && edges[e].color == color) return e;
    return -1;
}

int StackedMap::n_marked() const {
    int k = 0;
    for (const auto& s : stars)
        if (s.marked_gap >= 0) k++;
    return k;
}

int StackedMap::circuit_rank() const {
    int V = n_whites + (int)stars.size();
    int E = n_edges();
    Dsu d(V);
    for (const auto& e : edges) d.unite(e.white, n_whites + e.star);
    return E - V + d.count();
}

int StackedMap::n_components() const {
    Dsu d(n_whites + (int)stars.size());
    for (const auto& e : edges) d.unite(e.white, n_whites + e.star);
    return d.count();
}

void StackedMap::check() const {
    std::vector<int> deg(stars.size(), 0);
    for (int e = 0; e < n_edges(); e++) {
        const StackedEdge& ed = edges[e];
        if (ed.star < 0 || ed.star >= (int)stars.size()) throw std::runtime_error("stacked: bad star ref");
        if (stars[ed.star].order[ed.pos] != e) throw std::runtime_error("stacked: star position mismatch");
        if (stars[ed.star].color != ed.color) throw std::runtime_error("stacked: color mismatch");
        deg[ed.star]++;
    }
    for (size_t s = 0; s < stars.size(); s++)
        if (deg[s] != (int)stars[s].order.size()) throw std::runtime_error("stacked: degree mismatch");
    for (int w = 0; w < n_whites; w++)
        for (int c : colors)
            if (white_edge(w, c) < 0) throw std::runtime_error("stacked: white missing a color");
}

// ---- faces ----

SubmapFaces bicolored_faces(const StackedMap& m, int i, int j, bool twisted) {
    if (i > j) std::swap(i, j);
    int rev_color = twisted ? i : -1;
    std::vector<int> sub;  // submap edge ids
    std::vector<int> slot(m.n_edges(), -1);
    for (int e = 0; e < m.n_edges(); e++)
        if (m.edges[e].color == i || m.edges[e].color == j) {
            slot[e] = (int)sub.size();
            sub.push_back(e);
        }
    SubmapFaces out;
    if (sub.empty()) {
        for (int s = 0; s < (int)m.stars.size(); s++)
            if ((m.stars[s].color == i || m.stars[s].color == j) && m.stars[s].order.empty()) {
                out.vertices++;
                out.components++;
                out.faces++;
                if (m.stars[s].marked_gap < 0) out.interior_faces++;
            }
        return out;
    }
    int E = (int)sub.size();
    // darts: 2k = (edge, star end), 2k+1 = (edge, white end)
    std::vector<int> face_of(2 * E, -1);
    auto other_at_white = [&](int e) {
        const StackedEdge& ed = m.edges[e];
        int oc = (ed.color == i ? j : i);
        return m.white_edge(ed.white, oc);
    };
    auto next_at_star = [&](int e) {
        const StackedEdge& ed = m.edges[e];
        const StackedStar& st = m.stars[ed.star];
        int d = (int)st.order.size();
        bool rev = (st.color == rev_color);
        int p2 = mod(ed.pos + (rev ? -1 : 1), d);
        return st.order[p2];
    };
    auto crossed_gap = [&](int e) {
        // the gap crossed when the face leaves e around its star
        const StackedEdge& ed = m.edges[e];
        const StackedStar& st = m.stars[ed.star];
        int d = (int)st.order.size();
        bool rev = (st.color == rev_color);
        return rev ? mod(ed.pos - 1, d) : ed.pos;
    };
    int nf = 0;
    std::vector<char> face_marked;
    for (int d0 = 0; d0 < 2 * E; d0++) {
        if (face_of[d0] >= 0) continue;
        bool marked = false;
        int d = d0;
        while (face_of[d] < 0) {
            face_of[d] = nf;
            int k = d / 2;
            int e = sub[k];
            if (d % 2 == 1) {
                // (e, white): phi -> next edge around e's star
                const StackedStar& st = m.stars[m.edges[e].star];
                if (st.marked_gap >= 0 && crossed_gap(e) == st.marked_gap) marked = true;
                int e2 = next_at_star(e);
                d = 2 * slot[e2];
            } else {
                // (e, star): phi -> the other submap edge at e's white
                int e2 = other_at_white(e);
                d = 2 * slot[e2] + 1;
            }
        }
        face_marked.push_back(marked);
        nf++;
    }
    out.faces = nf;
    for (char c : face_marked)
        if (!c) out.interior_faces++;
    // vertex / component data of the submap; isolated stars of the submap
    // colors are kept and each bounds one degenerate face
    std::set<int> substars;
    std::set<int> subwhites;
    for (int e : sub) {
        substars.insert(m.edges[e].star);
        subwhites.insert(m.edges[e].white);
    }
    long isolated = 0;
    for (int s = 0; s < (int)m.stars.size(); s++)
        if ((m.stars[s].color == i || m.stars[s].color == j) && m.stars[s].order.empty()) {
            isolated++;
            out.faces++;
            if (m.stars[s].marked_gap < 0) out.interior_faces++;
        }
    out.vertices = (long)substars.size() + (long)subwhites.size() + isolated;
    out.edge_count = E;
    Dsu dsu(m.n_whites + (int)m.stars.size());
    for (int e : sub) dsu.unite(m.edges[e].white, m.n_whites + m.edges[e].star);
    std::set<int> comps;
    for (int e : sub) comps.insert(dsu.find(m.edges[e].white));
    out.components = (long)comps.size() + isolated;
    out.circuit_rank = out.edge_count - out.vertices + out.components;
    long twice_g = 2 * out.components - (out.vertices - out.edge_count + out.faces);
    if (twice_g % 2 != 0) throw std::runtime_error("bicolored_faces: odd Euler defect");
    out.genus = twice_g / 2;
    return out;
}

// ---- psi ----

namespace {

StackedMap build_psi(const ColoredGraph& g, const Pairing& omega, bool zero_rev) {
    int n = (int)omega.size();
    if (2 * n != g.n_vertices()) throw std::runtime_error("psi: pairing does not cover the graph");
    std::vector<int> node_of(g.n_vertices(), -1);
    for (int l = 0; l < n; l++) {
        auto [b, w] = omega[l];
        if (!g.black(b) || g.black(w) || node_of[b] >= 0 || node_of[w] >= 0)
            throw std::runtime_error("psi: pairing inconsistent with g");
        node_of[b] = node_of[w] = l;
    }
    StackedMap m;
    m.colors = g.color_set();
    m.n_whites = n;
    m.zero_reversed = zero_rev;
    m.white_distinguished.assign(n, 0);
    for (int c : m.colors) {
        // directed color-c edges on nodes; remember the g-edge of each step
        std::vector<int> succ(n, -1), via_edge(n, -1);
        for (int l = 0; l < n; l++) {
            int from = (zero_rev && c == 0) ? omega[l].second : omega[l].first;
            int e = g.incident(from, c);
            if (e < 0) throw std::runtime_error("psi: vertex missing color " + std::to_string(c));
            int to = g.edge(e).u == from ? g.edge(e).v : g.edge(e).u;
            succ[l] = node_of[to];
            via_edge[l] = e;
        }
        std::vector<char> seen(n, 0);
        for (int l0 = 0; l0 < n; l0++) {
            if (seen[l0]) continue;
            std::vector<int> cyc;
            int l = l0;
            while (!seen[l]) {
                seen[l] = 1;
                cyc.push_back(l);
                l = succ[l];
            }
            int sid = (int)m.stars.size();
            StackedStar st;
            st.color = c;
            int marked_at = -1;
            for (int t = 0; t < (int)cyc.size(); t++) {
                if (g.edge_marked(via_edge[cyc[t]])) {
                    if (marked_at >= 0) throw std::runtime_error("psi: two marked corners on one star");
                    marked_at = t;
                }
            }
            // rotate deterministically: marked gap last, else smallest node first
            int shift = 0;
            if (marked_at >= 0)
                shift = mod(marked_at + 1, (int)cyc.size());
            else
                shift = (int)(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
            std::rotate(cyc.begin(), cyc.begin() + shift, cyc.end());
            if (marked_at >= 0) st.marked_gap = (int)cyc.size() - 1;
            for (int t = 0; t < (int)cyc.size(); t++) {
                int eid = (int)m.edges.size();
                StackedEdge ed;
                ed.star = sid;
                ed.pos = t;
                ed.white = cyc[t];
                ed.color = c;
                m.edges.push_back(ed);
                st.order.push_back(eid);
            }
            m.stars.push_back(std::move(st));
        }
    }
    m.check();
    return m;
}

}  // namespace

StackedMap psi(const ColoredGraph& g, const Pairing& omega) { return build_psi(g, omega, false); }
StackedMap psi0(const ColoredGraph& g, const Pairing& omega) { return build_psi(g, omega, true); }

std::pair<ColoredGraph, Pairing> psi_inverse(const StackedMap& m) {
    int n = m.n_whites;
    int dim = m.colors.empty() ? 1 : *std::max_element(m.colors.begin(), m.colors.end());
    ColoredGraph g(std::max(dim, 1), 2 * n);
    for (int l = 0; l < n; l++) {
        g.set_vertex_color(2 * l, true);
        g.set_vertex_color(2 * l + 1, false);
    }
    for (const StackedStar& st : m.stars) {
        int d = (int)st.order.size();
        for (int t = 0; t < d; t++) {
            int A = m.edges[st.order[t]].white;
            int B = m.edges[st.order[mod(t + 1, d)]].white;
            int e;
            if (m.zero_reversed && st.color == 0)
                e = g.add_edge(2 * B, 2 * A + 1, st.color);  // white A -> black B
            else
                e = g.add_edge(2 * A, 2 * B + 1, st.color);  // black A -> white B
            if (st.marked_gap == t) g.mark_edge(e);
        }
    }
    Pairing omega(n);
    for (int l = 0; l < n; l++) omega[l] = {2 * l, 2 * l + 1};
    return {std::move(g), std::move(omega)};
}

StackedMap psi_color(const ColoredGraph& g, int i) {
    if (std::find(g.color_set().begin(), g.color_set().end(), i) == g.color_set().end())
        throw std::runtime_error("psi_color: color out of range");
    if (i != 0 && !g.marked_edges().empty()) {
        for (int e : g.marked_edges())
            if (g.edge(e).color == i) throw std::runtime_error("psi_color: marked edges of the deleted color");
    }
    Pairing omega;
    std::vector<char> marked_pair;
    for (int e = 0; e < g.n_edges(); e++)
        if (g.edge(e).color == i) {
            omega.push_back({g.edge(e).u, g.edge(e).v});
            marked_pair.push_back(g.edge_marked(e) ? 1 : 0);
        }
    // sort pairs by black vertex, keeping mark flags aligned
    std::vector<int> idx(omega.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return omega[a] < omega[b]; });
    Pairing om2;
    std::vector<char> mk2;
    for (int t : idx) {
        om2.push_back(omega[t]);
        mk2.push_back(marked_pair[t]);
    }
    ColoredGraph gdel(g.dimension(), g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) gdel.set_vertex_color(v, g.black(v));
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        if (ed.color == i) continue;
        int ne = gdel.add_edge(ed.u, ed.v, ed.color);
        if (g.edge_marked(e)) gdel.mark_edge(ne);
    }
    StackedMap m = build_psi(gdel, om2, false);
    for (size_t l = 0; l < mk2.size(); l++)
        if (mk2[l]) m.white_distinguished[l] = 1;
    return m;
}

int stacked_zero_score(const StackedMap& m) {
    int total = 0;
    for (int c : m.colors) {
        if (c == 0) continue;
        total += bicolored_faces(m, 0, c, /*twisted=*/!m.zero_reversed).interior_faces;
    }
    return total;
}

int stacked_score(const StackedMap& m) {
    int total = 0;
    for (size_t a = 0; a < m.colors.size(); a++)
        for (size_t b = a + 1; b < m.colors.size(); b++) {
            int i = m.colors[a], j = m.colors[b];
            bool twisted = !(m.zero_reversed && i == 0);
            total += bicolored_faces(m, i, j, twisted).interior_faces;
        }
    return total;
}

ColoredGraph canonical_close(const ColoredGraph& g, const Pairing& omega) {
    std::vector<int> mate(g.n_vertices(), -1);
    for (auto [b, w] : omega) {
        mate[b] = w;
        mate[w] = b;
    }
    ColoredGraph out(g.dimension(), g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) out.set_vertex_color(v, g.black(v));
    for (const Edge& e : g.edges()) out.add_edge(e.u, e.v, e.color);
    for (int e : g.marked_edges()) out.mark_edge(e);
    for (int b = 0; b < g.n_vertices(); b++) {
        if (!g.black(b) || g.incident(b, 0) >= 0) continue;
        // walk: pair, color-0 edge, pair, ... until an open white vertex
        int w = mate[b];
        while (g.incident(w, 0) >= 0) w = mate[g.neighbor(w, 0)];
        int ne = out.add_edge(b, w, 0);
        out.mark_edge(ne);
    }
    return out;
}

// ---- unhooking ----

UnhookResult unhook(const StackedMap& m, int e) {
    const StackedEdge& ed = m.edges[e];
    if (m.stars[ed.star].color != 0) throw std::runtime_error("unhook: edge not incident to a color-0 vertex");
    const StackedStar& st = m.stars[ed.star];
    int d = (int)st.order.size();
    if (st.marked_gap >= 0 && (st.marked_gap == ed.pos || st.marked_gap == mod(ed.pos - 1, d)))
        throw std::runtime_error("unhook: edge flanks the marked corner");
    UnhookResult out;
    // I2 before the move: colors i for which the two sides of e lie on
    // different (0,i)-faces
    int D = (int)m.colors.size() - 1;
    for (int c : m.colors) {
        if (c == 0) continue;
        // recompute orbits and compare the two darts of e
        // dart ids inside bicolored_faces are internal; replicate the walk here
        bool twisted = !m.zero_reversed;
        int i = std::min(0, c), j = std::max(0, c);
        int rev_color = twisted ? i : -1;
        auto next_at_star = [&](int x) {
            const StackedEdge& xe = m.edges[x];
            const StackedStar& xs = m.stars[xe.star];
            bool rev = (xs.color == rev_color);
            return xs.order[mod(xe.pos + (rev ? -1 : 1), (int)xs.order.size())];
        };
        auto other_at_white = [&](int x) {
            const StackedEdge& xe = m.edges[x];
            int oc = (xe.color == 0 ? c : 0);
            return m.white_edge(xe.white, oc);
        };
        // walk the face starting from dart (e, white-end) until return; if we
        // traverse the star-end dart of e on the way, both sides share a face
        bool same = false;
        int de = e, side = 1;  // 1 = white end, 0 = star end
        while (true) {
            if (side == 1) {
                int e2 = next_at_star(de);
                de = e2;
                side = 0;
            } else {
                int e2 = other_at_white(de);
                de = e2;
                side = 1;
            }
            if (de == e && side == 0) same = true;
            if (de == e && side == 1) break;
        }
        if (!same) out.i2++;
    }
    out.delta_zero_score = D - 2 * out.i2;

    StackedMap n = m;
    StackedStar& s0 = n.stars[ed.star];
    s0.order.erase(s0.order.begin() + ed.pos);
    if (s0.marked_gap >= 0) {
        // gaps after the removed position slide down by one
        if (s0.marked_gap > ed.pos) s0.marked_gap--;
    }
    for (int t = 0; t < (int)s0.order.size(); t++) n.edges[s0.order[t]].pos = t;
    StackedStar fresh;
    fresh.color = 0;
    fresh.order = {e};
    out.new_star = (int)n.stars.size();
    n.edges[e].star = out.new_star;
    n.edges[e].pos = 0;
    n.stars.push_back(std::move(fresh));
    out.bridge = (n.n_components() > m.n_components());
    out.map = std::move(n);
    out.map.check();
    return out;
}

StackedMap hook(const StackedMap& m, int e, int s, int p) {
    const StackedEdge& ed = m.edges[e];
    if (m.stars[ed.star].color != 0 || m.stars[ed.star].order.size() != 1)
        throw std::runtime_error("hook: edge is not on a free color-0 vertex");
    if (m.stars[s].color != 0) throw std::runtime_error("hook: target is not a color-0 vertex");
    int old_star = ed.star;
    StackedMap n = m;
    StackedStar& target = n.stars[s];
    if (p < 0 || p > (int)target.order.size()) throw std::runtime_error("hook: bad position");
    target.order.insert(target.order.begin() + p, e);
    if (target.marked_gap >= 0 && target.marked_gap >= p) target.marked_gap++;
    n.edges[e].star = s;
    for (int t = 0; t < (int)target.order.size(); t++) n.edges[target.order[t]].pos = t;
    // drop the now-empty star and reindex
    n.stars.erase(n.stars.begin() + old_star);
    for (auto& x : n.edges)
        if (x.star > old_star) x.star--;
    n.check();
    return n;
}

// ---- projection, exploration, boundary ----

ProjectedMap projected(const StackedMap& m) {
    ProjectedMap out;
    Dsu d(m.n_whites);
    for (const StackedStar& st : m.stars) {
        if (st.color == 0) continue;
        for (size_t t = 1; t < st.order.size(); t++)
            d.unite(m.edges[st.order[0]].white, m.edges[st.order[t]].white);
    }
    std::vector<int> bid(m.n_whites, -1);
    int nb = 0;
    for (int w = 0; w < m.n_whites; w++) {
        int r = d.find(w);
        if (bid[r] < 0) bid[r] = nb++;
    }
    out.n_bubbles = nb;
    out.bubble_of_white.resize(m.n_whites);
    for (int w = 0; w < m.n_whites; w++) out.bubble_of_white[w] = bid[d.find(w)];

    std::vector<int> zstars;
    for (int s = 0; s < (int)m.stars.size(); s++)
        if (m.stars[s].color == 0) zstars.push_back(s);
    out.n_black = (int)zstars.size();
    std::vector<int> zid(m.stars.size(), -1);
    for (int t = 0; t < (int)zstars.size(); t++) zid[zstars[t]] = t;
    Dsu dd(nb + out.n_black);
    for (const StackedEdge& e : m.edges)
        if (e.color == 0) {
            out.n_edges++;
            dd.unite(out.bubble_of_white[e.white], nb + zid[e.star]);
        }
    out.components = dd.count();
    out.circuit_rank = out.n_edges - (nb + out.n_black) + out.components;
    return out;
}

bool stacked_is_tree(const StackedMap& m) { return projected(m).circuit_rank == 0; }

ExplorationReport face_exploration_connected(const StackedMap& m) {
    ExplorationReport rep;
    int n = m.n_whites;
    if (n == 0) return rep;
    // states: (white, out) = 2w, (white, in) = 2w+1
    std::vector<std::vector<int>> adj(2 * n);
    for (const StackedStar& st : m.stars) {
        int d = (int)st.order.size();
        for (int t = 0; t < d; t++) {
            int A = m.edges[st.order[t]].white;
            int B = m.edges[st.order[mod(t + 1, d)]].white;
            if (m.zero_reversed && st.color == 0) std::swap(A, B);
            adj[2 * A].push_back(2 * B + 1);
            adj[2 * B + 1].push_back(2 * A);
        }
    }
    std::vector<char> seen(2 * n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    rep.connected = true;
    for (int w = 0; w < n; w++) {
        int k = seen[2 * w] + seen[2 * w + 1];
        if (k < 2) rep.connected = false;
        if (k == 1) rep.whites_visited_once++;
        if (k == 0) rep.whites_unvisited++;
    }
    return rep;
}

BoundaryOfMap boundary_of_map(const StackedMap& m) {
    // marked corners indexed in star order
    std::vector<int> corner_of_star(m.stars.size(), -1);
    int q = 0;
    for (int s = 0; s < (int)m.stars.size(); s++)
        if (m.stars[s].marked_gap >= 0) {
            if (m.stars[s].color != 0) throw std::runtime_error("boundary_of_map: marked corner on a colored vertex");
            corner_of_star[s] = q++;
        }
    if (q == 0) throw std::runtime_error("boundary_of_map: no marked corners");
    int D = 0;
    for (int c : m.colors) D = std::max(D, c);
    BoundaryOfMap out;
    out.boundary = ColoredGraph(D, 2 * q);
    for (int t = 0; t < q; t++) {
        out.boundary.set_vertex_color(2 * t, true);
        out.boundary.set_vertex_color(2 * t + 1, false);
        out.induced_pairing.push_back({2 * t, 2 * t + 1});
    }
    for (int c : m.colors) {
        if (c == 0) continue;
        bool twisted = !m.zero_reversed;
        int rev_color = twisted ? 0 : -1;
        auto next_at_star = [&](int x) {
            const StackedEdge& xe = m.edges[x];
            const StackedStar& xs = m.stars[xe.star];
            bool rev = (xs.color == rev_color);
            return xs.order[mod(xe.pos + (rev ? -1 : 1), (int)xs.order.size())];
        };
        auto crossed_gap = [&](int x) {
            const StackedEdge& xe = m.edges[x];
            const StackedStar& xs = m.stars[xe.star];
            bool rev = (xs.color == rev_color);
            return rev ? mod(xe.pos - 1, (int)xs.order.size()) : xe.pos;
        };
        auto other_at_white = [&](int x) {
            const StackedEdge& xe = m.edges[x];
            return m.white_edge(xe.white, xe.color == 0 ? c : 0);
        };
        // orbit walk over darts (edge, side) of the (0,c)-submap
        std::set<std::pair<int, int>> seen;
        for (int e0 = 0; e0 < m.n_edges(); e0++) {
            if (m.edges[e0].color != 0 && m.edges[e0].color != c) continue;
            for (int side0 : {0, 1}) {
                if (seen.count({e0, side0})) continue;
                std::vector<int> crossings;  // marked corner ids in traversal order
                int de = e0, side = side0;
                do {
                    seen.insert({de, side});
                    if (side == 1) {
                        const StackedStar& xs = m.stars[m.edges[de].star];
                        if (xs.marked_gap >= 0 && crossed_gap(de) == xs.marked_gap)
                            crossings.push_back(corner_of_star[m.edges[de].star]);
                        de = next_at_star(de);
                        side = 0;
                    } else {
                        de = other_at_white(de);
                        side = 1;
                    }
                } while (!(de == e0 && side == side0));
                for (size_t t = 0; t < crossings.size(); t++) {
                    int A = crossings[t], B = crossings[(t + 1) % crossings.size()];
                    out.boundary.add_edge(2 * A, 2 * B + 1, c);
                }
            }
        }
    }
    out.phi0_boundary_covering = covering_zero_score(out.boundary, out.induced_pairing);
    return out;
}

// ---- simplified bijection ----

int SimplifiedMap::color_submap_faces(int i) const {
    // the color-i edge-subset map keeps all black vertices; isolated blacks
    // each bound one degenerate face
    int E = (int)edge_colors.size();
    std::vector<char> in_sub(E, 0);
    for (int e = 0; e < E; e++)
        in_sub[e] = std::find(edge_colors[e].begin(), edge_colors[e].end(), i) != edge_colors[e].end();
    auto next_in = [&](const std::vector<int>& order, int e) {
        int pos = (int)(std::find(order.begin(), order.end(), e) - order.begin());
        for (int t = 1; t <= (int)order.size(); t++) {
            int e2 = order[mod(pos + t, (int)order.size())];
            if (in_sub[e2]) return e2;
        }
        return e;
    };
    std::set<std::pair<int, int>> seen;
    int faces = 0;
    for (int e0 = 0; e0 < E; e0++) {
        if (!in_sub[e0]) continue;
        for (int s0 : {0, 1}) {
            if (seen.count({e0, s0})) continue;
            int e = e0, s = s0;
            do {
                seen.insert({e, s});
                if (s == 1) {
                    e = next_in(black_order[edge_ends[e].second], e);
                    s = 0;
                } else {
                    int w = edge_ends[e].first;
                    if (white_embedded[w]) {
                        e = next_in(white_order[w], e);
                    } else {
                        // at most two submap edges at a non-embedded white
                        int other = -1, cnt = 0;
                        for (int x : white_order[w])
                            if (in_sub[x]) {
                                cnt++;
                                if (x != e) other = x;
                            }
                        if (cnt > 2) throw std::runtime_error("simplified map: non-embedded white of submap degree > 2");
                        e = (other >= 0 ? other : e);
                    }
                    s = 1;
                }
            } while (!(e == e0 && s == s0));
            faces++;
        }
    }
    for (int b = 0; b < (int)black_order.size(); b++) {
        bool isolated = true;
        for (int e : black_order[b])
            if (in_sub[e]) isolated = false;
        if (isolated) faces++;
    }
    return faces;
}

SimplifiedMap simplified_map(const ColoredGraph& g, const Pairing& omega) {
    StackedMap m = psi0(g, omega);
    SimplifiedMap out;
    ProjectedMap pr = projected(m);
    out.n_whites = pr.n_bubbles;
    out.white_order.resize(pr.n_bubbles);
    out.white_embedded.assign(pr.n_bubbles, 0);

    // edges of the simplified map are the pairs of omega
    int n = m.n_whites;
    out.edge_colors.resize(n);
    out.edge_ends.resize(n);
    for (int l = 0; l < n; l++) out.edge_ends[l].first = pr.bubble_of_white[l];

    // color sets and the predicate, bubble by bubble
    std::vector<std::vector<const StackedStar*>> big_stars(pr.n_bubbles);
    for (const StackedStar& st : m.stars) {
        if (st.color == 0) continue;
        int bub = pr.bubble_of_white[m.edges[st.order[0]].white];
        if (st.order.size() >= 2)
            for (int e : st.order) {
                auto& cl = out.edge_colors[m.edges[e].white];
                if (std::find(cl.begin(), cl.end(), st.color) == cl.end()) cl.push_back(st.color);
            }
        if (st.order.size() >= 3) big_stars[bub].push_back(&st);
    }
    for (int l = 0; l < n; l++) std::sort(out.edge_colors[l].begin(), out.edge_colors[l].end());

    std::vector<int> nonleaf_per_color((size_t)(*std::max_element(m.colors.begin(), m.colors.end())) + 1, 0);
    for (int bub = 0; bub < pr.n_bubbles; bub++) {
        std::fill(nonleaf_per_color.begin(), nonleaf_per_color.end(), 0);
        for (const StackedStar& st : m.stars) {
            if (st.color == 0 || st.order.size() < 2) continue;
            if (pr.bubble_of_white[m.edges[st.order[0]].white] == bub) nonleaf_per_color[st.color]++;
        }
        for (int c : m.colors)
            if (c != 0 && nonleaf_per_color[c] > 1)
                throw SimplifiedBijectionError("bubble has two non-leaf star maps of color " + std::to_string(c));
        if (!big_stars[bub].empty()) {
            // all degree>=3 stars must visit the same whites in the same cyclic order
            auto seq_of = [&](const StackedStar* st) {
                std::vector<int> s;
                for (int e : st->order) s.push_back(m.edges[e].white);
                int shift = (int)(std::min_element(s.begin(), s.end()) - s.begin());
                std::rotate(s.begin(), s.begin() + shift, s.end());
                return s;
            };
            auto ref = seq_of(big_stars[bub][0]);
            for (auto* st : big_stars[bub])
                if (seq_of(st) != ref) throw SimplifiedBijectionError("incompatible cyclic orders inside a bubble");
            out.white_embedded[bub] = 1;
            out.white_order[bub] = ref;  // pair ids in cyclic order
        } else {
            for (int l = 0; l < n; l++)
                if (pr.bubble_of_white[l] == bub) out.white_order[bub].push_back(l);
        }
    }
    // black vertices: the color-0 stars
    for (int s = 0; s < (int)m.stars.size(); s++) {
        const StackedStar& st = m.stars[s];
        if (st.color != 0) continue;
        std::vector<int> order;
        for (int e : st.order) order.push_back(m.edges[e].white);
        for (int l : order) out.edge_ends[l].second = (int)out.black_order.size();
        out.black_order.push_back(order);
        out.black_marked_gap.push_back(st.marked_gap);
    }
    return out;
}

// ---- quartic ----

int ColoredMap::n_marks() const {
    int k = 0;
    for (int g : marked_gap)
        if (g >= 0) k++;
    return k;
}

int ColoredMap::components() const {
    Dsu d(n_vertices());
    std::vector<int> owner(2 * n_edges(), -1);
    for (int v = 0; v < n_vertices(); v++)
        for (int dd : vertex_darts[v]) owner[dd] = v;
    for (int e = 0; e < n_edges(); e++) d.unite(owner[2 * e], owner[2 * e + 1]);
    return d.count();
}

long ColoredMap::circuit_rank() const { return n_edges() - n_vertices() + components(); }

int ColoredMap::faces() const {
    std::vector<int> vert_of(2 * n_edges()), pos_of(2 * n_edges());
    for (int v = 0; v < n_vertices(); v++)
        for (int p = 0; p < (int)vertex_darts[v].size(); p++) {
            vert_of[vertex_darts[v][p]] = v;
            pos_of[vertex_darts[v][p]] = p;
        }
    std::vector<char> seen(2 * n_edges(), 0);
    int f = 0;
    for (int d0 = 0; d0 < 2 * n_edges(); d0++) {
        if (seen[d0]) continue;
        int d = d0;
        while (!seen[d]) {
            seen[d] = 1;
            int opp = d ^ 1;
            int v = vert_of[opp];
            d = vertex_darts[v][mod(pos_of[opp] + 1, (int)vertex_darts[v].size())];
        }
        f++;
    }
    return f;
}

SubmapFaces ColoredMap::color_submap(int i) const {
    // all vertices are kept; a vertex with no color-i dart is an isolated
    // component bounding one degenerate face
    SubmapFaces out;
    std::vector<char> in_sub(n_edges(), 0);
    for (int e = 0; e < n_edges(); e++) in_sub[e] = (edge_color[e] == i);
    std::vector<int> vert_of(2 * n_edges()), pos_of(2 * n_edges());
    for (int v = 0; v < n_vertices(); v++)
        for (int p = 0; p < (int)vertex_darts[v].size(); p++) {
            vert_of[vertex_darts[v][p]] = v;
            pos_of[vertex_darts[v][p]] = p;
        }
    long E = 0;
    for (int e = 0; e < n_edges(); e++)
        if (in_sub[e]) E++;
    out.edge_count = E;
    std::set<int> touched;
    for (int e = 0; e < n_edges(); e++)
        if (in_sub[e]) {
            touched.insert(vert_of[2 * e]);
            touched.insert(vert_of[2 * e + 1]);
        }
    long isolated = n_vertices() - (long)touched.size();
    out.vertices = n_vertices();
    Dsu d(n_vertices());
    for (int e = 0; e < n_edges(); e++)
        if (in_sub[e]) d.unite(vert_of[2 * e], vert_of[2 * e + 1]);
    std::set<int> comps;
    for (int v : touched) comps.insert(d.find(v));
    out.components = (long)comps.size() + isolated;
    out.circuit_rank = E - out.vertices + out.components;
    if (E == 0) {
        out.faces = (int)isolated;
        for (int v = 0; v < n_vertices(); v++)
            if (marked_gap[v] < 0) out.interior_faces++;
        out.genus = 0;
        return out;
    }
    // faces with induced rotation
    auto next_dart = [&](int dd) {
        int v = vert_of[dd];
        int p = pos_of[dd];
        int sz = (int)vertex_darts[v].size();
        for (int t = 1; t <= sz; t++) {
            int cand = vertex_darts[v][mod(p + t, sz)];
            if (in_sub[cand / 2]) return cand;
        }
        return dd;
    };
    std::vector<char> seen(2 * n_edges(), 0);
    int f = 0;
    std::vector<char> face_broken;
    for (int d0 = 0; d0 < 2 * n_edges(); d0++) {
        if (!in_sub[d0 / 2] || seen[d0]) continue;
        int dd = d0;
        bool broken = false;
        while (!seen[dd]) {
            seen[dd] = 1;
            int opp = dd ^ 1;
            int v = vert_of[opp];
            // crossing every corner from opp to the next submap dart; broken if
            // the marked corner lies in that range
            if (marked_gap[v] >= 0) {
                int sz = (int)vertex_darts[v].size();
                int p = pos_of[opp];
                for (int t = 0; t < sz; t++) {
                    int gap = mod(p + t, sz);
                    if (gap == marked_gap[v]) broken = true;
                    if (in_sub[vertex_darts[v][mod(p + t + 1, sz)] / 2]) break;
                }
            }
            dd = next_dart(dd ^ 1);
        }
        face_broken.push_back(broken);
        f++;
    }
    out.faces = f;
    for (char b : face_broken)
        if (!b) out.interior_faces++;
    // degenerate faces at isolated vertices, interior unless the vertex is marked
    for (int v = 0; v < n_vertices(); v++)
        if (!touched.count(v)) {
            out.faces++;
            if (marked_gap[v] < 0) out.interior_faces++;
        }
    long twice_g = 2 * out.components - (out.vertices - out.edge_count + out.faces);
    if (twice_g % 2 != 0) throw std::runtime_error("color_submap: odd Euler defect");
    out.genus = twice_g / 2;
    return out;
}

ColoredMap quartic_map(const ColoredGraph& g_in) {
    // identify quartic melonic bubbles and their two (D-1)-pairs
    auto comp = g_in.component_ids();
    int D = g_in.dimension();
    // pairs: (black, white) joined by D-1 parallel non-zero edges
    std::vector<int> pair_of(g_in.n_vertices(), -1);
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> bubble_color;  // distinguished color of each bubble edge
    std::vector<std::pair<int, int>> bubble_pairs;
    {
        // count parallel non-zero edges per (black, white)
        std::map<std::pair<int, int>, int> mult;
        for (const Edge& e : g_in.edges())
            if (e.color != 0) mult[{e.u, e.v}]++;
        for (auto& [bw, k] : mult)
            if (k == D - 1) {
                pair_of[bw.first] = (int)pairs.size();
                pair_of[bw.second] = (int)pairs.size();
                pairs.push_back(bw);
            }
        for (int v = 0; v < g_in.n_vertices(); v++)
            if (pair_of[v] < 0) throw std::runtime_error("quartic_map: non-quartic bubble present");
        // bubbles: two pairs joined by two same-colored edges
        std::set<int> done;
        for (const Edge& e : g_in.edges()) {
            if (e.color == 0) continue;
            int pa = pair_of[e.u], pb = pair_of[e.v];
            if (pa == pb) continue;
            if (done.count(pa)) continue;
            done.insert(pa);
            done.insert(pb);
            bubble_pairs.push_back({pa, pb});
            bubble_color.push_back(e.color);
        }
        if (2 * bubble_pairs.size() != pairs.size()) throw std::runtime_error("quartic_map: non-quartic bubble present");
    }
    // canonical closing when the graph has boundary
    Pairing omega;
    for (auto [b, w] : pairs) omega.push_back({b, w});
    std::sort(omega.begin(), omega.end());
    ColoredGraph g = canonical_close(g_in, omega);

    ColoredMap m;
    m.D = D;
    m.edge_color = bubble_color;
    // darts: bubble edge e has dart 2e at bubble_pairs[e].first, 2e+1 at .second
    std::vector<int> dart_of_pair(pairs.size(), -1);
    for (int e = 0; e < (int)bubble_pairs.size(); e++) {
        dart_of_pair[bubble_pairs[e].first] = 2 * e;
        dart_of_pair[bubble_pairs[e].second] = 2 * e + 1;
    }
    // vertices: cycles alternating color-0 edges and pairs
    std::vector<char> seen(pairs.size(), 0);
    for (size_t p0 = 0; p0 < pairs.size(); p0++) {
        if (seen[p0]) continue;
        std::vector<int> darts;
        int marked_at = -1;
        int p = (int)p0;
        while (!seen[p]) {
            seen[p] = 1;
            darts.push_back(dart_of_pair[p]);
            int b = pairs[p].first;  // black vertex of the pair
            int e0 = g.incident(b, 0);
            if (g.edge_marked(e0)) {
                if (marked_at >= 0) throw std::runtime_error("quartic_map: two marked corners on one vertex");
                marked_at = (int)darts.size() - 1;
            }
            int w2 = g.edge(e0).v;  // white endpoint
            p = pair_of[w2];
        }
        if (marked_at >= 0) {
            std::rotate(darts.begin(), darts.begin() + mod(marked_at + 1, (int)darts.size()), darts.end());
            m.marked_gap.push_back((int)darts.size() - 1);
        } else {
            m.marked_gap.push_back(-1);
        }
        m.vertex_darts.push_back(std::move(darts));
    }
    return m;
}

ColoredGraph quartic_map_inverse(const ColoredMap& m) {
    int D = m.D;
    int E = m.n_edges();
    // pair p of dart d: vertices 4e..4e+3 per bubble: pair0 = (4e, 4e+1),
    // pair1 = (4e+2, 4e+3); blacks even
    ColoredGraph g(D, 4 * E);
    for (int e = 0; e < E; e++) {
        for (int t = 0; t < 4; t++) g.set_vertex_color(4 * e + t, t % 2 == 0);
        int c = m.edge_color[e];
        for (int col = 1; col <= D; col++) {
            if (col == c) continue;
            g.add_edge(4 * e, 4 * e + 1, col);
            g.add_edge(4 * e + 2, 4 * e + 3, col);
        }
        g.add_edge(4 * e, 4 * e + 3, c);
        g.add_edge(4 * e + 2, 4 * e + 1, c);
    }
    auto black_of_dart = [&](int d) { return d % 2 == 0 ? 4 * (d / 2) : 4 * (d / 2) + 2; };
    auto white_of_dart = [&](int d) { return d % 2 == 0 ? 4 * (d / 2) + 1 : 4 * (d / 2) + 3; };
    for (int v = 0; v < m.n_vertices(); v++) {
        int sz = (int)m.vertex_darts[v].size();
        for (int t = 0; t < sz; t++) {
            int a = m.vertex_darts[v][t], b = m.vertex_darts[v][mod(t + 1, sz)];
            int e = g.add_edge(black_of_dart(a), white_of_dart(b), 0);
            if (m.marked_gap[v] == t) g.mark_edge(e);
        }
    }
    return g;
}

QuarticDecomposition quartic_decomposition(const ColoredMap& m) {
    QuarticDecomposition out;
    out.D = m.D;
    out.q = m.n_marks();
    long L = m.circuit_rank();
    long sum_l = 0, sum_g = 0, sum_fint = 0;
    for (int i = 1; i <= m.D; i++) {
        auto sf = m.color_submap(i);
        out.sub_l.push_back(sf.circuit_rank);
        out.sub_g.push_back(sf.genus);
        sum_l += sf.circuit_rank;
        sum_g += sf.genus;
        sum_fint += sf.interior_faces;
    }
    out.lm = L - sum_l;
    out.delta_direct = m.D + (long)(m.D - 1) * m.n_edges() - sum_fint;
    if (out.q == 0) {
        out.delta = m.D * out.lm + (m.D - 2) * sum_l + 2 * sum_g;
        if (out.delta != out.delta_direct) throw std::runtime_error("quartic_decomposition: degree routes disagree");
        if (out.delta == 0)
            out.order_label = "tree";
        else if (out.lm == 0 && sum_l == 1 && sum_g == 0)
            out.order_label = "single-monochromatic-cycle";
        else if (out.lm == 1 && sum_l == 0)
            out.order_label = "single-polychromatic-cycle";
        else if (out.lm == 0 && sum_l == 2 && sum_g == 0)
            out.order_label = "two-monochromatic-cycles";
        else
            out.order_label = "higher-order";
    } else {
        // unmark and compare through the boundary relation
        ColoredMap un = m;
        std::fill(un.marked_gap.begin(), un.marked_gap.end(), -1);
        auto d0 = quartic_decomposition(un);
        // boundary covering by the induced pairing of the marked corners
        ColoredGraph gq = quartic_map_inverse(m);
        std::vector<int> marked = gq.marked_edges();
        // boundary graph vertex order: open vertices in index order
        ColoredGraph g_open(gq.dimension(), gq.n_vertices());
        for (int v = 0; v < gq.n_vertices(); v++) g_open.set_vertex_color(v, gq.black(v));
        std::vector<std::pair<int, int>> mark_ends;
        for (int e = 0; e < gq.n_edges(); e++) {
            const Edge& ed = gq.edge(e);
            if (gq.edge_marked(e))
                mark_ends.push_back({ed.u, ed.v});
            else
                g_open.add_edge(ed.u, ed.v, ed.color);
        }
        ColoredGraph bnd = boundary_graph(g_open);
        std::vector<int> bidx(gq.n_vertices(), -1);
        int t = 0;
        for (int v = 0; v < gq.n_vertices(); v++)
            if (g_open.incident(v, 0) < 0 && gq.incident(v, 0) >= 0) bidx[v] = t++;
        Pairing omega;
        for (auto [b, w] : mark_ends) omega.push_back({bidx[b], bidx[w]});
        std::sort(omega.begin(), omega.end());
        int phi0_bnd = covering_zero_score(bnd, omega);
        out.delta = d0.delta + phi0_bnd;
        if (out.delta != out.delta_direct) throw std::runtime_error("quartic_decomposition: boundary route disagrees");
        out.boundary_lower_bound = 1 + (long)(m.D - 1) * (out.q + lm(bnd, omega));
        out.order_label = "boundary-case";
    }
    return out;
}

// ---- export ----

std::string stacked_to_dot(const StackedMap& m) {
    static const char* palette[] = {"black", "red",   "blue",  "green4", "orange",
                                    "purple", "brown", "cyan4", "magenta"};
    std::ostringstream out;
    out << "graph stacked {\n";
    for (int w = 0; w < m.n_whites; w++)
        out << "  w" << w << " [shape=square,style=" << (m.white_distinguished[w] ? "bold" : "solid") << "];\n";
    for (int s = 0; s < (int)m.stars.size(); s++) {
        const StackedStar& st = m.stars[s];
        if (st.color == 0)
            out << "  s" << s << " [shape=circle,style=filled,fillcolor=black,label=\"\""
                << (st.marked_gap >= 0 ? ",xlabel=\"*\"" : "") << "];\n";
        else
            out << "  s" << s << " [shape=square,color=" << palette[st.color % 9] << ",label=\"" << st.color << "\"];\n";
    }
    for (int e = 0; e < m.n_edges(); e++)
        out << "  s" << m.edges[e].star << " -- w" << m.edges[e].white << " [color=" << palette[m.edges[e].color % 9]
            << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace gem
