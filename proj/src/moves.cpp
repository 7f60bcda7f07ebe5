#include "gem/moves.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gem {

namespace {

// component ids of the subgraph keeping only edges with colors NOT in `drop`
std::vector<int> complement_components(const ColoredGraph& g, const std::vector<int>& drop) {
    uint64_t mask = 0;
    for (int c : drop) mask |= 1ull << c;
    std::vector<int> id(g.n_vertices());
    std::iota(id.begin(), id.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (id[x] != x) x = id[x] = id[id[x]];
        return x;
    };
    for (const Edge& e : g.edges())
        if (!(mask & (1ull << e.color))) {
            int a = find(e.u), b = find(e.v);
            if (a != b) id[a] = b;
        }
    std::vector<int> comp(g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) comp[v] = find(v);
    return comp;
}

// induced subgraph of the component of v0 keeping colors not in `drop`
ColoredGraph component_subgraph(const ColoredGraph& g, int v0, const std::vector<int>& drop) {
    auto comp = complement_components(g, drop);
    uint64_t mask = 0;
    for (int c : drop) mask |= 1ull << c;
    std::vector<int> remap(g.n_vertices(), -1);
    int n = 0;
    for (int v = 0; v < g.n_vertices(); v++)
        if (comp[v] == comp[v0]) remap[v] = n++;
    ColoredGraph out(g.dimension(), n);
    for (int v = 0; v < g.n_vertices(); v++)
        if (remap[v] >= 0) out.set_vertex_color(remap[v], g.black(v));
    for (const Edge& e : g.edges())
        if (!(mask & (1ull << e.color)) && remap[e.u] >= 0) out.add_edge(remap[e.u], remap[e.v], e.color);
    return out;
}

// Sphere certificate for a residue graph: exact for <= 3 colors, planar-jacket
// sufficient test otherwise.
TopologyFlag certify_sphere(const ColoredGraph& comp) {
    auto cs = comp.color_set();
    if (comp.n_vertices() <= 1 || cs.size() <= 2) return TopologyFlag::Preserved;  // S^0, S^1
    if (cs.size() == 3) {
        long V = comp.n_vertices(), E = comp.n_edges(), F = score(comp);
        return (V - E + F == 2) ? TopologyFlag::Preserved : TopologyFlag::Unknown;
    }
    for (const Jacket& j : jackets(comp))
        if (j.genus == 0) return TopologyFlag::Preserved;
    return TopologyFlag::Unknown;
}

std::vector<int> edges_between(const ColoredGraph& g, int a, int b) {
    std::vector<int> out;
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) out.push_back(e);
    }
    return out;
}

}  // namespace

std::pair<ColoredGraph, MoveRecord> dipole_contract(const ColoredGraph& g, int b, int w) {
    if (!g.black(b) || g.black(w)) throw MoveError("dipole_contract: expects (black, white)");
    auto between = edges_between(g, b, w);
    if (between.empty()) throw MoveError("dipole_contract: vertices share no edge");
    std::vector<int> colors;
    for (int e : between) colors.push_back(g.edge(e).color);
    auto comp = complement_components(g, colors);
    if (comp[b] == comp[w]) throw MoveError("not a dipole (same component in complement)");

    MoveRecord rec;
    rec.kind = MoveKind::DipoleContract;
    rec.vertices = {b, w};
    rec.edges = between;
    int phi_before = score(g), phi0_before = zero_score(g);

    // the side condition is certified on one of the two complement components
    TopologyFlag f1 = certify_sphere(component_subgraph(g, b, colors));
    TopologyFlag f2 = certify_sphere(component_subgraph(g, w, colors));
    rec.topology =
        (f1 == TopologyFlag::Preserved || f2 == TopologyFlag::Preserved) ? TopologyFlag::Preserved : TopologyFlag::Unknown;

    std::vector<int> remap(g.n_vertices(), -1);
    int n = 0;
    for (int v = 0; v < g.n_vertices(); v++)
        if (v != b && v != w) remap[v] = n++;
    ColoredGraph out(g.dimension(), n);
    for (int v = 0; v < g.n_vertices(); v++)
        if (remap[v] >= 0) out.set_vertex_color(remap[v], g.black(v));
    rec.edge_remap.assign(g.n_edges(), -1);
    uint64_t cmask = 0;
    for (int c : colors) cmask |= 1ull << c;
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        bool atb = (ed.u == b || ed.v == b), atw = (ed.u == w || ed.v == w);
        if (atb && atw) continue;  // the dipole edges vanish
        if (!atb && !atw) {
            rec.edge_remap[e] = out.add_edge(remap[ed.u], remap[ed.v], ed.color);
            if (g.edge_marked(e)) out.mark_edge(rec.edge_remap[e]);
        }
    }
    // rejoin the complementary half-edges color by color
    for (int c : g.color_set()) {
        if (cmask & (1ull << c)) continue;
        int eb = g.incident(b, c), ew = g.incident(w, c);
        if ((eb < 0) != (ew < 0)) throw MoveError("dipole_contract: dangling half-edge of color " + std::to_string(c));
        if (eb < 0) continue;
        int x = g.neighbor(b, c);  // white
        int y = g.neighbor(w, c);  // black
        int ne = out.add_edge(remap[y], remap[x], c);
        rec.edge_remap[eb] = ne;
        rec.edge_remap[ew] = ne;
        if (g.edge_marked(eb) || g.edge_marked(ew)) out.mark_edge(ne);
    }
    rec.delta_score = score(out) - phi_before;
    rec.delta_zero_score = zero_score(out) - phi0_before;
    return {std::move(out), std::move(rec)};
}

std::pair<ColoredGraph, MoveRecord> dipole_insert(const ColoredGraph& g, const std::vector<int>& colors,
                                                  const std::vector<int>& target_edges) {
    auto cs = g.color_set();
    std::set<int> inset(colors.begin(), colors.end());
    std::vector<int> comp_colors;
    for (int c : cs)
        if (!inset.count(c)) comp_colors.push_back(c);
    if (comp_colors.size() != target_edges.size()) throw MoveError("dipole_insert: need one target edge per complement color");
    std::set<int> seen;
    for (size_t i = 0; i < target_edges.size(); i++) {
        int c = g.edge(target_edges[i]).color;
        if (inset.count(c) || seen.count(c)) throw MoveError("dipole_insert: color mismatch in target edges");
        seen.insert(c);
    }
    auto comp = complement_components(g, colors);
    int c0 = comp[g.edge(target_edges[0]).u];
    for (int e : target_edges)
        if (comp[g.edge(e).u] != c0 || comp[g.edge(e).v] != c0)
            throw MoveError("dipole_insert: target edges not in one component of the complement");

    MoveRecord rec;
    rec.kind = MoveKind::DipoleInsert;
    int phi_before = score(g), phi0_before = zero_score(g);
    ColoredGraph out(g.dimension(), g.n_vertices() + 2);
    for (int v = 0; v < g.n_vertices(); v++) out.set_vertex_color(v, g.black(v));
    int nb = g.n_vertices(), nw = g.n_vertices() + 1;
    out.set_vertex_color(nb, true);
    out.set_vertex_color(nw, false);
    rec.vertices = {nb, nw};
    std::set<int> targets(target_edges.begin(), target_edges.end());
    rec.edge_remap.assign(g.n_edges(), -1);
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        if (targets.count(e)) {
            out.add_edge(ed.u, nw, ed.color);
            out.add_edge(nb, ed.v, ed.color);
        } else {
            rec.edge_remap[e] = out.add_edge(ed.u, ed.v, ed.color);
            if (g.edge_marked(e)) out.mark_edge(rec.edge_remap[e]);
        }
    }
    for (int c : colors) rec.edges.push_back(out.add_edge(nb, nw, c));
    // the insertion preserves topology when the created pair is a certified
    // proper dipole in the result
    auto ncomp = complement_components(out, colors);
    if (ncomp[nb] != ncomp[nw]) {
        TopologyFlag f1 = certify_sphere(component_subgraph(out, nb, colors));
        TopologyFlag f2 = certify_sphere(component_subgraph(out, nw, colors));
        rec.topology = (f1 == TopologyFlag::Preserved || f2 == TopologyFlag::Preserved) ? TopologyFlag::Preserved
                                                                                        : TopologyFlag::Unknown;
    } else {
        rec.topology = TopologyFlag::Unknown;
    }
    rec.delta_score = score(out) - phi_before;
    rec.delta_zero_score = zero_score(out) - phi0_before;
    return {std::move(out), std::move(rec)};
}

int common_cycle_deficiency(const ColoredGraph& g, int f, int fp) {
    const Edge& ef = g.edge(f);
    const Edge& eg = g.edge(fp);
    if (ef.color != eg.color) throw MoveError("edges differ in color");
    int c0 = ef.color;
    int deficiency = 0;
    for (int i : g.color_set()) {
        if (i == c0) continue;
        // walk the (c0,i)-cycle containing f and look for fp
        bool found = false;
        int v = ef.u, c = c0;
        int e = g.incident(v, c);
        int start = v;
        while (true) {
            if (e == fp) found = true;
            v = (g.edge(e).u == v) ? g.edge(e).v : g.edge(e).u;
            c = (c == c0 ? i : c0);
            e = g.incident(v, c);
            if (e < 0) break;  // open path: treat as distinct cycles
            if (v == start && c == c0) break;
        }
        if (!found) deficiency++;
    }
    return deficiency;
}

std::pair<ColoredGraph, MoveRecord> rho_switch(const ColoredGraph& g, int f, int fp) {
    if (f == fp) throw MoveError("rho_switch: need two distinct edges");
    const Edge& ef = g.edge(f);
    const Edge& eg = g.edge(fp);
    if (ef.color != 0 || eg.color != 0) throw MoveError("rho_switch: non-color-0 edges");
    MoveRecord rec;
    rec.kind = MoveKind::RhoSwitch;
    rec.edges = {f, fp};
    rec.common_cycles = common_cycle_deficiency(g, f, fp);
    int phi_before = score(g), phi0_before = zero_score(g);

    ColoredGraph out(g.dimension(), g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) out.set_vertex_color(v, g.black(v));
    rec.edge_remap.resize(g.n_edges());
    std::iota(rec.edge_remap.begin(), rec.edge_remap.end(), 0);
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        if (e == f)
            out.add_edge(ef.u, eg.v, 0);
        else if (e == fp)
            out.add_edge(eg.u, ef.v, 0);
        else
            out.add_edge(ed.u, ed.v, ed.color);
        if (g.edge_marked(e)) out.mark_edge(e);
    }
    rec.delta_score = score(out) - phi_before;
    rec.delta_zero_score = zero_score(out) - phi0_before;
    rec.disconnects = (out.n_components() > g.n_components());
    rec.topology = rec.disconnects ? TopologyFlag::ConnectedSum : TopologyFlag::Unknown;
    return {std::move(out), std::move(rec)};
}

std::pair<ColoredGraph, MoveRecord> flip(const ColoredGraph& g, int e1, int e2) {
    if (e1 == e2) throw MoveError("flip: need two distinct edges");
    const Edge& a = g.edge(e1);
    const Edge& b = g.edge(e2);
    if (a.color != b.color) throw MoveError("flip: colors differ");
    if (a.u == b.u || a.v == b.v) throw MoveError("flip: edges share an endpoint");
    int D1 = (int)g.color_set().size() - 1;
    // locate the h-dipole whose two vertices carry e1 and e2
    bool ok = false;
    TopologyFlag topo = TopologyFlag::Unknown;
    for (int x : {a.u, a.v})
        for (int y : {b.u, b.v}) {
            if (g.black(x) == g.black(y)) continue;
            int bb = g.black(x) ? x : y, ww = g.black(x) ? y : x;
            auto between = edges_between(g, bb, ww);
            int h = (int)between.size();
            if (h < 1 || h > D1 - 1) continue;
            std::vector<int> colors;
            for (int e : between) colors.push_back(g.edge(e).color);
            auto comp = complement_components(g, colors);
            if (comp[bb] != comp[ww]) {
                ok = true;
                TopologyFlag f1 = certify_sphere(component_subgraph(g, bb, colors));
                TopologyFlag f2 = certify_sphere(component_subgraph(g, ww, colors));
                if (f1 == TopologyFlag::Preserved || f2 == TopologyFlag::Preserved) topo = TopologyFlag::Preserved;
            }
        }
    if (!ok) throw MoveError("flip: edges are not incident to a common dipole");

    MoveRecord rec;
    rec.kind = MoveKind::Flip;
    rec.topology = topo;
    rec.edges = {e1, e2};
    int phi_before = score(g), phi0_before = zero_score(g);
    ColoredGraph out(g.dimension(), g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) out.set_vertex_color(v, g.black(v));
    rec.edge_remap.resize(g.n_edges());
    std::iota(rec.edge_remap.begin(), rec.edge_remap.end(), 0);
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        if (e == e1)
            out.add_edge(a.u, b.v, a.color);
        else if (e == e2)
            out.add_edge(b.u, a.v, a.color);
        else
            out.add_edge(ed.u, ed.v, ed.color);
        if (g.edge_marked(e)) out.mark_edge(e);
    }
    rec.delta_score = score(out) - phi_before;
    rec.delta_zero_score = zero_score(out) - phi0_before;
    return {std::move(out), std::move(rec)};
}

ColoredGraph connected_sum(const ColoredGraph& g1, int v1, const ColoredGraph& g2, int v2) {
    if (g1.black(v1) == g2.black(v2)) throw MoveError("connected_sum: same vertex color");
    if (g1.color_set() != g2.color_set()) throw MoveError("connected_sum: dimension mismatch");
    int n1 = g1.n_vertices(), n2 = g2.n_vertices();
    ColoredGraph out(std::max(g1.dimension(), g2.dimension()), n1 + n2 - 2);
    std::vector<int> m1(n1, -1), m2(n2, -1);
    int n = 0;
    for (int v = 0; v < n1; v++)
        if (v != v1) {
            m1[v] = n;
            out.set_vertex_color(n++, g1.black(v));
        }
    for (int v = 0; v < n2; v++)
        if (v != v2) {
            m2[v] = n;
            out.set_vertex_color(n++, g2.black(v));
        }
    for (const Edge& e : g1.edges())
        if (e.u != v1 && e.v != v1) out.add_edge(m1[e.u], m1[e.v], e.color);
    for (const Edge& e : g2.edges())
        if (e.u != v2 && e.v != v2) out.add_edge(m2[e.u], m2[e.v], e.color);
    for (int c : g1.color_set()) {
        int x = g1.neighbor(v1, c);
        int y = g2.neighbor(v2, c);
        out.add_edge(m1[x], m2[y], c);  // add_edge normalizes black/white
    }
    return out;
}

std::pair<ColoredGraph, MoveRecord> contract_color0_edge(const ColoredGraph& g, int e) {
    const Edge& ed = g.edge(e);
    if (ed.color != 0) throw MoveError("contract_color0_edge: not a color-0 edge");
    auto comp = complement_components(g, {0});
    if (comp[ed.u] == comp[ed.v]) throw MoveError("contract_color0_edge: edge internal to one bubble");
    MoveRecord rec;
    rec.kind = MoveKind::Color0Contract;
    rec.vertices = {ed.u, ed.v};
    rec.edges = {e};
    int phi0_before = zero_score(g);
    int b = ed.u, w = ed.v;
    std::vector<int> remap(g.n_vertices(), -1);
    int n = 0;
    for (int v = 0; v < g.n_vertices(); v++)
        if (v != b && v != w) remap[v] = n++;
    ColoredGraph out(g.dimension(), n);
    for (int v = 0; v < g.n_vertices(); v++)
        if (remap[v] >= 0) out.set_vertex_color(remap[v], g.black(v));
    rec.edge_remap.assign(g.n_edges(), -1);
    for (int i = 0; i < g.n_edges(); i++) {
        const Edge& x = g.edge(i);
        if (x.u == b || x.v == b || x.u == w || x.v == w) continue;
        rec.edge_remap[i] = out.add_edge(remap[x.u], remap[x.v], x.color);
        if (g.edge_marked(i)) out.mark_edge(rec.edge_remap[i]);
    }
    for (int c : g.color_set()) {
        if (c == 0) continue;
        int x = g.neighbor(b, c);  // white
        int y = g.neighbor(w, c);  // black
        out.add_edge(remap[y], remap[x], c);
    }
    rec.delta_zero_score = zero_score(out) - phi0_before;
    rec.topology = TopologyFlag::Preserved;
    return {std::move(out), std::move(rec)};
}

std::vector<std::pair<int, int>> find_handles(const ColoredGraph& g) {
    std::vector<std::pair<int, int>> out;
    auto cs = g.color_set();
    int ncol = (int)cs.size();
    for (int b = 0; b < g.n_vertices(); b++) {
        if (!g.black(b)) continue;
        for (int w = 0; w < g.n_vertices(); w++) {
            if (g.black(w)) continue;
            auto between = edges_between(g, b, w);
            if ((int)between.size() != ncol - 2) continue;  // (D-1)-pair among D+1 colors
            uint64_t have = 0;
            for (int e : between) have |= 1ull << g.edge(e).color;
            std::vector<int> rest;
            for (int c : cs)
                if (!(have & (1ull << c))) rest.push_back(c);
            int j = rest[0], k = rest[1];
            // handle iff b and w lie on the same (j,k)-bicolored cycle
            int v = b, c = j, start = b;
            bool same = false;
            while (true) {
                v = g.neighbor(v, c);
                if (v == w) same = true;
                c = (c == j ? k : j);
                if (v == start && c == j) break;
            }
            if (same) out.push_back({b, w});
        }
    }
    return out;
}

}  // namespace gem
