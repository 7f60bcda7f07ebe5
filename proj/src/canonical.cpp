#include "gem/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace gem {

namespace {

struct Refiner {
    const ColoredGraph& g;
    int n;
    // adjacency as (edge attribute, neighbor) lists; attribute = 2*color(+1 if marked)
    std::vector<std::vector<std::pair<int, int>>> adj;

    explicit Refiner(const ColoredGraph& gg) : g(gg), n(gg.n_vertices()), adj(gg.n_vertices()) {
        for (int e = 0; e < g.n_edges(); e++) {
            const Edge& ed = g.edge(e);
            int attr = 2 * ed.color + (g.edge_marked(e) ? 1 : 0);
            adj[ed.u].push_back({attr, ed.v});
            adj[ed.v].push_back({attr, ed.u});
        }
    }

    // iterated refinement of the coloring until stable
    void refine(std::vector<int>& col) const {
        while (true) {
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; v++) {
                std::vector<std::pair<int, int>> nb;
                nb.reserve(adj[v].size());
                for (auto [attr, w] : adj[v]) nb.push_back({attr, col[w]});
                std::sort(nb.begin(), nb.end());
                sig[v].push_back(col[v]);
                for (auto [a, c] : nb) {
                    sig[v].push_back(a);
                    sig[v].push_back(c);
                }
            }
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
            std::vector<int> next(n, 0);
            int c = 0;
            for (int i = 0; i < n; i++) {
                if (i > 0 && sig[order[i]] != sig[order[i - 1]]) c++;
                next[order[i]] = c;
            }
            if (next == col) return;
            col = std::move(next);
        }
    }

    // certificate of a discrete coloring (a vertex relabeling)
    std::string certificate(const std::vector<int>& col) const {
        std::vector<int> pos(n);
        for (int v = 0; v < n; v++) pos[col[v]] = v;
        std::ostringstream out;
        for (int r = 0; r < n; r++) {
            int v = pos[r];
            out << (g.black(v) ? 'b' : 'w');
            std::vector<std::pair<int, int>> nb;
            for (auto [attr, w] : adj[v]) nb.push_back({attr, col[w]});
            std::sort(nb.begin(), nb.end());
            for (auto [a, c] : nb) out << ' ' << a << ':' << c;
            out << ';';
        }
        return out.str();
    }

    bool discrete(const std::vector<int>& col) const {
        std::vector<char> seen(n, 0);
        for (int c : col) {
            if (seen[c]) return false;
            seen[c] = 1;
        }
        return true;
    }

    void search(std::vector<int> col, std::string& best, bool& have_best) const {
        refine(col);
        if (discrete(col)) {
            std::string cert = certificate(col);
            if (!have_best || cert < best) {
                best = std::move(cert);
                have_best = true;
            }
            return;
        }
        // individualize inside the first smallest non-singleton cell
        std::map<int, std::vector<int>> cells;
        for (int v = 0; v < n; v++) cells[col[v]].push_back(v);
        int target = -1;
        size_t tsize = SIZE_MAX;
        for (auto& [c, vs] : cells)
            if (vs.size() > 1 && (vs.size() < tsize || (vs.size() == tsize && (target < 0 || c < target)))) {
                target = c;
                tsize = vs.size();
            }
        for (int v : cells[target]) {
            std::vector<int> next = col;
            for (int w = 0; w < n; w++)
                if (next[w] > target || (next[w] == target && w != v)) next[w]++;
            // v keeps value `target`, everyone else in its cell is shifted up
            search(std::move(next), best, have_best);
        }
    }
};

}  // namespace

std::string canonical_form(const ColoredGraph& g) {
    std::ostringstream head;
    head << "n=" << g.n_vertices() << " e=" << g.n_edges() << "|";
    if (g.n_vertices() == 0) return head.str();
    Refiner rf(g);
    std::vector<int> col(g.n_vertices(), 0);
    for (int v = 0; v < g.n_vertices(); v++) col[v] = g.black(v) ? 1 : 0;
    std::string best;
    bool have = false;
    rf.search(col, best, have);
    return head.str() + best;
}

bool isomorphic(const ColoredGraph& a, const ColoredGraph& b) { return canonical_form(a) == canonical_form(b); }

bool isomorphic_brute_force(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges()) return false;
    std::vector<int> ab, aw, bb, bw;
    for (int v = 0; v < a.n_vertices(); v++) (a.black(v) ? ab : aw).push_back(v);
    for (int v = 0; v < b.n_vertices(); v++) (b.black(v) ? bb : bw).push_back(v);
    if (ab.size() != bb.size() || aw.size() != bw.size()) return false;

    // edge attribute maps for b
    std::map<std::tuple<int, int, int>, int> bedges;
    for (int e = 0; e < b.n_edges(); e++) {
        const Edge& ed = b.edge(e);
        bedges[{ed.u, ed.v, 2 * ed.color + (b.edge_marked(e) ? 1 : 0)}]++;
    }
    std::vector<int> pb(ab.size()), pw(aw.size());
    std::iota(pb.begin(), pb.end(), 0);
    do {
        std::vector<int> map(a.n_vertices(), -1);
        for (size_t i = 0; i < ab.size(); i++) map[ab[i]] = bb[pb[i]];
        std::iota(pw.begin(), pw.end(), 0);
        do {
            for (size_t i = 0; i < aw.size(); i++) map[aw[i]] = bw[pw[i]];
            std::map<std::tuple<int, int, int>, int> got;
            for (int e = 0; e < a.n_edges(); e++) {
                const Edge& ed = a.edge(e);
                got[{map[ed.u], map[ed.v], 2 * ed.color + (a.edge_marked(e) ? 1 : 0)}]++;
            }
            if (got == bedges) return true;
        } while (std::next_permutation(pw.begin(), pw.end()));
    } while (std::next_permutation(pb.begin(), pb.end()));
    return false;
}

}  // namespace gem
