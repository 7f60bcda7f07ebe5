#include "gem/colored_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace gem {

bool ColoredGraph::edge_marked(int e) const {
    return std::find(marked_.begin(), marked_.end(), e) != marked_.end();
}

int ColoredGraph::add_edge(int u, int v, int color) {
    if (u < 0 || u >= n_vertices() || v < 0 || v >= n_vertices())
        throw ParseError("edge endpoint out of range");
    if (is_black_[u] == is_black_[v]) throw ParseError("non-bipartite edge");
    Edge e;
    e.u = is_black_[u] ? u : v;
    e.v = is_black_[u] ? v : u;
    e.color = color;
    edges_.push_back(e);
    inc_valid_ = false;
    return (int)edges_.size() - 1;
}

void ColoredGraph::mark_edge(int e) {
    if (e < 0 || e >= n_edges()) throw ParseError("marked edge index out of range");
    if (!edge_marked(e)) marked_.push_back(e);
}

void ColoredGraph::unmark_edge(int e) {
    marked_.erase(std::remove(marked_.begin(), marked_.end(), e), marked_.end());
}

void ColoredGraph::build_incidence() const {
    int stride = dim_ + 1;
    inc_.assign((size_t)n_vertices() * stride, -1);
    for (int e = 0; e < n_edges(); e++) {
        const Edge& ed = edges_[e];
        inc_[(size_t)ed.u * stride + ed.color] = e;
        inc_[(size_t)ed.v * stride + ed.color] = e;
    }
    inc_valid_ = true;
}

int ColoredGraph::incident(int v, int color) const {
    if (color < 0 || color > dim_) return -1;
    if (!inc_valid_) build_incidence();
    return inc_[(size_t)v * (dim_ + 1) + color];
}

int ColoredGraph::neighbor(int v, int color) const {
    int e = incident(v, color);
    if (e < 0) throw std::runtime_error("neighbor: no such edge");
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
}

std::vector<int> ColoredGraph::color_set() const {
    std::set<int> s;
    for (const Edge& e : edges_) s.insert(e.color);
    return {s.begin(), s.end()};
}

std::vector<int> ColoredGraph::component_ids() const {
    std::vector<int> comp(n_vertices(), -1);
    std::vector<std::vector<int>> adj(n_vertices());
    for (const Edge& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    int k = 0;
    std::vector<int> stack;
    for (int s = 0; s < n_vertices(); s++) {
        if (comp[s] >= 0) continue;
        comp[s] = k;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = k;
                    stack.push_back(w);
                }
        }
        k++;
    }
    return comp;
}

int ColoredGraph::n_components() const {
    auto c = component_ids();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

bool ColoredGraph::connected() const { return n_components() <= 1; }

std::vector<std::array<int, 3>> ColoredGraph::edge_triples() const {
    std::vector<std::array<int, 3>> t;
    t.reserve(edges_.size());
    for (const Edge& e : edges_) t.push_back({e.u, e.v, e.color});
    return t;
}

// ---- parse / serialize ----

ColoredGraph parse_gem(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    ColoredGraph g;
    int D = -1, V = -1;
    std::vector<std::array<int, 3>> pending_edges;
    std::vector<int> pending_roots;
    std::vector<std::pair<int, bool>> vertex_colors;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!have_header) {
            if (tok != "gem") throw ParseError("line " + std::to_string(lineno) + ": expected 'gem D=<d> V=<v>'");
            std::string a, b;
            if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": malformed header");
            for (std::string* s : {&a, &b}) {
                if (s->rfind("D=", 0) == 0)
                    D = std::stoi(s->substr(2));
                else if (s->rfind("V=", 0) == 0)
                    V = std::stoi(s->substr(2));
                else
                    throw ParseError("line " + std::to_string(lineno) + ": malformed header field '" + *s + "'");
            }
            if (D < 1 || V < 0) throw ParseError("header requires D >= 1 and V >= 0");
            g = ColoredGraph(D, V);
            have_header = true;
        } else if (tok == "v") {
            int idx;
            std::string col;
            if (!(ls >> idx >> col)) throw ParseError("line " + std::to_string(lineno) + ": malformed vertex line");
            if (idx < 0 || idx >= V) throw ParseError("line " + std::to_string(lineno) + ": unknown vertex index");
            if (col != "black" && col != "white")
                throw ParseError("line " + std::to_string(lineno) + ": vertex color must be black or white");
            vertex_colors.push_back({idx, col == "black"});
        } else if (tok == "e") {
            int u, v, c;
            if (!(ls >> u >> v >> c)) throw ParseError("line " + std::to_string(lineno) + ": malformed edge line");
            if (u < 0 || u >= V || v < 0 || v >= V)
                throw ParseError("line " + std::to_string(lineno) + ": unknown vertex index");
            if (c < 0 || c > D) throw ParseError("line " + std::to_string(lineno) + ": color out of range");
            pending_edges.push_back({u, v, c});
        } else if (tok == "root") {
            int e;
            if (!(ls >> e)) throw ParseError("line " + std::to_string(lineno) + ": malformed root line");
            pending_roots.push_back(e);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": malformed line '" + tok + "'");
        }
    }
    if (!have_header) throw ParseError("missing 'gem' header line");
    for (auto [idx, black] : vertex_colors) g.set_vertex_color(idx, black);
    for (auto [u, v, c] : pending_edges) {
        if (g.black(u) == g.black(v)) throw ParseError("non-bipartite edge " + std::to_string(u) + "-" + std::to_string(v));
        if (g.incident(u, c) >= 0 || g.incident(v, c) >= 0)
            throw ParseError("duplicate color " + std::to_string(c) + " at a vertex of edge " + std::to_string(u) + "-" +
                             std::to_string(v));
        g.add_edge(u, v, c);
    }
    for (int e : pending_roots) {
        if (e < 0 || e >= g.n_edges()) throw ParseError("root edge index out of range");
        g.mark_edge(e);
    }
    return g;
}

std::string serialize_gem(const ColoredGraph& g) {
    std::ostringstream out;
    out << "gem D=" << g.dimension() << " V=" << g.n_vertices() << "\n";
    for (int v = 0; v < g.n_vertices(); v++) {
        bool dflt = (v % 2 == 1);
        if (g.black(v) != dflt) out << "v " << v << " " << (g.black(v) ? "black" : "white") << "\n";
    }
    for (const Edge& e : g.edges()) out << "e " << e.u << " " << e.v << " " << e.color << "\n";
    for (int e : g.marked_edges()) out << "root " << e << "\n";
    return out.str();
}

ColoredGraph load_gem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gem(ss.str());
}

// ---- validation ----

ValidationReport validate(const ColoredGraph& g) {
    ValidationReport r;
    r.bipartite = true;
    for (const Edge& e : g.edges())
        if (g.black(e.u) == g.black(e.v)) r.bipartite = false;
    int nb = 0, nw = 0;
    for (int v = 0; v < g.n_vertices(); v++) (g.black(v) ? nb : nw)++;
    r.balanced = (nb == nw);
    if (!r.balanced) r.problems.push_back("unbalanced vertex bicolors");
    r.connected = g.connected();

    int D = g.dimension();
    // per-vertex color masks
    bool any_dup = false;
    std::vector<uint64_t> mask(g.n_vertices(), 0);
    for (const Edge& e : g.edges()) {
        for (int v : {e.u, e.v}) {
            if (mask[v] & (1ull << e.color)) any_dup = true;
            mask[v] |= 1ull << e.color;
        }
    }
    if (any_dup) r.problems.push_back("duplicate color at a vertex");
    uint64_t full = ((1ull << (D + 1)) - 1);
    uint64_t bubble = full & ~1ull;
    bool all_full = true, all_bubble = true;
    int miss0_black = 0, miss0_white = 0;
    bool boundary_ok = true;
    for (int v = 0; v < g.n_vertices(); v++) {
        if (mask[v] != full) all_full = false;
        if (mask[v] != bubble) all_bubble = false;
        if (mask[v] == bubble) (g.black(v) ? miss0_black : miss0_white)++;
        if (mask[v] != full && mask[v] != bubble) boundary_ok = false;
    }
    if (any_dup || !r.bipartite) {
        r.regularity = Regularity::Irregular;
        if (!r.bipartite) r.problems.push_back("non-bipartite edge");
    } else if (all_full) {
        r.regularity = Regularity::Closed;
    } else if (all_bubble) {
        // a bubble is also the maximal boundary case q = V/2
        r.regularity = Regularity::Bubble;
        r.boundary_q = g.n_vertices() / 2;
    } else if (boundary_ok && miss0_black == miss0_white && miss0_black > 0) {
        r.regularity = Regularity::BoundaryCase;
        r.boundary_q = miss0_black;
    } else {
        r.regularity = Regularity::Irregular;
        r.problems.push_back("vertex degrees match no regularity class");
    }
    return r;
}

// ---- scores ----

BicoloredCycles bicolored_cycles(const ColoredGraph& g, int i, int j) {
    if (i == j || i < 0 || j < 0 || i > g.dimension() || j > g.dimension())
        throw std::runtime_error("bicolored_cycles: color out of range");
    BicoloredCycles out;
    std::vector<char> seen(g.n_vertices(), 0);
    for (int s = 0; s < g.n_vertices(); s++) {
        if (seen[s]) continue;
        if (g.incident(s, i) < 0 || g.incident(s, j) < 0) {
            // open path endpoints are skipped; their path is not a cycle
            continue;
        }
        // walk the cycle alternating colors i and j
        std::vector<int> cyc;
        int v = s, c = i;
        bool closed = true;
        while (true) {
            seen[v] = 1;
            cyc.push_back(v);
            int e = g.incident(v, c);
            if (e < 0) {
                closed = false;
                break;
            }
            v = g.neighbor(v, c);
            c = (c == i ? j : i);
            if (v == s && c == i) break;
            if (seen[v] && v != s) break;  // open path walked from the middle
        }
        if (closed && v == s) {
            out.count++;
            out.cycles.push_back(cyc);
        } else {
            // mark the whole open path as seen so we do not retry it
            int w = s, c2 = j;
            while (true) {
                int e = g.incident(w, c2);
                if (e < 0) break;
                w = g.neighbor(w, c2);
                if (seen[w]) break;
                seen[w] = 1;
                c2 = (c2 == i ? j : i);
            }
        }
    }
    return out;
}

std::map<std::pair<int, int>, int> score_per_pair(const ColoredGraph& g) {
    std::map<std::pair<int, int>, int> m;
    auto cs = g.color_set();
    for (size_t a = 0; a < cs.size(); a++)
        for (size_t b = a + 1; b < cs.size(); b++) m[{cs[a], cs[b]}] = bicolored_cycles(g, cs[a], cs[b]).count;
    return m;
}

int score(const ColoredGraph& g) {
    int s = 0;
    for (auto& [p, c] : score_per_pair(g)) s += c;
    return s;
}

int zero_score(const ColoredGraph& g) {
    int s = 0;
    for (auto& [p, c] : score_per_pair(g))
        if (p.first == 0) s += c;
    return s;
}

int weighted_score(const ColoredGraph& g, const std::vector<std::pair<int, int>>& excluded_pairs) {
    auto per = score_per_pair(g);
    int s = score(g);
    for (auto [i, j] : excluded_pairs) {
        if (i > j) std::swap(i, j);
        if (i < 0 || j > g.dimension() || i == j) throw std::runtime_error("weighted_score: pair out of range");
        auto it = per.find({i, j});
        if (it != per.end()) s -= it->second;
    }
    return s;
}

Rational gurau_degree(const ColoredGraph& g) {
    if (!g.connected()) throw std::runtime_error("gurau_degree: disconnected input");
    auto cs = g.color_set();
    int Dp = (int)cs.size() - 1;
    Rational d = Rational(Dp) + Rational(Dp * (Dp - 1), 4) * g.n_vertices() - score(g);
    d.canonicalize();
    return d;
}

std::vector<Jacket> jackets(const ColoredGraph& g) {
    auto cs = g.color_set();
    int n = (int)cs.size();
    if (n < 3) throw std::runtime_error("jackets: need at least 3 colors");
    auto per = score_per_pair(g);
    long V = g.n_vertices(), E = g.n_edges();
    long K = g.n_components();
    std::vector<Jacket> out;
    // cyclic orders of cs up to rotation and reflection: fix cs[0] first and
    // quotient reflections by requiring perm[1] < perm[n-1]
    std::vector<int> rest(cs.begin() + 1, cs.end());
    std::sort(rest.begin(), rest.end());
    do {
        if (rest.front() > rest.back()) continue;
        Jacket j;
        j.cycle.push_back(cs[0]);
        for (int c : rest) j.cycle.push_back(c);
        long F = 0;
        for (int k = 0; k < n; k++) {
            int a = j.cycle[k], b = j.cycle[(k + 1) % n];
            if (a > b) std::swap(a, b);
            F += per.at({a, b});
        }
        j.faces = F;
        // 2K - 2g = V - E + F; a jacket spans the whole graph
        long twice_g = 2 * K - (V - E + F);
        if (twice_g % 2 != 0) throw std::runtime_error("jackets: non-orientable embedding on bipartite input");
        j.genus = twice_g / 2;
        out.push_back(std::move(j));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

DegreeReport degree_report(const ColoredGraph& g) {
    DegreeReport r;
    r.per_pair = score_per_pair(g);
    for (auto& [p, c] : r.per_pair) {
        r.score += c;
        if (p.first == 0) r.zero_score += c;
    }
    r.gurau_degree = gurau_degree(g);
    for (const Jacket& j : jackets(g)) r.jacket_genera.push_back({j.cycle, j.genus});
    return r;
}

// ---- simplices ----

namespace {
// number of connected components of the subgraph with edge colors in `colors`
long subgraph_components(const ColoredGraph& g, const std::vector<int>& colors) {
    std::vector<int> id(g.n_vertices());
    std::iota(id.begin(), id.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (id[x] != x) x = id[x] = id[id[x]];
        return x;
    };
    uint64_t mask = 0;
    for (int c : colors) mask |= 1ull << c;
    for (const Edge& e : g.edges())
        if (mask & (1ull << e.color)) {
            int a = find(e.u), b = find(e.v);
            if (a != b) id[a] = b;
        }
    long k = 0;
    for (int v = 0; v < g.n_vertices(); v++)
        if (find(v) == v) k++;
    return k;
}
}  // namespace

SimplexCensus simplex_census(const ColoredGraph& g) {
    auto cs = g.color_set();
    int D = (int)cs.size() - 1;
    SimplexCensus out;
    out.n.assign(D + 1, 0);
    // k-simplices carry (D-k) colors: sum of component counts over (D-k)-subsets
    for (int k = 0; k <= D; k++) {
        int take = D - k;
        std::vector<int> pick(take > 0 ? take : 0);
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == take) {
                std::vector<int> cols;
                for (int t = 0; t < take; t++) cols.push_back(cs[pick[t]]);
                out.n[k] += subgraph_components(g, cols);
                return;
            }
            for (int i = start; i < (int)cs.size(); i++) {
                pick[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        if (take == 0)
            out.n[k] = g.n_vertices();
        else
            rec(0, 0);
    }
    return out;
}

long SimplexCensus::euler_alternating_sum() const {
    long s = 0;
    for (size_t k = 0; k < n.size(); k++) s += (k % 2 == 0 ? n[k] : -n[k]);
    return s;
}

Euler3dReport euler_check_3d(const ColoredGraph& g) {
    auto cs = g.color_set();
    if (cs.size() != 4) throw std::runtime_error("euler_check_3d: requires a closed D=3 graph (4 colors)");
    Euler3dReport r;
    r.euler_zero = (simplex_census(g).euler_alternating_sum() == 0);
    r.all_residues_spherical = true;
    // residues: components of the subgraph missing one color are 3-colored
    // graphs; in 2D the genus test is exact
    for (int drop = 0; drop < 4; drop++) {
        std::vector<int> keep;
        for (int t = 0; t < 4; t++)
            if (t != drop) keep.push_back(cs[t]);
        // split into components and test 2 - 2g = Phi - E + V per component
        std::vector<int> comp(g.n_vertices(), -1);
        std::vector<std::vector<int>> adj(g.n_vertices());
        for (const Edge& e : g.edges())
            if (e.color != cs[drop]) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
        int k = 0;
        for (int s = 0; s < g.n_vertices(); s++) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = k;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[v])
                    if (comp[w] < 0) {
                        comp[w] = k;
                        stack.push_back(w);
                    }
            }
            k++;
        }
        std::vector<long> V(k, 0), E(k, 0), F(k, 0);
        for (int v = 0; v < g.n_vertices(); v++) V[comp[v]]++;
        for (const Edge& e : g.edges())
            if (e.color != cs[drop]) E[comp[e.u]]++;
        for (size_t a = 0; a < keep.size(); a++)
            for (size_t b = a + 1; b < keep.size(); b++)
                for (auto& cyc : bicolored_cycles(g, keep[a], keep[b]).cycles) F[comp[cyc[0]]]++;
        for (int c = 0; c < k; c++)
            if (V[c] - E[c] + F[c] != 2) r.all_residues_spherical = false;
    }
    return r;
}

// ---- boundary ----

ColoredGraph boundary_graph(const ColoredGraph& g) {
    int D = g.dimension();
    std::vector<int> open;  // degree-D vertices (missing color 0)
    for (int v = 0; v < g.n_vertices(); v++)
        if (g.incident(v, 0) < 0) open.push_back(v);
    // boundary components live in G_{D-1} but keep colors 1..D, like bubbles
    ColoredGraph b(D, (int)open.size());
    std::vector<int> idx(g.n_vertices(), -1);
    for (size_t i = 0; i < open.size(); i++) {
        idx[open[i]] = (int)i;
        b.set_vertex_color((int)i, g.black(open[i]));
    }
    // one maximal (0,i)-path from each open black vertex for each color i
    for (int v : open) {
        if (!g.black(v)) continue;
        for (int i = 1; i <= D; i++) {
            int w = v, c = i;
            while (true) {
                w = g.neighbor(w, c);
                if (c == i && g.incident(w, 0) < 0) break;
                c = (c == i ? 0 : i);
            }
            b.add_edge(idx[v], idx[w], i);
        }
    }
    return b;
}

// ---- melonic ----

MelonicWitness is_melonic(const ColoredGraph& g) {
    MelonicWitness w;
    auto cs = g.color_set();
    int ncol = (int)cs.size();
    if (g.n_vertices() == 0 || !g.connected()) return w;

    // working copy with original-vertex tracking
    struct WEdge {
        int u, v, color;
    };
    std::vector<int> orig(g.n_vertices());
    std::iota(orig.begin(), orig.end(), 0);
    std::vector<bool> black(g.n_vertices());
    for (int v = 0; v < g.n_vertices(); v++) black[v] = g.black(v);
    std::vector<WEdge> es;
    for (const Edge& e : g.edges()) es.push_back({e.u, e.v, e.color});

    auto multiplicity = [&](int a, int b) {
        int m = 0;
        for (auto& e : es)
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) m++;
        return m;
    };

    while (true) {
        std::set<int> live;
        for (auto& e : es) {
            live.insert(e.u);
            live.insert(e.v);
        }
        if ((int)live.size() == 2) {
            auto it = live.begin();
            int a = *it++, b = *it;
            if (multiplicity(a, b) == ncol) {
                w.melonic = true;
                int bb = black[a] ? a : b, ww = black[a] ? b : a;
                w.contraction_sequence.push_back({orig[bb], orig[ww]});
                w.canonical_pairing.push_back({orig[bb], orig[ww]});
                std::sort(w.canonical_pairing.begin(), w.canonical_pairing.end());
                return w;
            }
            return w;  // two vertices but not fully parallel: not closed/melonic
        }
        // find a pair with multiplicity ncol-1
        int pu = -1, pv = -1;
        for (auto& e : es) {
            if (multiplicity(e.u, e.v) == ncol - 1) {
                pu = e.u;
                pv = e.v;
                break;
            }
        }
        if (pu < 0) return w;  // stuck: not melonic
        int bb = black[pu] ? pu : pv, ww = black[pu] ? pv : pu;
        w.contraction_sequence.push_back({orig[bb], orig[ww]});
        w.canonical_pairing.push_back({orig[bb], orig[ww]});
        // the missing color's two half-edges get rejoined
        uint64_t have = 0;
        for (auto& e : es)
            if ((e.u == pu && e.v == pv) || (e.u == pv && e.v == pu)) have |= 1ull << e.color;
        int miss = -1;
        for (int c : cs)
            if (!(have & (1ull << c))) miss = c;
        int nu = -1, nv = -1;  // outside endpoints of the missing-color edges
        for (auto& e : es) {
            if (e.color != miss) continue;
            if (e.u == pu || e.v == pu) nu = (e.u == pu ? e.v : e.u);
            if (e.u == pv || e.v == pv) nv = (e.u == pv ? e.v : e.u);
        }
        if (nu < 0 || nv < 0) return w;
        std::vector<WEdge> next;
        for (auto& e : es) {
            if (e.u == pu || e.v == pu || e.u == pv || e.v == pv) continue;
            next.push_back(e);
        }
        next.push_back(black[nu] ? WEdge{nu, nv, miss} : WEdge{nv, nu, miss});
        es = std::move(next);
    }
}

// ---- export ----

std::string to_dot(const ColoredGraph& g) {
    static const char* palette[] = {"black", "red",    "blue",   "green4", "orange",
                                    "purple", "brown", "cyan4",  "magenta"};
    std::ostringstream out;
    out << "graph gem {\n";
    for (int v = 0; v < g.n_vertices(); v++)
        out << "  " << v << " [shape=circle," << (g.black(v) ? "style=filled,fillcolor=black,fontcolor=white" : "style=solid")
            << "];\n";
    for (int e = 0; e < g.n_edges(); e++) {
        const Edge& ed = g.edge(e);
        out << "  " << ed.u << " -- " << ed.v << " [color=" << palette[ed.color % 9] << ",label=" << ed.color;
        if (ed.color == 0) out << ",style=dashed";
        if (g.edge_marked(e)) out << ",penwidth=3";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace gem
