#include "gem/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include "gem/canonical.hpp"

namespace gem {

namespace {

// Placed bubble copies: the non-zero edges of a gluing, fixed once per multiset.
struct Template {
    int D = 0;
    int n = 0;                      // total vertices
    std::vector<int> copy_of;       // vertex -> copy index
    std::vector<bool> black;
    std::vector<std::array<int, 3>> edges;  // bubble edges (u, v, color)
    std::vector<int> blacks, whites;
    std::vector<std::vector<int>> nbr;  // [color][vertex] fixed neighbor
};

Template place(const std::vector<ColoredGraph>& bubbles, const std::vector<int>& multiset) {
    Template t;
    t.D = (int)bubbles.front().color_set().size();
    int off = 0;
    for (size_t c = 0; c < multiset.size(); c++) {
        const ColoredGraph& b = bubbles[multiset[c]];
        for (int v = 0; v < b.n_vertices(); v++) {
            t.copy_of.push_back((int)c);
            t.black.push_back(b.black(v));
            (b.black(v) ? t.blacks : t.whites).push_back(off + v);
        }
        for (const Edge& e : b.edges()) t.edges.push_back({off + e.u, off + e.v, e.color});
        off += b.n_vertices();
    }
    t.n = off;
    t.nbr.assign(t.D + 1, std::vector<int>(t.n, -1));
    for (auto [u, v, c] : t.edges) {
        t.nbr[c][u] = v;
        t.nbr[c][v] = u;
    }
    return t;
}

ColoredGraph realize(const Template& t, const std::vector<int>& match /* black idx -> white vertex */) {
    ColoredGraph g(t.D, t.n);
    for (int v = 0; v < t.n; v++) g.set_vertex_color(v, t.black[v]);
    for (auto [u, v, c] : t.edges) g.add_edge(u, v, c);
    for (size_t i = 0; i < t.blacks.size(); i++) g.add_edge(t.blacks[i], match[i], 0);
    return g;
}

// Incremental zero-score over a growing color-0 matching: per color, the
// endpoints of the maximal (0,i)-alternating paths.
struct ZeroScoreTracker {
    const Template* t;
    std::vector<std::vector<int>> partner;  // [color 1..D][vertex]
    int phi0 = 0;
    struct Undo {
        int color, x, px, y, py;
        bool cycle;
    };
    std::vector<Undo> trail;
    std::vector<size_t> marks;

    explicit ZeroScoreTracker(const Template& tt) : t(&tt) {
        partner.assign(t->D + 1, {});
        for (int c = 1; c <= t->D; c++) partner[c] = t->nbr[c];
    }
    void push() { marks.push_back(trail.size()); }
    void add(int b, int w) {
        for (int c = 1; c <= t->D; c++) {
            if (partner[c][b] == w) {
                phi0++;
                trail.push_back({c, -1, -1, -1, -1, true});
            } else {
                int x = partner[c][b], y = partner[c][w];
                trail.push_back({c, x, partner[c][x], y, partner[c][y], false});
                partner[c][x] = y;
                partner[c][y] = x;
            }
        }
    }
    void pop() {
        size_t m = marks.back();
        marks.pop_back();
        while (trail.size() > m) {
            const Undo& u = trail.back();
            if (u.cycle)
                phi0--;
            else {
                partner[u.color][u.x] = u.px;
                partner[u.color][u.y] = u.py;
            }
            trail.pop_back();
        }
    }
};

bool matching_connected(const Template& t, const std::vector<int>& match) {
    int k = t.copy_of.empty() ? 0 : 1 + *std::max_element(t.copy_of.begin(), t.copy_of.end());
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (id[x] != x) x = id[x] = id[id[x]];
        return x;
    };
    for (size_t i = 0; i < t.blacks.size(); i++) {
        int a = find(t.copy_of[t.blacks[i]]), b = find(t.copy_of[match[i]]);
        if (a != b) id[a] = b;
    }
    int roots = 0;
    for (int c = 0; c < k; c++)
        if (find(c) == c) roots++;
    return roots <= 1;
}

// Backtracking over perfect matchings blacks -> whites in lexicographic
// order. prune(depth, phi0) may cut a branch; leaf(match, phi0) consumes.
void match_rec(const Template& t, ZeroScoreTracker& z, std::vector<int>& match, std::vector<char>& used, size_t depth,
               const std::function<bool(size_t, int)>& prune, const std::function<void(const std::vector<int>&, int)>& leaf) {
    if (depth == t.blacks.size()) {
        leaf(match, z.phi0);
        return;
    }
    if (prune && prune(depth, z.phi0)) return;
    int b = t.blacks[depth];
    for (size_t wi = 0; wi < t.whites.size(); wi++) {
        if (used[wi]) continue;
        int w = t.whites[wi];
        used[wi] = 1;
        match[depth] = w;
        z.push();
        z.add(b, w);
        match_rec(t, z, match, used, depth + 1, prune, leaf);
        z.pop();
        used[wi] = 0;
    }
    match[depth] = -1;
}

std::vector<std::vector<int>> multisets(int types, int b) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int start, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int ty = start; ty < types; ty++) {
            cur.push_back(ty);
            rec(ty, left - 1);
            cur.pop_back();
        }
    };
    rec(0, b);
    return out;
}

void check_spec(const GluingSpec& spec) {
    if (spec.bubbles.empty()) throw std::runtime_error("gluing spec: no bubbles");
    auto cs0 = spec.bubbles.front().color_set();
    for (const auto& b : spec.bubbles) {
        if (b.color_set() != cs0) throw std::runtime_error("gluing spec: bubbles disagree on colors");
        auto rep = validate(b);
        if (rep.regularity != Regularity::Bubble) throw std::runtime_error("gluing spec: not a bubble");
        if (!rep.connected) throw std::runtime_error("gluing spec: bubble not connected");
    }
    for (size_t i = 0; i < cs0.size(); i++)
        if (cs0[i] != (int)i + 1) throw std::runtime_error("gluing spec: bubble colors must be 1..D");
}

struct CapExceeded : std::runtime_error {
    CapExceeded() : std::runtime_error("vertex cap exceeded") {}
};

}  // namespace

namespace {

// shared enumeration core over one multiset; root fixes blacks[0] -> whites[0];
// first_lo/first_hi restrict the white choice of the first free black (for
// deterministic parallel splits)
void run_matchings(const Template& t, bool rooted, const std::function<bool(size_t, int)>& prune,
                   const std::function<void(const std::vector<int>&, int)>& leaf, size_t first_lo = 0,
                   size_t first_hi = SIZE_MAX) {
    ZeroScoreTracker z(t);
    std::vector<int> match(t.blacks.size(), -1);
    std::vector<char> used(t.whites.size(), 0);
    if (t.blacks.empty()) return;
    size_t depth0 = 0;
    if (rooted) {
        used[0] = 1;
        match[0] = t.whites[0];
        z.push();
        z.add(t.blacks[0], t.whites[0]);
        depth0 = 1;
    }
    if (depth0 == t.blacks.size()) {
        leaf(match, z.phi0);
    } else {
        int b = t.blacks[depth0];
        size_t hi = std::min(first_hi, t.whites.size());
        for (size_t wi = first_lo; wi < hi; wi++) {
            if (used[wi]) continue;
            used[wi] = 1;
            match[depth0] = t.whites[wi];
            z.push();
            z.add(b, t.whites[wi]);
            if (!(prune && prune(depth0 + 1, z.phi0))) match_rec(t, z, match, used, depth0 + 1, prune, leaf);
            z.pop();
            used[wi] = 0;
        }
    }
    if (rooted) z.pop();
}

}  // namespace

void enumerate_gluings(const GluingSpec& spec, const std::function<void(const ColoredGraph&)>& cb) {
    check_spec(spec);
    for (int b = 1; b <= spec.b_max; b++) {
        for (const auto& ms : multisets((int)spec.bubbles.size(), b)) {
            Template t = place(spec.bubbles, ms);
            if (t.n > spec.vertex_cap) throw CapExceeded();
            std::set<std::string> seen;
            run_matchings(t, spec.rooting == RootingMode::RootedEdge, nullptr, [&](const std::vector<int>& mm, int) {
                if (spec.connected_only && !matching_connected(t, mm)) return;
                ColoredGraph g = realize(t, mm);
                if (spec.rooting == RootingMode::UnlabeledCanonical) {
                    auto cf = canonical_form(g);
                    if (!seen.insert(cf).second) return;
                }
                cb(g);
            });
        }
    }
}

std::vector<GluingCensusRow> gluing_census(const GluingSpec& spec) {
    check_spec(spec);
    std::vector<GluingCensusRow> rows;
    for (int b = 1; b <= spec.b_max; b++) {
        for (const auto& ms : multisets((int)spec.bubbles.size(), b)) {
            Template t = place(spec.bubbles, ms);
            if (t.n > spec.vertex_cap) throw CapExceeded();
            GluingCensusRow row;
            row.b = b;
            row.multiset = ms;
            row.max_zero_score = -1;
            std::set<std::string> seen;
            run_matchings(t, spec.rooting == RootingMode::RootedEdge, nullptr, [&](const std::vector<int>& mm, int phi0) {
                if (spec.connected_only && !matching_connected(t, mm)) return;
                if (spec.rooting == RootingMode::UnlabeledCanonical) {
                    ColoredGraph g = realize(t, mm);
                    if (!seen.insert(canonical_form(g)).second) return;
                }
                row.count += 1;
                row.max_zero_score = std::max(row.max_zero_score, phi0);
            });
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

MaximalSetResult maximal_set(const GluingSpec& spec) {
    check_spec(spec);
    MaximalSetResult out;
    out.max_zero_score_per_b.assign(spec.b_max + 1, -1);
    out.witnesses_per_b.resize(spec.b_max + 1);
    int D = (int)spec.bubbles.front().color_set().size();
    for (int b = 1; b <= spec.b_max; b++) {
        std::map<std::string, ColoredGraph> best_forms;
        int best = -1;
        for (const auto& ms : multisets((int)spec.bubbles.size(), b)) {
            Template t = place(spec.bubbles, ms);
            if (t.n > spec.vertex_cap) throw CapExceeded();
            size_t pairs = t.blacks.size();
            int threads = std::max(1, spec.threads);
            if (threads == 1 || t.whites.size() < 2) {
                auto prune = [&](size_t depth, int phi0) { return phi0 + D * (int)(pairs - depth) < best; };
                run_matchings(t, false, prune, [&](const std::vector<int>& mm, int phi0) {
                    if (phi0 < best) return;
                    if (!matching_connected(t, mm)) return;
                    ColoredGraph g = realize(t, mm);
                    if (phi0 > best) {
                        best = phi0;
                        best_forms.clear();
                    }
                    best_forms.emplace(canonical_form(g), std::move(g));
                });
            } else {
                // deterministic parallel split over the first black's choice
                std::atomic<int> shared_best{best};
                struct Local {
                    int best = -1;
                    std::map<std::string, ColoredGraph> forms;
                };
                size_t W = t.whites.size();
                size_t nt = std::min((size_t)threads, W);
                std::vector<Local> locals(W);
                std::atomic<size_t> next{0};
                auto worker = [&]() {
                    while (true) {
                        size_t wi = next.fetch_add(1);
                        if (wi >= W) break;
                        Local& loc = locals[wi];
                        auto prune = [&](size_t depth, int phi0) {
                            return phi0 + D * (int)(pairs - depth) < shared_best.load(std::memory_order_relaxed);
                        };
                        run_matchings(t, false, prune,
                                      [&](const std::vector<int>& mm, int phi0) {
                                          if (phi0 < shared_best.load(std::memory_order_relaxed) || phi0 < loc.best) return;
                                          if (!matching_connected(t, mm)) return;
                                          ColoredGraph g = realize(t, mm);
                                          if (phi0 > loc.best) {
                                              loc.best = phi0;
                                              loc.forms.clear();
                                          }
                                          loc.forms.emplace(canonical_form(g), std::move(g));
                                          int cur = shared_best.load(std::memory_order_relaxed);
                                          while (phi0 > cur && !shared_best.compare_exchange_weak(cur, phi0)) {
                                          }
                                      },
                                      wi, wi + 1);
                    }
                };
                std::vector<std::thread> ts;
                for (size_t i = 0; i < nt; i++) ts.emplace_back(worker);
                for (auto& th : ts) th.join();
                for (auto& loc : locals) {
                    if (loc.best < best) continue;
                    if (loc.best > best) {
                        best = loc.best;
                        best_forms.clear();
                    }
                    for (auto& [cf, g] : loc.forms) best_forms.emplace(cf, g);
                }
            }
        }
        out.max_zero_score_per_b[b] = best;
        for (auto& [cf, g] : best_forms) out.witnesses_per_b[b].push_back(g);
    }
    return out;
}

TildeAEstimate empirical_tilde_a(const GluingSpec& spec) {
    auto ms = maximal_set(spec);
    TildeAEstimate out;
    int D = (int)spec.bubbles.front().color_set().size();
    out.estimate = Rational(-1);
    for (int b = 1; b <= spec.b_max; b++) {
        Rational v(ms.max_zero_score_per_b[b] - D, b);
        v.canonicalize();
        out.per_b.push_back(v);
        if (v > out.estimate) {
            out.estimate = v;
            out.attained_at_b = b;
            out.witnesses = ms.witnesses_per_b[b];
        }
    }
    out.melonic_cap = Rational(-1);
    bool tree_attains = false;
    for (const auto& bub : spec.bubbles) {
        Rational quarter(D * (D - 1), 4);
        quarter.canonicalize();
        Rational cap = quarter * bub.n_vertices() - score(bub);
        cap.canonicalize();
        out.melonic_cap = std::max(out.melonic_cap, cap);
        auto opt = optimal_pairings(bub);
        if (Rational(opt.max_zero_score - D) == out.estimate) tree_attains = true;
    }
    out.attained_by_tree = tree_attains;
    return out;
}

LinearBoundCertificate verify_linear_bound(const GluingSpec& spec, const Rational& tilde_a) {
    LinearBoundCertificate cert;
    cert.bound_tilde_a = tilde_a;
    int D = (int)spec.bubbles.front().color_set().size();
    check_spec(spec);
    for (int b = 1; b <= spec.b_max && cert.pass; b++) {
        for (const auto& ms : multisets((int)spec.bubbles.size(), b)) {
            Template t = place(spec.bubbles, ms);
            if (t.n > spec.vertex_cap) throw CapExceeded();
            std::set<std::string> sat_forms;
            run_matchings(t, false, nullptr, [&](const std::vector<int>& mm, int phi0) {
                if (!cert.pass) return;
                if (spec.connected_only && !matching_connected(t, mm)) return;
                Rational bound = Rational(D) + tilde_a * b;
                if (Rational(phi0) > bound) {
                    cert.pass = false;
                    cert.counterexample = realize(t, mm);
                    cert.counterexample_phi0 = phi0;
                } else if (Rational(phi0) == bound) {
                    ColoredGraph g = realize(t, mm);
                    auto cf = canonical_form(g);
                    if (sat_forms.insert(cf).second) cert.saturating.push_back(std::move(g));
                }
            });
            if (!cert.pass) break;
        }
    }
    return cert;
}

TreeLikeReport tree_like_check(const std::vector<ColoredGraph>& graphs, const std::vector<ColoredGraph>& patterns) {
    TreeLikeReport rep;
    std::vector<std::string> pforms;
    std::vector<int> pphi0;
    for (const auto& p : patterns) {
        pforms.push_back(canonical_form(p));
        pphi0.push_back(zero_score(p));
    }
    std::function<bool(const ColoredGraph&, std::vector<int>&)> decompose = [&](const ColoredGraph& g,
                                                                                std::vector<int>& pieces) -> bool {
        auto cf = canonical_form(g);
        for (size_t i = 0; i < pforms.size(); i++)
            if (pforms[i] == cf) {
                pieces.push_back((int)i);
                return true;
            }
        // try separating color-0 switches
        std::vector<int> zeds;
        for (int e = 0; e < g.n_edges(); e++)
            if (g.edge(e).color == 0) zeds.push_back(e);
        int phig = zero_score(g);
        for (size_t a = 0; a < zeds.size(); a++)
            for (size_t b2 = a + 1; b2 < zeds.size(); b2++) {
                ColoredGraph sw(g.dimension(), g.n_vertices());
                for (int v = 0; v < g.n_vertices(); v++) sw.set_vertex_color(v, g.black(v));
                const Edge& f = g.edge(zeds[a]);
                const Edge& fp = g.edge(zeds[b2]);
                for (int e = 0; e < g.n_edges(); e++) {
                    const Edge& ed = g.edge(e);
                    if (e == zeds[a])
                        sw.add_edge(f.u, fp.v, 0);
                    else if (e == zeds[b2])
                        sw.add_edge(fp.u, f.v, 0);
                    else
                        sw.add_edge(ed.u, ed.v, ed.color);
                }
                auto comp = sw.component_ids();
                int k = 1 + *std::max_element(comp.begin(), comp.end());
                if (k != 2) continue;
                // split into the two components
                ColoredGraph parts[2] = {ColoredGraph(g.dimension(), 0), ColoredGraph(g.dimension(), 0)};
                std::vector<int> remap(sw.n_vertices(), -1);
                int cnt[2] = {0, 0};
                for (int v = 0; v < sw.n_vertices(); v++) remap[v] = cnt[comp[v]]++;
                for (int c = 0; c < 2; c++) {
                    parts[c] = ColoredGraph(g.dimension(), cnt[c]);
                    for (int v = 0; v < sw.n_vertices(); v++)
                        if (comp[v] == c) parts[c].set_vertex_color(remap[v], sw.black(v));
                }
                for (const Edge& ed : sw.edges()) parts[comp[ed.u]].add_edge(remap[ed.u], remap[ed.v], ed.color);
                int D = (int)g.color_set().size() - 1;
                if (zero_score(parts[0]) + zero_score(parts[1]) != phig + D) continue;  // additivity must hold
                for (int first : {0, 1}) {
                    auto cf1 = canonical_form(parts[first]);
                    for (size_t i = 0; i < pforms.size(); i++)
                        if (pforms[i] == cf1) {
                            std::vector<int> sub;
                            if (decompose(parts[1 - first], sub)) {
                                pieces.push_back((int)i);
                                pieces.insert(pieces.end(), sub.begin(), sub.end());
                                return true;
                            }
                        }
                }
            }
        return false;
    };
    for (size_t gi = 0; gi < graphs.size(); gi++) {
        std::vector<int> pieces;
        if (decompose(graphs[gi], pieces)) {
            std::sort(pieces.begin(), pieces.end());
            rep.pieces.push_back(pieces);
        } else {
            rep.decomposes = false;
            rep.pieces.push_back({});
            rep.failing.push_back((int)gi);
        }
    }
    return rep;
}

MelonicCensus melonic_census(int D, int k) {
    MelonicCensus out;
    out.k = k;
    // sigma_0..sigma_D with sigma_0(0) = 0 fixed (the root edge)
    std::vector<std::vector<int>> sigma(D + 1, std::vector<int>(k));
    for (auto& s : sigma) std::iota(s.begin(), s.end(), 0);
    // iterate sigma_0 over permutations fixing 0, sigma_1.. over all
    std::vector<int> base(k);
    std::iota(base.begin(), base.end(), 0);

    std::function<void(int)> rec = [&](int c) {
        if (c > D) {
            // build the graph: black i = 2i, white j = 2j+1
            ColoredGraph g(D, 2 * k);
            for (int i = 0; i < k; i++) {
                g.set_vertex_color(2 * i, true);
                g.set_vertex_color(2 * i + 1, false);
            }
            for (int col = 0; col <= D; col++)
                for (int i = 0; i < k; i++) g.add_edge(2 * i, 2 * sigma[col][i] + 1, col);
            if (!g.connected()) return;
            if (is_melonic(g).melonic) out.labeled_with_root += 1;
            return;
        }
        if (c == 0) {
            // permutations of 1..k-1 in slot 0..; position 0 fixed
            std::vector<int> rest(k - 1);
            std::iota(rest.begin(), rest.end(), 1);
            do {
                sigma[0][0] = 0;
                for (int i = 1; i < k; i++) sigma[0][i] = rest[i - 1];
                rec(1);
            } while (std::next_permutation(rest.begin(), rest.end()));
        } else {
            std::vector<int> perm(base);
            do {
                sigma[c] = perm;
                rec(c + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    };
    rec(0);
    BigInt denom = 1;
    for (int i = 2; i <= k - 1; i++) denom *= i;
    denom *= denom;
    if (out.labeled_with_root % denom != 0) throw std::runtime_error("melonic census: symmetry division not exact");
    out.rooted = out.labeled_with_root / denom;
    return out;
}

std::vector<PlainMap> enumerate_connected_maps(int E) {
    std::vector<PlainMap> out;
    int n = 2 * E;
    std::unordered_set<std::string> seen;
    // rotation permutations as function tables; alpha is fixed as (01)(23)...
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto alpha = [&](int d) { return d ^ 1; };
    do {
        // connectivity over darts under sigma and alpha
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (id[x] != x) x = id[x] = id[id[x]];
            return x;
        };
        for (int d = 0; d < n; d++) {
            int a = find(d), b = find(perm[d]);
            if (a != b) id[a] = b;
            a = find(d);
            b = find(alpha(d));
            if (a != b) id[a] = b;
        }
        int roots = 0;
        for (int d = 0; d < n; d++)
            if (find(d) == d) roots++;
        if (roots != 1) continue;
        // canonical form: min over root darts of the BFS trace
        std::string best;
        for (int r = 0; r < n; r++) {
            std::vector<int> label(n, -1);
            std::vector<int> order;
            label[r] = 0;
            order.push_back(r);
            for (size_t qi = 0; qi < order.size(); qi++) {
                int d = order[qi];
                for (int nd : {perm[d], alpha(d)})
                    if (label[nd] < 0) {
                        label[nd] = (int)order.size();
                        order.push_back(nd);
                    }
            }
            std::string trace;
            trace.reserve(n * 4);
            for (int d : order) {
                trace.push_back((char)('a' + label[perm[d]]));
                trace.push_back((char)('a' + label[alpha(d)]));
            }
            if (best.empty() || trace < best) best = trace;
        }
        if (!seen.insert(best).second) continue;
        // decode vertices from sigma cycles
        PlainMap m;
        std::vector<char> used(n, 0);
        for (int d0 = 0; d0 < n; d0++) {
            if (used[d0]) continue;
            std::vector<int> cyc;
            int d = d0;
            while (!used[d]) {
                used[d] = 1;
                cyc.push_back(d);
                d = perm[d];
            }
            m.vertex_darts.push_back(std::move(cyc));
        }
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace gem
