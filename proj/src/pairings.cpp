#include "gem/pairings.hpp"

#include <algorithm>
#include <numeric>

namespace gem {

namespace {

struct BubbleSides {
    std::vector<int> blacks, whites;
};

BubbleSides sides(const ColoredGraph& b) {
    BubbleSides s;
    for (int v = 0; v < b.n_vertices(); v++) (b.black(v) ? s.blacks : s.whites).push_back(v);
    if (s.blacks.size() != s.whites.size()) throw std::runtime_error("pairing: unbalanced bubble");
    return s;
}

void check_bubble(const ColoredGraph& b) {
    auto rep = validate(b);
    if (rep.regularity != Regularity::Bubble && rep.regularity != Regularity::Closed)
        throw std::runtime_error("not a bubble (or closed graph)");
}

}  // namespace

void enumerate_pairings(const ColoredGraph& bubble, const std::function<bool(const Pairing&)>& cb) {
    check_bubble(bubble);
    auto s = sides(bubble);
    int n = (int)s.blacks.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Pairing p(n);
        for (int i = 0; i < n; i++) p[i] = {s.blacks[i], s.whites[perm[i]]};
        if (!cb(p)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

long count_pairings(const ColoredGraph& bubble) {
    long c = 0;
    enumerate_pairings(bubble, [&](const Pairing&) {
        c++;
        return true;
    });
    return c;
}

ColoredGraph covering(const ColoredGraph& bubble, const Pairing& omega) {
    if ((int)omega.size() * 2 != bubble.n_vertices()) throw std::runtime_error("covering: mismatched pairing");
    ColoredGraph g(std::max(bubble.dimension(), 1), bubble.n_vertices());
    for (int v = 0; v < bubble.n_vertices(); v++) g.set_vertex_color(v, bubble.black(v));
    for (const Edge& e : bubble.edges()) {
        if (e.color == 0) throw std::runtime_error("covering: input already has color-0 edges");
        g.add_edge(e.u, e.v, e.color);
    }
    std::vector<char> used(bubble.n_vertices(), 0);
    for (auto [b, w] : omega) {
        if (!bubble.black(b) || bubble.black(w) || used[b] || used[w]) throw std::runtime_error("covering: invalid pairing");
        used[b] = used[w] = 1;
        g.add_edge(b, w, 0);
    }
    return g;
}

int covering_zero_score(const ColoredGraph& bubble, const Pairing& omega) {
    // one (0,i)-cycle per cycle of (pairing, color-i matching)
    int n = bubble.n_vertices();
    std::vector<int> mate(n, -1);
    for (auto [b, w] : omega) {
        mate[b] = w;
        mate[w] = b;
    }
    int total = 0;
    for (int c : bubble.color_set()) {
        std::vector<char> seen(n, 0);
        for (int v = 0; v < n; v++) {
            if (seen[v] || !bubble.black(v)) continue;
            int x = v;
            while (!seen[x]) {
                seen[x] = 1;
                int w = mate[x];
                seen[w] = 1;
                x = bubble.neighbor(w, c);
            }
            total++;
        }
    }
    return total;
}

OptimalPairings optimal_pairings(const ColoredGraph& bubble, int cap_half_vertices) {
    check_bubble(bubble);
    auto s = sides(bubble);
    int n = (int)s.blacks.size();
    if (n > cap_half_vertices) throw std::runtime_error("optimal_pairings: cap exceeded");
    int D = (int)bubble.color_set().size();

    OptimalPairings out;
    // large h-pairs (h > D/2) belong to every optimal pairing: fix them first
    std::vector<int> forced_white_of_black(bubble.n_vertices(), -1);
    std::vector<char> white_taken(bubble.n_vertices(), 0);
    for (int b : s.blacks) {
        std::vector<int> cnt(bubble.n_vertices(), 0);
        for (int c : bubble.color_set()) cnt[bubble.neighbor(b, c)]++;
        for (int w : s.whites)
            if (2 * cnt[w] > D) {
                forced_white_of_black[b] = w;
                white_taken[w] = 1;
                out.forced_pairs.push_back({b, w});
            }
    }
    std::vector<int> free_blacks, free_whites;
    for (int b : s.blacks)
        if (forced_white_of_black[b] < 0) free_blacks.push_back(b);
    for (int w : s.whites)
        if (!white_taken[w]) free_whites.push_back(w);

    int m = (int)free_blacks.size();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    out.max_zero_score = -1;
    do {
        Pairing p;
        for (auto [b, w] : out.forced_pairs) p.push_back({b, w});
        for (int i = 0; i < m; i++) p.push_back({free_blacks[i], free_whites[perm[i]]});
        std::sort(p.begin(), p.end());
        int phi0 = covering_zero_score(bubble, p);
        if (phi0 > out.max_zero_score) {
            out.max_zero_score = phi0;
            out.pairings.clear();
        }
        if (phi0 == out.max_zero_score) out.pairings.push_back(p);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.pairings.begin(), out.pairings.end());
    return out;
}

int ContractedGraph::circuit_rank() const {
    // K from the union of color successors
    std::vector<int> id(n_nodes);
    std::iota(id.begin(), id.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (id[x] != x) x = id[x] = id[id[x]];
        return x;
    };
    long E = 0;
    for (auto& sc : succ)
        for (int v = 0; v < n_nodes; v++) {
            E++;
            int a = find(v), b = find(sc[v]);
            if (a != b) id[a] = b;
        }
    int K = 0;
    for (int v = 0; v < n_nodes; v++)
        if (find(v) == v) K++;
    return (int)(E - n_nodes + K);
}

int ContractedGraph::monochromatic_circuit_rank() const {
    // each color subgraph is a disjoint union of directed cycles: L = #cycles
    int total = 0;
    for (auto& sc : succ) {
        std::vector<char> seen(n_nodes, 0);
        for (int v = 0; v < n_nodes; v++) {
            if (seen[v]) continue;
            int x = v;
            while (!seen[x]) {
                seen[x] = 1;
                x = sc[x];
            }
            total++;
        }
    }
    return total;
}

ContractedGraph contracted_graph(const ColoredGraph& bubble, const Pairing& omega) {
    ContractedGraph cg;
    cg.n_nodes = (int)omega.size();
    cg.colors = bubble.color_set();
    std::vector<int> node_of(bubble.n_vertices(), -1);
    for (int i = 0; i < (int)omega.size(); i++) {
        node_of[omega[i].first] = i;
        node_of[omega[i].second] = i;
    }
    for (int c : cg.colors) {
        std::vector<int> sc(cg.n_nodes, -1);
        for (int i = 0; i < cg.n_nodes; i++) {
            int b = omega[i].first;                 // black vertex of node i
            sc[i] = node_of[bubble.neighbor(b, c)]; // edges oriented black -> white
        }
        cg.succ.push_back(std::move(sc));
    }
    return cg;
}

int lm(const ColoredGraph& bubble, const Pairing& omega) { return contracted_graph(bubble, omega).lm(); }

int delta0(const ColoredGraph& bubble, const Pairing& omega) {
    int D = (int)bubble.color_set().size();
    int half = bubble.n_vertices() / 2;
    int d0 = D + (D - 1) * (half - 1) - covering_zero_score(bubble, omega);
    return d0;
}

CoefficientReport coefficients(const ColoredGraph& bubble, int cap_half_vertices) {
    CoefficientReport r;
    r.dim = (int)bubble.color_set().size();
    r.n_vertices = bubble.n_vertices();
    r.phi = score(bubble);
    auto opt = optimal_pairings(bubble, cap_half_vertices);
    r.phi0_opt = opt.max_zero_score;
    r.optimal = opt.pairings;
    int D = r.dim;
    r.tilde_a = Rational(r.phi0_opt - D);
    r.s = Rational(lm(bubble, opt.pairings.front()));
    r.a = Rational(r.phi0_opt - D + r.phi, r.n_vertices);
    r.a.canonicalize();
    Rational quarter(D * (D - 1), 4);
    quarter.canonicalize();
    r.delta = quarter - r.a;
    r.delta.canonicalize();
    r.evidence = EvidenceMode::TreesAssumed;
    // consistency: s = (D-1)(V/2 - 1) - tilde_a must hold exactly
    Rational s2 = Rational(D - 1) * Rational(r.n_vertices / 2 - 1) - r.tilde_a;
    s2.canonicalize();
    if (s2 != r.s) throw std::runtime_error("coefficients: scaling identity violated");
    return r;
}

CoefficientReport coefficients_nonconnected(const std::vector<CoefficientReport>& components, int D) {
    if (components.empty()) throw std::runtime_error("coefficients_nonconnected: empty list");
    if (components.size() == 1) return components.front();
    CoefficientReport r;
    r.dim = D;
    int k = (int)components.size();
    long V = 0;
    Rational sum_ta = 0, sum_s = 0, sum_aV = 0;
    int phi = 0, phi0 = 0;
    for (const auto& c : components) {
        V += c.n_vertices;
        sum_ta += c.tilde_a;
        sum_s += c.s;
        sum_aV += c.a * c.n_vertices;
        phi += c.phi;
        phi0 += c.phi0_opt;
    }
    r.n_vertices = (int)V;
    r.phi = phi;
    r.phi0_opt = phi0;  // per-component optimal scores, informational
    r.tilde_a = Rational((k - 1) * D) + sum_ta;
    r.s = Rational(1 - k) + sum_s;
    r.a = (Rational((k - 1) * D) + sum_aV) / Rational(V);
    r.a.canonicalize();
    Rational quarter(D * (D - 1), 4);
    quarter.canonicalize();
    r.delta = quarter - r.a;
    r.delta.canonicalize();
    r.evidence = components.front().evidence;
    return r;
}

}  // namespace gem
