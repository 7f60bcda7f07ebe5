#pragma once
// Exhaustive enumeration of bubble-restricted gluings, maximal-set
// certification, empirical tilde-a determination, linear-bound certificates,
// tree-like decomposition checks, the melonic census, and a small rooted-map
// enumerator for the quartic classification. Enumeration is deterministic:
// work is split by matching prefix and merged in prefix order.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gem/colored_graph.hpp"
#include "gem/pairings.hpp"

namespace gem {

enum class RootingMode { Labeled, RootedEdge, UnlabeledCanonical };

struct GluingSpec {
    std::vector<ColoredGraph> bubbles;  // all sharing the color set 1..D
    int b_max = 1;
    RootingMode rooting = RootingMode::Labeled;
    bool connected_only = true;
    int vertex_cap = 24;  // total vertices (black + white) allowed per gluing
    int threads = 1;
};

struct GluingCensusRow {
    int b = 0;                       // number of bubbles
    std::vector<int> multiset;       // bubble type of each copy (sorted)
    BigInt count = 0;                // per rooting mode
    int max_zero_score = 0;
    std::vector<std::string> witness_forms;  // canonical forms of the maximal graphs
    std::vector<ColoredGraph> witnesses;     // one representative per form
};

struct MaximalSetResult {
    std::vector<int> max_zero_score_per_b;        // index 1..b_max
    std::vector<std::vector<ColoredGraph>> witnesses_per_b;
};

// Enumerate all color-0 perfect matchings over the placed bubble copies.
// The callback receives each (connected, if filtered) gluing.
void enumerate_gluings(const GluingSpec& spec, const std::function<void(const ColoredGraph&)>& cb);

// Count gluings per b (labeled / rooted-edge / unlabeled-canonical).
std::vector<GluingCensusRow> gluing_census(const GluingSpec& spec);

// For each b <= b_max the maximum Phi_0 and all attaining graphs (canonical
// dedup), with branch-and-bound pruning on the partial zero-score.
MaximalSetResult maximal_set(const GluingSpec& spec);

struct TildeAEstimate {
    Rational estimate;                 // sup over enumerated b of (Phi0max - D)/b
    int attained_at_b = 0;
    std::vector<Rational> per_b;       // (Phi0max(b) - D)/b trace
    Rational melonic_cap;              // max over bubbles of D(D-1)/4 V(B) - Phi(B)
    bool attained_by_tree = false;     // estimate equals Phi0^opt - D of some bubble
    std::vector<ColoredGraph> witnesses;
};

TildeAEstimate empirical_tilde_a(const GluingSpec& spec);

struct LinearBoundCertificate {
    bool pass = true;
    Rational bound_tilde_a;
    std::vector<ColoredGraph> saturating;   // Phi_0 = D + tilde_a * b
    std::optional<ColoredGraph> counterexample;
    int counterexample_phi0 = 0;
};

// Checks Phi_0(g) <= D + tilde_a * b(g) over every enumerated gluing.
LinearBoundCertificate verify_linear_bound(const GluingSpec& spec, const Rational& tilde_a);

struct TreeLikeReport {
    bool decomposes = true;
    // for each input graph: the multiset of pattern indices of its pieces, or
    // empty when the graph fails to decompose
    std::vector<std::vector<int>> pieces;
    std::vector<int> failing;  // indices of graphs that do not decompose
};

// Decides whether each graph splits by repeated separating color-0 switches
// into elements of the pattern list, verifying Phi_0 additivity at each split.
TreeLikeReport tree_like_check(const std::vector<ColoredGraph>& graphs, const std::vector<ColoredGraph>& patterns);

// ---- melonic census (Fuss-Catalan cross-check) ----

struct MelonicCensus {
    int k = 0;
    BigInt labeled_with_root = 0;  // connected melonic, sigma_0(1) = 1'
    BigInt rooted = 0;             // labeled_with_root / ((k-1)!)^2
};

// Enumerates all closed (D+1)-colored graphs on k black and k white vertices
// with a fixed root color-0 edge and counts the connected melonic ones.
MelonicCensus melonic_census(int D, int k);

// ---- rooted-map enumeration for the quartic classification ----

struct PlainMap {
    // rotation system on 2E darts; alpha pairs 2i, 2i+1
    std::vector<std::vector<int>> vertex_darts;
};

// All connected unlabeled maps with exactly E edges (any genus), via
// canonical dedup of rotation systems.
std::vector<PlainMap> enumerate_connected_maps(int E);

}  // namespace gem
