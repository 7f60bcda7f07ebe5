#pragma once
// Exact integer series solver for algebraic equations of the form
// G = 1 + sum_i k_i z^{m_i} G^{p_i}, plus the singular-point data of
// single-term equations. Big-integer arithmetic throughout.

#include <string>
#include <vector>

#include "gem/colored_graph.hpp"  // Rational / BigInt aliases

namespace gem {

struct SeriesTerm {
    long coeff = 1;   // k_i
    int z_power = 1;  // m_i >= 1
    int g_power = 0;  // p_i >= 0
};

struct SeriesSpec {
    std::vector<SeriesTerm> terms;
    std::string source;  // the parsed text, if any
};

// Accepts e.g. "1+3zG^4", "1 + 3 z G^3 + 3 z^2 G^6", "1+z*G^4".
SeriesSpec parse_series_spec(const std::string& text);

// Coefficients c_0..c_n of the unique power-series solution with c_0 = 1.
std::vector<BigInt> series_solve(const SeriesSpec& spec, int n);

// Substitutes the solution back into its defining equation (truncated).
bool series_check(const SeriesSpec& spec, const std::vector<BigInt>& c);

struct SingularPoint {
    Rational z_c;
    Rational g_c;
};

// Exact dominant singular point for single-term specs G = 1 + k z^m G^p with
// p >= 2: G_c = p/(p-1), z_c^m = (p-1)^(p-1) / (k p^p). Requires m = 1.
SingularPoint singular_point(const SeriesSpec& spec);

// Fuss-Catalan number C_k^m = binom(mk+1, k) / (mk+1).
BigInt fuss_catalan(int m, int k);

// ---- dense series arithmetic over BigInt, truncated at fixed order ----

std::vector<BigInt> series_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int n);
std::vector<BigInt> series_pow(const std::vector<BigInt>& a, int p, int n);
// Multiplicative inverse of a unit series (a[0] = +-1).
std::vector<BigInt> series_inverse(const std::vector<BigInt>& a, int n);

}  // namespace gem
