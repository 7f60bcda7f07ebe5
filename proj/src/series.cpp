#include "gem/series.hpp"

#include <cctype>
#include <stdexcept>

namespace gem {

SeriesSpec parse_series_spec(const std::string& text) {
    SeriesSpec spec;
    spec.source = text;
    size_t i = 0;
    auto skip = [&]() {
        while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) i++;
    };
    auto read_int = [&]() {
        skip();
        size_t j = i;
        while (j < text.size() && std::isdigit((unsigned char)text[j])) j++;
        if (j == i) throw std::runtime_error("series: expected integer at '" + text.substr(i) + "'");
        long v = std::stol(text.substr(i, j - i));
        i = j;
        return v;
    };
    skip();
    if (i >= text.size() || text[i] != '1') throw std::runtime_error("series: equation must start with the constant 1");
    i++;
    skip();
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+')
            i++;
        else if (text[i] == '-') {
            sign = -1;
            i++;
        } else
            throw std::runtime_error("series: expected '+' or '-'");
        skip();
        SeriesTerm t;
        t.coeff = sign;
        if (i < text.size() && std::isdigit((unsigned char)text[i])) t.coeff = sign * read_int();
        skip();
        t.z_power = 0;
        if (i < text.size() && (text[i] == 'z' || text[i] == 'Z')) {
            i++;
            t.z_power = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                i++;
                t.z_power = (int)read_int();
            }
        }
        skip();
        t.g_power = 0;
        if (i < text.size() && (text[i] == 'G' || text[i] == 'g')) {
            i++;
            t.g_power = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                i++;
                t.g_power = (int)read_int();
            }
        }
        if (t.z_power < 1) throw std::runtime_error("series: each term needs z^m with m >= 1");
        spec.terms.push_back(t);
        skip();
    }
    if (spec.terms.empty()) throw std::runtime_error("series: no terms");
    return spec;
}

std::vector<BigInt> series_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int n) {
    std::vector<BigInt> out(n + 1, 0);
    for (int i = 0; i <= n && i < (int)a.size(); i++) {
        if (a[i] == 0) continue;
        for (int j = 0; j + i <= n && j < (int)b.size(); j++) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<BigInt> series_pow(const std::vector<BigInt>& a, int p, int n) {
    std::vector<BigInt> out(n + 1, 0);
    out[0] = 1;
    std::vector<BigInt> base = a;
    base.resize(n + 1, 0);
    while (p > 0) {
        if (p & 1) out = series_mul(out, base, n);
        p >>= 1;
        if (p) base = series_mul(base, base, n);
    }
    return out;
}

std::vector<BigInt> series_inverse(const std::vector<BigInt>& a, int n) {
    if (a.empty() || (a[0] != 1 && a[0] != -1)) throw std::runtime_error("series_inverse: non-unit constant term");
    std::vector<BigInt> out(n + 1, 0);
    out[0] = a[0];  // 1/1 = 1, 1/-1 = -1
    for (int k = 1; k <= n; k++) {
        BigInt s = 0;
        for (int j = 1; j <= k && j < (int)a.size(); j++) s += a[j] * out[k - j];
        out[k] = -s * a[0];
    }
    return out;
}

std::vector<BigInt> series_solve(const SeriesSpec& spec, int n) {
    if (n > 10000) throw std::runtime_error("series_solve: order cap exceeded");
    std::vector<BigInt> c(n + 1, 0);
    c[0] = 1;
    // cache powers of the current prefix: recompute per order (n is small in
    // practice; correctness over speed)
    for (int k = 1; k <= n; k++) {
        BigInt v = 0;
        for (const SeriesTerm& t : spec.terms) {
            int rem = k - t.z_power;
            if (rem < 0) continue;
            // [z^rem] G^p uses only c_0..c_rem, all already known (rem < k)
            std::vector<BigInt> prefix(c.begin(), c.begin() + rem + 1);
            auto gp = series_pow(prefix, t.g_power, rem);
            v += BigInt(t.coeff) * gp[rem];
        }
        c[k] = v;
    }
    return c;
}

bool series_check(const SeriesSpec& spec, const std::vector<BigInt>& c) {
    int n = (int)c.size() - 1;
    std::vector<BigInt> rhs(n + 1, 0);
    rhs[0] = 1;
    for (const SeriesTerm& t : spec.terms) {
        auto gp = series_pow(c, t.g_power, n);
        for (int k = t.z_power; k <= n; k++) rhs[k] += BigInt(t.coeff) * gp[k - t.z_power];
    }
    return rhs == c;
}

SingularPoint singular_point(const SeriesSpec& spec) {
    if (spec.terms.size() != 1) throw std::runtime_error("singular_point: single-term equations only");
    const SeriesTerm& t = spec.terms[0];
    if (t.g_power < 2 || t.coeff <= 0) throw std::runtime_error("singular_point: need k > 0 and p >= 2");
    if (t.z_power != 1) throw std::runtime_error("singular_point: need m = 1 for a rational singular point");
    long p = t.g_power;
    SingularPoint s;
    s.g_c = Rational(p, p - 1);
    s.g_c.canonicalize();
    // z_c = (p-1)^(p-1) / (k p^p), from 1 - G + k z G^p = 0 and dG-derivative
    BigInt num = 1, den = t.coeff;
    for (int i = 0; i < p - 1; i++) num *= (p - 1);
    for (int i = 0; i < p; i++) den *= p;
    s.z_c = Rational(num, den);
    s.z_c.canonicalize();
    return s;
}

BigInt fuss_catalan(int m, int k) {
    // binom(mk+1, k) / (mk+1)
    BigInt num = 1, den = 1;
    long top = (long)m * k + 1;
    for (long i = 0; i < k; i++) {
        num *= BigInt(top - i);
        den *= BigInt(i + 1);
    }
    BigInt b = num / den;
    return b / BigInt(top);
}

}  // namespace gem
