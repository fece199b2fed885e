#pragma once

#include "braid.hpp"
#include "colored_bracket.hpp"
#include "root_data.hpp"

#include <cstdlib>
#include <numeric>
#include <optional>
#include <regex>
#include <string>

namespace qtv {

/// {m} = A^{2m} - A^{-2m}
template <class Ring>
typename Ring::value_type brace(long long m, const RootData<Ring>& root) {
    return root.A_pow(2 * m) - root.A_pow(-2 * m);
}

/// Habiro's cyclotomic sum for the figure-eight knot, normalized so the unknot is 1.
template <class Ring>
typename Ring::value_type figure_eight_normalized(int n, const RootData<Ring>& root) {
    auto sum = root.ring().one();
    auto prod = root.ring().one();
    for (int k = 1; k <= n; ++k) {
        prod = prod * brace(n + 1 + k, root) * brace(n + 1 - k, root);
        sum += prod;
    }
    return sum;
}

template <class Ring>
typename Ring::value_type unknot_bracket(int n, const RootData<Ring>& root) {
    auto v = root.qint(n + 1);
    return n % 2 == 0 ? v : -v;
}

template <class Ring>
typename Ring::value_type figure_eight_bracket(int n, const RootData<Ring>& root) {
    return unknot_bracket(n, root) * figure_eight_normalized(n, root);
}

/// Zero-framed bracket of the torus knot T(p,q), gcd(p,q) = 1, by the
/// Rosso-Jones formula on V_n.
template <class Ring>
typename Ring::value_type torus_knot_bracket(int p, int q, int n, const RootData<Ring>& root) {
    if (p == 0 || q == 0 || std::gcd(std::abs(p), std::abs(q)) != 1)
        throw std::invalid_argument("torus knot needs coprime nonzero p, q");
    if (p < 0) {
        p = -p;
        q = -q;
    }
    auto sum = root.ring().zero();
    const long long pq = static_cast<long long>(p) * q;
    for (int i = 0; i <= n; ++i) {
        long long e = static_cast<long long>(p) * (n - 2 * i) + 1;
        if (e == 0) continue;
        long long mu = std::llabs(e) - 1;
        long long num = mu * (mu + 2) * q;
        auto term = root.A_pow(num / p) * root.qint(mu + 1);
        if (e < 0) term = -term;
        sum += term;
    }
    sum = sum * root.A_pow(-(static_cast<long long>(n) * n + 2LL * n) * pq);
    return n % 2 == 0 ? sum : -sum;
}

/// Registry key of a closed-form evaluator for the given link, if any.
/// Keys: "unknot", "4_1", "T_p_q" (coprime).
inline std::optional<std::string> fast_path_key(const BraidWord& b) {
    if (b.letters.empty() && b.strands == 1) return std::string("unknot");
    if (b == BraidWord(3, {-2, 1, -2, 1})) return std::string("4_1");
    // (s_1 ... s_{p-1})^q for q > 0
    int p = b.strands;
    if (p >= 2 && !b.letters.empty() && b.crossing_count() % (p - 1) == 0) {
        int q = b.crossing_count() / (p - 1);
        bool pos = true, neg = true;
        for (int t = 0; t < b.crossing_count(); ++t) {
            int j = t % (p - 1);
            if (b.letters[t] != j + 1) pos = false;
            if (b.letters[t] != -(p - 1 - j)) neg = false;
        }
        if ((pos || neg) && std::gcd(p, q) == 1)
            return "T_" + std::to_string(p) + "_" + std::to_string(pos ? q : -q);
    }
    return std::nullopt;
}

template <class Ring>
std::optional<typename Ring::value_type> fast_path(const std::string& key, const Coloring& c,
                                                   const RootData<Ring>& root) {
    if (c.size() != 1) return std::nullopt;
    int n = c[0];
    if (n < 0 || n > root.r() - 2) return std::nullopt;
    if (key == "unknot") return unknot_bracket(n, root);
    if (key == "4_1") return figure_eight_bracket(n, root);
    static const std::regex torus(R"(T_(-?\d+)_(-?\d+))");
    std::smatch m;
    if (std::regex_match(key, m, torus)) {
        int p = std::stoi(m[1]), q = std::stoi(m[2]);
        if (p == 0 || q == 0 || std::gcd(std::abs(p), std::abs(q)) != 1) return std::nullopt;
        if (std::abs(p) == 1 || std::abs(q) == 1) return unknot_bracket(n, root);
        return torus_knot_bracket(p, q, n, root);
    }
    return std::nullopt;
}

}  // namespace qtv
