#pragma once

#include "root_data.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qtv {

/// Planar matching of 2k boundary points: tops are 0..k-1 left to right,
/// bottoms are k..2k-1 left to right.  partner[p] is the point matched to p.
using Matching = std::vector<std::uint8_t>;

namespace tl {

inline Matching identity_matching(int k) {
    Matching m(2 * k);
    for (int i = 0; i < k; ++i) {
        m[i] = static_cast<std::uint8_t>(k + i);
        m[k + i] = static_cast<std::uint8_t>(i);
    }
    return m;
}

/// Cup/cap generator e_i joining strands i and i+1 (0-based).
inline Matching cupcap_matching(int k, int i) {
    Matching m = identity_matching(k);
    m[i] = static_cast<std::uint8_t>(i + 1);
    m[i + 1] = static_cast<std::uint8_t>(i);
    m[k + i] = static_cast<std::uint8_t>(k + i + 1);
    m[k + i + 1] = static_cast<std::uint8_t>(k + i);
    return m;
}

/// Stacks a above b: bottoms of a are glued to tops of b.  Returns the
/// resulting matching and the number of closed loops.
inline std::pair<Matching, int> compose(const Matching& a, const Matching& b, int k) {
    // a's points are 0..2k-1, b's points are 2k..4k-1
    auto partner = [&](int p) -> int { return p < 2 * k ? a[p] : 2 * k + b[p - 2 * k]; };
    auto glue = [&](int p) -> int { return p < 2 * k ? 2 * k + (p - k) : k + (p - 2 * k); };
    auto is_free = [&](int p) { return p < k || p >= 3 * k; };
    auto out_index = [&](int p) { return p < k ? p : p - 2 * k; };

    Matching out(2 * k);
    std::vector<char> seen(4 * k, 0);
    for (int start = 0; start < 4 * k; ++start) {
        if (!is_free(start) || seen[start]) continue;
        int cur = start;
        seen[cur] = 1;
        while (true) {
            int q = partner(cur);
            seen[q] = 1;
            if (is_free(q)) {
                out[out_index(start)] = static_cast<std::uint8_t>(out_index(q));
                out[out_index(q)] = static_cast<std::uint8_t>(out_index(start));
                break;
            }
            cur = glue(q);
            seen[cur] = 1;
        }
    }
    int loops = 0;
    for (int p = k; p < 2 * k; ++p) {
        if (seen[p]) continue;
        ++loops;
        int cur = p;
        while (!seen[cur]) {
            seen[cur] = 1;
            int q = partner(cur);
            seen[q] = 1;
            cur = glue(q);
        }
    }
    return {out, loops};
}

/// Number of loops in the Markov closure (top i joined to bottom i).
inline int closure_loops(const Matching& m, int k) {
    std::vector<char> seen(2 * k, 0);
    int loops = 0;
    for (int s = 0; s < k; ++s) {
        if (seen[s]) continue;
        ++loops;
        int cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            int q = m[cur];
            seen[q] = 1;
            cur = q < k ? q + k : q - k;
        }
    }
    return loops;
}

/// Position of a boundary point on the circle: tops left to right, then bottoms right to left.
inline int boundary_position(int p, int k) { return p < k ? p : 3 * k - 1 - p; }

inline bool is_noncrossing(const Matching& m, int k) {
    for (int p = 0; p < 2 * k; ++p) {
        int q = m[p];
        if (q <= p) continue;
        int a = boundary_position(p, k), b = boundary_position(q, k);
        if (a > b) std::swap(a, b);
        for (int s = 0; s < 2 * k; ++s) {
            int t = m[s];
            if (t <= s) continue;
            int c = boundary_position(s, k), d = boundary_position(t, k);
            if (c > d) std::swap(c, d);
            bool c_in = a < c && c < b, d_in = a < d && d < b;
            if (c_in != d_in) return false;
        }
    }
    return true;
}

/// All non-crossing matchings of 2k points (Catalan(k) of them).
inline std::vector<Matching> noncrossing_matchings(int k) {
    std::function<std::vector<std::vector<std::pair<int, int>>>(int, int)> gen = [&](int lo, int hi) {
        std::vector<std::vector<std::pair<int, int>>> res;
        if (lo > hi) {
            res.push_back({});
            return res;
        }
        for (int j = lo + 1; j <= hi; j += 2) {
            auto inner = gen(lo + 1, j - 1);
            auto outer = gen(j + 1, hi);
            for (const auto& x : inner)
                for (const auto& y : outer) {
                    auto z = x;
                    z.emplace_back(lo, j);
                    z.insert(z.end(), y.begin(), y.end());
                    res.push_back(std::move(z));
                }
        }
        return res;
    };
    std::vector<int> point_at(2 * k);
    for (int p = 0; p < 2 * k; ++p) point_at[boundary_position(p, k)] = p;
    std::vector<Matching> out;
    for (const auto& pairs : gen(0, 2 * k - 1)) {
        Matching m(2 * k);
        for (auto [a, b] : pairs) {
            m[point_at[a]] = static_cast<std::uint8_t>(point_at[b]);
            m[point_at[b]] = static_cast<std::uint8_t>(point_at[a]);
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace tl

/// Element of the Temperley-Lieb algebra TL_k over the scalars of Ring.
template <class Ring>
class TLElement {
public:
    using value_type = typename Ring::value_type;

    TLElement(const RootData<Ring>& root, int k) : root_(&root), k_(k) {}

    static TLElement identity(const RootData<Ring>& root, int k) {
        TLElement x(root, k);
        x.terms_.emplace(tl::identity_matching(k), root.ring().one());
        return x;
    }
    static TLElement generator(const RootData<Ring>& root, int k, int i) {
        if (i < 0 || i + 1 >= k) throw std::out_of_range("TL generator index out of range");
        TLElement x(root, k);
        x.terms_.emplace(tl::cupcap_matching(k, i), root.ring().one());
        return x;
    }

    int strands() const { return k_; }
    const std::map<Matching, value_type>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Matching& m, const value_type& c) {
        if (Ring::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (Ring::is_zero(it->second)) terms_.erase(it);
    }

    TLElement& operator+=(const TLElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
    friend TLElement operator-(TLElement a, const TLElement& b) {
        for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }
    friend TLElement operator*(const value_type& s, const TLElement& x) {
        TLElement out(*x.root_, x.k_);
        for (const auto& [m, c] : x.terms_) out.add_term(m, s * c);
        return out;
    }

    /// a * b stacks a above b.
    friend TLElement operator*(const TLElement& a, const TLElement& b) {
        if (a.k_ != b.k_) throw std::invalid_argument("TL strand counts differ");
        TLElement out(*a.root_, a.k_);
        std::vector<value_type> dpow{a.root_->ring().one()};
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                auto [m, loops] = tl::compose(ma, mb, a.k_);
                while (static_cast<int>(dpow.size()) <= loops) dpow.push_back(dpow.back() * a.root_->delta());
                out.add_term(m, ca * cb * dpow[loops]);
            }
        return out;
    }

    friend bool operator==(const TLElement& a, const TLElement& b) {
        if (a.k_ != b.k_ || a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [m, c] : a.terms_) {
            if (m != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

    /// Places this element on strands offset..offset+k-1 of TL_total, identity elsewhere.
    TLElement embed(int offset, int total) const {
        if (offset < 0 || offset + k_ > total) throw std::out_of_range("TL embedding out of range");
        TLElement out(*root_, total);
        for (const auto& [m, c] : terms_) {
            Matching big = tl::identity_matching(total);
            for (int p = 0; p < 2 * k_; ++p) {
                int q = m[p];
                auto lift = [&](int x) { return x < k_ ? offset + x : total + offset + (x - k_); };
                big[lift(p)] = static_cast<std::uint8_t>(lift(q));
            }
            out.add_term(big, c);
        }
        return out;
    }

    /// Markov trace: close each strand on the right, loops weigh delta.
    value_type trace() const {
        auto acc = root_->ring().zero();
        for (const auto& [m, c] : terms_) {
            int loops = tl::closure_loops(m, k_);
            auto d = root_->ring().one();
            for (int i = 0; i < loops; ++i) d = d * root_->delta();
            acc += c * d;
        }
        return acc;
    }

private:
    const RootData<Ring>* root_;
    int k_;
    std::map<Matching, value_type> terms_;
};

/// Jones-Wenzl idempotent f_n from the one-sided expansion
/// f_n = (f_{n-1} x 1) (1 + sum_{j<n} ([j]/[n]) e_{n-1} e_{n-2} ... e_j).
template <class Ring>
TLElement<Ring> jones_wenzl(int n, const RootData<Ring>& root) {
    if (n < 0 || n > root.r() - 2) throw std::out_of_range("Jones-Wenzl index out of range");
    if (n == 0) {
        TLElement<Ring> f(root, 0);
        f.add_term(Matching{}, root.ring().one());
        return f;
    }
    TLElement<Ring> f = TLElement<Ring>::identity(root, 1);
    for (int m = 2; m <= n; ++m) {
        TLElement<Ring> g = f.embed(0, m);
        TLElement<Ring> next = g;
        TLElement<Ring> word = TLElement<Ring>::identity(root, m);
        for (int j = m - 1; j >= 1; --j) {
            word = word * TLElement<Ring>::generator(root, m, j - 1);
            next += (root.qint(j) / root.qint(m)) * (g * word);
        }
        f = std::move(next);
    }
    return f;
}

}  // namespace qtv
