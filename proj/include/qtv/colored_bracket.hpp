#pragma once

#include "braid.hpp"
#include "root_data.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace qtv {

/// Color per link component.
using Coloring = std::vector<int>;

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ColoringError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int default_cable_cap(Backend b) { return b == Backend::exact ? 24 : 64; }

struct BracketOptions {
    int cable_cap = 0;  // 0 selects the backend default
    int jobs = 1;
};

/// Runs f(i) for i in [0, n) on up to `jobs` threads.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    int t = std::min(jobs, n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += t) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Quantum trace of a braid acting on tensor products of irreducible
/// U_q(sl2) modules V_n (basis v_0..v_n, weight n-2i), evaluated block by
/// block on weight spaces.
template <class Ring>
class BraidTraceEngine {
public:
    using value_type = typename Ring::value_type;
    /// Sparse R-matrix: for input code i*(b+1)+j, the list of (output code, coefficient).
    using RTable = std::vector<std::vector<std::pair<int, value_type>>>;

    BraidTraceEngine(const RootData<Ring>& root, int jobs = 1) : root_(root), jobs_(jobs) {}

    /// R-matrix V_a (x) V_b -> V_b (x) V_a for a positive crossing, or the
    /// inverse of the positive one V_b (x) V_a -> V_a (x) V_b for sign < 0.
    /// Output code is left*(a+1)+right with left in V_b and right in V_a.
    const RTable& rmatrix(int a, int b, int sign) {
        auto key = std::make_tuple(a, b, sign);
        auto it = rcache_.find(key);
        if (it != rcache_.end()) return it->second;
        const Ring& R = root_.ring();
        auto vdiff = R.root_power(2) - R.root_power(-2);
        std::vector<value_type> vdiff_pow{R.one()};
        for (int k = 1; k <= std::max(a, b); ++k) vdiff_pow.push_back(vdiff_pow.back() * vdiff);
        RTable table((a + 1) * (b + 1));
        for (int i = 0; i <= a; ++i)
            for (int j = 0; j <= b; ++j) {
                auto& out = table[i * (b + 1) + j];
                if (sign > 0) {
                    auto fprod = R.one();
                    for (int k = 0; k <= std::min(i, b - j); ++k) {
                        if (k > 0) fprod = fprod * root_.qint(j + k);
                        long long e = static_cast<long long>(a - 2 * (i - k)) * (b - 2 * (j + k)) +
                                      static_cast<long long>(k) * (k - 1);
                        auto c = R.root_power(e) * vdiff_pow[k] * root_.qbinom(a - i + k, k) * fprod;
                        if (!Ring::is_zero(c)) out.emplace_back((j + k) * (a + 1) + (i - k), c);
                    }
                } else {
                    auto fprod = R.one();
                    for (int k = 0; k <= std::min(j, a - i); ++k) {
                        if (k > 0) fprod = fprod * root_.qint(i + k);
                        long long e = -static_cast<long long>(b - 2 * j) * (a - 2 * i) -
                                      static_cast<long long>(k) * (k - 1);
                        auto c = R.root_power(e) * vdiff_pow[k] * root_.qbinom(b - j + k, k) * fprod;
                        if (k % 2 == 1) c = -c;
                        if (!Ring::is_zero(c)) out.emplace_back((j - k) * (a + 1) + (i + k), c);
                    }
                }
            }
        return rcache_.emplace(key, std::move(table)).first->second;
    }

    /// Tr(K^{(x)n} * B) on V_{c_1} (x) ... (x) V_{c_n}, where colors are given
    /// per top position and the braid permutes them.
    value_type qtrace(const BraidWord& braid, const std::vector<int>& top_colors) {
        const int n = braid.strands;
        const int L = braid.crossing_count();
        std::vector<std::vector<int>> arr(L + 1);
        arr[0] = top_colors;
        for (int t = 0; t < L; ++t) {
            arr[t + 1] = arr[t];
            int p = std::abs(braid.letters[t]) - 1;
            std::swap(arr[t + 1][p], arr[t + 1][p + 1]);
        }
        if (arr[L] != arr[0]) throw ColoringError("coloring not constant on closure components");
        for (int t = 0; t < L; ++t) {
            int p = std::abs(braid.letters[t]) - 1;
            rmatrix(arr[t][p], arr[t][p + 1], braid.letters[t] > 0 ? 1 : -1);
        }
        int S = 0;
        for (int c : top_colors) S += c;
        const Ring& R = root_.ring();
        auto total = R.zero();
        for (int s = 0; 2 * s <= S; ++s) {
            auto tr = block_trace(braid, arr, n, s);
            if (Ring::is_zero(tr)) continue;
            int w = S - 2 * s;
            if (w == 0) total += tr;
            else total += (R.root_power(2 * w) + R.root_power(-2 * w)) * tr;
        }
        return total;
    }

private:
    struct Block {
        std::vector<std::vector<std::uint8_t>> states;
        std::unordered_map<std::uint64_t, int> index;
    };

    static std::uint64_t encode(const std::vector<std::uint8_t>& st, const std::vector<int>& cols) {
        std::uint64_t code = 0;
        for (std::size_t p = 0; p < st.size(); ++p) code = code * static_cast<std::uint64_t>(cols[p] + 1) + st[p];
        return code;
    }

    static Block make_block(const std::vector<int>& cols, int s) {
        Block blk;
        const int n = static_cast<int>(cols.size());
        std::vector<int> suffix(n + 1, 0);
        for (int p = n - 1; p >= 0; --p) suffix[p] = suffix[p + 1] + cols[p];
        std::vector<std::uint8_t> st(n, 0);
        std::function<void(int, int)> rec = [&](int p, int left) {
            if (p == n) {
                if (left == 0) {
                    blk.index.emplace(encode(st, cols), static_cast<int>(blk.states.size()));
                    blk.states.push_back(st);
                }
                return;
            }
            int lo = std::max(0, left - suffix[p + 1]);
            int hi = std::min(cols[p], left);
            for (int v = lo; v <= hi; ++v) {
                st[p] = static_cast<std::uint8_t>(v);
                rec(p + 1, left - v);
            }
            st[p] = 0;
        };
        rec(0, s);
        return blk;
    }

    struct Gather {
        // CSR over targets: sources[offs[t]..offs[t+1]) with coefficient pointers
        std::vector<int> offs;
        std::vector<int> src;
        std::vector<const value_type*> coeff;
    };

    value_type block_trace(const BraidWord& braid, const std::vector<std::vector<int>>& arr, int n, int s) {
        const int L = braid.crossing_count();
        std::map<std::vector<int>, Block> blocks;
        auto block_for = [&](const std::vector<int>& cols) -> const Block& {
            auto it = blocks.find(cols);
            if (it == blocks.end()) it = blocks.emplace(cols, make_block(cols, s)).first;
            return it->second;
        };
        const Block& b0 = block_for(arr[0]);
        const int d0 = static_cast<int>(b0.states.size());
        if (d0 == 0) return root_.ring().zero();

        std::vector<Gather> steps(L);
        std::vector<int> dims(L + 1);
        dims[0] = d0;
        for (int t = 0; t < L; ++t) {
            const Block& src = block_for(arr[t]);
            const Block& dst = block_for(arr[t + 1]);
            dims[t + 1] = static_cast<int>(dst.states.size());
            int p = std::abs(braid.letters[t]) - 1;
            int a = arr[t][p], b = arr[t][p + 1];
            const RTable& R = rmatrix(a, b, braid.letters[t] > 0 ? 1 : -1);
            std::vector<std::tuple<int, int, const value_type*>> trip;
            for (int si = 0; si < static_cast<int>(src.states.size()); ++si) {
                const auto& st = src.states[si];
                int x = st[p], y = st[p + 1];
                for (const auto& [oc, c] : R[x * (b + 1) + y]) {
                    auto nst = st;
                    nst[p] = static_cast<std::uint8_t>(oc / (a + 1));
                    nst[p + 1] = static_cast<std::uint8_t>(oc % (a + 1));
                    auto f = dst.index.find(encode(nst, arr[t + 1]));
                    if (f == dst.index.end()) throw std::logic_error("weight block bookkeeping failed");
                    trip.emplace_back(f->second, si, &c);
                }
            }
            std::sort(trip.begin(), trip.end(), [](const auto& u, const auto& v) {
                return std::get<0>(u) != std::get<0>(v) ? std::get<0>(u) < std::get<0>(v) : std::get<1>(u) < std::get<1>(v);
            });
            Gather& g = steps[t];
            g.offs.assign(dims[t + 1] + 1, 0);
            for (const auto& tr : trip) g.offs[std::get<0>(tr) + 1]++;
            for (int i = 0; i < dims[t + 1]; ++i) g.offs[i + 1] += g.offs[i];
            for (const auto& tr : trip) {
                g.src.push_back(std::get<1>(tr));
                g.coeff.push_back(std::get<2>(tr));
            }
        }
        (void)n;

        const Ring& ring = root_.ring();
        std::vector<value_type> diag(d0, ring.zero());
        parallel_for(d0, jobs_, [&](int start) {
            auto acc = ring.make_accumulator();
            std::vector<value_type> x(d0, ring.zero());
            std::vector<char> nz(d0, 0);
            x[start] = ring.one();
            nz[start] = 1;
            for (int t = 0; t < L; ++t) {
                const Gather& g = steps[t];
                std::vector<value_type> y(dims[t + 1], ring.zero());
                std::vector<char> ynz(dims[t + 1], 0);
                for (int tg = 0; tg < dims[t + 1]; ++tg) {
                    bool any = false;
                    for (int e = g.offs[tg]; e < g.offs[tg + 1]; ++e) {
                        int sidx = g.src[e];
                        if (!nz[sidx]) continue;
                        acc.add_product(*g.coeff[e], x[sidx]);
                        any = true;
                    }
                    if (!any) continue;
                    y[tg] = acc.take();
                    ynz[tg] = !Ring::is_zero(y[tg]);
                }
                x = std::move(y);
                nz = std::move(ynz);
            }
            diag[start] = x[start];
        });
        auto acc = ring.zero();
        for (const auto& v : diag) acc += v;
        return acc;
    }

    const RootData<Ring>& root_;
    int jobs_;
    std::map<std::tuple<int, int, int>, RTable> rcache_;
};

/// Framing factor mu_n^{-w} with mu_n = (-1)^n A^{n^2+2n}.
template <class Ring>
typename Ring::value_type framing_correction(int n, int w, const RootData<Ring>& root) {
    auto f = root.A_pow(-static_cast<long long>(w) * (static_cast<long long>(n) * n + 2LL * n));
    if ((static_cast<long long>(n) * w) % 2 != 0) f = -f;
    return f;
}

inline std::vector<int> colors_by_position(const ClosedBraidLink& link, const Coloring& c) {
    std::vector<int> cols(link.braid.strands);
    for (int p = 0; p < link.braid.strands; ++p) cols[p] = c[link.component_of_strand[p]];
    return cols;
}

template <class Ring>
void check_coloring(const ClosedBraidLink& link, const Coloring& c, const RootData<Ring>& root) {
    if (static_cast<int>(c.size()) != link.num_components())
        throw ColoringError("coloring has " + std::to_string(c.size()) + " entries, link has " +
                            std::to_string(link.num_components()) + " components");
    for (int x : c)
        if (x < 0 || x > root.r() - 2)
            throw ColoringError("color " + std::to_string(x) + " outside 0.." + std::to_string(root.r() - 2));
}

inline int cable_width(const ClosedBraidLink& link, const Coloring& c) {
    int S = 0;
    for (int p = 0; p < link.braid.strands; ++p) S += c[link.component_of_strand[p]];
    return S;
}

/// Kauffman bracket of the closure with component i cabled by c_i strands
/// through the Jones-Wenzl idempotent, corrected to zero framing.
template <class Ring>
typename Ring::value_type colored_bracket(const ClosedBraidLink& link, const Coloring& c, const RootData<Ring>& root,
                                          const BracketOptions& opt = {}) {
    check_coloring(link, c, root);
    int cap = opt.cable_cap > 0 ? opt.cable_cap : default_cable_cap(Ring::backend);
    int S = cable_width(link, c);
    if (S > cap)
        throw BudgetError("cable width " + std::to_string(S) + " exceeds cap " + std::to_string(cap));
    BraidTraceEngine<Ring> engine(root, opt.jobs);
    auto value = engine.qtrace(link.braid, colors_by_position(link, c));
    if (S % 2 != 0) value = -value;
    for (int i = 0; i < link.num_components(); ++i)
        value = value * framing_correction(c[i], link.writhe_per_component[i], root);
    return value;
}

}  // namespace qtv
