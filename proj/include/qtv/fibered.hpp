#pragma once

#include "braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qtv {

/// How the homogenized braid relates to its input.
struct Provenance {
    int original_strands = 0;
    std::vector<bool> added_slot;         // by top position of the output braid
    std::vector<int> original_slot;       // original strand p sits at slot original_slot[p]
    std::vector<int> crossing_letter;     // output letter index carrying original crossing t
    std::vector<int> original_component;  // output component id of original component i
};

struct HomogenizationResult {
    BraidWord braid;
    int stallings_component = -1;
    Provenance provenance;
    std::vector<int> linking_vector;  // lk(K, L_i) over original components
    BraidWord original;
};

namespace detail {

inline int slot_sign(int j) { return j % 2 == 1 ? 1 : -1; }

inline void append_power(std::vector<int>& w, int gen, int times) {
    for (int i = 0; i < std::abs(times); ++i) w.push_back(times > 0 ? gen : -gen);
}

/// Recomputes component bookkeeping and linking numbers after a word edit.
inline void refresh(HomogenizationResult& h) {
    auto L = closure(h.braid);
    int K = L.component_of_strand[0];
    h.stallings_component = K;
    auto orig = closure(h.original);
    h.provenance.original_component.assign(orig.num_components(), -1);
    h.linking_vector.assign(orig.num_components(), 0);
    for (int i = 0; i < orig.num_components(); ++i) {
        int p = orig.components[i].front();
        int c = L.component_of_strand[h.provenance.original_slot[p]];
        h.provenance.original_component[i] = c;
        h.linking_vector[i] = L.linking_matrix[K][c];
    }
}

/// Slot (1-based, even) holding a strand of output component c at the end of the word.
inline int end_slot_of_component(const BraidWord& b, const ClosedBraidLink& L, int comp) {
    std::vector<int> at(b.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int l : b.letters) std::swap(at[std::abs(l) - 1], at[std::abs(l)]);
    for (int pos = 0; pos < b.strands; ++pos)
        if (L.component_of_strand[at[pos]] == comp && (pos + 1) % 2 == 0) return pos + 1;
    throw std::logic_error("component has no strand on an even slot");
}

}  // namespace detail

/// Homogenizes any braid word by interleaving filler strands.
///
/// On 2n+1 strands the filler strands occupy the odd slots and original
/// strand p the slot 2p.  Generator j is used only with sign (+ if j odd,
/// - if j even).  Each original letter becomes a three-letter gadget whose
/// middle letter is the original crossing; connectors join all filler strands
/// into one component whose own sub-braid is s_1 s_2 ... s_n.
inline HomogenizationResult homogenize(const BraidWord& input) {
    input.validate();
    const int n = input.strands;
    HomogenizationResult h;
    h.original = input;
    h.braid.strands = 2 * n + 1;
    auto& w = h.braid.letters;
    auto& pv = h.provenance;
    pv.original_strands = n;
    pv.added_slot.assign(2 * n + 1, false);
    for (int j = 1; j <= 2 * n + 1; j += 2) pv.added_slot[j - 1] = true;
    pv.original_slot.resize(n);
    for (int p = 0; p < n; ++p) pv.original_slot[p] = 2 * (p + 1) - 1;

    for (int l : input.letters) {
        int i = std::abs(l);
        if (l > 0) {
            w.push_back(-2 * i);
            pv.crossing_letter.push_back(static_cast<int>(w.size()));
            w.push_back(2 * i + 1);
            w.push_back(-2 * i);
        } else {
            w.push_back(2 * i + 1);
            pv.crossing_letter.push_back(static_cast<int>(w.size()));
            w.push_back(-2 * i);
            w.push_back(2 * i + 1);
        }
    }
    for (int i = 1; i <= n; ++i) {
        w.push_back(-2 * i);
        w.push_back(2 * i - 1);
        w.push_back(-2 * i);
    }
    detail::refresh(h);

    // every original component must meet K in crossings of both signs
    auto L = closure(h.braid);
    int K = h.stallings_component;
    std::vector<int> pos(L.num_components(), 0), neg(L.num_components(), 0);
    std::vector<int> at(h.braid.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int l : h.braid.letters) {
        int i = std::abs(l) - 1;
        int ca = L.component_of_strand[at[i]], cb = L.component_of_strand[at[i + 1]];
        if ((ca == K) != (cb == K)) {
            int other = ca == K ? cb : ca;
            (l > 0 ? pos : neg)[other]++;
        }
        std::swap(at[i], at[i + 1]);
    }
    for (int c : pv.original_component) {
        if (pos[c] > 0 && neg[c] > 0) continue;
        int slot = detail::end_slot_of_component(h.braid, L, c);
        detail::append_power(w, slot - 1, 2);
        detail::append_power(w, slot, -2);
    }
    detail::refresh(h);
    return h;
}

/// Appends full twists of filler strands around original components until
/// lk(K, L_i) equals targets[i].
inline HomogenizationResult adjust_linking(const HomogenizationResult& h, const std::vector<int>& targets) {
    if (targets.size() != h.linking_vector.size())
        throw std::invalid_argument("targets must list one value per original component");
    HomogenizationResult out = h;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        int delta = targets[i] - out.linking_vector[i];
        if (delta == 0) continue;
        auto L = closure(out.braid);
        int slot = detail::end_slot_of_component(out.braid, L, out.provenance.original_component[i]);
        for (int t = 0; t < std::abs(delta); ++t) {
            if (delta > 0) detail::append_power(out.braid.letters, slot - 1, 2);
            else detail::append_power(out.braid.letters, slot, -2);
        }
    }
    detail::refresh(out);
    return out;
}

struct PatternEffect {
    int under_component = -1;  // original component of the under strand a
    int over_component = -1;   // original component of the over strand b
};

/// Which original components pass under and over at original crossing `site`.
/// For a positive letter the strand entering on the left passes over.
inline PatternEffect pattern_components(const HomogenizationResult& h, int site) {
    const auto& orig = h.original;
    if (site < 0 || site >= orig.crossing_count()) throw std::out_of_range("invalid pattern site");
    std::vector<int> at(orig.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int t = 0; t < site; ++t) std::swap(at[std::abs(orig.letters[t]) - 1], at[std::abs(orig.letters[t])]);
    int i = std::abs(orig.letters[site]) - 1;
    int left = at[i], right = at[i + 1];
    auto L = closure(orig);
    PatternEffect e;
    bool left_over = orig.letters[site] > 0;
    e.over_component = L.component_of_strand[left_over ? left : right];
    e.under_component = L.component_of_strand[left_over ? right : left];
    return e;
}

/// Inserts (a^{-l} b^{l})^k next to an original crossing: the filler strand
/// between the two crossing strands winds -l times around the under strand a
/// and +l times around the over strand b, k times over.
inline HomogenizationResult insert_pattern(const HomogenizationResult& h, int l, int k, int site) {
    if (site < 0 || site >= h.original.crossing_count()) throw std::out_of_range("invalid pattern site");
    if (l < 0 || k < 0) throw std::invalid_argument("pattern exponents must be non-negative");
    HomogenizationResult out = h;
    if (l == 0 || k == 0) return out;
    int mid = h.provenance.crossing_letter[site];
    int letter = h.original.letters[site];
    int i = std::abs(letter);
    // before the gadget the left strand is the one entering left; it is under
    // exactly when the letter is negative
    bool under_left_before = letter < 0;
    int insert_at = under_left_before ? mid - 1 : mid + 2;
    std::vector<int> pat;
    for (int t = 0; t < k; ++t) {
        detail::append_power(pat, 2 * i, -2 * l);
        detail::append_power(pat, 2 * i + 1, 2 * l);
    }
    auto& w = out.braid.letters;
    w.insert(w.begin() + insert_at, pat.begin(), pat.end());
    for (int& c : out.provenance.crossing_letter)
        if (c >= insert_at) c += static_cast<int>(pat.size());
    detail::refresh(out);
    return out;
}

class LinkError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline bool condition_club_gcd(const ClosedBraidLink& link, int K) {
    if (link.num_components() < 2) throw LinkError("gcd condition needs at least two components");
    if (K < 0 || K >= link.num_components()) throw LinkError("component id out of range");
    int g = 0;
    for (int i = 0; i < link.num_components(); ++i)
        if (i != K) g = std::gcd(g, std::abs(link.linking_matrix[K][i]));
    return g == 1;
}

/// Braid word of the fibered link L_{n,m}: the figure-eight knot on strands
/// 1-3 followed by n-1 round components linked in a chain by full twists of
/// alternating sign, with a box of 2m (or 2m-1 for n = 2) negative half twists.
inline BraidWord family_Lnm(int n, int m) {
    if (n < 2 || m < 1) throw std::invalid_argument("family_Lnm needs n >= 2 and m >= 1");
    std::vector<int> w = {-2, 1, -2, 1};
    auto g = [&](int t) { detail::append_power(w, t, t % 2 == 1 ? 2 : -2); };
    if (n == 2) {
        g(3);
        g(4);
        detail::append_power(w, 4, -(2 * m - 1));
        g(3);
        return BraidWord(5, w);
    }
    for (int t = 3; t <= n + 1; ++t) g(t);
    detail::append_power(w, 4, -2 * m);
    for (int t = 3; t <= n + 1; ++t) g(t);
    g(3);
    return BraidWord(n + 2, w);
}

inline BraidWord torus_braid(int p, int q) {
    if (p < 2) throw std::invalid_argument("torus_braid needs p >= 2");
    if (q == 0) throw std::invalid_argument("torus_braid needs q != 0");
    std::vector<int> w;
    for (int r = 0; r < std::abs(q); ++r)
        for (int j = 1; j < p; ++j) w.push_back(q > 0 ? j : -(p - j));
    return BraidWord(p, w);
}

struct ClaspPair {
    int first = -1;   // edge index (word position)
    int second = -1;
    int neighbor = -1;
    int sign = 0;
};

struct TwistSite {
    int circle = -1;
    ClaspPair low;   // clasp with circle-1
    ClaspPair high;  // clasp with circle+1
    std::pair<int, int> framing_check{0, 0};
};

/// Finds two clasps of opposite sign at a common Seifert circle, one with
/// each neighbouring circle, adjacent in the cyclic order of edges around it.
inline std::vector<TwistSite> detect_stallings_twist(const StateGraph& g) {
    std::vector<TwistSite> sites;
    for (int v = 1; v + 1 < g.vertices; ++v) {
        std::vector<const StateEdge*> around;
        for (const auto& e : g.edges)
            if (e.left == v || e.right == v) around.push_back(&e);
        const int deg = static_cast<int>(around.size());
        if (deg < 4) continue;
        auto nb = [&](int t) { return around[(t % deg + deg) % deg]->left == v ? v + 1 : v - 1; };
        int start = -1;
        for (int t = 0; t < deg; ++t)
            if (nb(t) != nb(t - 1)) {
                start = t;
                break;
            }
        if (start < 0) continue;
        // runs of consecutive edges to the same neighbour, in cyclic order
        struct Run {
            int neighbor;
            std::vector<int> idx;
        };
        std::vector<Run> runs;
        for (int t = 0; t < deg; ++t) {
            int u = (start + t) % deg;
            if (runs.empty() || runs.back().neighbor != nb(u)) runs.push_back({nb(u), {}});
            runs.back().idx.push_back(u);
        }
        auto clasp_at = [&](const Run& r, bool last) -> std::optional<ClaspPair> {
            if (r.idx.size() < 2) return std::nullopt;
            std::size_t a = last ? r.idx.size() - 2 : 0;
            const StateEdge* e1 = around[r.idx[a]];
            const StateEdge* e2 = around[r.idx[a + 1]];
            if (e1->sign != e2->sign) return std::nullopt;
            return ClaspPair{e1->position, e2->position, r.neighbor, e1->sign};
        };
        const int nr = static_cast<int>(runs.size());
        for (int t = 0; t < nr; ++t) {
            const Run& r1 = runs[t];
            const Run& r2 = runs[(t + 1) % nr];
            if (nr < 2 || r1.neighbor == r2.neighbor) continue;
            auto c1 = clasp_at(r1, true);
            auto c2 = clasp_at(r2, false);
            if (!c1 || !c2 || c1->sign == c2->sign) continue;
            TwistSite s;
            s.circle = v;
            s.low = c1->neighbor < v ? *c1 : *c2;
            s.high = c1->neighbor < v ? *c2 : *c1;
            s.framing_check = {2 * c1->sign, 2 * c2->sign};
            if (c1->sign < 0) std::swap(s.framing_check.first, s.framing_check.second);
            sites.push_back(s);
        }
    }
    return sites;
}

}  // namespace qtv
