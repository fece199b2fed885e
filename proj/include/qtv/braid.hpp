#pragma once

#include "integer.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtv {

class BraidError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A word in the Artin generators.  Letter +i is sigma_i, -i its inverse, 1 <= i < strands.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    BraidWord() = default;
    BraidWord(int n, std::vector<int> word) : strands(n), letters(std::move(word)) { validate(); }

    void validate() const {
        if (strands < 1) throw BraidError("braid needs at least one strand");
        for (int l : letters)
            if (l == 0 || std::abs(l) >= strands)
                throw BraidError("letter " + std::to_string(l) + " invalid for " + std::to_string(strands) + " strands");
    }

    int crossing_count() const { return static_cast<int>(letters.size()); }
    int writhe() const {
        int w = 0;
        for (int l : letters) w += l > 0 ? 1 : -1;
        return w;
    }

    /// Whitespace separated letters; strand count is max|letter|+1 unless given.
    static BraidWord parse(const std::string& text, int strands = 0) {
        std::istringstream is(text);
        std::vector<int> word;
        std::string tok;
        while (is >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw BraidError("bad braid token '" + tok + "'");
            }
            if (used != tok.size() || v == 0) throw BraidError("bad braid token '" + tok + "'");
            word.push_back(v);
        }
        int n = 1;
        for (int l : word) n = std::max(n, std::abs(l) + 1);
        if (strands > 0) {
            if (strands < n) throw BraidError("strand override too small for word");
            n = strands;
        }
        return BraidWord(n, std::move(word));
    }

    std::string word_text() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? " " : "") << letters[i];
        return os.str();
    }

    /// Canonical key: "B<n>:" followed by the word.
    std::string canonical() const { return "B" + std::to_string(strands) + ":" + word_text(); }

    BraidWord inverse() const {
        BraidWord out;
        out.strands = strands;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
        return out;
    }

    friend bool operator==(const BraidWord& a, const BraidWord& b) {
        return a.strands == b.strands && a.letters == b.letters;
    }
    friend bool operator!=(const BraidWord& a, const BraidWord& b) { return !(a == b); }
};

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) throw BraidError("strand counts differ");
    BraidWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

/// The closure of a braid with its component structure and linking data.
/// Strand positions are 0-based in code.
struct ClosedBraidLink {
    BraidWord braid;
    std::vector<std::vector<int>> components;  // cycles of top positions, sorted by smallest member
    std::vector<int> component_of_strand;      // indexed by top position
    std::vector<int> writhe_per_component;
    std::vector<std::vector<int>> linking_matrix;  // off-diagonal lk, diagonal self-writhe

    int num_components() const { return static_cast<int>(components.size()); }
};

/// Position at which each strand (named by its top position) ends.
inline std::vector<int> braid_permutation(const BraidWord& b) {
    std::vector<int> at(b.strands);  // at[pos] = strand currently there
    std::iota(at.begin(), at.end(), 0);
    for (int l : b.letters) {
        int i = std::abs(l) - 1;
        std::swap(at[i], at[i + 1]);
    }
    std::vector<int> end(b.strands);
    for (int p = 0; p < b.strands; ++p) end[at[p]] = p;
    return end;
}

inline ClosedBraidLink closure(const BraidWord& b) {
    b.validate();
    ClosedBraidLink L;
    L.braid = b;
    auto end = braid_permutation(b);
    L.component_of_strand.assign(b.strands, -1);
    for (int s = 0; s < b.strands; ++s) {
        if (L.component_of_strand[s] >= 0) continue;
        int id = static_cast<int>(L.components.size());
        std::vector<int> cyc;
        for (int t = s; L.component_of_strand[t] < 0; t = end[t]) {
            L.component_of_strand[t] = id;
            cyc.push_back(t);
        }
        std::sort(cyc.begin(), cyc.end());
        L.components.push_back(cyc);
    }
    int c = L.num_components();
    L.linking_matrix.assign(c, std::vector<int>(c, 0));
    std::vector<int> at(b.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int l : b.letters) {
        int i = std::abs(l) - 1;
        int s = l > 0 ? 1 : -1;
        int ca = L.component_of_strand[at[i]], cb = L.component_of_strand[at[i + 1]];
        if (ca == cb) L.linking_matrix[ca][ca] += s;
        else {
            L.linking_matrix[ca][cb] += s;
            L.linking_matrix[cb][ca] += s;
        }
        std::swap(at[i], at[i + 1]);
    }
    L.writhe_per_component.resize(c);
    for (int i = 0; i < c; ++i) {
        L.writhe_per_component[i] = L.linking_matrix[i][i];
        for (int j = 0; j < c; ++j) {
            if (i == j) continue;
            if (L.linking_matrix[i][j] % 2 != 0) throw std::logic_error("odd crossing sum between components");
        }
    }
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (i != j) L.linking_matrix[i][j] /= 2;
    return L;
}

inline bool is_homogeneous(const BraidWord& b) {
    std::vector<int> sign(b.strands, 0);
    for (int l : b.letters) {
        int i = std::abs(l), s = l > 0 ? 1 : -1;
        if (sign[i] == 0) sign[i] = s;
        else if (sign[i] != s) return false;
    }
    return true;
}

struct FiberData {
    int chi = 0;
    int boundary = 0;
    Rational genus;
    bool homogeneous = false;
};

inline FiberData fiber_data(const ClosedBraidLink& link) {
    FiberData f;
    f.chi = link.braid.strands - link.braid.crossing_count();
    f.boundary = link.num_components();
    f.genus = Rational(Integer(2 - f.chi - f.boundary), Integer(2));
    f.homogeneous = is_homogeneous(link.braid);
    if (!f.genus.is_integer()) throw std::logic_error("non-integral fiber genus");
    return f;
}

/// Edge of the Seifert state graph; circles are 0-based strand positions.
struct StateEdge {
    int left = 0;   // circle i
    int right = 0;  // circle i+1
    int sign = 1;
    int position = 0;  // index of the letter in the word
    char label = 'A';
};

struct StateGraph {
    int vertices = 0;
    std::vector<StateEdge> edges;
};

/// Which unoriented smoothing the Seifert smoothing of a crossing is.
/// A positive letter expands as A*id + A^{-1}*e, so its Seifert (vertical)
/// smoothing is the A-smoothing; a negative letter gives the B-smoothing.
inline char seifert_label(int sign) { return sign > 0 ? 'A' : 'B'; }

inline StateGraph state_graph(const BraidWord& b) {
    StateGraph g;
    g.vertices = b.strands;
    for (int p = 0; p < b.crossing_count(); ++p) {
        int l = b.letters[p];
        StateEdge e;
        e.left = std::abs(l) - 1;
        e.right = std::abs(l);
        e.sign = l > 0 ? 1 : -1;
        e.position = p;
        e.label = seifert_label(e.sign);
        g.edges.push_back(e);
    }
    return g;
}

// Markov moves

inline BraidWord conjugate(const BraidWord& beta, const BraidWord& gamma) {
    return concat(concat(gamma, beta), gamma.inverse());
}

/// Adds strand n+1 and the letter +-n at the end.
inline BraidWord stabilize(const BraidWord& beta, int sign) {
    BraidWord out = beta;
    out.strands += 1;
    out.letters.push_back(sign > 0 ? beta.strands : -beta.strands);
    return out;
}

inline BraidWord destabilize(const BraidWord& beta) {
    int n = beta.strands;
    if (n < 2) throw BraidError("illegal destabilization: single strand");
    int uses = 0, where = -1;
    for (int p = 0; p < beta.crossing_count(); ++p)
        if (std::abs(beta.letters[p]) == n - 1) {
            ++uses;
            where = p;
        }
    if (uses != 1) throw BraidError("illegal destabilization: last strand must meet exactly one crossing");
    BraidWord out;
    out.strands = n - 1;
    for (int p = 0; p < beta.crossing_count(); ++p)
        if (p != where) out.letters.push_back(beta.letters[p]);
    return out;
}

/// Removes the given top positions (whole components should be removed so the
/// result is a braid).  Crossings among kept strands are renumbered.
inline BraidWord delete_strands(const BraidWord& b, const std::vector<bool>& remove_top) {
    auto end = braid_permutation(b);
    for (int s = 0; s < b.strands; ++s)
        if (remove_top[s] != remove_top[end[s]]) throw BraidError("deleted strands must form whole components");
    std::vector<int> at(b.strands);
    std::iota(at.begin(), at.end(), 0);
    BraidWord out;
    out.strands = 0;
    for (int s = 0; s < b.strands; ++s)
        if (!remove_top[s]) ++out.strands;
    if (out.strands == 0) throw BraidError("cannot delete every strand");
    for (int l : b.letters) {
        int i = std::abs(l) - 1;
        if (!remove_top[at[i]] && !remove_top[at[i + 1]]) {
            int rank = 0;
            for (int p = 0; p < i; ++p)
                if (!remove_top[at[p]]) ++rank;
            out.letters.push_back(l > 0 ? rank + 1 : -(rank + 1));
        }
        std::swap(at[i], at[i + 1]);
    }
    return out;
}

inline BraidWord delete_components(const ClosedBraidLink& L, const std::vector<int>& comps) {
    std::vector<bool> rm(L.braid.strands, false);
    for (int c : comps) {
        if (c < 0 || c >= L.num_components()) throw BraidError("component id out of range");
        for (int s : L.components[c]) rm[s] = true;
    }
    return delete_strands(L.braid, rm);
}

}  // namespace qtv
