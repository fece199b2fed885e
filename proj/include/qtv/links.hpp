#pragma once

#include "braid.hpp"
#include "fast_path.hpp"
#include "fibered.hpp"

#include <optional>
#include <regex>
#include <stdexcept>
#include <string>

namespace qtv {

/// A link presented as a closed braid, with an optional name and fast-path key.
struct LinkSpec {
    std::string name;  // registry name or the canonical braid text
    ClosedBraidLink link;
    std::optional<std::string> fast_key;

    std::string key() const { return link.braid.canonical(); }
};

inline LinkSpec link_from_braid(const BraidWord& b, std::string name = {}) {
    LinkSpec s;
    s.link = closure(b);
    s.fast_key = fast_path_key(b);
    s.name = name.empty() ? b.canonical() : std::move(name);
    return s;
}

class UnknownLink : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Frozen braid words for named links: unknot, hopf, trefoil, 4_1,
/// borromean, T_p_q and L_n_m.
inline BraidWord named_braid(const std::string& name) {
    if (name == "unknot") return BraidWord(1, {});
    if (name == "hopf") return BraidWord(2, {1, 1});
    if (name == "trefoil") return BraidWord(2, {1, 1, 1});
    if (name == "4_1") return BraidWord(3, {-2, 1, -2, 1});
    if (name == "borromean") return BraidWord(3, {1, -2, 1, -2, 1, -2});
    static const std::regex torus(R"(T_(\d+)_(-?\d+))");
    static const std::regex family(R"(L_(\d+)_(\d+))");
    std::smatch m;
    if (std::regex_match(name, m, torus)) return torus_braid(std::stoi(m[1]), std::stoi(m[2]));
    if (std::regex_match(name, m, family)) return family_Lnm(std::stoi(m[1]), std::stoi(m[2]));
    throw UnknownLink("unknown link name '" + name + "'");
}

inline LinkSpec named_link(const std::string& name) { return link_from_braid(named_braid(name), name); }

}  // namespace qtv
