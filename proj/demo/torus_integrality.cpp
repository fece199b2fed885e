#include <qtv/invariants.hpp>

#include <cstdio>
#include <numeric>

int main() {
    using namespace qtv;
    std::printf("%-8s %4s  %-14s %s\n", "link", "r", "TV", "integer");
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}}) {
        auto spec = link_from_braid(torus_braid(p, q));
        for (int r = 5; r <= 13; r += 2) {
            if (std::gcd(r, p * q) != 1) continue;
            auto rep = integrality_check(spec, r);
            std::printf("T(%d,%d)   %4d  %-14.6f %s\n", p, q, r, rep.embedded,
                        rep.is_integer ? rep.value->to_string().c_str() : "no");
        }
    }
    // the figure-eight is not torus; its TV values are generally not rational
    for (int r : {5, 7, 9}) {
        auto rep = integrality_check(named_link("4_1"), r);
        std::printf("4_1      %4d  %-14.6f %s\n", r, rep.embedded, rep.is_integer ? "yes" : "no");
    }
}
