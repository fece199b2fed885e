// Turaev-Viro invariants of a few closed-braid link complements, exact and floating.

#include <qtv/invariants.hpp>

#include <cstdio>

int main() {
    using namespace qtv;
    for (const char* name : {"unknot", "trefoil", "4_1", "hopf"}) {
        auto spec = named_link(name);
        std::printf("%-8s %s\n", name, spec.key().c_str());
        for (int r : {5, 7, 9}) {
            auto exact = tv_link_complement(spec, ExactRoot(r));
            auto q = exact.value.rational_value();
            std::printf("  r=%-3d TV=%.10f  y=%+.6f  %s\n", r, exact.real, growth_rate(r, exact.real),
                        q ? ("= " + q->to_string()).c_str() : "(irrational)");
        }
    }

    // Colored Jones of the figure-eight from the generic engine, normalized by the unknot.
    ExactRoot root(7);
    auto L = closure(BraidWord::parse("-2 1 -2 1"));
    for (int n = 0; n <= 5; ++n) {
        auto j = colored_bracket(L, {n}, root) / unknot_bracket(n, root);
        auto z = j.embed();
        std::printf("J_%d(4_1) at r=7: %.10f %+.10fi\n", n, z.real(), z.imag());
    }
}
