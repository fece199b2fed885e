#include <qtv/invariants.hpp>

#include <cstdio>

int main() {
    using namespace qtv;

    // Add an unknotted circle that makes a non-homogeneous braid homogeneous.
    auto input = BraidWord::parse("1 -2 -1 2 1 1");
    auto h = homogenize(input);
    std::printf("input      %s  homogeneous=%d\n", input.canonical().c_str(), is_homogeneous(input));
    std::printf("homogenized %s  K=%d lk=", h.braid.canonical().c_str(), h.stallings_component);
    for (int v : h.linking_vector) std::printf("%d ", v);
    std::vector<int> targets(h.linking_vector.size(), 0);
    targets[0] = 1;
    auto a = adjust_linking(h, targets);
    std::printf("\nadjusted   %s  gcd condition=%d\n", a.braid.canonical().c_str(),
                condition_club_gcd(closure(a.braid), a.stallings_component));
    auto f = fiber_data(closure(a.braid));
    std::printf("fiber: chi=%d boundary=%d genus=%s\n", f.chi, f.boundary, f.genus.to_string().c_str());

    std::printf("\n n m strands crossings genus twist-sites\n");
    for (int n = 2; n <= 5; ++n)
        for (int m = 1; m <= 3; ++m) {
            auto b = family_Lnm(n, m);
            auto fd = fiber_data(closure(b));
            auto sites = detect_stallings_twist(state_graph(b));
            std::printf("%2d %d %7d %9d %5s %11zu\n", n, m, b.strands, b.crossing_count(), fd.genus.to_string().c_str(),
                        sites.size());
        }

    auto spec = link_from_braid(family_Lnm(2, 1));
    auto g = growth_series(spec, {5, 7}, Backend::floating);
    for (const auto& s : g.samples) std::printf("L_{2,1} r=%d TV=%.6f y=%.6f\n", s.r, s.tv, s.y);
}
