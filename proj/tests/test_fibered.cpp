#include <catch_amalgamated.hpp>

#include <qtv/fibered.hpp>

#include "oracle/homogenization.hpp"

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

using namespace qtv;

namespace {

BraidWord random_braid(std::mt19937_64& rng, int n, int max_len) {
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    std::vector<int> w;
    for (int i = 0; i < len; ++i) {
        int g = std::uniform_int_distribution<int>(1, n - 1)(rng);
        w.push_back(rng() % 2 ? g : -g);
    }
    return BraidWord(n, w);
}

void check_result(const HomogenizationResult& h) {
    INFO(h.braid.canonical());
    REQUIRE(oracle::violation(h) == "");
}

using oracle::count_linking;

}  // namespace

TEST_CASE("homogenize examples", "[fibered]") {
    auto h = homogenize(BraidWord(3, {-2, 1, -2, 1}));
    check_result(h);
    auto L = closure(h.braid);
    CHECK(L.num_components() == 2);
    CHECK(delete_components(L, {h.stallings_component}) == BraidWord(3, {-2, 1, -2, 1}));

    auto d = homogenize(BraidWord(2, {1, -1}));
    check_result(d);
    // sigma_1 sigma_1^{-1} closes to the two-component unlink
    CHECK(closure(delete_components(closure(d.braid), {d.stallings_component})).num_components() == 2);
}

TEST_CASE("homogenize meets every component in both signs", "[fibered]") {
    auto h = homogenize(BraidWord(3, {1, 1, 2, 1, 1}));
    auto L = closure(h.braid);
    int K = h.stallings_component;
    std::vector<int> pos(L.num_components()), neg(L.num_components());
    std::vector<int> at(h.braid.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int l : h.braid.letters) {
        int i = std::abs(l) - 1;
        int a = L.component_of_strand[at[i]], b = L.component_of_strand[at[i + 1]];
        if ((a == K) != (b == K)) (l > 0 ? pos : neg)[a == K ? b : a]++;
        std::swap(at[i], at[i + 1]);
    }
    for (int c : h.provenance.original_component) {
        CHECK(pos[c] > 0);
        CHECK(neg[c] > 0);
    }
}

TEST_CASE("homogenization corpus", "[fibered]") {
    std::mt19937_64 rng(50);
    for (int t = 0; t < 50; ++t) {
        auto b = random_braid(rng, t % 2 ? 3 : 4, 20);
        auto h = homogenize(b);
        check_result(h);
        REQUIRE(count_linking(h) == h.linking_vector);
        std::vector<int> targets;
        for (std::size_t i = 0; i < h.linking_vector.size(); ++i)
            targets.push_back(std::uniform_int_distribution<int>(-4, 4)(rng));
        auto a = adjust_linking(h, targets);
        check_result(a);
        REQUIRE(a.linking_vector == targets);
        REQUIRE(count_linking(a) == targets);
        if (!a.original.letters.empty()) {
            int site = std::uniform_int_distribution<int>(0, a.original.crossing_count() - 1)(rng);
            auto p = insert_pattern(a, 1 + t % 3, 1 + t % 2, site);
            check_result(p);
        }
    }
}

TEST_CASE("adjust_linking", "[fibered]") {
    auto h = homogenize(BraidWord(3, {1, 1, 2, 1, 1}));
    REQUIRE(h.linking_vector.size() == 2);
    auto same = adjust_linking(h, h.linking_vector);
    CHECK(same.braid == h.braid);
    auto a = adjust_linking(h, {1, 0});
    CHECK(a.linking_vector == std::vector<int>{1, 0});
    CHECK(is_homogeneous(a.braid));
    CHECK(condition_club_gcd(closure(a.braid), a.stallings_component));
    auto bad = adjust_linking(h, {2, 4});
    CHECK_FALSE(condition_club_gcd(closure(bad.braid), bad.stallings_component));
    CHECK_THROWS(adjust_linking(h, {1}));
}

TEST_CASE("insert_pattern linking arithmetic", "[fibered]") {
    auto base = homogenize(BraidWord(3, {1, 1, 2, 1, 1}));
    // find a crossing between the two original components
    int site = -1;
    PatternEffect eff;
    for (int s = 0; s < base.original.crossing_count() && site < 0; ++s) {
        eff = pattern_components(base, s);
        if (eff.under_component != eff.over_component) site = s;
    }
    REQUIRE(site >= 0);
    std::vector<int> start(2, 0);
    start[eff.under_component] = 1;
    auto h = adjust_linking(base, start);
    CHECK(insert_pattern(h, 0, 3, site).braid == h.braid);
    CHECK(insert_pattern(h, 3, 0, site).braid == h.braid);
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l) {
            auto p = insert_pattern(h, l, k, site);
            check_result(p);
            REQUIRE(p.linking_vector[eff.under_component] == 1 - k * l);
            REQUIRE(p.linking_vector[eff.over_component] == k * l);
            REQUIRE(count_linking(p) == p.linking_vector);
            REQUIRE(condition_club_gcd(closure(p.braid), p.stallings_component));
        }
    auto p = insert_pattern(h, 2, 2, site);
    CHECK(p.linking_vector[eff.under_component] == -3);
    CHECK(p.linking_vector[eff.over_component] == 4);
    CHECK_THROWS(insert_pattern(h, 1, 1, 99));
    CHECK_THROWS(insert_pattern(h, -1, 1, site));
}

TEST_CASE("same-component pattern keeps the linking number", "[fibered]") {
    auto h = adjust_linking(homogenize(BraidWord(2, {1, 1, 1})), {1});
    auto p = insert_pattern(h, 2, 3, 1);
    check_result(p);
    CHECK(p.linking_vector == std::vector<int>{1});
}

TEST_CASE("condition club gcd", "[fibered]") {
    auto hopf = closure(BraidWord(2, {1, 1}));
    CHECK(condition_club_gcd(hopf, 0));
    CHECK(condition_club_gcd(hopf, 1));
    CHECK_FALSE(condition_club_gcd(closure(BraidWord(2, {1, 1, 1, 1})), 0));
    CHECK_THROWS_AS(condition_club_gcd(closure(BraidWord(2, {1})), 0), LinkError);
    CHECK_THROWS_AS(condition_club_gcd(hopf, 2), LinkError);
}

TEST_CASE("family L_{n,m} counts", "[fibered]") {
    for (int n = 2; n <= 8; ++n)
        for (int m = 1; m <= 5; ++m) {
            auto b = family_Lnm(n, m);
            auto L = closure(b);
            INFO("n=" << n << " m=" << m);
            REQUIRE(L.num_components() == n);
            REQUIRE(is_homogeneous(b));
            if (n == 2) {
                REQUIRE(b.strands == 5);
                REQUIRE(b.crossing_count() == 9 + 2 * m);
                REQUIRE(fiber_data(L).chi == -4 - 2 * m);
                REQUIRE(fiber_data(L).genus == Rational(m + 2));
            } else {
                REQUIRE(b.strands == 2 + n);
                REQUIRE(b.crossing_count() == 2 + 4 * n + 2 * m);
                REQUIRE(fiber_data(L).chi == -3 * n - 2 * m);
                REQUIRE(fiber_data(L).genus == Rational(n + m + 1));
            }
            std::vector<int> others;
            for (int c = 0; c < L.num_components(); ++c)
                if (c != L.component_of_strand[0]) others.push_back(c);
            REQUIRE(delete_components(L, others) == BraidWord(3, {-2, 1, -2, 1}));
        }
    CHECK_THROWS(family_Lnm(1, 1));
    CHECK_THROWS(family_Lnm(3, 0));
}

TEST_CASE("family words match the frozen golden file", "[fibered]") {
    std::ifstream in(std::string(QTV_GOLDEN_DIR) + "/lnm_words.txt");
    REQUIRE(in);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        int n, m, strands;
        is >> n >> m >> strands;
        std::string rest;
        std::getline(is, rest);
        auto b = family_Lnm(n, m);
        INFO(line);
        REQUIRE(b.strands == strands);
        REQUIRE(b == BraidWord::parse(rest, strands));
        ++rows;
    }
    CHECK(rows == 35);
}

TEST_CASE("torus braids", "[fibered]") {
    CHECK(torus_braid(2, 3) == BraidWord(2, {1, 1, 1}));
    CHECK(closure(torus_braid(2, 3)).num_components() == 1);
    CHECK(closure(torus_braid(2, 4)).num_components() == 2);
    CHECK(closure(torus_braid(3, 3)).num_components() == 3);
    for (int p = 2; p <= 6; ++p)
        for (int q = -7; q <= 7; ++q)
            if (q != 0) CHECK(closure(torus_braid(p, q)).num_components() == std::gcd(p, std::abs(q)));
    CHECK_THROWS(torus_braid(1, 3));
    CHECK_THROWS(torus_braid(2, 0));
}

TEST_CASE("stallings twist detection", "[fibered]") {
    CHECK(detect_stallings_twist(state_graph(BraidWord(2, {1, 1, 1}))).empty());
    CHECK(detect_stallings_twist(state_graph(BraidWord(3, {}))).empty());
    CHECK(detect_stallings_twist(state_graph(BraidWord(3, {-2, 1, -2, 1}))).empty());
    auto g = state_graph(family_Lnm(4, 2));
    auto sites = detect_stallings_twist(g);
    REQUIRE_FALSE(sites.empty());
    for (const auto& s : sites) {
        CHECK(s.framing_check.first + s.framing_check.second == 0);
        CHECK(s.low.sign == -s.high.sign);
        CHECK(s.low.neighbor == s.circle - 1);
        CHECK(s.high.neighbor == s.circle + 1);
        for (const auto& c : {s.low, s.high}) {
            const auto& e1 = g.edges[c.first];
            const auto& e2 = g.edges[c.second];
            CHECK(e1.sign == c.sign);
            CHECK(e2.sign == c.sign);
            CHECK(std::min(e1.left, c.neighbor) == e1.left);
            CHECK(e1.left == e2.left);
        }
    }
    for (int n = 2; n <= 6; ++n) CHECK_FALSE(detect_stallings_twist(state_graph(family_Lnm(n, 1))).empty());
}
