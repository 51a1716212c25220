#include "support.hh"

#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/solver.hh>

#include <doctest.h>

#include <numeric>

using namespace hpack;
using namespace hpack::testing;

TEST_CASE("copy enumeration")
{
    CHECK(enumerate_copies(complete_graph(3), complete_graph(4)).size() == 4);
    CHECK(enumerate_copies(k_r_minus(4), complete_graph(4)).size() == 1);
    auto b = bottle_graph(k_r_minus(4));
    CHECK(int(enumerate_copies(k_r_minus(4), b).size()) == brute_copy_count(k_r_minus(4), b));

    std::mt19937_64 rng(5);
    auto star = complete_multipartite(std::vector<int>{ 1, 3 });
    for (int t = 0 ; t < 30 ; ++t) {
        auto g = random_graph(8, 0.5, rng);
        for (const auto & h : { complete_graph(3), k_r_minus(4), star, k_r_minus(3) }) {
            auto copies = enumerate_copies(h, g);
            CHECK(int(copies.size()) == brute_copy_count(h, g));
            for (const auto & c : copies)
                CHECK(verify_packing(h, g, Packing{ g.size(), { c } }, false));
        }
    }
}

TEST_CASE("perfect packings")
{
    auto h = k_r_minus(4);
    auto b = bottle_graph(h);
    auto res = find_perfect_packing(h, b);
    REQUIRE(res.packing);
    CHECK(res.packing->copies.size() == 2);
    CHECK(verify_packing(h, b, *res.packing, true));

    CHECK(! find_perfect_packing(h, prop3_extremal(4, 2)).packing);
    auto k133 = complete_multipartite(std::vector<int>{ 1, 3, 3 });
    CHECK(! find_perfect_packing(k133, prop4_extremal(k133, 1)).packing);
}

TEST_CASE("maximum packings")
{
    CHECK(max_packing_size(k_r_minus(4), prop3_extremal(4, 2)) == 1);
    CHECK(max_packing_size(complete_graph(3), complete_graph(3)) == 1);
    CHECK(max_packing_size(k_r_minus(4), edgeless_graph(8)) == 0);
    auto m = max_packing(k_r_minus(4), prop3_extremal(4, 3));
    CHECK(m.size == 2);
    CHECK(verify_packing(k_r_minus(4), prop3_extremal(4, 3), m.packing, false));
}

TEST_CASE("verification rejects broken packings")
{
    auto h = k_r_minus(4);
    auto g = complete_graph(8);
    auto good = find_perfect_packing(h, g);
    REQUIRE(good.packing);
    CHECK(verify_packing(h, g, *good.packing, true));

    auto overlapping = *good.packing;
    overlapping.copies[1] = overlapping.copies[0];
    CHECK(! verify_packing(h, g, overlapping, false));

    auto sparse = GraphBuilder{ 4 };
    sparse.add_edge(0, 2).add_edge(0, 3).add_edge(1, 2).add_edge(1, 3);
    Packing missing{ 4, { Copy{ VertexSet::full(4), { 0, 1, 2, 3 } } } };
    CHECK(! verify_packing(h, sparse.build(), missing, false));

    Packing partial{ 8, { good.packing->copies[0] } };
    CHECK(verify_packing(h, g, partial, false));
    CHECK(! verify_packing(h, g, partial, true));
}

TEST_CASE("decisions agree with partition enumeration")
{
    std::mt19937_64 rng(31);
    for (int t = 0 ; t < 120 ; ++t) {
        auto h = t % 3 == 0 ? complete_graph(3) : t % 3 == 1 ? k_r_minus(3) : k_r_minus(4);
        int n = h.size() * std::uniform_int_distribution<int>(1, 9 / h.size())(rng);
        auto g = random_graph(n, std::uniform_real_distribution<double>(0.3, 0.9)(rng), rng);
        CHECK(find_perfect_packing(h, g).packing.has_value() == naive_perfect_packing_exists(h, g));
    }
}

TEST_CASE("decisions are invariant under relabelling")
{
    std::mt19937_64 rng(77);
    auto h = k_r_minus(4);
    for (int t = 0 ; t < 40 ; ++t) {
        auto g = random_graph(12, 0.7, rng);
        std::vector<int> perm(12);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto moved = relabel(g, perm);
        CHECK(find_perfect_packing(h, g).packing.has_value() == find_perfect_packing(h, moved).packing.has_value());
        CHECK(max_packing_size(h, g) == max_packing_size(h, moved));
    }
}

TEST_CASE("budget exhaustion is a timeout, not an absence")
{
    SearchOptions tiny;
    tiny.budget = std::chrono::duration<double>{ 0.0 };
    auto g = prop3_extremal(4, 6);
    try {
        find_perfect_packing(k_r_minus(4), g, tiny);
        FAIL("expected a timeout");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::Timeout);
    }
}
