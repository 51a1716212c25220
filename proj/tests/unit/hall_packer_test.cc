#include "support.hh"

#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/hall_packer.hh>
#include <hpack/solver.hh>

#include <doctest.h>

using namespace hpack;
using namespace hpack::testing;

TEST_CASE("star packing in complete bipartite graphs")
{
    auto g = complete_multipartite(std::vector<int>{ 12, 4 });
    auto big = VertexSet::full(16) - VertexSet::of(16, { 12, 13, 14, 15 });
    auto res = star_pack(g, big, VertexSet::of(16, { 12, 13, 14, 15 }), 3);
    REQUIRE(res.packing);
    CHECK(res.packing->stars.size() == 4);
    VertexSet seen(16);
    for (const auto & s : res.packing->stars) {
        CHECK(s.leaves.size() == 3);
        for (int l : s.leaves) {
            CHECK(! seen.contains(l));
            seen.insert(l);
        }
    }
    CHECK(seen == big);
}

TEST_CASE("star packing failure comes with a Hall witness")
{
    auto b = GraphBuilder::from(complete_multipartite(std::vector<int>{ 6, 2 }));
    for (int leaf = 0 ; leaf < 4 ; ++leaf)
        b.remove_edge(leaf, 7);
    auto g = b.build();
    auto small = VertexSet::of(8, { 6, 7 });
    auto res = star_pack(g, VertexSet::full(8) - small, small, 3);
    CHECK(! res.packing);
    REQUIRE(res.witness);
    int reach = 0;
    for (int c = small.first() ; c != -1 ; c = small.next(c))
        reach += res.witness->deficient.intersects(g.neighbours(c));
    CHECK(res.witness->deficient.count() > 3 * res.witness->neighbourhood.count());
    CHECK(reach == res.witness->neighbourhood.count());
    CHECK_THROWS_AS(star_pack(g, VertexSet::of(8, { 0 }), small, 3), Error);
}

TEST_CASE("complete hosts always pack")
{
    for (auto [q, r, k] : { std::tuple{ 1, 3, 4 }, { 2, 3, 5 }, { 3, 2, 3 }, { 2, 4, 2 } }) {
        std::vector<int> sizes(std::size_t(q), k * r);
        sizes.push_back(k);
        auto g = complete_multipartite(sizes);
        auto res = pack_h_qr(g, Partition::from_labels(g.size(), g.labels()), q, r, default_tau(q, r));
        REQUIRE(res.packing);
        CHECK(int(res.packing->copies.size()) == k);
        CHECK(verify_packing(h_qr_graph(q, r), g, *res.packing, true));
    }
}

TEST_CASE("random deletions at half the default tau")
{
    for (unsigned seed = 0 ; seed < 20 ; ++seed) {
        auto inst = hall_instance(2, 3, 5, seed);
        auto res = pack_h_qr(inst.g, inst.classes, 2, 3, default_tau(2, 3));
        REQUIRE(res.packing);
        CHECK(verify_packing(h_qr_graph(2, 3), inst.g, *res.packing, true));
    }
}

TEST_CASE("an isolated singleton vertex cannot be covered")
{
    auto b = GraphBuilder::from(complete_multipartite(std::vector<int>{ 6, 2 }));
    for (int v = 0 ; v < 6 ; ++v)
        b.remove_edge(v, 7);
    auto g = b.build();
    auto res = pack_h_qr(g, Partition::from_labels(8, complete_multipartite(std::vector<int>{ 6, 2 }).labels()), 1, 3, default_tau(1, 3));
    CHECK(! res.packing);
    CHECK(res.witness);
}

TEST_CASE("default tau")
{
    CHECK(default_tau(1, 3) == make_rational(1, 2));
    CHECK(default_tau(2, 3) == make_rational(1, 8));
    CHECK(default_tau(3, 4) == make_rational(1, 50));
}

TEST_CASE("contraction joins a vertex to a star exactly when it sees all of it")
{
    auto b = GraphBuilder::from(complete_multipartite(std::vector<int>{ 2, 3, 1 }));
    b.remove_edge(0, 3);
    auto g = b.build();
    StarPacking sp{ { Star{ 5, { 2, 3, 4 } } } };
    auto c = contract_stars(g, sp, { VertexSet::of(6, { 0, 1 }) });
    CHECK(c.graph.size() == 3);
    CHECK(! c.graph.adjacent(0, c.first_star));
    CHECK(c.graph.adjacent(1, c.first_star));
}
