#include "support.hh"

#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/pipeline.hh>

#include <doctest.h>

using namespace hpack;
using namespace hpack::testing;

TEST_CASE("default ladder")
{
    auto l = default_ladder(4);
    REQUIRE(l.values.size() == 3);
    CHECK(l.tau(3) == make_rational(1, 400));
    CHECK(l.tau(2) == make_rational(1, 160000));
    CHECK(l.tau(1) == make_rational(1, 160000) * make_rational(1, 160000));
    validate_ladder(l, 4);
    CHECK_THROWS_AS(validate_ladder(TauLadder{ { make_rational(1, 10), make_rational(1, 20), make_rational(1, 5) } }, 4), Error);
    CHECK_THROWS_AS(validate_ladder(TauLadder{ { make_rational(1, 10), make_rational(1, 5) } }, 4), Error);
}

TEST_CASE("sparse sets")
{
    auto g = canonical_graph(canonical_spec(4, 2, 24));
    auto p = Partition::from_labels(24, g.labels());
    auto s = find_sparse_sets(g, 4, default_ladder(4));
    CHECK(s.q == 2);
    for (const auto & set : s.sets)
        CHECK((set == p.classes[0] || set == p.classes[1]));

    std::mt19937_64 rng(3);
    CHECK(find_sparse_sets(random_graph(40, 0.9, rng), 4, default_ladder(4)).q == 0);
    CHECK(find_sparse_sets(prop3_extremal(4, 4), 4, default_ladder(4)).q >= 1);
}

TEST_CASE("B_1 core packings")
{
    auto g = complete_graph(10);
    auto trivial = pack_b1_core(g, VertexSet::of(10, { 1, 3, 5, 7 }), 4, 2);
    REQUIRE(trivial);
    CHECK(trivial->copies.size() == 2);

    auto found = pack_b1_core(g, VertexSet::full(10), 4, 1);
    REQUIRE(found);
    CHECK(verify_packing(b1_graph(4, 1), g, *found, true));

    CHECK(! pack_b1_core(edgeless_graph(10), VertexSet::full(10), 4, 1));
    CHECK(! pack_b1_core(g, VertexSet::of(10, { 1, 2, 3 }), 4, 2));
}

TEST_CASE("auxiliary graph and expansion")
{
    auto g = canonical_graph(canonical_spec(4, 1, 16));
    auto p = Partition::from_labels(16, g.labels());
    auto b1 = pack_b1_core(g, p.classes[1], 4, 1);
    REQUIRE(b1);
    auto aux = build_auxiliary(g, p, *b1, 4);
    CHECK(aux.j_graph.size() == 8);
    CHECK(aux.j_graph.edge_count() == 12);

    auto hqr = pack_h_qr(aux.j_graph, aux.classes, 1, 3, default_tau(1, 3));
    REQUIRE(hqr.packing);
    auto expanded = expand_packing(g, aux, *hqr.packing, 4, 1);
    CHECK(verify_packing(k_r_minus(4), g, expanded, true));

    auto b = GraphBuilder::from(g);
    int left = p.classes[0].first();
    b.remove_edge(left, b1->copies[0].embedding[0]);
    auto missing = build_auxiliary(b.build(), p, *b1, 4);
    CHECK(! missing.j_graph.adjacent(0, missing.first_right));
    CHECK(missing.j_graph.edge_count() == 11);

    CHECK_THROWS_AS(build_auxiliary(g, p, Packing{ 16, { b1->copies[0] } }, 4), Error);
}

TEST_CASE("pipeline paths")
{
    auto k140 = run_pipeline(canonical_graph(canonical_spec(4, 1, 40)), 4);
    CHECK(k140.path == "pipeline");
    REQUIRE(k140.packing);
    CHECK(k140.packing->copies.size() == 10);

    auto p3 = run_pipeline(prop3_extremal(4, 3), 4);
    CHECK(p3.path == "fallback");
    CHECK(! p3.packing);
    CHECK(! p3.warnings.empty());

    std::mt19937_64 rng(11);
    auto dense = random_graph(16, 0.95, rng);
    auto d = run_pipeline(dense, 4);
    CHECK(d.path == "direct");
    REQUIRE(d.packing);
    CHECK(verify_packing(k_r_minus(4), dense, *d.packing, true));

    auto odd = run_pipeline(complete_graph(10), 4);
    CHECK(! odd.packing);

    auto r5 = canonical_graph(canonical_spec(5, 3, 30));
    auto five = run_pipeline(r5, 5);
    CHECK(five.path == "pipeline");
    REQUIRE(five.packing);
    CHECK(verify_packing(k_r_minus(5), r5, *five.packing, true));
}

TEST_CASE("pipeline agrees with the solver on a small corpus")
{
    for (const auto & entry : pipeline_corpus(40, 123)) {
        auto res = run_pipeline(entry.g, 4);
        CHECK(res.packing.has_value() == find_perfect_packing(k_r_minus(4), entry.g).packing.has_value());
        if (res.packing)
            CHECK(verify_packing(k_r_minus(4), entry.g, *res.packing, true));
    }
}

TEST_CASE("threshold table")
{
    auto t = threshold_table(4, 24);
    REQUIRE(t.size() == 6);
    CHECK(t[0] == std::pair<int, BigInt>{ 4, 3 });
    CHECK(t[1] == std::pair<int, BigInt>{ 8, 5 });
    CHECK(t[5] == std::pair<int, BigInt>{ 24, 15 });
}
