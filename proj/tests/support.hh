#ifndef HPACK_TESTS_SUPPORT_HH
#define HPACK_TESTS_SUPPORT_HH

#include <hpack/graph.hh>
#include <hpack/rational.hh>
#include <hpack/tidy.hh>

#include <random>
#include <string>
#include <vector>

namespace hpack::testing
{
    /// Does some bijection from H onto g[set] map every H edge to a g edge? Tries all |H|! orders.
    auto hosts_pattern(const Graph & h, const Graph & g, const std::vector<int> & set) -> bool;

    /// Perfect H-packing by plain partition enumeration: the lowest uncovered vertex is
    /// grouped with every (|H|-1)-subset of the rest in turn.
    auto naive_perfect_packing_exists(const Graph & h, const Graph & g) -> bool;

    /// Every proper colouring with at most |H| colours, classes relabelled canonically.
    struct BruteColouring
    {
        int chi = 0;
        int sigma = 0;
        std::vector<std::vector<int>> size_multisets;
    };
    auto brute_colouring(const Graph & h) -> BruteColouring;

    /// Number of vertex subsets of size |H| hosting H.
    auto brute_copy_count(const Graph & h, const Graph & g) -> int;

    auto random_graph(int n, double p, std::mt19937_64 & rng) -> Graph;

    /// Complete (q+1)-partite graph with classes kr, ..., kr, k and every edge deleted
    /// independently with probability tau_0(q, r)/2.
    struct HallInstance
    {
        Graph g;
        Partition classes;
    };
    auto hall_instance(int q, int r, int k, unsigned seed) -> HallInstance;

    /// Instance `index` of the tidy corpus: K(1,80) for index < 25, K(2,96) otherwise (r = 4),
    /// a random matching with floor(C(s,2)/200) edges inside every sparse class, and
    /// 1 + index % 3 vertices of the last class keeping only floor(cbrt(1/100)|A_j|/2)
    /// of their neighbours in one sparse class A_j.
    struct TidyInstance
    {
        Graph g;
        std::vector<VertexSet> sparse;
        int q = 0;
    };
    auto tidy_instance(int index) -> TidyInstance;

    /// Empty when (i)-(iii) hold for the result and every removed copy is a valid disjoint K_r^-.
    auto tidy_postcondition_failure(const Graph & g, const TidyResult & t, int r, const Rational & tau) -> std::string;

    /// Seeded r = 4 corpus with n <= 24: perturbed K(q,n), perturbed K_r^- extremal graphs,
    /// near-canonical graphs with ceiling-sized sparse classes, and dense random graphs.
    struct CorpusEntry
    {
        std::string kind;
        Graph g;
    };
    auto pipeline_corpus(int count, unsigned seed) -> std::vector<CorpusEntry>;
}

#endif
