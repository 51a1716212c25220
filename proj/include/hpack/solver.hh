#ifndef HPACK_SOLVER_HH
#define HPACK_SOLVER_HH

#include <hpack/graph.hh>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace hpack
{
    /// One occurrence of a pattern H in a host G. embedding[i] is the host vertex that
    /// pattern vertex i maps to; every pattern edge must land on a host edge.
    struct Copy
    {
        VertexSet vertices;
        std::vector<int> embedding;
    };

    /// Pairwise vertex-disjoint copies of one pattern in one host.
    struct Packing
    {
        int host_n = 0;
        std::vector<Copy> copies;

        auto covered() const -> VertexSet;
    };

    struct SearchOptions
    {
        std::chrono::duration<double> budget = std::chrono::seconds{ 60 };
    };

    struct SearchStats
    {
        long long nodes_explored = 0;
        double elapsed_seconds = 0.0;
    };

    /// Distinct host vertex sets hosting H, each with its lexicographically least
    /// embedding, ordered by that embedding. Patterns isomorphic to K_r^- use a dedicated
    /// enumeration of r-sets with at most one missing edge.
    auto enumerate_copies(const Graph & h, const Graph & g) -> std::vector<Copy>;

    /// Lexicographically least embedding of H onto exactly the vertices of `within`, if any.
    auto embed_onto(const Graph & h, const Graph & g, const VertexSet & within) -> std::optional<Copy>;

    struct PerfectPackingResult
    {
        /// Empty when exhaustive search proved no perfect packing exists.
        std::optional<Packing> packing;
        SearchStats stats;
    };

    /// Exact decision by exact-cover search over enumerated copies: branch on the
    /// uncovered vertex lying in the fewest surviving copies, with a table of uncovered
    /// sets already shown to be unpackable. Throws Timeout when the budget runs out.
    auto find_perfect_packing(const Graph & h, const Graph & g, const SearchOptions & options = {}) -> PerfectPackingResult;
    auto find_perfect_packing(const Graph & h, const Graph & g, const std::vector<Copy> & copies,
            const SearchOptions & options = {}) -> PerfectPackingResult;

    struct MaxPackingResult
    {
        int size = 0;
        Packing packing;
        SearchStats stats;
    };

    /// Maximum number of disjoint copies. Throws Timeout.
    auto max_packing(const Graph & h, const Graph & g, const SearchOptions & options = {}) -> MaxPackingResult;
    auto max_packing_size(const Graph & h, const Graph & g, const SearchOptions & options = {}) -> int;

    struct Verdict
    {
        bool ok = true;
        std::string reason;

        explicit operator bool() const { return ok; }
    };

    /// Checks disjointness, that every copy hosts H under its embedding, and optionally
    /// that the copies cover every host vertex.
    auto verify_packing(const Graph & h, const Graph & g, const Packing & p, bool require_perfect) -> Verdict;

    /// True when H is K_r^- for some r >= 3, i.e. exactly one vertex pair is missing.
    auto is_complete_minus_edge(const Graph & h) -> bool;
}

#endif
