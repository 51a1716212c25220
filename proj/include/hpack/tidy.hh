#ifndef HPACK_TIDY_HH
#define HPACK_TIDY_HH

#include <hpack/graph.hh>
#include <hpack/rational.hh>
#include <hpack/solver.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpack
{
    /// Threshold flags of every vertex relative to its class, for classes A_1..A_{q+1}.
    /// A vertex x in A_i is
    ///   bad          when it has at least tau^{1/3}|A_i| neighbours in A_i,
    ///   useless      when it has at most (1 - tau^{1/4})|A_j| neighbours in some A_j, j != i,
    ///   j-exceptional when it has at most tau^{1/3}|A_j| neighbours in A_j, j != i.
    struct VertexClassification
    {
        Rational tau;
        /// Class index per host vertex, -1 for vertices in no class.
        std::vector<int> class_of;
        VertexSet bad;
        VertexSet useless;
        /// exceptional[j] holds the j-exceptional vertices.
        std::vector<VertexSet> exceptional;
        /// Per class, counts of its bad, useless and exceptional vertices.
        std::vector<int> bad_count, useless_count, exceptional_count;
        /// Count bounds from the hypothesis regime that do not hold here.
        std::vector<std::string> warnings;

        /// Lowest j for which v is j-exceptional, or -1.
        auto exceptional_target(int v) const -> int;
        auto any_exceptional() const -> VertexSet;
    };

    auto classify(const Graph & g, const Partition & p, const Rational & tau) -> VertexClassification;

    struct SwapResult
    {
        Partition partition;
        /// (x, y): x was i-bad in A_i, y was i-exceptional in A_j, and they traded classes.
        std::vector<std::pair<int, int>> swaps;
        /// Relaxed thresholds (2 tau^{1/3}, 2 tau^{1/4}, tau^{1/3}/2) that fail after swapping.
        std::vector<std::string> warnings;
    };

    /// Greedy swaps of i-bad vertices of A_i with i-exceptional vertices of other classes,
    /// lowest class and vertex indices first, each vertex swapped at most once.
    auto swap_bad_exceptional(const Graph & g, const Partition & p, const VertexClassification & c) -> SwapResult;

    struct DivisibilityAdjustment
    {
        Partition partition;
        /// n = n' + kr with r(r-2) | n'.
        int k = 0;
        std::vector<int> moved;
    };

    /// When k < q, moves the vertex of largest internal degree (lowest index on ties) from
    /// each A_i with k < i <= q into A_{q+1}. Throws BadParameter unless r | n and every
    /// sparse class has ceil((r-1)n / (r(r-2))) vertices.
    auto adjust_for_divisibility(const Graph & g, const Partition & p, int r) -> DivisibilityAdjustment;

    /// r-2 disjoint copies of K_r^- over the classes of p, meeting each of the first q
    /// classes in exactly r-1 vertices in total and taking the rest from the last class.
    /// The anchor, if given, is one of them. When tau is given, useless vertices are
    /// avoided where possible. Throws Stuck if the greedy search fails.
    auto remove_proportional_batch(const Graph & g, const Partition & p, int r, const std::optional<Copy> & anchor,
            const std::optional<Rational> & tau = std::nullopt) -> std::vector<Copy>;

    /// `count` disjoint s-cliques inside a, each grown greedily from the highest-degree
    /// available vertex. Throws Stuck if fewer exist by this method. Appends a warning when
    /// the minimum degree of G[a] is not above the Turan bound (1 - 1/(s-1))|a|.
    auto extract_disjoint_cliques(const Graph & g, const VertexSet & a, int s, int count,
            std::vector<std::string> * warnings = nullptr) -> std::vector<VertexSet>;

    /// Slack c = 1/(r-q-2) - (r-1)n / (r(r-2)|A_{q+1}|), for q <= r-3.
    auto clique_regime_slack(int r, int q, int n, int last_class_size) -> Rational;

    struct TraceEvent
    {
        std::string stage;
        std::string action;
        std::vector<int> vertices;
    };

    struct TidyResult
    {
        /// The remaining core G* and the host vertex of each of its vertices.
        Graph g_star;
        std::vector<int> star_to_host;
        /// A_1*..A_{q+1}*, over host vertex indices.
        Partition classes;
        std::vector<Copy> removed;
        std::vector<TraceEvent> trace;
        std::vector<std::string> warnings;
        int n_star = 0;
        int k = 0;
    };

    /// Removes a few K_r^- copies so that what is left is a near-complete (q+1)-partite
    /// graph with canonical class sizes, q = sparse_sets.size(). Stages: divisibility
    /// adjustment, classification, bad/exceptional swaps, removal of exceptional vertices,
    /// relocation of sparse vertices with few neighbours in A_{q+1}, removal of useless
    /// vertices, then k final copies. Each removal is a batch of r-2 copies that may carry
    /// several anchor vertices. The result is checked against
    ///   (i)   r(r-2) | n*, removed copies partition the rest, n - n* <= tau^{1/3} n,
    ///   (ii)  |A_i*| = (r-1)n* / (r(r-2)) for i <= q,
    ///   (iii) every vertex of A_i* has at least (1 - tau^{1/5})|A_j*| neighbours in A_j*,
    /// and Stuck("postcondition") is thrown if any fails. Size and parameter violations
    /// throw BadParameter; the minimum degree and density hypotheses only warn.
    auto tidy(const Graph & g, const std::vector<VertexSet> & sparse_sets, int r, const Rational & tau) -> TidyResult;
}

#endif
