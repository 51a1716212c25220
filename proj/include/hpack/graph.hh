#ifndef HPACK_GRAPH_HH
#define HPACK_GRAPH_HH

#include <hpack/bitset.hh>
#include <hpack/rational.hh>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hpack
{
    class GraphBuilder;

    /// Undirected simple graph on vertices 0..n-1 with one neighbour bitset per vertex.
    /// Immutable once built; use GraphBuilder to make one. Optional per-vertex labels
    /// record a class index and carry no structural meaning.
    class Graph
    {
        public:
            Graph() = default;

            auto size() const -> int { return int(_rows.size()); }
            auto neighbours(int v) const -> const VertexSet & { return _rows[std::size_t(v)]; }
            auto adjacent(int u, int v) const -> bool { return _rows[std::size_t(u)].contains(v); }
            auto degree(int v) const -> int { return _rows[std::size_t(v)].count(); }
            auto edge_count() const -> long long { return _edges; }

            auto has_labels() const -> bool { return ! _labels.empty(); }
            auto labels() const -> const std::vector<int> & { return _labels; }

            auto vertices() const -> VertexSet { return VertexSet::full(size()); }
            auto empty_set() const -> VertexSet { return VertexSet(size()); }

            /// Edges as (u, v) with u < v, in lexicographic order.
            auto edges() const -> std::vector<std::pair<int, int>>;

            /// Same graph with the given labels attached.
            auto with_labels(std::vector<int> labels) const -> Graph;

            friend auto operator== (const Graph &, const Graph &) -> bool = default;

        private:
            friend class GraphBuilder;

            std::vector<VertexSet> _rows;
            std::vector<int> _labels;
            long long _edges = 0;
    };

    class GraphBuilder
    {
        public:
            explicit GraphBuilder(int n);

            /// Throws BadParameter on loops or out-of-range endpoints. Repeated edges are idempotent.
            auto add_edge(int u, int v) -> GraphBuilder &;
            auto remove_edge(int u, int v) -> GraphBuilder &;
            auto has_edge(int u, int v) const -> bool;
            auto set_labels(std::vector<int> labels) -> GraphBuilder &;

            /// Copies an existing graph's edges and labels as a starting point.
            static auto from(const Graph & g) -> GraphBuilder;

            auto build() const -> Graph;
            auto size() const -> int { return int(_rows.size()); }

        private:
            std::vector<VertexSet> _rows;
            std::vector<int> _labels;
    };

    /// Ordered disjoint vertex classes over a host graph. The union may be a proper
    /// subset of the host vertices.
    struct Partition
    {
        int host_n = 0;
        std::vector<VertexSet> classes;

        auto size() const -> int { return int(classes.size()); }

        /// Class index per host vertex, -1 for vertices in no class.
        auto class_of() const -> std::vector<int>;
        auto covered() const -> VertexSet;

        /// Throws OverlappingSets or BadParameter if classes overlap or have the wrong width.
        void validate() const;

        static auto from_labels(int host_n, std::span<const int> labels) -> Partition;
    };

    /// A subgraph together with the map from its vertices back to the parent graph's.
    struct InducedSubgraph
    {
        Graph graph;
        std::vector<int> to_parent;

        /// Maps a set over the subgraph back to a set over the parent.
        auto lift(const VertexSet & s, int parent_n) const -> VertexSet;
    };

    auto min_degree(const Graph & g) -> int;
    auto max_degree(const Graph & g) -> int;

    auto edges_within(const Graph & g, const VertexSet & a) -> long long;
    auto edges_between(const Graph & g, const VertexSet & a, const VertexSet & b) -> long long;

    /// Exact e(G[A]) / C(|A|, 2). Throws DegenerateSet when |A| < 2.
    auto density_within(const Graph & g, const VertexSet & a) -> Rational;

    /// Exact e(A, B) / (|A| |B|). Throws OverlappingSets or DegenerateSet.
    auto density_between(const Graph & g, const VertexSet & a, const VertexSet & b) -> Rational;

    /// Complete multipartite graph, classes laid out consecutively; labels hold class indices.
    auto complete_multipartite(std::span<const int> sizes) -> Graph;
    auto complete_graph(int n) -> Graph;
    auto edgeless_graph(int n) -> Graph;

    /// Vertices kept in ascending order. Throws DegenerateSet on an empty set.
    auto induced(const Graph & g, const VertexSet & a) -> InducedSubgraph;

    /// Vertex v of `g` becomes vertex permutation[v] of the result.
    auto relabel(const Graph & g, std::span<const int> permutation) -> Graph;

    auto disjoint_union(std::span<const Graph> parts) -> Graph;

    /// Vertex sets of the connected components, ordered by smallest vertex.
    auto connected_components(const Graph & g) -> std::vector<VertexSet>;

    auto complement(const Graph & g) -> Graph;
}

#endif
