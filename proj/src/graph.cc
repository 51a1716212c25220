#include <hpack/graph.hh>
#include <hpack/error.hh>

#include <algorithm>
#include <string>

using std::pair;
using std::span;
using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    auto Graph::edges() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        result.reserve(std::size_t(_edges));
        for (int u = 0 ; u < size() ; ++u)
            for (int v = _rows[std::size_t(u)].next(u) ; v != -1 ; v = _rows[std::size_t(u)].next(v))
                result.emplace_back(u, v);
        return result;
    }

    auto Graph::with_labels(vector<int> labels) const -> Graph
    {
        if (! labels.empty() && int(labels.size()) != size())
            throw Error{ ErrorKind::BadParameter, "label count " + to_string(labels.size()) + " does not match vertex count " + to_string(size()) };
        Graph g = *this;
        g._labels = std::move(labels);
        return g;
    }

    GraphBuilder::GraphBuilder(int n)
    {
        if (n < 0)
            throw Error{ ErrorKind::BadParameter, "negative vertex count" };
        _rows.assign(std::size_t(n), VertexSet(n));
    }

    auto GraphBuilder::add_edge(int u, int v) -> GraphBuilder &
    {
        if (u < 0 || v < 0 || u >= size() || v >= size())
            throw Error{ ErrorKind::BadParameter, "edge (" + to_string(u) + "," + to_string(v) + ") out of range" };
        if (u == v)
            throw Error{ ErrorKind::BadParameter, "loop at vertex " + to_string(u) };
        _rows[std::size_t(u)].insert(v);
        _rows[std::size_t(v)].insert(u);
        return *this;
    }

    auto GraphBuilder::remove_edge(int u, int v) -> GraphBuilder &
    {
        if (u < 0 || v < 0 || u >= size() || v >= size())
            throw Error{ ErrorKind::BadParameter, "edge (" + to_string(u) + "," + to_string(v) + ") out of range" };
        _rows[std::size_t(u)].erase(v);
        _rows[std::size_t(v)].erase(u);
        return *this;
    }

    auto GraphBuilder::has_edge(int u, int v) const -> bool
    {
        return _rows[std::size_t(u)].contains(v);
    }

    auto GraphBuilder::set_labels(vector<int> labels) -> GraphBuilder &
    {
        if (! labels.empty() && int(labels.size()) != size())
            throw Error{ ErrorKind::BadParameter, "label count does not match vertex count" };
        _labels = std::move(labels);
        return *this;
    }

    auto GraphBuilder::from(const Graph & g) -> GraphBuilder
    {
        GraphBuilder b(g.size());
        for (int v = 0 ; v < g.size() ; ++v)
            b._rows[std::size_t(v)] = g.neighbours(v);
        b._labels = g.labels();
        return b;
    }

    auto GraphBuilder::build() const -> Graph
    {
        Graph g;
        g._rows = _rows;
        g._labels = _labels;
        long long degree_sum = 0;
        for (auto & row : _rows)
            degree_sum += row.count();
        g._edges = degree_sum / 2;
        return g;
    }

    auto Partition::class_of() const -> vector<int>
    {
        vector<int> result(std::size_t(host_n), -1);
        for (int c = 0 ; c < size() ; ++c)
            classes[std::size_t(c)].for_each([&] (int v) { result[std::size_t(v)] = c; });
        return result;
    }

    auto Partition::covered() const -> VertexSet
    {
        VertexSet all(host_n);
        for (auto & c : classes)
            all |= c;
        return all;
    }

    void Partition::validate() const
    {
        VertexSet seen(host_n);
        for (auto & c : classes) {
            if (c.host_size() != host_n)
                throw Error{ ErrorKind::BadParameter, "partition class has width " + to_string(c.host_size()) + ", expected " + to_string(host_n) };
            if (seen.intersects(c))
                throw Error{ ErrorKind::OverlappingSets, "partition classes overlap" };
            seen |= c;
        }
    }

    auto Partition::from_labels(int host_n, span<const int> labels) -> Partition
    {
        if (int(labels.size()) != host_n)
            throw Error{ ErrorKind::BadParameter, "label count does not match vertex count" };
        Partition p;
        p.host_n = host_n;
        for (int v = 0 ; v < host_n ; ++v) {
            int c = labels[std::size_t(v)];
            if (c < 0)
                continue;
            while (p.size() <= c)
                p.classes.emplace_back(host_n);
            p.classes[std::size_t(c)].insert(v);
        }
        return p;
    }

    auto InducedSubgraph::lift(const VertexSet & s, int parent_n) const -> VertexSet
    {
        VertexSet result(parent_n);
        s.for_each([&] (int v) { result.insert(to_parent[std::size_t(v)]); });
        return result;
    }

    auto min_degree(const Graph & g) -> int
    {
        if (g.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "minimum degree of the empty graph" };
        int best = g.size();
        for (int v = 0 ; v < g.size() ; ++v)
            best = std::min(best, g.degree(v));
        return best;
    }

    auto max_degree(const Graph & g) -> int
    {
        if (g.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "maximum degree of the empty graph" };
        int best = 0;
        for (int v = 0 ; v < g.size() ; ++v)
            best = std::max(best, g.degree(v));
        return best;
    }

    auto edges_within(const Graph & g, const VertexSet & a) -> long long
    {
        long long twice = 0;
        a.for_each([&] (int v) { twice += g.neighbours(v).intersection_count(a); });
        return twice / 2;
    }

    auto edges_between(const Graph & g, const VertexSet & a, const VertexSet & b) -> long long
    {
        long long total = 0;
        a.for_each([&] (int v) { total += g.neighbours(v).intersection_count(b); });
        return total;
    }

    auto density_within(const Graph & g, const VertexSet & a) -> Rational
    {
        long long size = a.count();
        if (size < 2)
            throw Error{ ErrorKind::DegenerateSet, "density needs at least two vertices, got " + to_string(size) };
        return Rational{ BigInt{ edges_within(g, a) }, BigInt{ size * (size - 1) / 2 } };
    }

    auto density_between(const Graph & g, const VertexSet & a, const VertexSet & b) -> Rational
    {
        if (a.intersects(b))
            throw Error{ ErrorKind::OverlappingSets, "density_between needs disjoint sets" };
        long long sa = a.count(), sb = b.count();
        if (sa == 0 || sb == 0)
            throw Error{ ErrorKind::DegenerateSet, "density_between needs nonempty sets" };
        return Rational{ BigInt{ edges_between(g, a, b) }, BigInt{ sa * sb } };
    }

    auto complete_multipartite(span<const int> sizes) -> Graph
    {
        if (sizes.empty())
            throw Error{ ErrorKind::BadSizes, "no classes given" };
        int n = 0;
        for (int s : sizes) {
            if (s <= 0)
                throw Error{ ErrorKind::BadSizes, "class size " + to_string(s) + " is not positive" };
            n += s;
        }

        vector<int> labels;
        labels.reserve(std::size_t(n));
        for (std::size_t c = 0 ; c < sizes.size() ; ++c)
            labels.insert(labels.end(), std::size_t(sizes[c]), int(c));

        GraphBuilder b(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (labels[std::size_t(u)] != labels[std::size_t(v)])
                    b.add_edge(u, v);
        b.set_labels(std::move(labels));
        return b.build();
    }

    auto complete_graph(int n) -> Graph
    {
        GraphBuilder b(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                b.add_edge(u, v);
        return b.build();
    }

    auto edgeless_graph(int n) -> Graph
    {
        return GraphBuilder(n).build();
    }

    auto induced(const Graph & g, const VertexSet & a) -> InducedSubgraph
    {
        if (a.empty())
            throw Error{ ErrorKind::DegenerateSet, "cannot induce on an empty set" };

        InducedSubgraph result;
        result.to_parent = a.to_vector();
        vector<int> to_child(std::size_t(g.size()), -1);
        for (std::size_t i = 0 ; i < result.to_parent.size() ; ++i)
            to_child[std::size_t(result.to_parent[i])] = int(i);

        GraphBuilder b(int(result.to_parent.size()));
        for (std::size_t i = 0 ; i < result.to_parent.size() ; ++i) {
            int u = result.to_parent[i];
            (g.neighbours(u) & a).for_each([&] (int w) {
                if (w > u)
                    b.add_edge(int(i), to_child[std::size_t(w)]);
            });
        }
        if (g.has_labels()) {
            vector<int> labels;
            for (int v : result.to_parent)
                labels.push_back(g.labels()[std::size_t(v)]);
            b.set_labels(std::move(labels));
        }
        result.graph = b.build();
        return result;
    }

    auto relabel(const Graph & g, span<const int> permutation) -> Graph
    {
        if (int(permutation.size()) != g.size())
            throw Error{ ErrorKind::BadParameter, "permutation size mismatch" };
        GraphBuilder b(g.size());
        for (auto [u, v] : g.edges())
            b.add_edge(permutation[std::size_t(u)], permutation[std::size_t(v)]);
        if (g.has_labels()) {
            vector<int> labels(std::size_t(g.size()));
            for (int v = 0 ; v < g.size() ; ++v)
                labels[std::size_t(permutation[std::size_t(v)])] = g.labels()[std::size_t(v)];
            b.set_labels(std::move(labels));
        }
        return b.build();
    }

    auto disjoint_union(span<const Graph> parts) -> Graph
    {
        int n = 0;
        for (auto & p : parts)
            n += p.size();
        GraphBuilder b(n);
        int offset = 0;
        for (auto & p : parts) {
            for (auto [u, v] : p.edges())
                b.add_edge(u + offset, v + offset);
            offset += p.size();
        }
        return b.build();
    }

    auto connected_components(const Graph & g) -> vector<VertexSet>
    {
        vector<VertexSet> result;
        VertexSet unseen = g.vertices();
        for (int start = unseen.first() ; start != -1 ; start = unseen.first()) {
            VertexSet component(g.size()), frontier(g.size());
            frontier.insert(start);
            while (! frontier.empty()) {
                component |= frontier;
                VertexSet grown(g.size());
                frontier.for_each([&] (int v) { grown |= g.neighbours(v); });
                frontier = grown - component;
            }
            unseen -= component;
            result.push_back(std::move(component));
        }
        return result;
    }

    auto complement(const Graph & g) -> Graph
    {
        GraphBuilder b(g.size());
        for (int u = 0 ; u < g.size() ; ++u)
            for (int v = u + 1 ; v < g.size() ; ++v)
                if (! g.adjacent(u, v))
                    b.add_edge(u, v);
        if (g.has_labels())
            b.set_labels(g.labels());
        return b.build();
    }
}
