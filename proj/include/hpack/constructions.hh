#ifndef HPACK_CONSTRUCTIONS_HH
#define HPACK_CONSTRUCTIONS_HH

#include <hpack/graph.hh>

#include <vector>

namespace hpack
{
    /// K_r minus the edge 01.
    auto k_r_minus(int r) -> Graph;

    /// Complete l-partite graph with l-1 classes of size |H| - sigma followed by one of
    /// size (l-1) sigma, where l = chi(H).
    auto bottle_graph(const Graph & h) -> Graph;

    /// Complete (r-1)-partite graph on kr vertices: a class of k-1 vertices, then the
    /// rest split as evenly as possible over r-2 classes, larger classes first. The
    /// first class is left out when k = 1. Checks its minimum degree on construction.
    auto prop3_extremal(int r, int k) -> Graph;

    /// Complete l-partite host for a complete l-partite pattern H, with a perfect matching
    /// added inside the first class, or a near-perfect matching plus a path on its three
    /// highest vertices when that class is odd. Checks its minimum degree on construction.
    auto prop4_extremal(const Graph & h, int k) -> Graph;

    /// Classes of a complete multipartite graph (the components of its complement), or
    /// empty if the graph is not complete multipartite.
    auto multipartite_classes(const Graph & h) -> std::vector<VertexSet>;

    struct CanonicalSpec
    {
        int r = 0;
        int q = 0;
        int n = 0;
        /// q equal sparse sizes, then the remainder class.
        std::vector<int> class_sizes;
    };

    /// Throws BadParameter unless r >= 4, 1 <= q <= r-2 and r(r-2) | n.
    auto canonical_spec(int r, int q, int n) -> CanonicalSpec;

    /// K(q, n): complete graph with each of the first q classes made independent. Classes
    /// are laid out consecutively and recorded in the labels.
    auto canonical_graph(const CanonicalSpec & spec) -> Graph;

    /// |B_1| = (r-q-1)(r-1) - 1.
    auto b1_order(int r, int q) -> int;

    /// q copies of K_{r-q-1} followed by r-q-2 copies of K_{r-q}^-, each minus copy missing
    /// the edge between its first two vertices. Labels give an (r-q-1)-colouring with
    /// one class of size r-2 (label 0) and r-q-2 of size r-1; minus copy j puts its
    /// missing pair in class j+1.
    auto b1_graph(int r, int q) -> Graph;

    /// Complete (q+1)-partite graph with q classes of size r and a final singleton class.
    auto h_qr_graph(int q, int r) -> Graph;
}

#endif
