#ifndef HPACK_HALL_PACKER_HH
#define HPACK_HALL_PACKER_HH

#include <hpack/graph.hh>
#include <hpack/rational.hh>
#include <hpack/solver.hh>

#include <optional>
#include <string>
#include <vector>

namespace hpack
{
    struct Star
    {
        int centre = -1;
        std::vector<int> leaves;
    };

    struct StarPacking
    {
        std::vector<Star> stars;
    };

    /// A set A on the big side with |A| > r |N(A) ∩ small|, so no perfect star packing exists.
    /// When reported from a contracted level, contracted vertices are replaced by the
    /// host vertices of their stars.
    struct HallWitness
    {
        VertexSet deficient;
        VertexSet neighbourhood;
    };

    struct StarPackResult
    {
        std::optional<StarPacking> packing;
        std::optional<HallWitness> witness;
    };

    /// Perfect K_{1,r}-packing with centres in `small` and leaves in `big`, as a matching
    /// between `big` and r slots per small vertex found by augmenting paths. Throws
    /// BadParameter unless |big| = r |small| and the sets are disjoint.
    auto star_pack(const Graph & g, const VertexSet & big, const VertexSet & small, int r) -> StarPackResult;

    /// Star vertices collapsed to one vertex each.
    struct Contraction
    {
        Graph graph;
        /// Contracted-graph vertex of each kept vertex, in the order of `rest`, then one per star.
        std::vector<int> to_parent;
        /// The classes of `rest` followed by the class of star vertices, over the contracted graph.
        std::vector<VertexSet> classes;
        /// Index of the first star vertex; star s becomes vertex first_star + s.
        int first_star = 0;
    };

    /// Keeps the vertices of `rest` with their adjacencies and adds one vertex per star,
    /// adjacent to y exactly when y is adjacent to every vertex of that star. to_parent is
    /// -1 for star vertices.
    auto contract_stars(const Graph & g, const StarPacking & sp, const std::vector<VertexSet> & rest) -> Contraction;

    struct HqrResult
    {
        std::optional<Packing> packing;
        /// Number of non-singleton classes at the level whose star packing failed.
        int failed_level = 0;
        std::optional<HallWitness> witness;
        /// Vertices that miss more than tau |V_j| of some other class V_j.
        std::vector<std::string> warnings;
    };

    /// tau_0(1, r) = 1/2 and tau_0(q, r) = tau_0(q-1, r) / (r+1).
    auto default_tau(int q, int r) -> Rational;

    /// Perfect H_{q,r}-packing of the (q+1)-partite graph on the given classes, where
    /// |V_i| = kr for i <= q and |V_{q+1}| = k. Packs stars between the last two classes,
    /// contracts them into a new last class and recurses. If the next level is short of
    /// contracted neighbours, the star packing is redone with centres reserved for the
    /// deficient vertices. Embeddings follow h_qr_graph(q, r).
    auto pack_h_qr(const Graph & g, const Partition & classes, int q, int r, const Rational & tau) -> HqrResult;
}

#endif
