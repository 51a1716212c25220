#ifndef HPACK_PIPELINE_HH
#define HPACK_PIPELINE_HH

#include <hpack/graph.hh>
#include <hpack/hall_packer.hh>
#include <hpack/rational.hh>
#include <hpack/solver.hh>
#include <hpack/tidy.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpack
{
    /// tau_1 < ... < tau_{r-1} < 1/r; values[q-1] is tau_q.
    struct TauLadder
    {
        std::vector<Rational> values;

        auto tau(int q) const -> const Rational & { return values.at(std::size_t(q - 1)); }
    };

    /// tau_{r-1} = 1/(100r) and tau_q = tau_{q+1}^2.
    auto default_ladder(int r) -> TauLadder;

    /// Throws BadParameter unless the ladder has r-1 positive, strictly increasing values below 1/r.
    void validate_ladder(const TauLadder & ladder, int r);

    struct SparseSets
    {
        int q = 0;
        std::vector<VertexSet> sets;
    };

    /// Largest q <= r-2 with q disjoint sets of size ceil((r-1)n / (r(r-2))) and density at
    /// most tau_q. Each set is grown greedily from a low-degree seed by adding the vertex
    /// with fewest neighbours inside, then improved by single swaps; densities are checked
    /// exactly. q = 0 when nothing qualifies.
    auto find_sparse_sets(const Graph & g, int r, const TauLadder & ladder) -> SparseSets;

    /// Perfect B_1-packing of G[a], lifted to host vertices. For q = r-2, B_1 is r-2 isolated
    /// vertices and the packing groups the vertices of a in ascending order; otherwise the
    /// exact solver decides. Empty when no packing exists; throws Timeout.
    auto pack_b1_core(const Graph & g, const VertexSet & a, int r, int q, const SearchOptions & options = {}) -> std::optional<Packing>;

    struct AuxiliaryGraph
    {
        Graph j_graph;
        /// The q left classes followed by the class of B_1 copies, over J.
        Partition classes;
        /// Host vertices of each J vertex: one for a left vertex, a whole B_1 copy otherwise.
        std::vector<std::vector<int>> back_map;
        /// The B_1 copy behind each right vertex, in the order the right vertices appear.
        std::vector<Copy> b1_copies;
        int first_right = 0;
    };

    /// J: left vertices keep their host adjacencies; a left vertex is joined to a B_1 copy
    /// exactly when it is adjacent to every vertex of the copy. `classes` are A_1..A_{q+1}
    /// over the host. Throws InternalError unless |left_i| = (r-1)|right|.
    auto build_auxiliary(const Graph & g, const Partition & classes, const Packing & b1_packing, int r) -> AuxiliaryGraph;

    /// Each H_{q,r-1} copy of J becomes r-2 copies of K_r^-: the i-th K_{r-q-1} component of
    /// its B_1 copy takes two vertices from left class i and one from each other left class,
    /// and each K_{r-q}^- component takes one vertex from every left class. Throws
    /// InternalError if a resulting set does not host K_r^-.
    auto expand_packing(const Graph & g, const AuxiliaryGraph & aux, const Packing & j_packing, int r, int q) -> Packing;

    struct PipelineConfig
    {
        std::optional<TauLadder> ladder;
        SearchOptions search;
    };

    struct StageRecord
    {
        std::string stage;
        std::string outcome;
        double elapsed_seconds = 0.0;
    };

    struct PipelineResult
    {
        /// Empty when no perfect K_r^--packing exists.
        std::optional<Packing> packing;
        /// "pipeline", "fallback" or "direct".
        std::string path;
        int q = 0;
        std::vector<StageRecord> stage_trace;
        std::optional<TidyResult> tidy;
        std::vector<std::string> warnings;
    };

    /// Sparse-set detection, then for q >= 1: tidy, B_1 core packing, auxiliary graph,
    /// H_{q,r-1}-packing of J, expansion and merging with the removed copies. q = 0 goes to
    /// the exact solver directly; a Stuck or Absent outcome at any intermediate stage falls
    /// back to it. Only Timeout escapes.
    auto run_pipeline(const Graph & g, int r, const PipelineConfig & config = {}) -> PipelineResult;

    /// (n, ceil((1 - 1/chi_cr(K_r^-)) n)) for every multiple n of r up to n_max.
    auto threshold_table(int r, int n_max) -> std::vector<std::pair<int, BigInt>>;
}

#endif
