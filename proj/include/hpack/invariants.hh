#ifndef HPACK_INVARIANTS_HH
#define HPACK_INVARIANTS_HH

#include <hpack/graph.hh>
#include <hpack/rational.hh>

#include <optional>
#include <set>
#include <vector>

namespace hpack
{
    /// Colouring profiles are computed by exhaustive enumeration, so patterns are capped.
    inline constexpr int max_pattern_size = 20;

    /// Chromatic data of a pattern graph H.
    struct ColouringProfile
    {
        int chi = 0;
        /// Smallest colour-class size over all optimal colourings.
        int sigma = 0;
        /// Ascending class-size tuples realised by optimal colourings, deduplicated.
        std::set<std::vector<int>> size_multisets;
    };

    struct HcfReport
    {
        /// Consecutive differences of sorted class sizes, over all optimal colourings.
        std::set<int> d_set;
        /// gcd of the nonzero elements of d_set; empty means infinity.
        std::optional<int> hcf_chi;
        /// gcd of the component orders.
        int hcf_c = 0;
        bool hcf_is_one = false;
    };

    /// Exact chromatic number: clique lower bound, DSATUR upper bound, then exhaustive
    /// DSATUR-ordered k-colourability checks in between.
    auto chromatic_number(const Graph & h) -> int;

    /// Size of a maximum clique (Bron-Kerbosch with pivoting).
    auto clique_number(const Graph & h) -> int;

    auto colouring_profile(const Graph & h) -> ColouringProfile;

    /// (chi - 1)|H| / (|H| - sigma). Throws Degenerate when chi = 1.
    auto critical_chromatic_number(const Graph & h) -> Rational;
    auto critical_chromatic_number(const ColouringProfile & profile, int order) -> Rational;

    auto hcf_report(const Graph & h) -> HcfReport;
    auto hcf_report(const Graph & h, const ColouringProfile & profile) -> HcfReport;

    /// Leading coefficient of the packing threshold: 1 - 1/chi_cr(H) when hcf(H) = 1,
    /// otherwise 1 - 1/chi(H). The additive constant is not computed.
    auto threshold_coefficient(const Graph & h) -> Rational;

    /// Everything above in one pass, sharing the colouring enumeration.
    struct PatternInvariants
    {
        ColouringProfile profile;
        Rational chi_cr;
        HcfReport hcf;
        Rational threshold_coefficient;
    };

    auto pattern_invariants(const Graph & h) -> PatternInvariants;
}

#endif
