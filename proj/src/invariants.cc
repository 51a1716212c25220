#include <hpack/invariants.hh>
#include <hpack/error.hh>

#include <algorithm>
#include <numeric>
#include <string>

using std::set;
using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    namespace
    {
        void clique_expand(const Graph & g, int size, VertexSet p, VertexSet x, int & best)
        {
            if (p.empty()) {
                if (x.empty())
                    best = std::max(best, size);
                return;
            }
            if (size + p.count() <= best)
                return;

            int pivot = -1, pivot_hits = -1;
            (p | x).for_each([&] (int u) {
                int hits = g.neighbours(u).intersection_count(p);
                if (hits > pivot_hits) {
                    pivot_hits = hits;
                    pivot = u;
                }
            });

            VertexSet branch = p - g.neighbours(pivot);
            branch.for_each([&] (int v) {
                clique_expand(g, size + 1, p & g.neighbours(v), x & g.neighbours(v), best);
                p.erase(v);
                x.insert(v);
            });
        }

        /// DSATUR state shared by the greedy bound and the exact k-colourability test.
        class Dsatur
        {
            public:
                explicit Dsatur(const Graph & g) :
                    _g(g),
                    _colour(std::size_t(g.size()), -1),
                    _neighbour_colours(std::size_t(g.size()), vector<int>(std::size_t(g.size()), 0)),
                    _saturation(std::size_t(g.size()), 0)
                {
                }

                auto greedy() -> int
                {
                    int used = 0;
                    for (int step = 0 ; step < _g.size() ; ++step) {
                        int v = pick();
                        int c = 0;
                        while (_neighbour_colours[std::size_t(v)][std::size_t(c)] > 0)
                            ++c;
                        assign(v, c);
                        used = std::max(used, c + 1);
                    }
                    return used;
                }

                auto colourable(int k) -> bool
                {
                    return extend(0, 0, k);
                }

            private:
                const Graph & _g;
                vector<int> _colour;
                vector<vector<int>> _neighbour_colours;
                vector<int> _saturation;

                auto pick() const -> int
                {
                    int best = -1, best_sat = -1, best_deg = -1;
                    for (int v = 0 ; v < _g.size() ; ++v) {
                        if (_colour[std::size_t(v)] != -1)
                            continue;
                        int sat = _saturation[std::size_t(v)];
                        int deg = 0;
                        _g.neighbours(v).for_each([&] (int w) { if (_colour[std::size_t(w)] == -1) ++deg; });
                        if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                            best = v;
                            best_sat = sat;
                            best_deg = deg;
                        }
                    }
                    return best;
                }

                void assign(int v, int c)
                {
                    _colour[std::size_t(v)] = c;
                    _g.neighbours(v).for_each([&] (int w) {
                        if (_neighbour_colours[std::size_t(w)][std::size_t(c)]++ == 0)
                            ++_saturation[std::size_t(w)];
                    });
                }

                void unassign(int v)
                {
                    int c = _colour[std::size_t(v)];
                    _colour[std::size_t(v)] = -1;
                    _g.neighbours(v).for_each([&] (int w) {
                        if (--_neighbour_colours[std::size_t(w)][std::size_t(c)] == 0)
                            --_saturation[std::size_t(w)];
                    });
                }

                auto extend(int coloured, int used, int k) -> bool
                {
                    if (coloured == _g.size())
                        return true;
                    int v = pick();
                    if (_saturation[std::size_t(v)] >= k)
                        return false;
                    for (int c = 0 ; c < std::min(k, used + 1) ; ++c) {
                        if (_neighbour_colours[std::size_t(v)][std::size_t(c)] > 0)
                            continue;
                        assign(v, c);
                        if (extend(coloured + 1, std::max(used, c + 1), k))
                            return true;
                        unassign(v);
                    }
                    return false;
                }
        };

        constexpr long long enumeration_node_cap = 50'000'000;

        /// Class-size multisets (ascending, zeros dropped) of every proper colouring of one
        /// component using at most `colours` colours, up to renaming the colours.
        auto component_size_multisets(const Graph & h, const VertexSet & component, int colours) -> set<vector<int>>
        {
            // breadth-first order keeps each vertex's earlier neighbours close by
            vector<int> order;
            {
                VertexSet seen(h.size());
                int start = component.first();
                order.push_back(start);
                seen.insert(start);
                for (std::size_t i = 0 ; i < order.size() ; ++i)
                    (h.neighbours(order[i]) - seen).for_each([&] (int w) {
                        seen.insert(w);
                        order.push_back(w);
                    });
            }

            vector<int> colour(std::size_t(h.size()), -1);
            vector<int> sizes(std::size_t(colours), 0);
            set<vector<int>> result;
            long long nodes = 0;

            auto rec = [&] (auto & self, std::size_t i, int used) -> void {
                if (++nodes > enumeration_node_cap)
                    throw Error{ ErrorKind::PatternTooLarge, "colouring enumeration exceeded its node cap" };
                if (i == order.size()) {
                    vector<int> tuple;
                    for (int c = 0 ; c < used ; ++c)
                        tuple.push_back(sizes[std::size_t(c)]);
                    std::sort(tuple.begin(), tuple.end());
                    result.insert(std::move(tuple));
                    return;
                }
                int v = order[i];
                for (int c = 0 ; c < std::min(colours, used + 1) ; ++c) {
                    bool clash = false;
                    h.neighbours(v).for_each([&] (int w) { if (colour[std::size_t(w)] == c) clash = true; });
                    if (clash)
                        continue;
                    colour[std::size_t(v)] = c;
                    ++sizes[std::size_t(c)];
                    self(self, i + 1, std::max(used, c + 1));
                    --sizes[std::size_t(c)];
                    colour[std::size_t(v)] = -1;
                }
            };
            rec(rec, 0, 0);
            return result;
        }

        /// Adds the parts of `parts` to distinct positions of the sorted vector `base`.
        void place_parts(const vector<int> & base, const vector<int> & parts, std::size_t idx,
                vector<int> & current, vector<bool> & taken, set<vector<int>> & out)
        {
            if (idx == parts.size()) {
                vector<int> sorted = current;
                std::sort(sorted.begin(), sorted.end());
                out.insert(std::move(sorted));
                return;
            }
            for (std::size_t p = 0 ; p < base.size() ; ++p) {
                if (taken[p])
                    continue;
                if (p > 0 && base[p] == base[p - 1] && ! taken[p - 1])
                    continue;
                taken[p] = true;
                current[p] += parts[idx];
                place_parts(base, parts, idx + 1, current, taken, out);
                current[p] -= parts[idx];
                taken[p] = false;
            }
        }

        auto gcd_of_nonzero(const set<int> & values) -> std::optional<int>
        {
            int g = 0;
            for (int v : values)
                if (v != 0)
                    g = std::gcd(g, v);
            if (g == 0)
                return std::nullopt;
            return g;
        }
    }

    auto clique_number(const Graph & h) -> int
    {
        if (h.size() == 0)
            return 0;
        int best = 0;
        clique_expand(h, 0, h.vertices(), h.empty_set(), best);
        return best;
    }

    auto chromatic_number(const Graph & h) -> int
    {
        if (h.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "chromatic number of the empty graph" };

        int lower = clique_number(h);
        int upper = Dsatur{ h }.greedy();
        for (int k = lower ; k < upper ; ++k)
            if (Dsatur{ h }.colourable(k))
                return k;
        return upper;
    }

    auto colouring_profile(const Graph & h) -> ColouringProfile
    {
        if (h.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "colouring profile of the empty graph" };
        if (h.size() > max_pattern_size)
            throw Error{ ErrorKind::PatternTooLarge, "pattern has " + to_string(h.size()) + " vertices, cap is " + to_string(max_pattern_size) };

        ColouringProfile profile;
        profile.chi = chromatic_number(h);
        const int chi = profile.chi;

        set<vector<int>> states{ vector<int>(std::size_t(chi), 0) };
        for (auto & component : connected_components(h)) {
            auto parts = component_size_multisets(h, component, chi);
            set<vector<int>> next;
            for (auto & base : states)
                for (auto & multiset : parts) {
                    // larger parts first gives the duplicate-skipping rule more to work with
                    vector<int> ordered(multiset.rbegin(), multiset.rend());
                    vector<int> current = base;
                    vector<bool> taken(base.size(), false);
                    place_parts(base, ordered, 0, current, taken, next);
                }
            states = std::move(next);
        }

        profile.sigma = h.size();
        for (auto & s : states) {
            if (s.front() == 0)
                continue;
            profile.sigma = std::min(profile.sigma, s.front());
            profile.size_multisets.insert(s);
        }
        if (profile.size_multisets.empty())
            throw Error{ ErrorKind::InternalError, "no optimal colouring found by enumeration" };
        return profile;
    }

    auto critical_chromatic_number(const ColouringProfile & profile, int order) -> Rational
    {
        if (profile.chi < 2)
            throw Error{ ErrorKind::Degenerate, "critical chromatic number needs chi >= 2" };
        return Rational{ BigInt{ (profile.chi - 1) * order }, BigInt{ order - profile.sigma } };
    }

    auto critical_chromatic_number(const Graph & h) -> Rational
    {
        return critical_chromatic_number(colouring_profile(h), h.size());
    }

    auto hcf_report(const Graph & h, const ColouringProfile & profile) -> HcfReport
    {
        HcfReport report;
        for (auto & sizes : profile.size_multisets)
            for (std::size_t i = 0 ; i + 1 < sizes.size() ; ++i)
                report.d_set.insert(sizes[i + 1] - sizes[i]);

        // also infinity when d_set is empty (chi = 1): there is no nonzero difference
        report.hcf_chi = gcd_of_nonzero(report.d_set);

        int g = 0;
        for (auto & component : connected_components(h))
            g = std::gcd(g, component.count());
        report.hcf_c = g;

        if (profile.chi != 2)
            report.hcf_is_one = report.hcf_chi && *report.hcf_chi == 1;
        else
            report.hcf_is_one = report.hcf_c == 1 && report.hcf_chi && *report.hcf_chi <= 2;
        return report;
    }

    auto hcf_report(const Graph & h) -> HcfReport
    {
        return hcf_report(h, colouring_profile(h));
    }

    auto pattern_invariants(const Graph & h) -> PatternInvariants
    {
        PatternInvariants result;
        result.profile = colouring_profile(h);
        result.chi_cr = critical_chromatic_number(result.profile, h.size());
        result.hcf = hcf_report(h, result.profile);
        if (result.hcf.hcf_is_one)
            result.threshold_coefficient = 1 - 1 / result.chi_cr;
        else
            result.threshold_coefficient = 1 - Rational{ 1, result.profile.chi };
        return result;
    }

    auto threshold_coefficient(const Graph & h) -> Rational
    {
        return pattern_invariants(h).threshold_coefficient;
    }
}
