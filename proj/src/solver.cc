#include <hpack/solver.hh>
#include <hpack/error.hh>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

using std::optional;
using std::string;
using std::unordered_map;
using std::unordered_set;
using std::vector;

namespace hpack
{
    using std::to_string;

    auto Packing::covered() const -> VertexSet
    {
        VertexSet result(host_n);
        for (auto & c : copies)
            result |= c.vertices;
        return result;
    }

    auto is_complete_minus_edge(const Graph & h) -> bool
    {
        long long n = h.size();
        return n >= 3 && h.edge_count() == n * (n - 1) / 2 - 1;
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        /// For each pattern vertex, the latest earlier vertex with the same open or closed
        /// neighbourhood, or -1. Twins are interchangeable, so requiring their images to
        /// increase loses no vertex set and keeps every lexicographically least embedding.
        auto twin_predecessors(const Graph & h) -> vector<int>
        {
            vector<int> pred(std::size_t(h.size()), -1);
            for (int i = 0 ; i < h.size() ; ++i)
                for (int j = i - 1 ; j >= 0 ; --j) {
                    VertexSet ni = h.neighbours(i), nj = h.neighbours(j);
                    ni.erase(j);
                    nj.erase(i);
                    if (ni == nj) {
                        pred[std::size_t(i)] = j;
                        break;
                    }
                }
            return pred;
        }

        /// Embeds pattern vertices in index order, host candidates ascending, so embeddings
        /// come out in lexicographic order.
        class Embedder
        {
            public:
                Embedder(const Graph & h, const Graph & g, const VertexSet & within) :
                    _h(h), _g(g), _within(within),
                    _pred(twin_predecessors(h)),
                    _map(std::size_t(h.size()), -1),
                    _used(g.size())
                {
                }

                template <typename F_>
                void run(F_ && on_embedding)
                {
                    _stop = false;
                    extend(0, on_embedding);
                }

                void stop() { _stop = true; }

            private:
                const Graph & _h;
                const Graph & _g;
                VertexSet _within;
                vector<int> _pred;
                vector<int> _map;
                VertexSet _used;
                bool _stop = false;

                template <typename F_>
                void extend(int i, F_ & on_embedding)
                {
                    if (i == _h.size()) {
                        on_embedding(_map, _used);
                        return;
                    }

                    VertexSet candidates = _within - _used;
                    for (int j = 0 ; j < i ; ++j)
                        if (_h.adjacent(i, j))
                            candidates &= _g.neighbours(_map[std::size_t(j)]);

                    int floor_vertex = _pred[std::size_t(i)] == -1 ? -1 : _map[std::size_t(_pred[std::size_t(i)])];
                    int needed_degree = _h.degree(i);

                    for (int v = candidates.next(floor_vertex) ; v != -1 && ! _stop ; v = candidates.next(v)) {
                        if (_g.degree(v) < needed_degree)
                            continue;
                        _map[std::size_t(i)] = v;
                        _used.insert(v);
                        extend(i + 1, on_embedding);
                        _used.erase(v);
                        _map[std::size_t(i)] = -1;
                    }
                }
        };

        auto lex_less(const Copy & a, const Copy & b) -> bool
        {
            return a.embedding < b.embedding;
        }

        /// r-subsets of the host with at most one missing pair, ascending.
        void enumerate_near_cliques(const Graph & g, int r, vector<VertexSet> & out)
        {
            vector<int> chosen;
            VertexSet chosen_set(g.size());
            auto rec = [&] (auto & self, int last, int defects) -> void {
                if (int(chosen.size()) == r) {
                    out.push_back(chosen_set);
                    return;
                }
                int still_needed = r - int(chosen.size());
                for (int v = last + 1 ; v <= g.size() - still_needed ; ++v) {
                    int miss = int(chosen.size()) - g.neighbours(v).intersection_count(chosen_set);
                    if (defects + miss > 1)
                        continue;
                    chosen.push_back(v);
                    chosen_set.insert(v);
                    self(self, v, defects + miss);
                    chosen_set.erase(v);
                    chosen.pop_back();
                }
            };
            rec(rec, -1, 0);
        }
    }

    auto embed_onto(const Graph & h, const Graph & g, const VertexSet & within) -> optional<Copy>
    {
        if (within.count() != h.size())
            return std::nullopt;
        optional<Copy> result;
        Embedder e{ h, g, within };
        e.run([&] (const vector<int> & map, const VertexSet & used) {
            result = Copy{ used, map };
            e.stop();
        });
        return result;
    }

    auto enumerate_copies(const Graph & h, const Graph & g) -> vector<Copy>
    {
        vector<Copy> result;
        if (h.size() == 0 || h.size() > g.size())
            return result;

        if (is_complete_minus_edge(h)) {
            vector<VertexSet> sets;
            enumerate_near_cliques(g, h.size(), sets);
            result.reserve(sets.size());
            for (auto & s : sets)
                if (auto c = embed_onto(h, g, s))
                    result.push_back(std::move(*c));
            std::sort(result.begin(), result.end(), lex_less);
            return result;
        }

        unordered_set<VertexSet, BitsetHash> seen;
        Embedder e{ h, g, g.vertices() };
        e.run([&] (const vector<int> & map, const VertexSet & used) {
            if (seen.insert(used).second)
                result.push_back(Copy{ used, map });
        });
        return result;
    }

    namespace
    {
        class Budget
        {
            public:
                explicit Budget(const SearchOptions & options) :
                    _start(Clock::now()),
                    _limit(options.budget)
                {
                }

                void tick()
                {
                    if ((++_nodes & 255) == 0 && Clock::now() - _start > _limit)
                        throw Error{ ErrorKind::Timeout, "search budget of " + to_string(_limit.count()) + "s exceeded after "
                            + to_string(_nodes) + " nodes" };
                }

                auto stats() const -> SearchStats
                {
                    return SearchStats{ _nodes, std::chrono::duration<double>(Clock::now() - _start).count() };
                }

            private:
                Clock::time_point _start;
                std::chrono::duration<double> _limit;
                long long _nodes = 0;
        };

        /// Copies indexed by vertex, for the exact-cover and set-packing searches.
        struct CopyIndex
        {
            const vector<Copy> & copies;
            vector<Bitset> containing;

            CopyIndex(const vector<Copy> & copies_, int n) :
                copies(copies_),
                containing(std::size_t(n), Bitset(int(copies_.size())))
            {
                for (std::size_t c = 0 ; c < copies.size() ; ++c)
                    copies[c].vertices.for_each([&] (int v) { containing[std::size_t(v)].insert(int(c)); });
            }

            auto conflicts(int c) const -> Bitset
            {
                Bitset result(int(copies.size()));
                copies[std::size_t(c)].vertices.for_each([&] (int v) { result |= containing[std::size_t(v)]; });
                return result;
            }
        };

        class ExactCover
        {
            public:
                ExactCover(const CopyIndex & index, Budget & budget) : _index(index), _budget(budget) { }

                auto search(const VertexSet & uncovered, const Bitset & alive) -> bool
                {
                    if (uncovered.empty())
                        return true;
                    if (_failed.contains(uncovered))
                        return false;
                    _budget.tick();

                    int branch_vertex = -1, fewest = -1;
                    bool dead = false;
                    uncovered.for_each([&] (int v) {
                        if (dead)
                            return;
                        int options = alive.intersection_count(_index.containing[std::size_t(v)]);
                        if (options == 0)
                            dead = true;
                        else if (fewest == -1 || options < fewest) {
                            fewest = options;
                            branch_vertex = v;
                        }
                    });

                    if (! dead) {
                        Bitset choices = alive & _index.containing[std::size_t(branch_vertex)];
                        for (int c = choices.first() ; c != -1 ; c = choices.next(c)) {
                            if (search(uncovered - _index.copies[std::size_t(c)].vertices, alive - _index.conflicts(c))) {
                                chosen.push_back(c);
                                return true;
                            }
                        }
                    }

                    _failed.insert(uncovered);
                    return false;
                }

                vector<int> chosen;

            private:
                const CopyIndex & _index;
                Budget & _budget;
                unordered_set<VertexSet, BitsetHash> _failed;
        };

        class SetPacking
        {
            public:
                SetPacking(const CopyIndex & index, Budget & budget, int pattern_size) :
                    _index(index), _budget(budget), _pattern_size(pattern_size)
                {
                }

                /// Most disjoint copies inside `available`; alive must be the copies contained in it.
                auto best(const VertexSet & available, const Bitset & alive) -> int
                {
                    if (auto it = _memo.find(available) ; it != _memo.end())
                        return it->second.value;
                    _budget.tick();

                    VertexSet coverable(available.host_size());
                    alive.for_each([&] (int c) { coverable |= _index.copies[std::size_t(c)].vertices; });
                    int bound = coverable.count() / _pattern_size;

                    Entry entry;
                    if (bound > 0) {
                        int branch_vertex = -1, fewest = -1;
                        coverable.for_each([&] (int v) {
                            int options = alive.intersection_count(_index.containing[std::size_t(v)]);
                            if (fewest == -1 || options < fewest) {
                                fewest = options;
                                branch_vertex = v;
                            }
                        });

                        entry.value = -1;
                        Bitset choices = alive & _index.containing[std::size_t(branch_vertex)];
                        for (int c = choices.first() ; c != -1 && entry.value < bound ; c = choices.next(c)) {
                            int value = 1 + best(available - _index.copies[std::size_t(c)].vertices, alive - _index.conflicts(c));
                            if (value > entry.value) {
                                entry.value = value;
                                entry.choice = c;
                            }
                        }
                        if (entry.value < bound) {
                            VertexSet without = available;
                            without.erase(branch_vertex);
                            int value = best(without, alive - _index.containing[std::size_t(branch_vertex)]);
                            if (value > entry.value) {
                                entry.value = value;
                                entry.choice = -1;
                                entry.skipped = branch_vertex;
                            }
                        }
                    }
                    _memo.emplace(available, entry);
                    return entry.value;
                }

                auto reconstruct(VertexSet available) const -> vector<int>
                {
                    vector<int> result;
                    while (true) {
                        auto & entry = _memo.at(available);
                        if (entry.value <= 0)
                            break;
                        if (entry.choice >= 0) {
                            result.push_back(entry.choice);
                            available -= _index.copies[std::size_t(entry.choice)].vertices;
                        }
                        else
                            available.erase(entry.skipped);
                    }
                    return result;
                }

            private:
                struct Entry
                {
                    int value = 0;
                    int choice = -1;
                    int skipped = -1;
                };

                const CopyIndex & _index;
                Budget & _budget;
                int _pattern_size;
                unordered_map<VertexSet, Entry, BitsetHash> _memo;
        };
    }

    auto find_perfect_packing(const Graph & h, const Graph & g, const vector<Copy> & copies, const SearchOptions & options) -> PerfectPackingResult
    {
        Budget budget{ options };
        PerfectPackingResult result;
        if (h.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "pattern has no vertices" };
        if (g.size() % h.size() != 0) {
            result.stats = budget.stats();
            return result;
        }

        CopyIndex index{ copies, g.size() };
        ExactCover search{ index, budget };
        if (search.search(g.vertices(), Bitset::full(int(copies.size())))) {
            Packing p;
            p.host_n = g.size();
            for (auto it = search.chosen.rbegin() ; it != search.chosen.rend() ; ++it)
                p.copies.push_back(copies[std::size_t(*it)]);
            result.packing = std::move(p);
        }
        result.stats = budget.stats();
        return result;
    }

    auto find_perfect_packing(const Graph & h, const Graph & g, const SearchOptions & options) -> PerfectPackingResult
    {
        auto start = Clock::now();
        auto copies = enumerate_copies(h, g);
        SearchOptions remaining = options;
        remaining.budget -= Clock::now() - start;
        auto result = find_perfect_packing(h, g, copies, remaining);
        result.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }

    auto max_packing(const Graph & h, const Graph & g, const SearchOptions & options) -> MaxPackingResult
    {
        if (h.size() == 0)
            throw Error{ ErrorKind::EmptyGraph, "pattern has no vertices" };
        auto start = Clock::now();
        auto copies = enumerate_copies(h, g);
        Budget budget{ options };
        CopyIndex index{ copies, g.size() };
        SetPacking search{ index, budget, h.size() };

        MaxPackingResult result;
        result.size = search.best(g.vertices(), Bitset::full(int(copies.size())));
        result.packing.host_n = g.size();
        for (int c : search.reconstruct(g.vertices()))
            result.packing.copies.push_back(copies[std::size_t(c)]);
        result.stats = budget.stats();
        result.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }

    auto max_packing_size(const Graph & h, const Graph & g, const SearchOptions & options) -> int
    {
        return max_packing(h, g, options).size;
    }

    auto verify_packing(const Graph & h, const Graph & g, const Packing & p, bool require_perfect) -> Verdict
    {
        auto fail = [] (string reason) { return Verdict{ false, std::move(reason) }; };

        if (p.host_n != g.size())
            return fail("packing is over " + to_string(p.host_n) + " vertices but the host has " + to_string(g.size()));

        VertexSet seen(g.size());
        for (std::size_t i = 0 ; i < p.copies.size() ; ++i) {
            auto & copy = p.copies[i];
            auto label = "copy " + to_string(i);
            if (int(copy.embedding.size()) != h.size())
                return fail(label + " embeds " + to_string(copy.embedding.size()) + " vertices, pattern has " + to_string(h.size()));
            if (copy.vertices.host_size() != g.size())
                return fail(label + " has a vertex set of the wrong width");

            VertexSet image(g.size());
            for (int v : copy.embedding) {
                if (v < 0 || v >= g.size())
                    return fail(label + " maps to out-of-range vertex " + to_string(v));
                if (image.contains(v))
                    return fail(label + " embedding is not injective at vertex " + to_string(v));
                image.insert(v);
            }
            if (image != copy.vertices)
                return fail(label + " vertex set does not match its embedding");

            for (auto [a, b] : h.edges())
                if (! g.adjacent(copy.embedding[std::size_t(a)], copy.embedding[std::size_t(b)]))
                    return fail(label + " is missing host edge " + to_string(copy.embedding[std::size_t(a)]) + "-"
                            + to_string(copy.embedding[std::size_t(b)]) + " for pattern edge " + to_string(a) + "-" + to_string(b));

            if (seen.intersects(copy.vertices))
                return fail(label + " overlaps an earlier copy");
            seen |= copy.vertices;
        }

        if (require_perfect && seen.count() != g.size())
            return fail("copies cover " + to_string(seen.count()) + " of " + to_string(g.size()) + " vertices");
        return Verdict{};
    }
}
