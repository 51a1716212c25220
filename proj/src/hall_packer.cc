#include <hpack/hall_packer.hh>
#include <hpack/error.hh>

#include <algorithm>

using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    namespace
    {
        /// Matching between big vertices and r slots at each small vertex.
        class SlotMatching
        {
            public:
                SlotMatching(const Graph & g, const vector<int> & big, const vector<int> & small, int r) :
                    _g(g), _big(big), _small(small), _r(r),
                    _owner(small.size()),
                    _match(big.size(), -1)
                {
                    for (std::size_t b = 0 ; b < big.size() ; ++b) {
                        vector<int> options;
                        for (std::size_t s = 0 ; s < small.size() ; ++s)
                            if (g.adjacent(big[b], small[s]))
                                options.push_back(int(s));
                        _options.push_back(std::move(options));
                    }
                }

                /// Tries to match every big vertex; returns the index of the first that cannot be.
                auto run() -> int
                {
                    for (std::size_t b = 0 ; b < _big.size() ; ++b) {
                        _seen_small.assign(_small.size(), false);
                        _seen_big.assign(_big.size(), false);
                        if (! augment(int(b)))
                            return int(b);
                    }
                    return -1;
                }

                auto owners(int s) const -> const vector<int> & { return _owner[std::size_t(s)]; }

                /// Whether the last failed search reached big vertex b.
                auto reached(std::size_t b) const -> bool { return _seen_big[b]; }

            private:
                const Graph & _g;
                const vector<int> & _big;
                const vector<int> & _small;
                int _r;
                vector<vector<int>> _options;
                vector<vector<int>> _owner;
                vector<int> _match;
                vector<bool> _seen_small, _seen_big;

                auto augment(int b) -> bool
                {
                    _seen_big[std::size_t(b)] = true;
                    for (int s : _options[std::size_t(b)]) {
                        if (_seen_small[std::size_t(s)])
                            continue;
                        _seen_small[std::size_t(s)] = true;
                        auto & owner = _owner[std::size_t(s)];
                        if (int(owner.size()) < _r) {
                            owner.push_back(b);
                            _match[std::size_t(b)] = s;
                            return true;
                        }
                        for (auto & other : owner)
                            if (augment(other)) {
                                other = b;
                                _match[std::size_t(b)] = s;
                                return true;
                            }
                    }
                    return false;
                }
        };
    }

    auto star_pack(const Graph & g, const VertexSet & big, const VertexSet & small, int r) -> StarPackResult
    {
        if (r < 1)
            throw Error{ ErrorKind::BadParameter, "star size must be positive" };
        if (big.intersects(small))
            throw Error{ ErrorKind::OverlappingSets, "star sides overlap" };
        if (big.count() != r * small.count())
            throw Error{ ErrorKind::BadParameter, "big side has " + to_string(big.count()) + " vertices, expected "
                + to_string(r) + " x " + to_string(small.count()) };

        auto big_list = big.to_vector(), small_list = small.to_vector();
        SlotMatching m{ g, big_list, small_list, r };
        StarPackResult result;

        if (int failed = m.run() ; failed != -1) {
            // the alternating search from the failed vertex saturates everything it reaches
            HallWitness w{ VertexSet(g.size()), VertexSet(g.size()) };
            for (std::size_t b = 0 ; b < big_list.size() ; ++b)
                if (m.reached(b))
                    w.deficient.insert(big_list[b]);
            for (int b : w.deficient.to_vector())
                w.neighbourhood |= g.neighbours(b) & small;
            result.witness = std::move(w);
            return result;
        }

        StarPacking sp;
        for (std::size_t s = 0 ; s < small_list.size() ; ++s) {
            Star star{ small_list[s], {} };
            for (int b : m.owners(int(s)))
                star.leaves.push_back(big_list[std::size_t(b)]);
            std::sort(star.leaves.begin(), star.leaves.end());
            sp.stars.push_back(std::move(star));
        }
        result.packing = std::move(sp);
        return result;
    }

    auto contract_stars(const Graph & g, const StarPacking & sp, const vector<VertexSet> & rest) -> Contraction
    {
        Contraction c;
        vector<int> kept;
        vector<std::size_t> class_of_kept;
        for (std::size_t i = 0 ; i < rest.size() ; ++i)
            rest[i].for_each([&] (int v) { kept.push_back(v); class_of_kept.push_back(i); });

        int n = int(kept.size() + sp.stars.size());
        c.first_star = int(kept.size());
        GraphBuilder b(n);
        for (std::size_t i = 0 ; i < kept.size() ; ++i)
            for (std::size_t j = i + 1 ; j < kept.size() ; ++j)
                if (g.adjacent(kept[i], kept[j]))
                    b.add_edge(int(i), int(j));

        for (std::size_t s = 0 ; s < sp.stars.size() ; ++s) {
            VertexSet common = g.neighbours(sp.stars[s].centre);
            for (int leaf : sp.stars[s].leaves)
                common &= g.neighbours(leaf);
            for (std::size_t i = 0 ; i < kept.size() ; ++i)
                if (common.contains(kept[i]))
                    b.add_edge(int(i), c.first_star + int(s));
        }
        c.graph = b.build();

        c.to_parent = kept;
        c.to_parent.resize(std::size_t(n), -1);
        c.classes.assign(rest.size() + 1, VertexSet(n));
        for (std::size_t i = 0 ; i < kept.size() ; ++i)
            c.classes[class_of_kept[i]].insert(int(i));
        for (std::size_t s = 0 ; s < sp.stars.size() ; ++s)
            c.classes.back().insert(c.first_star + int(s));
        return c;
    }

    auto default_tau(int q, int r) -> Rational
    {
        if (q < 1 || r < 1)
            throw Error{ ErrorKind::BadParameter, "default tau needs q, r >= 1" };
        Rational tau = make_rational(1, 2);
        for (int i = 1 ; i < q ; ++i)
            tau /= r + 1;
        return tau;
    }

    namespace
    {
        /// A copy as q groups of r vertices followed by a group holding the singleton.
        using Groups = vector<vector<int>>;

        auto pack_level(const Graph & g, const vector<VertexSet> & classes, int r, HqrResult & result) -> std::optional<vector<Groups>>
        {
            int q = int(classes.size()) - 1;
            auto & big = classes[std::size_t(q - 1)];
            auto & small = classes[std::size_t(q)];

            // A star packing can leave a vertex of the next class adjacent to too few of the
            // contracted stars. When the next level reports such a set, give each of its
            // vertices a centre of its own whose leaves are restricted to that vertex's
            // neighbours, and pack again.
            GraphBuilder restricted = GraphBuilder::from(g);
            VertexSet reserved_centres(g.size()), served(g.size());

            while (true) {
                auto stars = star_pack(q == 1 ? g : restricted.build(), big, small, r);
                if (! stars.packing) {
                    result.failed_level = q;
                    result.witness = std::move(stars.witness);
                    return std::nullopt;
                }

                vector<Groups> copies;
                if (q == 1) {
                    for (auto & s : stars.packing->stars)
                        copies.push_back(Groups{ s.leaves, { s.centre } });
                    return copies;
                }

                vector<VertexSet> rest(classes.begin(), classes.begin() + (q - 1));
                auto contraction = contract_stars(g, *stars.packing, rest);
                HqrResult inner_result;
                auto inner = pack_level(contraction.graph, contraction.classes, r, inner_result);

                if (inner) {
                    for (auto & groups : *inner) {
                        Groups expanded;
                        for (int i = 0 ; i < q - 1 ; ++i) {
                            vector<int> lifted;
                            for (int v : groups[std::size_t(i)])
                                lifted.push_back(contraction.to_parent[std::size_t(v)]);
                            expanded.push_back(std::move(lifted));
                        }
                        auto & star = stars.packing->stars[std::size_t(groups.back().front() - contraction.first_star)];
                        expanded.push_back(star.leaves);
                        expanded.push_back({ star.centre });
                        copies.push_back(std::move(expanded));
                    }
                    return copies;
                }

                bool progressed = false;
                if (inner_result.failed_level == q - 1)
                    inner_result.witness->deficient.for_each([&] (int w) {
                        int y = contraction.to_parent[std::size_t(w)];
                        if (y == -1 || served.contains(y))
                            return;
                        VertexSet centres = (small & g.neighbours(y)) - reserved_centres;
                        for (int c = centres.first() ; c != -1 ; c = centres.next(c)) {
                            VertexSet allowed = big & g.neighbours(y) & g.neighbours(c);
                            if (allowed.count() < r)
                                continue;
                            (big - allowed).for_each([&] (int x) { restricted.remove_edge(c, x); });
                            reserved_centres.insert(c);
                            served.insert(y);
                            progressed = true;
                            return;
                        }
                    });

                if (! progressed) {
                    auto lift = [&] (const VertexSet & s) {
                        VertexSet lifted(g.size());
                        s.for_each([&] (int w) {
                            if (int v = contraction.to_parent[std::size_t(w)] ; v != -1)
                                lifted.insert(v);
                            else {
                                auto & star = stars.packing->stars[std::size_t(w - contraction.first_star)];
                                lifted.insert(star.centre);
                                for (int leaf : star.leaves)
                                    lifted.insert(leaf);
                            }
                        });
                        return lifted;
                    };
                    result.failed_level = inner_result.failed_level;
                    result.witness = HallWitness{ lift(inner_result.witness->deficient), lift(inner_result.witness->neighbourhood) };
                    return std::nullopt;
                }
            }
        }
    }

    auto pack_h_qr(const Graph & g, const Partition & classes, int q, int r, const Rational & tau) -> HqrResult
    {
        if (q < 1 || r < 1)
            throw Error{ ErrorKind::BadParameter, "H_{q,r} packing needs q, r >= 1" };
        if (classes.size() != q + 1)
            throw Error{ ErrorKind::BadParameter, "expected " + to_string(q + 1) + " classes, got " + to_string(classes.size()) };
        classes.validate();
        int k = classes.classes.back().count();
        for (int i = 0 ; i < q ; ++i)
            if (classes.classes[std::size_t(i)].count() != k * r)
                throw Error{ ErrorKind::BadSizes, "class " + to_string(i) + " has " + to_string(classes.classes[std::size_t(i)].count())
                    + " vertices, expected " + to_string(k * r) };

        HqrResult result;
        for (int i = 0 ; i <= q ; ++i)
            for (int j = 0 ; j <= q ; ++j) {
                if (i == j)
                    continue;
                auto & other = classes.classes[std::size_t(j)];
                classes.classes[std::size_t(i)].for_each([&] (int v) {
                    long long missing = other.count() - g.neighbours(v).intersection_count(other);
                    if (Rational{ missing } > tau * other.count())
                        result.warnings.push_back("vertex " + to_string(v) + " of class " + to_string(i) + " misses "
                            + to_string(missing) + " of class " + to_string(j));
                });
            }

        auto copies = pack_level(g, classes.classes, r, result);
        if (! copies)
            return result;

        Packing p;
        p.host_n = g.size();
        for (auto & groups : *copies) {
            Copy copy{ VertexSet(g.size()), {} };
            for (auto & group : groups)
                for (int v : group) {
                    copy.embedding.push_back(v);
                    copy.vertices.insert(v);
                }
            p.copies.push_back(std::move(copy));
        }
        result.packing = std::move(p);
        return result;
    }
}
