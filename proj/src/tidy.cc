#include <hpack/tidy.hh>
#include <hpack/constructions.hh>
#include <hpack/error.hh>

#include <algorithm>
#include <numeric>

using std::optional;
using std::pair;
using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    namespace
    {
        auto at_least_power(long long count, const Rational & tau, int a, int b, long long total) -> bool
        {
            return compare_with_power(count, tau, a, b, total) >= 0;
        }

        auto at_most_power(long long count, const Rational & tau, int a, int b, long long total) -> bool
        {
            return compare_with_power(count, tau, a, b, total) <= 0;
        }

        auto describe(const vector<int> & vs) -> string
        {
            string s = "{";
            for (std::size_t i = 0 ; i < vs.size() ; ++i)
                s += (i ? "," : "") + to_string(vs[i]);
            return s + "}";
        }

        auto sparse_class_size(int r, long long n) -> long long
        {
            long long d = (long long)(r) * (r - 2);
            return ((r - 1) * n + d - 1) / d;
        }
    }

    auto VertexClassification::exceptional_target(int v) const -> int
    {
        for (std::size_t j = 0 ; j < exceptional.size() ; ++j)
            if (exceptional[j].contains(v))
                return int(j);
        return -1;
    }

    auto VertexClassification::any_exceptional() const -> VertexSet
    {
        VertexSet result(int(class_of.size()));
        for (auto & e : exceptional)
            result |= e;
        return result;
    }

    auto classify(const Graph & g, const Partition & p, const Rational & tau) -> VertexClassification
    {
        int m = p.size();
        VertexClassification c;
        c.tau = tau;
        c.class_of = p.class_of();
        c.bad = c.useless = g.empty_set();
        c.exceptional.assign(std::size_t(m), g.empty_set());
        c.bad_count.assign(std::size_t(m), 0);
        c.useless_count.assign(std::size_t(m), 0);
        c.exceptional_count.assign(std::size_t(m), 0);

        for (int i = 0 ; i < m ; ++i) {
            auto & own = p.classes[std::size_t(i)];
            own.for_each([&] (int x) {
                auto & nx = g.neighbours(x);
                if (at_least_power(nx.intersection_count(own), tau, 1, 3, own.count())) {
                    c.bad.insert(x);
                    ++c.bad_count[std::size_t(i)];
                }
                bool useless = false, exceptional = false;
                for (int j = 0 ; j < m ; ++j) {
                    auto & other = p.classes[std::size_t(j)];
                    if (j == i || other.empty())
                        continue;
                    int hits = nx.intersection_count(other);
                    if (at_least_power(other.count() - hits, tau, 1, 4, other.count()))
                        useless = true;
                    if (at_most_power(hits, tau, 1, 3, other.count())) {
                        c.exceptional[std::size_t(j)].insert(x);
                        exceptional = true;
                    }
                }
                if (useless) {
                    c.useless.insert(x);
                    ++c.useless_count[std::size_t(i)];
                }
                if (exceptional)
                    ++c.exceptional_count[std::size_t(i)];
            });
        }

        for (int i = 0 ; i < m ; ++i) {
            long long size = p.classes[std::size_t(i)].count();
            if (i + 1 < m && compare_with_power(c.bad_count[std::size_t(i)], tau, 2, 3, size) > 0)
                c.warnings.push_back("class " + to_string(i) + " has " + to_string(c.bad_count[std::size_t(i)]) + " bad vertices, above tau^{2/3}|A_i|");
            if (compare_with_power(c.useless_count[std::size_t(i)], tau, 2, 3, size) > 0)
                c.warnings.push_back("class " + to_string(i) + " has " + to_string(c.useless_count[std::size_t(i)]) + " useless vertices, above tau^{2/3}|A_i|");
        }
        return c;
    }

    auto swap_bad_exceptional(const Graph & g, const Partition & p, const VertexClassification & c) -> SwapResult
    {
        SwapResult result{ p, {}, {} };
        auto & classes = result.partition.classes;
        int m = p.size();
        VertexSet used = g.empty_set();

        for (int i = 0 ; i < m ; ++i) {
            vector<int> bad = (c.bad & p.classes[std::size_t(i)]).to_vector();
            vector<pair<int, int>> exceptional;
            for (int j = 0 ; j < m ; ++j)
                if (j != i)
                    (c.exceptional[std::size_t(i)] & p.classes[std::size_t(j)]).for_each([&] (int y) { exceptional.emplace_back(y, j); });

            std::size_t b = 0, e = 0;
            while (b < bad.size() && e < exceptional.size()) {
                int x = bad[b], y = exceptional[e].first, j = exceptional[e].second;
                if (used.contains(x)) { ++b; continue; }
                if (used.contains(y)) { ++e; continue; }
                classes[std::size_t(i)].erase(x);
                classes[std::size_t(i)].insert(y);
                classes[std::size_t(j)].erase(y);
                classes[std::size_t(j)].insert(x);
                used.insert(x);
                used.insert(y);
                result.swaps.emplace_back(x, y);
                ++b;
                ++e;
            }
        }

        if (result.swaps.empty())
            return result;

        auto class_of = result.partition.class_of();
        for (int x = 0 ; x < g.size() ; ++x) {
            int i = class_of[std::size_t(x)];
            if (i == -1 || used.contains(x))
                continue;
            auto & nx = g.neighbours(x);
            auto & own = classes[std::size_t(i)];
            if (! c.bad.contains(x) && ! at_most_power(nx.intersection_count(own), c.tau, 1, 3, 2LL * own.count()))
                result.warnings.push_back("non-bad vertex " + to_string(x) + " has more than 2 tau^{1/3}|A_i| neighbours in its class");
            for (int j = 0 ; j < m ; ++j) {
                auto & other = classes[std::size_t(j)];
                if (j == i || other.empty())
                    continue;
                int hits = nx.intersection_count(other);
                if (! c.useless.contains(x) && ! at_most_power(other.count() - hits, c.tau, 1, 4, 2LL * other.count()))
                    result.warnings.push_back("non-useless vertex " + to_string(x) + " misses more than 2 tau^{1/4}|A_j| of class " + to_string(j));
                if (! c.exceptional[std::size_t(j)].contains(x) && ! at_least_power(2LL * hits, c.tau, 1, 3, other.count()))
                    result.warnings.push_back("vertex " + to_string(x) + " has fewer than tau^{1/3}|A_j|/2 neighbours in class " + to_string(j));
            }
        }
        return result;
    }

    auto adjust_for_divisibility(const Graph & g, const Partition & p, int r) -> DivisibilityAdjustment
    {
        int n = g.size(), q = p.size() - 1;
        if (r < 4)
            throw Error{ ErrorKind::BadParameter, "r must be at least 4" };
        if (q < 1 || q > r - 2)
            throw Error{ ErrorKind::BadParameter, "need between 1 and r-2 sparse classes, got " + to_string(q) };
        if (n % r != 0)
            throw Error{ ErrorKind::BadParameter, "n = " + to_string(n) + " is not divisible by r = " + to_string(r) };
        long long expected = sparse_class_size(r, n);
        for (int i = 0 ; i < q ; ++i)
            if (p.classes[std::size_t(i)].count() != expected)
                throw Error{ ErrorKind::BadParameter, "sparse class " + to_string(i) + " has " + to_string(p.classes[std::size_t(i)].count())
                    + " vertices, expected " + to_string(expected) };

        DivisibilityAdjustment result{ p, (n % (r * (r - 2))) / r, {} };
        if (result.k == 0 || result.k >= q)
            return result;

        auto & classes = result.partition.classes;
        for (int i = result.k ; i < q ; ++i) {
            auto & a = classes[std::size_t(i)];
            int best = -1, best_degree = -1;
            a.for_each([&] (int v) {
                int d = g.neighbours(v).intersection_count(a);
                if (d > best_degree) {
                    best_degree = d;
                    best = v;
                }
            });
            a.erase(best);
            classes[std::size_t(q)].insert(best);
            result.moved.push_back(best);
        }
        return result;
    }

    auto clique_regime_slack(int r, int q, int n, int last_class_size) -> Rational
    {
        if (q > r - 3 || last_class_size <= 0)
            throw Error{ ErrorKind::BadParameter, "clique regime slack needs q <= r-3 and a nonempty last class" };
        return make_rational(1, r - q - 2) - make_rational((long long)(r - 1) * n, (long long)(r) * (r - 2) * last_class_size);
    }

    auto extract_disjoint_cliques(const Graph & g, const VertexSet & a, int s, int count, vector<string> * warnings) -> vector<VertexSet>
    {
        if (s < 1 || count < 0)
            throw Error{ ErrorKind::BadParameter, "clique size must be positive and count nonnegative" };

        if (warnings && s >= 2 && ! a.empty()) {
            int delta = -1;
            a.for_each([&] (int v) {
                int d = g.neighbours(v).intersection_count(a);
                delta = delta == -1 ? d : std::min(delta, d);
            });
            Rational turan = s == 2 ? Rational{ 0 } : (1 - make_rational(1, s - 1)) * a.count();
            if (Rational{ delta } <= turan)
                warnings->push_back("minimum degree " + to_string(delta) + " inside the set is not above the Turan bound " + to_string(turan));
        }

        vector<VertexSet> result;
        VertexSet available = a;
        while (int(result.size()) < count) {
            vector<int> order = available.to_vector();
            std::stable_sort(order.begin(), order.end(), [&] (int u, int v) {
                return g.neighbours(u).intersection_count(available) > g.neighbours(v).intersection_count(available);
            });

            bool found = false;
            for (int pivot : order) {
                VertexSet clique = g.empty_set(), candidates = available & g.neighbours(pivot);
                clique.insert(pivot);
                while (clique.count() < s && ! candidates.empty()) {
                    int best = -1, best_degree = -1;
                    candidates.for_each([&] (int v) {
                        int d = g.neighbours(v).intersection_count(candidates);
                        if (d > best_degree) {
                            best_degree = d;
                            best = v;
                        }
                    });
                    clique.insert(best);
                    candidates &= g.neighbours(best);
                }
                if (clique.count() == s) {
                    available -= clique;
                    result.push_back(std::move(clique));
                    found = true;
                    break;
                }
            }
            if (! found)
                throw Error{ ErrorKind::Stuck, "found " + to_string(result.size()) + " of " + to_string(count) + " disjoint "
                    + to_string(s) + "-cliques", "cliques" };
        }
        return result;
    }

    namespace
    {
        constexpr long long copy_search_node_cap = 200'000;
        constexpr int batch_search_call_cap = 4'000;

        /// Vertices a copy must contain.
        struct Anchor
        {
            vector<int> forced;
        };

        /// Greedy search for disjoint K_r^- copies with prescribed numbers of vertices in
        /// each class. Vertices are tried in ascending order, first from the preferred pool
        /// (alive, not reserved, not avoided), then with avoided vertices allowed.
        class BatchPlanner
        {
            public:
                BatchPlanner(const Graph & g, int r, const vector<VertexSet> & classes, const VertexSet & alive,
                        const VertexSet & reserved, const VertexSet & avoid) :
                    _g(g), _r(r), _q(int(classes.size()) - 1), _classes(classes),
                    _alive(alive), _reserved(reserved), _avoid(avoid)
                {
                    vector<int> profile(std::size_t(_q), 0);
                    enumerate_profiles(profile, 0, false);
                }

                /// `count` copies, the first anchors.size() of which contain their anchor, meeting
                /// sparse class l in targets[l] vertices in total.
                auto plan(const vector<Anchor> & anchors, int count, const vector<int> & targets, const VertexSet & protect) -> optional<vector<VertexSet>>
                {
                    _calls = 0;
                    for (int t : targets)
                        if (t < 0 || t > 2 * count)
                            return std::nullopt;
                    if (! feasible(targets, count))
                        return std::nullopt;

                    vector<VertexSet> chosen;
                    VertexSet used = protect;
                    for (auto & a : anchors)
                        for (int v : a.forced)
                            used.insert(v);
                    if (search(anchors, count, targets, used, chosen))
                        return chosen;
                    return std::nullopt;
                }

                auto find_copy(const vector<int> & profile, const vector<int> & forced, const VertexSet & excluded) -> optional<VertexSet>
                {
                    for (bool relaxed : { false, true }) {
                        VertexSet pool = _alive - excluded - _reserved;
                        if (! relaxed)
                            pool -= _avoid;
                        if (auto found = find_copy_in(profile, forced, pool))
                            return found;
                    }
                    return std::nullopt;
                }

            private:
                const Graph & _g;
                int _r, _q;
                const vector<VertexSet> & _classes;
                VertexSet _alive, _reserved, _avoid;
                vector<vector<int>> _profiles;
                int _calls = 0;

                void enumerate_profiles(vector<int> & profile, int l, bool used_two)
                {
                    if (l == _q) {
                        if (std::accumulate(profile.begin(), profile.end(), 0) <= _r)
                            _profiles.push_back(profile);
                        return;
                    }
                    for (int c = 0 ; c <= (used_two ? 1 : 2) ; ++c) {
                        profile[std::size_t(l)] = c;
                        enumerate_profiles(profile, l + 1, used_two || c == 2);
                    }
                    profile[std::size_t(l)] = 0;
                }

                /// Whether `remaining` can be split over `copies` copies with at most one class
                /// contributing two vertices to each copy.
                static auto feasible(const vector<int> & remaining, int copies) -> bool
                {
                    int doubles = 0;
                    for (int t : remaining) {
                        if (t < 0 || t > 2 * copies)
                            return false;
                        doubles += std::max(0, t - copies);
                    }
                    return doubles <= copies;
                }

                auto search(const vector<Anchor> & anchors, int count, const vector<int> & remaining, const VertexSet & used,
                        vector<VertexSet> & chosen) -> bool
                {
                    std::size_t idx = chosen.size();
                    if (int(idx) == count)
                        return std::all_of(remaining.begin(), remaining.end(), [] (int t) { return t == 0; });

                    vector<int> forced = idx < anchors.size() ? anchors[idx].forced : vector<int>{};
                    VertexSet excluded = used;
                    for (int v : forced)
                        excluded.erase(v);

                    for (auto & sparse : _profiles) {
                        vector<int> rest = remaining;
                        for (int l = 0 ; l < _q ; ++l)
                            rest[std::size_t(l)] -= sparse[std::size_t(l)];
                        if (! feasible(rest, count - int(idx) - 1))
                            continue;

                        vector<int> profile = sparse;
                        profile.push_back(_r - std::accumulate(sparse.begin(), sparse.end(), 0));
                        if (++_calls > batch_search_call_cap)
                            return false;
                        auto found = find_copy(profile, forced, excluded);
                        if (! found)
                            continue;

                        chosen.push_back(*found);
                        if (search(anchors, count, rest, used | *found, chosen))
                            return true;
                        chosen.pop_back();
                        if (_calls > batch_search_call_cap)
                            return false;
                    }
                    return false;
                }

                auto find_copy_in(const vector<int> & profile, const vector<int> & forced, const VertexSet & pool) -> optional<VertexSet>
                {
                    vector<int> needed = profile;
                    VertexSet chosen = _g.empty_set();
                    for (int v : forced) {
                        int l = -1;
                        for (int c = 0 ; c <= _q ; ++c)
                            if (_classes[std::size_t(c)].contains(v))
                                l = c;
                        if (l == -1 || --needed[std::size_t(l)] < 0)
                            return std::nullopt;
                        chosen.insert(v);
                    }

                    int defects = 0;
                    for (std::size_t i = 0 ; i < forced.size() ; ++i)
                        for (std::size_t j = i + 1 ; j < forced.size() ; ++j)
                            if (! _g.adjacent(forced[i], forced[j]))
                                ++defects;
                    if (defects > 1)
                        return std::nullopt;

                    vector<int> slots;
                    for (int l = 0 ; l <= _q ; ++l)
                        slots.insert(slots.end(), std::size_t(needed[std::size_t(l)]), l);

                    long long nodes = 0;
                    auto rec = [&] (auto & self, std::size_t s, int last, int defects_so_far) -> bool {
                        if (s == slots.size())
                            return true;
                        if (++nodes > copy_search_node_cap)
                            return false;
                        int l = slots[s];
                        int floor_vertex = s > 0 && slots[s - 1] == l ? last : -1;
                        VertexSet candidates = pool & _classes[std::size_t(l)];
                        candidates -= chosen;
                        for (int v = candidates.next(floor_vertex) ; v != -1 ; v = candidates.next(v)) {
                            int miss = chosen.count() - _g.neighbours(v).intersection_count(chosen);
                            if (defects_so_far + miss > 1)
                                continue;
                            chosen.insert(v);
                            if (self(self, s + 1, v, defects_so_far + miss))
                                return true;
                            chosen.erase(v);
                            if (nodes > copy_search_node_cap)
                                return false;
                        }
                        return false;
                    };
                    if (rec(rec, 0, -1, defects))
                        return chosen;
                    return std::nullopt;
                }
        };

        class Tidier
        {
            public:
                Tidier(const Graph & g, int r, const Rational & tau, TidyResult & out) :
                    _g(g), _r(r), _tau(tau), _pattern(k_r_minus(r)), _out(out),
                    _alive(g.vertices()), _reserved(g.empty_set()), _avoid(g.empty_set())
                {
                }

                void run(const vector<VertexSet> & sparse_sets)
                {
                    _q = int(sparse_sets.size());
                    check_hypotheses(sparse_sets);

                    Partition p{ _g.size(), sparse_sets };
                    VertexSet rest = _g.vertices();
                    for (auto & a : sparse_sets)
                        rest -= a;
                    p.classes.push_back(rest);

                    auto adjusted = adjust_for_divisibility(_g, p, _r);
                    _classes = adjusted.partition.classes;
                    _k = adjusted.k;
                    _out.k = _k;
                    _n_prime = _g.size() - _k * _r;
                    for (int v : adjusted.moved)
                        log("divisibility", "moved to the last class", { v });
                    for (int l = 0 ; l < _q ; ++l)
                        if (_classes[std::size_t(l)].count() < (long long)(_r - 1) * _n_prime / (_r * (_r - 2)) + _k)
                            _out.warnings.push_back("class " + to_string(l) + " is below (r-1)n'/(r(r-2)) + k after the divisibility step");

                    auto initial = classify(_g, partition(), _tau);
                    append_warnings(initial.warnings);
                    auto swapped = swap_bad_exceptional(_g, partition(), initial);
                    _classes = swapped.partition.classes;
                    for (auto [x, y] : swapped.swaps)
                        log("swap", "bad and exceptional vertices traded classes", { x, y });
                    append_warnings(swapped.warnings);

                    auto classification = classify(_g, partition(), _tau);
                    if (_q <= _r - 3 && ! _classes[std::size_t(_q)].empty()) {
                        auto slack = clique_regime_slack(_r, _q, _g.size(), _classes[std::size_t(_q)].count());
                        log("diagnostic", "clique regime slack c = " + to_string(slack), {});
                    }

                    // vertices of sparse classes with few neighbours in the last class, before any removal
                    VertexSet relocate = _g.empty_set();
                    {
                        auto & last = _classes[std::size_t(_q)];
                        for (int l = 0 ; l < _q ; ++l)
                            _classes[std::size_t(l)].for_each([&] (int x) {
                                int hits = _g.neighbours(x).intersection_count(last);
                                if (at_least_power(last.count() - hits, _tau, 1, 4, last.count()))
                                    relocate.insert(x);
                            });
                    }

                    remove_exceptional(classification);
                    relocate_vertices(relocate);
                    remove_useless();
                    final_copies();
                    finish();
                }

            private:
                const Graph & _g;
                int _r;
                Rational _tau;
                Graph _pattern;
                TidyResult & _out;

                int _q = 0, _k = 0, _n_prime = 0;
                vector<VertexSet> _classes;
                VertexSet _alive, _reserved, _avoid;

                auto partition() const -> Partition
                {
                    return Partition{ _g.size(), _classes };
                }

                void log(const string & stage, const string & action, vector<int> vertices)
                {
                    _out.trace.push_back(TraceEvent{ stage, action, std::move(vertices) });
                }

                void append_warnings(const vector<string> & ws)
                {
                    _out.warnings.insert(_out.warnings.end(), ws.begin(), ws.end());
                }

                void check_hypotheses(const vector<VertexSet> & sparse_sets)
                {
                    int n = _g.size();
                    if (_r < 4)
                        throw Error{ ErrorKind::BadParameter, "r must be at least 4" };
                    if (_q < 1 || _q > _r - 2)
                        throw Error{ ErrorKind::BadParameter, "need between 1 and r-2 sparse sets, got " + to_string(_q) };
                    if (_tau <= 0 || _tau >= 1)
                        throw Error{ ErrorKind::BadParameter, "tau must lie strictly between 0 and 1" };
                    if (n == 0 || n % _r != 0)
                        throw Error{ ErrorKind::BadParameter, "n = " + to_string(n) + " is not a positive multiple of r" };

                    VertexSet seen = _g.empty_set();
                    for (auto & a : sparse_sets) {
                        if (a.host_size() != n)
                            throw Error{ ErrorKind::BadParameter, "sparse set is over the wrong number of vertices" };
                        if (a.intersects(seen))
                            throw Error{ ErrorKind::BadParameter, "sparse sets overlap" };
                        seen |= a;
                        if (a.count() != sparse_class_size(_r, n))
                            throw Error{ ErrorKind::BadParameter, "sparse set has " + to_string(a.count()) + " vertices, expected "
                                + to_string(sparse_class_size(_r, n)) };
                    }

                    if (_tau >= make_rational(1, _r))
                        _out.warnings.push_back("tau is not below 1/r");
                    Rational bound = (1 - make_rational(_r - 1, _r * (_r - 2))) * n;
                    if (Rational{ min_degree(_g) } < bound)
                        _out.warnings.push_back("minimum degree " + to_string(min_degree(_g)) + " is below (1 - 1/chi_cr(K_r^-))n = " + to_string(bound));
                    for (std::size_t i = 0 ; i < sparse_sets.size() ; ++i)
                        if (sparse_sets[i].count() >= 2 && density_within(_g, sparse_sets[i]) > _tau)
                            _out.warnings.push_back("sparse set " + to_string(i) + " has density above tau");
                }

                auto desired(int l, int n_prime, int k) const -> long long
                {
                    return (long long)(_r - 1) * n_prime / (_r * (_r - 2)) + k + (l < std::min(k, _q) ? 1 : 0);
                }

                auto proportional_targets() const -> vector<int>
                {
                    vector<int> t;
                    for (int l = 0 ; l < _q ; ++l)
                        t.push_back(int(_classes[std::size_t(l)].count() - desired(l, _n_prime - _r * (_r - 2), _k)));
                    return t;
                }

                void remove(const vector<VertexSet> & sets, const string & stage)
                {
                    for (auto & s : sets) {
                        auto copy = embed_onto(_pattern, _g, s);
                        if (! copy)
                            throw Error{ ErrorKind::InternalError, "chosen vertex set does not host K_r^-", stage };
                        _alive -= s;
                        for (auto & c : _classes)
                            c -= s;
                        log(stage, "removed copy", s.to_vector());
                        _out.removed.push_back(std::move(*copy));
                    }
                }

                /// Removes r-2 copies respecting the proportions, carrying as many of the
                /// anchors as fit into each batch.
                void anchored_batches(const vector<Anchor> & anchors, const VertexSet & protect, const string & stage)
                {
                    std::size_t pos = 0;
                    auto try_batch = [&] (std::size_t m) {
                        vector<Anchor> batch(anchors.begin() + long(pos), anchors.begin() + long(pos + m));
                        VertexSet others = protect;
                        for (std::size_t i = pos + m ; i < anchors.size() ; ++i)
                            for (int v : anchors[i].forced)
                                others.insert(v);
                        BatchPlanner planner{ _g, _r, _classes, _alive, _reserved, _avoid };
                        auto sets = planner.plan(batch, _r - 2, proportional_targets(), others);
                        if (! sets)
                            return false;
                        vector<int> anchored;
                        for (auto & a : batch)
                            anchored.insert(anchored.end(), a.forced.begin(), a.forced.end());
                        log(stage, "batch for anchors " + describe(anchored), anchored);
                        remove(*sets, stage);
                        _n_prime -= _r * (_r - 2);
                        pos += m;
                        return true;
                    };

                    do {
                        if (_n_prime < _r * (_r - 2))
                            throw Error{ ErrorKind::Stuck, "no room left for another batch", stage };
                        bool done = false;
                        if (anchors.empty())
                            done = try_batch(0);
                        for (std::size_t m = std::min<std::size_t>(std::size_t(_r - 2), anchors.size() - pos) ; ! done && m >= 1 ; --m)
                            done = try_batch(m);
                        if (! done)
                            throw Error{ ErrorKind::Stuck, "no proportional batch found for anchor "
                                + (anchors.empty() ? string{ "-" } : describe(anchors[pos].forced)), stage };
                    } while (pos < anchors.size());
                }

                void remove_exceptional(const VertexClassification & c)
                {
                    auto exceptional = c.any_exceptional() & _alive;
                    if (exceptional.empty())
                        return;

                    _avoid = c.useless;
                    vector<Anchor> anchors;
                    VertexSet handled = _g.empty_set();

                    if (_q == _r - 2) {
                        auto & last = _classes[std::size_t(_q)];
                        for (int i = 0 ; i < _q ; ++i) {
                            vector<int> xs;
                            (exceptional & last).for_each([&] (int x) {
                                if (c.exceptional_target(x) == i)
                                    xs.push_back(x);
                            });
                            if (xs.empty())
                                continue;

                            // matching inside A_i on non-useless, non-exceptional vertices
                            VertexSet free_vertices = _classes[std::size_t(i)] - c.useless - exceptional - _reserved;
                            vector<pair<int, int>> matching;
                            for (int u = free_vertices.first() ; u != -1 && matching.size() < xs.size() ; u = free_vertices.next(u)) {
                                if (! free_vertices.contains(u))
                                    continue;
                                VertexSet partners = _g.neighbours(u) & free_vertices;
                                partners.erase(u);
                                if (int v = partners.first() ; v != -1) {
                                    matching.emplace_back(u, v);
                                    free_vertices.erase(u);
                                    free_vertices.erase(v);
                                }
                            }
                            if (matching.size() < xs.size())
                                throw Error{ ErrorKind::Stuck, "matching in class " + to_string(i) + " has " + to_string(matching.size())
                                    + " edges, need " + to_string(xs.size()), "case 2 matching" };

                            for (auto [y, z] : matching) {
                                _reserved.insert(y);
                                _reserved.insert(z);
                            }
                            for (std::size_t e = 0 ; e < xs.size() ; ++e) {
                                int x = xs[e], y = matching[e].first, z = matching[e].second;
                                last.erase(x);
                                last.insert(y);
                                _classes[std::size_t(i)].erase(y);
                                _classes[std::size_t(i)].insert(x);
                                handled.insert(x);
                                log("exceptional", "swapped exceptional vertex with a matching vertex", { x, y, z });
                                anchors.push_back(Anchor{ { y, z } });
                            }
                        }
                    }

                    for (auto & cls : _classes)
                        (cls & exceptional).for_each([&] (int x) {
                            if (! handled.contains(x))
                                anchors.push_back(Anchor{ { x } });
                        });

                    anchored_batches(anchors, _g.empty_set(), "exceptional");
                    _reserved = _g.empty_set();
                }

                void relocate_vertices(const VertexSet & relocate)
                {
                    auto current = classify(_g, partition(), _tau);
                    _avoid = current.useless;
                    auto pending = relocate & _alive;
                    for (int x = pending.first() ; x != -1 ; x = pending.next(x)) {
                        if (! _alive.contains(x) || _classes[std::size_t(_q)].contains(x))
                            continue;
                        for (int l = 0 ; l < _q ; ++l)
                            _classes[std::size_t(l)].erase(x);
                        _classes[std::size_t(_q)].insert(x);
                        log("relocation", "moved to the last class", { x });

                        VertexSet protect = _g.empty_set();
                        protect.insert(x);
                        (pending & _alive).for_each([&] (int y) { if (y > x) protect.insert(y); });
                        anchored_batches({}, protect, "relocation");
                    }
                }

                void remove_useless()
                {
                    auto current = classify(_g, partition(), _tau);
                    int cap = (current.useless & _alive).count();
                    for (int round = 0 ; ; ++round) {
                        auto useless = current.useless & _alive;
                        if (useless.empty())
                            return;
                        if (round >= cap)
                            throw Error{ ErrorKind::Stuck, to_string(useless.count()) + " useless vertices remain after "
                                + to_string(cap) + " rounds", "useless" };

                        _avoid = current.useless;
                        vector<Anchor> anchors;
                        for (auto & cls : _classes)
                            (cls & useless).for_each([&] (int x) { anchors.push_back(Anchor{ { x } }); });
                        anchored_batches(anchors, _g.empty_set(), "useless");
                        current = classify(_g, partition(), _tau);
                    }
                }

                void final_copies()
                {
                    if (_k == 0)
                        return;
                    vector<int> targets;
                    for (int l = 0 ; l < _q ; ++l)
                        targets.push_back(int(_classes[std::size_t(l)].count() - desired(l, _n_prime, 0)));
                    BatchPlanner planner{ _g, _r, _classes, _alive, _reserved, _avoid };
                    auto sets = planner.plan({}, _k, targets, _g.empty_set());
                    if (! sets)
                        throw Error{ ErrorKind::Stuck, "could not remove the final " + to_string(_k) + " copies", "final copies" };
                    remove(*sets, "final copies");
                    _k = 0;
                }

                void finish()
                {
                    int n = _g.size();
                    int n_star = _alive.count();
                    _out.n_star = n_star;
                    _out.classes = partition();
                    _out.star_to_host = _alive.to_vector();
                    if (n_star > 0)
                        _out.g_star = induced(_g, _alive).graph;

                    auto fail = [] (const string & what) {
                        throw Error{ ErrorKind::Stuck, what, "postcondition" };
                    };

                    if (n_star % (_r * (_r - 2)) != 0)
                        fail("n* = " + to_string(n_star) + " is not divisible by r(r-2)");
                    Packing removed{ n, _out.removed };
                    auto verdict = verify_packing(_pattern, _g, removed, false);
                    if (! verdict)
                        fail("removed copies: " + verdict.reason);
                    if ((removed.covered() | _alive) != _g.vertices() || removed.covered().intersects(_alive))
                        fail("removed copies do not partition the removed vertices");
                    if (! at_most_power(n - n_star, _tau, 1, 3, n))
                        fail("removed " + to_string(n - n_star) + " vertices, more than tau^{1/3}n");

                    long long canonical = (long long)(_r - 1) * n_star / (_r * (_r - 2));
                    for (int l = 0 ; l < _q ; ++l)
                        if (_classes[std::size_t(l)].count() != canonical)
                            fail("class " + to_string(l) + " has " + to_string(_classes[std::size_t(l)].count())
                                + " vertices, canonical size is " + to_string(canonical));

                    for (int i = 0 ; i <= _q ; ++i)
                        _classes[std::size_t(i)].for_each([&] (int x) {
                            for (int j = 0 ; j <= _q ; ++j) {
                                auto & other = _classes[std::size_t(j)];
                                if (j == i || other.empty())
                                    continue;
                                int missing = other.count() - _g.neighbours(x).intersection_count(other);
                                if (! at_most_power(missing, _tau, 1, 5, other.count()))
                                    fail("vertex " + to_string(x) + " misses " + to_string(missing) + " of class " + to_string(j)
                                        + ", more than tau^{1/5}|A_j*|");
                            }
                        });
                }
        };
    }

    auto remove_proportional_batch(const Graph & g, const Partition & p, int r, const optional<Copy> & anchor,
            const optional<Rational> & tau) -> vector<Copy>
    {
        int q = p.size() - 1;
        if (r < 4 || q < 1 || q > r - 2)
            throw Error{ ErrorKind::BadParameter, "proportional batch needs r >= 4 and 1 <= q <= r-2" };
        p.validate();

        VertexSet avoid = g.empty_set();
        if (tau)
            avoid = classify(g, p, *tau).useless;

        vector<Anchor> anchors;
        if (anchor)
            anchors.push_back(Anchor{ anchor->embedding });

        BatchPlanner planner{ g, r, p.classes, p.covered(), g.empty_set(), avoid };
        auto sets = planner.plan(anchors, r - 2, vector<int>(std::size_t(q), r - 1), g.empty_set());
        if (! sets)
            throw Error{ ErrorKind::Stuck, "no proportional batch found", "proportional batch" };

        auto pattern = k_r_minus(r);
        vector<Copy> result;
        for (std::size_t i = 0 ; i < sets->size() ; ++i) {
            if (i == 0 && anchor) {
                result.push_back(*anchor);
                continue;
            }
            auto copy = embed_onto(pattern, g, (*sets)[i]);
            if (! copy)
                throw Error{ ErrorKind::InternalError, "chosen vertex set does not host K_r^-" };
            result.push_back(std::move(*copy));
        }
        return result;
    }

    auto tidy(const Graph & g, const vector<VertexSet> & sparse_sets, int r, const Rational & tau) -> TidyResult
    {
        TidyResult result;
        Tidier{ g, r, tau, result }.run(sparse_sets);
        return result;
    }
}
