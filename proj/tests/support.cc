#include "support.hh"

#include <hpack/constructions.hh>
#include <hpack/hall_packer.hh>
#include <hpack/solver.hh>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace hpack::testing
{
    using std::to_string;
    using std::vector;

    auto hosts_pattern(const Graph & h, const Graph & g, const vector<int> & set) -> bool
    {
        auto order = set;
        std::sort(order.begin(), order.end());
        do {
            bool ok = true;
            for (auto [u, v] : h.edges())
                if (! g.adjacent(order[std::size_t(u)], order[std::size_t(v)])) {
                    ok = false;
                    break;
                }
            if (ok)
                return true;
        } while (std::next_permutation(order.begin(), order.end()));
        return false;
    }

    auto naive_perfect_packing_exists(const Graph & h, const Graph & g) -> bool
    {
        int n = g.size(), s = h.size();
        if (n % s != 0)
            return false;
        vector<bool> used(std::size_t(n), false);

        std::function<bool ()> search = [&] () -> bool {
            int first = -1;
            for (int v = 0 ; v < n ; ++v)
                if (! used[std::size_t(v)]) {
                    first = v;
                    break;
                }
            if (first == -1)
                return true;

            vector<int> rest;
            for (int v = first + 1 ; v < n ; ++v)
                if (! used[std::size_t(v)])
                    rest.push_back(v);

            vector<int> pick;
            std::function<bool (std::size_t)> choose = [&] (std::size_t from) -> bool {
                if (int(pick.size()) == s - 1) {
                    auto set = pick;
                    set.push_back(first);
                    if (! hosts_pattern(h, g, set))
                        return false;
                    for (int v : set)
                        used[std::size_t(v)] = true;
                    bool ok = search();
                    for (int v : set)
                        used[std::size_t(v)] = false;
                    return ok;
                }
                for (std::size_t i = from ; i < rest.size() ; ++i) {
                    pick.push_back(rest[i]);
                    bool ok = choose(i + 1);
                    pick.pop_back();
                    if (ok)
                        return true;
                }
                return false;
            };
            return choose(0);
        };
        return search();
    }

    auto brute_colouring(const Graph & h) -> BruteColouring
    {
        int n = h.size();
        BruteColouring out;
        for (int k = 1 ; k <= n && out.chi == 0 ; ++k) {
            std::set<vector<int>> multisets;
            vector<int> colour(std::size_t(n), 0);
            std::function<void (int, int)> go = [&] (int v, int used) {
                if (v == n) {
                    if (used != k)
                        return;
                    vector<int> sizes(std::size_t(k), 0);
                    for (int c : colour)
                        ++sizes[std::size_t(c)];
                    std::sort(sizes.begin(), sizes.end());
                    multisets.insert(sizes);
                    return;
                }
                for (int c = 0 ; c < std::min(used + 1, k) ; ++c) {
                    bool ok = true;
                    for (int u = 0 ; u < v ; ++u)
                        if (colour[std::size_t(u)] == c && h.adjacent(u, v))
                            ok = false;
                    if (! ok)
                        continue;
                    colour[std::size_t(v)] = c;
                    go(v + 1, std::max(used, c + 1));
                }
            };
            go(0, 0);
            if (! multisets.empty()) {
                out.chi = k;
                out.size_multisets.assign(multisets.begin(), multisets.end());
                out.sigma = n;
                for (const auto & m : multisets)
                    out.sigma = std::min(out.sigma, m.front());
            }
        }
        return out;
    }

    auto brute_copy_count(const Graph & h, const Graph & g) -> int
    {
        int n = g.size(), s = h.size(), count = 0;
        vector<int> pick;
        std::function<void (int)> go = [&] (int from) {
            if (int(pick.size()) == s) {
                if (hosts_pattern(h, g, pick))
                    ++count;
                return;
            }
            for (int v = from ; v < n ; ++v) {
                pick.push_back(v);
                go(v + 1);
                pick.pop_back();
            }
        };
        go(0);
        return count;
    }

    auto random_graph(int n, double p, std::mt19937_64 & rng) -> Graph
    {
        std::bernoulli_distribution edge(p);
        GraphBuilder b{ n };
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (edge(rng))
                    b.add_edge(u, v);
        return b.build();
    }

    auto hall_instance(int q, int r, int k, unsigned seed) -> HallInstance
    {
        vector<int> sizes(std::size_t(q), k * r);
        sizes.push_back(k);
        auto base = complete_multipartite(sizes);
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution drop(double(default_tau(q, r)) / 2);
        auto b = GraphBuilder::from(base);
        for (auto [u, v] : base.edges())
            if (drop(rng))
                b.remove_edge(u, v);
        return { b.build(), Partition::from_labels(base.size(), base.labels()) };
    }

    auto tidy_instance(int index) -> TidyInstance
    {
        int r = 4, q = index < 25 ? 1 : 2, n = q == 1 ? 80 : 96;
        std::mt19937_64 rng(1000 + unsigned(index));
        auto base = canonical_graph(canonical_spec(r, q, n));
        auto part = Partition::from_labels(n, base.labels());
        auto b = GraphBuilder::from(base);

        for (int i = 0 ; i < q ; ++i) {
            auto vs = part.classes[std::size_t(i)].to_vector();
            std::shuffle(vs.begin(), vs.end(), rng);
            long long s = (long long) vs.size();
            int edges = int((s * (s - 1) / 2) / 200);
            for (int e = 0 ; e < edges ; ++e)
                b.add_edge(vs[std::size_t(2 * e)], vs[std::size_t(2 * e + 1)]);
        }

        int planted = 1 + index % 3;
        auto last = part.classes[std::size_t(q)].to_vector();
        std::shuffle(last.begin(), last.end(), rng);
        for (int p = 0 ; p < planted ; ++p) {
            int x = last[std::size_t(p)];
            auto target = part.classes[std::size_t(q == 1 ? 0 : p % 2)].to_vector();
            std::shuffle(target.begin(), target.end(), rng);
            auto keep = std::size_t(std::floor(std::cbrt(0.01) * double(target.size()) / 2));
            for (std::size_t t = keep ; t < target.size() ; ++t)
                b.remove_edge(x, target[t]);
        }

        TidyInstance out;
        out.g = b.build();
        out.q = q;
        out.sparse.assign(part.classes.begin(), part.classes.begin() + q);
        return out;
    }

    auto tidy_postcondition_failure(const Graph & g, const TidyResult & t, int r, const Rational & tau) -> std::string
    {
        int n = g.size();
        int q = t.classes.size() - 1;
        auto core = t.classes.covered();
        int n_star = core.count();

        if (n_star != t.n_star)
            return "n* mismatch";
        if (n_star % (r * (r - 2)) != 0)
            return "r(r-2) does not divide n* = " + to_string(n_star);
        if (compare_with_power(n - n_star, tau, 1, 3, n) > 0)
            return "removed more than tau^{1/3} n vertices";

        Packing removed{ n, t.removed };
        auto verdict = verify_packing(k_r_minus(r), g, removed, false);
        if (! verdict)
            return "removed copies: " + verdict.reason;
        auto covered = removed.covered();
        if (covered.intersects(core) || (covered | core).count() != n)
            return "removed copies do not partition V(G) - V(G*)";

        for (int i = 0 ; i < q ; ++i)
            if ((long long) t.classes.classes[std::size_t(i)].count() * r * (r - 2) != (long long)(r - 1) * n_star)
                return "class " + to_string(i) + " has the wrong size";

        for (int i = 0 ; i <= q ; ++i)
            for (int j = 0 ; j <= q ; ++j) {
                if (i == j)
                    continue;
                const auto & ai = t.classes.classes[std::size_t(i)];
                const auto & aj = t.classes.classes[std::size_t(j)];
                int size = aj.count();
                for (int x = ai.first() ; x != -1 ; x = ai.next(x)) {
                    int missing = size - g.neighbours(x).intersection_count(aj);
                    if (compare_with_power(missing, tau, 1, 5, size) > 0)
                        return "vertex " + to_string(x) + " misses too much of class " + to_string(j);
                }
            }
        return "";
    }

    namespace
    {
        auto perturb(const Graph & base, double drop, double add, std::mt19937_64 & rng) -> Graph
        {
            std::bernoulli_distribution d(drop), a(add);
            auto b = GraphBuilder::from(base);
            for (int u = 0 ; u < base.size() ; ++u)
                for (int v = u + 1 ; v < base.size() ; ++v) {
                    if (base.adjacent(u, v) && d(rng))
                        b.remove_edge(u, v);
                    else if (! base.adjacent(u, v) && a(rng))
                        b.add_edge(u, v);
                }
            return b.build();
        }

        auto shuffled(const Graph & g, std::mt19937_64 & rng) -> Graph
        {
            vector<int> perm(std::size_t(g.size()));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            return relabel(g, perm);
        }
    }

    auto pipeline_corpus(int count, unsigned seed) -> vector<CorpusEntry>
    {
        std::mt19937_64 rng(seed);
        vector<CorpusEntry> out;
        auto pick = [&] (int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        auto real = [&] (double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

        for (int i = 0 ; int(out.size()) < count ; ++i) {
            switch (i % 5) {
                case 0: {
                    int q = pick(1, 2), n = 8 * pick(1, 3);
                    auto g = canonical_graph(canonical_spec(4, q, n));
                    double drop = pick(0, 1) == 0 ? 0.0 : real(0.0, 0.06);
                    out.push_back({ "canonical", shuffled(perturb(g, drop, 0.0, rng), rng) });
                    break;
                }
                case 1: {
                    int k = pick(2, 6);
                    out.push_back({ "prop3", shuffled(perturb(prop3_extremal(4, k), 0.0, real(0.0, 0.1), rng), rng) });
                    break;
                }
                case 2: {
                    int q = pick(1, 2), n = 4 * pick(3, 6);
                    int s = (3 * n + 7) / 8;
                    vector<int> sizes(std::size_t(q), s);
                    if (n - q * s > 0)
                        sizes.push_back(n - q * s);
                    auto g = complete_multipartite(sizes);
                    auto b = GraphBuilder::from(g);
                    int last = n - (n - q * s);
                    for (int u = last ; u < n ; ++u)
                        for (int v = u + 1 ; v < n ; ++v)
                            b.add_edge(u, v);
                    out.push_back({ "near-canonical", shuffled(perturb(b.build(), real(0.0, 0.08), real(0.0, 0.03), rng), rng) });
                    break;
                }
                default: {
                    int n = pick(1, 6) * 4;
                    if (pick(0, 9) == 0)
                        n = pick(5, 23);
                    out.push_back({ "random-dense", random_graph(n, real(0.55, 0.95), rng) });
                    break;
                }
            }
        }
        return out;
    }
}
