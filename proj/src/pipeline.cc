#include <hpack/pipeline.hh>
#include <hpack/constructions.hh>
#include <hpack/error.hh>

#include <algorithm>
#include <chrono>
#include <numeric>

namespace hpack
{
    using std::to_string;
    using std::vector;

    namespace
    {
        using Clock = std::chrono::steady_clock;

        auto seconds_since(Clock::time_point start) -> double
        {
            return std::chrono::duration<double>(Clock::now() - start).count();
        }

        auto sparse_set_size(int r, int n) -> int
        {
            return int(ceil(make_rational((r - 1) * (long long) n, r * (r - 2))));
        }

        auto grow_sparse_set(const Graph & g, const VertexSet & available, int s, int seed) -> VertexSet
        {
            VertexSet set(g.size());
            set.insert(seed);
            vector<int> inside(std::size_t(g.size()), 0);
            for (int w : g.neighbours(seed).to_vector())
                ++inside[std::size_t(w)];

            for (int size = 1 ; size < s ; ++size) {
                int best = -1;
                for (int v = available.first() ; v != -1 ; v = available.next(v)) {
                    if (set.contains(v))
                        continue;
                    if (best == -1 || inside[v] < inside[best]
                            || (inside[v] == inside[best] && g.degree(v) < g.degree(best)))
                        best = v;
                }
                set.insert(best);
                for (int w : g.neighbours(best).to_vector())
                    ++inside[std::size_t(w)];
            }

            for (int round = 0 ; round < 4 * s ; ++round) {
                int worst = -1;
                for (int v = set.first() ; v != -1 ; v = set.next(v))
                    if (worst == -1 || inside[v] > inside[worst])
                        worst = v;
                int best = -1;
                for (int v = available.first() ; v != -1 ; v = available.next(v))
                    if (! set.contains(v) && (best == -1 || inside[v] < inside[best]))
                        best = v;
                if (worst == -1 || best == -1)
                    break;
                int gain = inside[worst] - (inside[best] - (g.adjacent(worst, best) ? 1 : 0));
                if (gain <= 0)
                    break;
                set.erase(worst);
                for (int w : g.neighbours(worst).to_vector())
                    --inside[std::size_t(w)];
                set.insert(best);
                for (int w : g.neighbours(best).to_vector())
                    ++inside[std::size_t(w)];
            }
            return set;
        }

        auto sparsest_set(const Graph & g, const VertexSet & available, int s) -> VertexSet
        {
            auto order = available.to_vector();
            std::stable_sort(order.begin(), order.end(), [&] (int a, int b) { return g.degree(a) < g.degree(b); });
            order.resize(std::min<std::size_t>(order.size(), 8));

            std::optional<VertexSet> best;
            long long best_edges = 0;
            for (int seed : order) {
                auto set = grow_sparse_set(g, available, s, seed);
                auto e = edges_within(g, set);
                if (! best || e < best_edges) {
                    best = set;
                    best_edges = e;
                }
            }
            return *best;
        }

        auto solve_direct(const Graph & g, int r, Clock::time_point start, const SearchOptions & search) -> std::optional<Packing>
        {
            SearchOptions remaining;
            remaining.budget = search.budget - (Clock::now() - start);
            if (remaining.budget.count() <= 0)
                throw Error{ ErrorKind::Timeout, "pipeline budget exhausted before the direct search" };
            return find_perfect_packing(k_r_minus(r), g, remaining).packing;
        }

        struct Fallback
        {
            std::string reason;
        };
    }

    auto default_ladder(int r) -> TauLadder
    {
        if (r < 3)
            throw Error{ ErrorKind::BadParameter, "ladder needs r >= 3" };
        TauLadder ladder;
        ladder.values.assign(std::size_t(r - 1), Rational{ 0 });
        ladder.values.back() = make_rational(1, 100 * r);
        for (int q = r - 2 ; q >= 1 ; --q)
            ladder.values[std::size_t(q - 1)] = ladder.values[std::size_t(q)] * ladder.values[std::size_t(q)];
        return ladder;
    }

    void validate_ladder(const TauLadder & ladder, int r)
    {
        if (int(ladder.values.size()) != r - 1)
            throw Error{ ErrorKind::BadParameter, "ladder needs " + to_string(r - 1) + " values" };
        for (std::size_t i = 0 ; i < ladder.values.size() ; ++i) {
            if (ladder.values[i] <= 0)
                throw Error{ ErrorKind::BadParameter, "ladder values must be positive" };
            if (i > 0 && ladder.values[i] <= ladder.values[i - 1])
                throw Error{ ErrorKind::BadParameter, "ladder values must increase strictly" };
        }
        if (ladder.values.back() >= make_rational(1, r))
            throw Error{ ErrorKind::BadParameter, "tau_{r-1} must be below 1/r" };
    }

    auto find_sparse_sets(const Graph & g, int r, const TauLadder & ladder) -> SparseSets
    {
        validate_ladder(ladder, r);
        int n = g.size();
        SparseSets result;
        if (r < 4 || n == 0)
            return result;

        int s = sparse_set_size(r, n);
        if (s < 2)
            return result;

        vector<VertexSet> found;
        auto available = g.vertices();
        for (int t = 0 ; t < r - 2 && (t + 1) * s < n ; ++t) {
            found.push_back(sparsest_set(g, available, s));
            available -= found.back();
        }

        long long pairs = (long long) s * (s - 1) / 2;
        for (int q = int(found.size()) ; q >= 1 ; --q) {
            bool ok = true;
            for (int i = 0 ; i < q && ok ; ++i)
                ok = Rational{ edges_within(g, found[std::size_t(i)]) } <= ladder.tau(q) * pairs;
            if (ok) {
                result.q = q;
                result.sets.assign(found.begin(), found.begin() + q);
                return result;
            }
        }
        return result;
    }

    auto pack_b1_core(const Graph & g, const VertexSet & a, int r, int q, const SearchOptions & options) -> std::optional<Packing>
    {
        int order = b1_order(r, q);
        if (a.count() % order != 0)
            return std::nullopt;

        Packing packing;
        packing.host_n = g.size();
        if (a.empty())
            return packing;

        if (q == r - 2) {
            auto members = a.to_vector();
            for (std::size_t i = 0 ; i < members.size() ; i += std::size_t(order)) {
                Copy c{ VertexSet(g.size()), {} };
                for (int j = 0 ; j < order ; ++j) {
                    c.vertices.insert(members[i + std::size_t(j)]);
                    c.embedding.push_back(members[i + std::size_t(j)]);
                }
                packing.copies.push_back(std::move(c));
            }
            return packing;
        }

        auto sub = induced(g, a);
        auto inner = find_perfect_packing(b1_graph(r, q), sub.graph, options);
        if (! inner.packing)
            return std::nullopt;
        for (auto & c : inner.packing->copies) {
            Copy lifted{ sub.lift(c.vertices, g.size()), {} };
            for (int v : c.embedding)
                lifted.embedding.push_back(sub.to_parent[std::size_t(v)]);
            packing.copies.push_back(std::move(lifted));
        }
        return packing;
    }

    auto build_auxiliary(const Graph & g, const Partition & classes, const Packing & b1_packing, int r) -> AuxiliaryGraph
    {
        int q = classes.size() - 1;
        int right = int(b1_packing.copies.size());

        AuxiliaryGraph aux;
        vector<int> host_to_j(std::size_t(g.size()), -1);
        for (int i = 0 ; i < q ; ++i) {
            const auto & c = classes.classes[std::size_t(i)];
            if (c.count() != (r - 1) * right)
                throw Error{ ErrorKind::InternalError, "left class " + to_string(i) + " has " + to_string(c.count())
                    + " vertices for " + to_string(right) + " B_1 copies" };
            for (int v = c.first() ; v != -1 ; v = c.next(v)) {
                host_to_j[std::size_t(v)] = int(aux.back_map.size());
                aux.back_map.push_back({ v });
            }
        }
        aux.first_right = int(aux.back_map.size());
        int j_n = aux.first_right + right;

        GraphBuilder b{ j_n };
        for (int x = 0 ; x < aux.first_right ; ++x)
            for (int y = x + 1 ; y < aux.first_right ; ++y)
                if (g.adjacent(aux.back_map[std::size_t(x)][0], aux.back_map[std::size_t(y)][0]))
                    b.add_edge(x, y);

        for (int c = 0 ; c < right ; ++c) {
            const auto & copy = b1_packing.copies[std::size_t(c)];
            int jv = aux.first_right + c;
            aux.back_map.push_back(copy.vertices.to_vector());
            aux.b1_copies.push_back(copy);
            for (int x = 0 ; x < aux.first_right ; ++x)
                if (copy.vertices.is_subset_of(g.neighbours(aux.back_map[std::size_t(x)][0])))
                    b.add_edge(x, jv);
        }
        aux.j_graph = b.build();

        aux.classes.host_n = j_n;
        for (int i = 0 ; i < q ; ++i) {
            VertexSet c(j_n);
            for (int v = classes.classes[std::size_t(i)].first() ; v != -1 ; v = classes.classes[std::size_t(i)].next(v))
                c.insert(host_to_j[std::size_t(v)]);
            aux.classes.classes.push_back(c);
        }
        VertexSet last(j_n);
        for (int v = aux.first_right ; v < j_n ; ++v)
            last.insert(v);
        aux.classes.classes.push_back(last);
        return aux;
    }

    auto expand_packing(const Graph & g, const AuxiliaryGraph & aux, const Packing & j_packing, int r, int q) -> Packing
    {
        auto pattern = k_r_minus(r);
        auto j_class = aux.classes.class_of();
        int colours = r - q - 1;

        Packing out;
        out.host_n = g.size();
        for (const auto & hc : j_packing.copies) {
            vector<vector<int>> left(static_cast<std::size_t>(q));
            int right = -1;
            for (int v = hc.vertices.first() ; v != -1 ; v = hc.vertices.next(v)) {
                int c = j_class[std::size_t(v)];
                if (c == q)
                    right = v;
                else
                    left[std::size_t(c)].push_back(aux.back_map[std::size_t(v)][0]);
            }
            if (right == -1)
                throw Error{ ErrorKind::InternalError, "H_{q,r-1} copy without a B_1 vertex" };
            const auto & b1 = aux.b1_copies[std::size_t(right - aux.first_right)].embedding;

            vector<std::size_t> used(std::size_t(q), 0);
            auto take = [&] (int i, vector<int> & into) {
                auto & l = left[std::size_t(i)];
                if (used[std::size_t(i)] >= l.size())
                    throw Error{ ErrorKind::InternalError, "left class exhausted while expanding" };
                into.push_back(l[used[std::size_t(i)]++]);
            };

            vector<vector<int>> groups;
            for (int c = 0 ; c < q ; ++c) {
                vector<int> s(b1.begin() + c * colours, b1.begin() + (c + 1) * colours);
                take(c, s);
                for (int i = 0 ; i < q ; ++i)
                    take(i, s);
                groups.push_back(std::move(s));
            }
            for (int j = 0 ; j < r - q - 2 ; ++j) {
                auto first = b1.begin() + q * colours + j * (r - q);
                vector<int> s(first, first + (r - q));
                for (int i = 0 ; i < q ; ++i)
                    take(i, s);
                groups.push_back(std::move(s));
            }

            for (auto & s : groups) {
                auto set = VertexSet::from(g.size(), s);
                auto copy = embed_onto(pattern, g, set);
                if (! copy)
                    throw Error{ ErrorKind::InternalError, "expanded set does not host K_r^-" };
                out.copies.push_back(std::move(*copy));
            }
        }
        return out;
    }

    auto run_pipeline(const Graph & g, int r, const PipelineConfig & config) -> PipelineResult
    {
        auto start = Clock::now();
        PipelineResult result;
        int n = g.size();
        if (n == 0)
            throw Error{ ErrorKind::EmptyGraph, "host graph has no vertices" };
        if (r < 4)
            throw Error{ ErrorKind::BadParameter, "pipeline needs r >= 4" };

        auto stage_start = Clock::now();
        auto record = [&] (std::string stage, std::string outcome) {
            result.stage_trace.push_back({ std::move(stage), std::move(outcome), seconds_since(stage_start) });
            stage_start = Clock::now();
        };

        if (n % r != 0) {
            result.path = "direct";
            record("divisibility", "absent: " + to_string(r) + " does not divide " + to_string(n));
            return result;
        }

        auto bound = ceil((1 - make_rational(r - 1, r * (r - 2))) * n);
        if (BigInt{ min_degree(g) } < bound)
            result.warnings.push_back("minimum degree " + to_string(min_degree(g)) + " is below the threshold " + bound.str());

        auto ladder = config.ladder ? *config.ladder : default_ladder(r);
        auto sparse = find_sparse_sets(g, r, ladder);
        result.q = sparse.q;
        record("sparse-sets", "q = " + to_string(sparse.q));

        auto direct = [&] (std::string path) {
            result.path = std::move(path);
            result.packing = solve_direct(g, r, start, config.search);
            record("direct-solver", result.packing ? "packed" : "absent");
            return result;
        };

        if (sparse.q == 0)
            return direct("direct");

        int q = sparse.q;
        try {
            auto tidied = tidy(g, sparse.sets, r, ladder.tau(q));
            record("tidy", "removed " + to_string(tidied.removed.size()) + " copies, n* = " + to_string(tidied.n_star));
            for (const auto & w : tidied.warnings)
                result.warnings.push_back("tidy: " + w);
            result.tidy = tidied;

            SearchOptions remaining;
            remaining.budget = config.search.budget - (Clock::now() - start);
            auto b1 = pack_b1_core(g, tidied.classes.classes.back(), r, q, remaining);
            if (! b1)
                throw Fallback{ "no perfect B_1-packing of the last class" };
            record("b1-core", to_string(b1->copies.size()) + " copies");

            auto aux = build_auxiliary(g, tidied.classes, *b1, r);
            record("auxiliary", to_string(aux.j_graph.size()) + " vertices, " + to_string(aux.j_graph.edge_count()) + " edges");

            auto hqr = pack_h_qr(aux.j_graph, aux.classes, q, r - 1, default_tau(q, r - 1));
            for (const auto & w : hqr.warnings)
                result.warnings.push_back("hall-packer: " + w);
            if (! hqr.packing)
                throw Fallback{ "no H_{q,r-1}-packing of J at level " + to_string(hqr.failed_level) };
            record("hall-packer", to_string(hqr.packing->copies.size()) + " copies");

            auto expanded = expand_packing(g, aux, *hqr.packing, r, q);
            Packing merged;
            merged.host_n = n;
            merged.copies = tidied.removed;
            merged.copies.insert(merged.copies.end(), expanded.copies.begin(), expanded.copies.end());
            auto verdict = verify_packing(k_r_minus(r), g, merged, true);
            if (! verdict)
                throw Error{ ErrorKind::InternalError, "pipeline packing fails verification: " + verdict.reason };
            record("expand", to_string(merged.copies.size()) + " copies");

            result.path = "pipeline";
            result.packing = std::move(merged);
            return result;
        }
        catch (const Fallback & f) {
            record("fallback", f.reason);
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::Stuck)
                throw;
            record("fallback", "stuck in " + (e.stage().empty() ? std::string{ "tidy" } : e.stage()) + ": " + e.what());
        }
        return direct("fallback");
    }

    auto threshold_table(int r, int n_max) -> std::vector<std::pair<int, BigInt>>
    {
        if (r < 4)
            throw Error{ ErrorKind::BadParameter, "threshold table needs r >= 4" };
        auto coefficient = 1 - make_rational(r - 1, r * (r - 2));
        vector<std::pair<int, BigInt>> table;
        for (int n = r ; n <= n_max ; n += r)
            table.emplace_back(n, ceil(coefficient * n));
        return table;
    }
}
