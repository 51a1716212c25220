#include "support.hh"

#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/hall_packer.hh>
#include <hpack/invariants.hh>
#include <hpack/pipeline.hh>
#include <hpack/solver.hh>
#include <hpack/tidy.hh>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

using namespace hpack;
using namespace hpack::testing;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    auto fail(std::string why) -> Outcome
    {
        return { false, std::move(why) };
    }

    auto min_degree_bound(const Graph & h, int n) -> BigInt
    {
        return ceil((1 - 1 / critical_chromatic_number(h)) * n);
    }

    auto invariant_formulas() -> Outcome
    {
        for (int r = 4 ; r <= 8 ; ++r) {
            auto h = k_r_minus(r);
            if (critical_chromatic_number(h) != make_rational(r * (r - 2), r - 1))
                return fail("chi_cr wrong for r = " + std::to_string(r));
            if (threshold_coefficient(h) != 1 - make_rational(r - 1, r * (r - 2)))
                return fail("threshold wrong for r = " + std::to_string(r));
        }
        return { true, "r = 4..8 exact" };
    }

    auto hcf_ledger() -> Outcome
    {
        for (int r = 4 ; r <= 7 ; ++r)
            if (! hcf_report(k_r_minus(r)).hcf_is_one)
                return fail("hcf(K_" + std::to_string(r) + "^-) is not 1");
        if (hcf_report(k_r_minus(3)).hcf_is_one)
            return fail("hcf(P_3) reported as 1");
        if (hcf_report(complete_graph(3)).hcf_chi)
            return fail("hcf_chi(K_3) is finite");
        return { true, "K_r^- r = 4..7 true, P_3 false, K_3 infinite" };
    }

    auto prop3_impossibility() -> Outcome
    {
        std::ostringstream detail;
        for (auto [r, k] : { std::pair{ 4, 2 }, { 4, 3 }, { 4, 4 }, { 5, 2 } }) {
            auto h = k_r_minus(r);
            auto g = prop3_extremal(r, k);
            SearchOptions options;
            options.budget = std::chrono::seconds{ 60 };
            if (BigInt{ min_degree(g) } != min_degree_bound(h, g.size()) - 1)
                return fail("min degree of (" + std::to_string(r) + "," + std::to_string(k) + ") is " + std::to_string(min_degree(g)));
            if (find_perfect_packing(h, g, options).packing)
                return fail("perfect packing found for (" + std::to_string(r) + "," + std::to_string(k) + ")");
            int m = max_packing_size(h, g, options);
            if (m > k - 1)
                return fail("max packing " + std::to_string(m) + " exceeds k-1");
            detail << "(" << r << "," << k << "):delta=" << min_degree(g) << ",max=" << m << " ";
        }
        return { true, detail.str() };
    }

    auto prop4_impossibility() -> Outcome
    {
        auto h = complete_multipartite(std::vector<int>{ 1, 3, 3 });
        auto g = prop4_extremal(h, 1);
        if (g.size() != 14 || min_degree(g) != 8)
            return fail("n = " + std::to_string(g.size()) + ", delta = " + std::to_string(min_degree(g)));
        if ((1 - 1 / critical_chromatic_number(h)) * 14 != 8)
            return fail("(1 - 1/chi_cr) 14 is not 8");
        SearchOptions options;
        options.budget = std::chrono::seconds{ 120 };
        if (find_perfect_packing(h, g, options).packing)
            return fail("perfect packing found");
        return { true, "n = 14, delta = 8, absent" };
    }

    auto positive_instances() -> Outcome
    {
        auto h = k_r_minus(4);
        std::vector<std::pair<std::string, Graph>> hosts{
            { "B*(K4-)", bottle_graph(h) },
            { "K(1,8)", canonical_graph(canonical_spec(4, 1, 8)) },
            { "K(1,16)", canonical_graph(canonical_spec(4, 1, 16)) },
            { "K(2,16)", canonical_graph(canonical_spec(4, 2, 16)) } };
        std::ostringstream detail;
        for (const auto & [name, g] : hosts) {
            auto direct = find_perfect_packing(h, g);
            if (! direct.packing || ! verify_packing(h, g, *direct.packing, true))
                return fail(name + ": direct solver");
            auto piped = run_pipeline(g, 4);
            if (! piped.packing)
                return fail(name + ": pipeline found nothing");
            if (auto v = verify_packing(h, g, *piped.packing, true) ; ! v)
                return fail(name + ": pipeline packing invalid: " + v.reason);
            detail << name << ":" << piped.path << " ";
        }
        return { true, detail.str() };
    }

    auto solver_vs_brute_force() -> Outcome
    {
        std::vector<std::pair<std::string, Graph>> patterns{
            { "K3", complete_graph(3) }, { "P3", k_r_minus(3) }, { "K4-", k_r_minus(4) } };
        std::mt19937_64 rng(20240601);
        int trials = 600, positives = 0;
        for (int t = 0 ; t < trials ; ++t) {
            const auto & [name, h] = patterns[std::size_t(t % 3)];
            int n = std::uniform_int_distribution<int>(1, 10)(rng);
            if (t % 5 != 0)
                n = h.size() * std::uniform_int_distribution<int>(1, 10 / h.size())(rng);
            double p = std::uniform_real_distribution<double>(0.3, 0.95)(rng);
            auto g = random_graph(n, p, rng);
            auto res = find_perfect_packing(h, g);
            bool oracle = naive_perfect_packing_exists(h, g);
            if (res.packing.has_value() != oracle)
                return fail("disagreement on trial " + std::to_string(t) + " (" + name + ", n = " + std::to_string(n) + ")");
            if (res.packing && ! verify_packing(h, g, *res.packing, true))
                return fail("invalid packing on trial " + std::to_string(t));
            positives += oracle;
        }
        return { true, std::to_string(trials) + " graphs, " + std::to_string(positives) + " packable" };
    }

    auto hall_packer() -> Outcome
    {
        std::ostringstream detail;
        for (auto [q, r, k] : { std::tuple{ 1, 3, 6 }, { 2, 3, 5 }, { 2, 4, 4 } }) {
            auto h = h_qr_graph(q, r);
            for (unsigned seed = 0 ; seed < 100 ; ++seed) {
                auto inst = hall_instance(q, r, k, seed);
                auto res = pack_h_qr(inst.g, inst.classes, q, r, default_tau(q, r));
                if (! res.packing)
                    return fail("(" + std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(k) + ") seed "
                            + std::to_string(seed) + " failed at level " + std::to_string(res.failed_level));
                if (auto v = verify_packing(h, inst.g, *res.packing, true) ; ! v)
                    return fail("invalid packing: " + v.reason);
            }
            detail << "(" << q << "," << r << "," << k << "):100/100 ";
        }
        return { true, detail.str() };
    }

    auto tidy_postconditions() -> Outcome
    {
        auto tau = make_rational(1, 100);
        int removed = 0;
        for (int index = 0 ; index < 50 ; ++index) {
            auto inst = tidy_instance(index);
            try {
                auto res = tidy(inst.g, inst.sparse, 4, tau);
                if (auto why = tidy_postcondition_failure(inst.g, res, 4, tau) ; ! why.empty())
                    return fail("instance " + std::to_string(index) + ": " + why);
                removed += int(res.removed.size());
            }
            catch (const Error & e) {
                return fail("instance " + std::to_string(index) + ": " + e.what());
            }
        }
        return { true, "50 instances, " + std::to_string(removed) + " copies removed in total" };
    }

    auto pipeline_agreement() -> Outcome
    {
        auto h = k_r_minus(4);
        auto corpus = pipeline_corpus(220, 7);
        int paths[3] = { 0, 0, 0 }, positives = 0;
        for (std::size_t i = 0 ; i < corpus.size() ; ++i) {
            const auto & g = corpus[i].g;
            auto piped = run_pipeline(g, 4);
            auto direct = find_perfect_packing(h, g);
            if (piped.packing.has_value() != direct.packing.has_value())
                return fail("decision differs on graph " + std::to_string(i) + " (" + corpus[i].kind + ")");
            if (piped.packing) {
                if (auto v = verify_packing(h, g, *piped.packing, true) ; ! v)
                    return fail("graph " + std::to_string(i) + ": " + v.reason);
                ++positives;
            }
            ++paths[piped.path == "pipeline" ? 0 : piped.path == "fallback" ? 1 : 2];
        }
        return { true, std::to_string(corpus.size()) + " graphs, " + std::to_string(positives) + " packable, paths pipeline/fallback/direct = "
            + std::to_string(paths[0]) + "/" + std::to_string(paths[1]) + "/" + std::to_string(paths[2]) };
    }
}

auto main() -> int
{
    struct Criterion
    {
        std::string name;
        double budget;
        std::function<Outcome ()> run;
    };

    std::vector<Criterion> criteria{
        { "invariant formulas", 1, invariant_formulas },
        { "hcf ledger", 1, hcf_ledger },
        { "K_r^- extremal graphs", 120, prop3_impossibility },
        { "K_{1,3,3} extremal graph", 120, prop4_impossibility },
        { "positive instances", 60, positive_instances },
        { "solver against partition enumeration", 600, solver_vs_brute_force },
        { "Hall packer", 120, hall_packer },
        { "tidy postconditions", 300, tidy_postconditions },
        { "pipeline against solver", 1200, pipeline_agreement } };

    int failures = 0;
    for (std::size_t i = 0 ; i < criteria.size() ; ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        }
        catch (const std::exception & e) {
            outcome = fail(std::string{ "exception: " } + e.what());
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.pass && elapsed > criteria[i].budget)
            outcome = fail("took " + std::to_string(elapsed) + "s, budget " + std::to_string(criteria[i].budget) + "s");
        failures += ! outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name
            << " [" << std::fixed << std::setprecision(2) << elapsed << "s] " << outcome.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
