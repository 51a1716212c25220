#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/hall_packer.hh>
#include <hpack/invariants.hh>
#include <hpack/io.hh>
#include <hpack/pipeline.hh>
#include <hpack/solver.hh>
#include <hpack/tidy.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace hpack;
using nlohmann::json;

namespace
{
    auto set_json(const VertexSet & s) -> json
    {
        return s.to_vector();
    }

    auto packing_json(const Packing & p) -> json
    {
        auto out = json::array();
        for (const auto & c : p.copies)
            out.push_back(c.embedding);
        return out;
    }

    auto partition_json(const Partition & p) -> json
    {
        auto out = json::array();
        for (const auto & c : p.classes)
            out.push_back(set_json(c));
        return out;
    }

    auto big_json(const BigInt & v) -> json
    {
        return json::parse(v.str());
    }

    auto seconds(double s) -> std::chrono::duration<double>
    {
        return std::chrono::duration<double>{ s };
    }

    void emit(const json & j)
    {
        std::cout << j.dump(2) << '\n';
    }

    auto read_json_file(const std::string & path) -> json
    {
        std::ifstream in{ path };
        if (! in)
            throw Error{ ErrorKind::Parse, "cannot open " + path };
        try {
            return json::parse(in);
        }
        catch (const json::exception & e) {
            throw Error{ ErrorKind::Parse, path + ": " + e.what() };
        }
    }

    auto invariants_json(const Graph & h) -> json
    {
        auto inv = pattern_invariants(h);
        json j;
        j["chi"] = inv.profile.chi;
        j["sigma"] = inv.profile.sigma;
        j["chi_cr"] = to_string(inv.chi_cr);
        j["D"] = inv.hcf.d_set;
        j["hcf_chi"] = inv.hcf.hcf_chi ? json(*inv.hcf.hcf_chi) : json("inf");
        j["hcf_c"] = inv.hcf.hcf_c;
        j["hcf_is_one"] = inv.hcf.hcf_is_one;
        j["threshold_coefficient"] = to_string(inv.threshold_coefficient);
        return j;
    }

    auto tidy_json(const TidyResult & t) -> json
    {
        json j;
        j["classes"] = partition_json(t.classes);
        auto removed = json::array();
        for (const auto & c : t.removed)
            removed.push_back(c.embedding);
        j["removed"] = removed;
        auto trace = json::array();
        for (const auto & e : t.trace)
            trace.push_back({ { "stage", e.stage }, { "action", e.action }, { "vertices", e.vertices } });
        j["trace"] = trace;
        j["warnings"] = t.warnings;
        j["n_star"] = t.n_star;
        j["k"] = t.k;
        return j;
    }

    auto constructed_classes(const Graph & g) -> std::optional<json>
    {
        if (g.has_labels())
            return partition_json(partition_from_labels(g));
        auto classes = multipartite_classes(g);
        if (classes.empty())
            return std::nullopt;
        auto out = json::array();
        for (const auto & c : classes)
            out.push_back(set_json(c));
        return out;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Perfect H-packings and the K_r^- packing threshold" };
    app.require_subcommand(1);

    std::string pattern_file, host_file, classes_file, sparse_file, ladder_file, trace_file, out_file;
    std::string tau_text;
    int r = 0, q = 0, k = 0, n = 0, n_max = 0;
    double budget = 60.0;
    bool maximum = false;

    auto invariants_cmd = app.add_subcommand("invariants", "Chromatic invariants of a pattern");
    invariants_cmd->add_option("pattern", pattern_file, "Pattern edge-list file")->required();

    auto pack_cmd = app.add_subcommand("pack", "Perfect or maximum packing with the exact solver");
    pack_cmd->add_option("--pattern", pattern_file)->required();
    pack_cmd->add_option("--host", host_file)->required();
    pack_cmd->add_flag("--max", maximum, "Maximum packing instead of a perfect one");
    pack_cmd->add_option("--budget-secs", budget);

    auto construct_cmd = app.add_subcommand("construct", "Build an extremal or structural graph");
    construct_cmd->require_subcommand(1);
    auto c_krminus = construct_cmd->add_subcommand("krminus");
    c_krminus->add_option("--r", r)->required();
    auto c_bottle = construct_cmd->add_subcommand("bottle");
    c_bottle->add_option("--pattern", pattern_file)->required();
    auto c_prop3 = construct_cmd->add_subcommand("prop3");
    c_prop3->add_option("--r", r)->required();
    c_prop3->add_option("--k", k)->required();
    auto c_prop4 = construct_cmd->add_subcommand("prop4");
    c_prop4->add_option("--pattern", pattern_file)->required();
    c_prop4->add_option("--k", k)->required();
    auto c_canonical = construct_cmd->add_subcommand("canonical");
    c_canonical->add_option("--r", r)->required();
    c_canonical->add_option("--q", q)->required();
    c_canonical->add_option("--n", n)->required();
    auto c_b1 = construct_cmd->add_subcommand("b1");
    c_b1->add_option("--r", r)->required();
    c_b1->add_option("--q", q)->required();
    auto c_hqr = construct_cmd->add_subcommand("hqr");
    c_hqr->add_option("--q", q)->required();
    c_hqr->add_option("--r", r)->required();
    for (auto sub : { c_krminus, c_bottle, c_prop3, c_prop4, c_canonical, c_b1, c_hqr })
        sub->add_option("--out", out_file, "Edge-list output file (stdout if omitted)");

    auto hallpack_cmd = app.add_subcommand("hallpack", "H_{q,r}-packing of a (q+1)-partite graph");
    hallpack_cmd->add_option("--host", host_file)->required();
    hallpack_cmd->add_option("--classes", classes_file)->required();
    hallpack_cmd->add_option("--q", q)->required();
    hallpack_cmd->add_option("--r", r)->required();
    hallpack_cmd->add_option("--tau", tau_text, "p/q; defaults to tau_0(q, r)");

    auto tidy_cmd = app.add_subcommand("tidy", "Tidy a near-extremal graph around given sparse sets");
    tidy_cmd->add_option("--host", host_file)->required();
    tidy_cmd->add_option("--sparse", sparse_file)->required();
    tidy_cmd->add_option("--r", r)->required();
    tidy_cmd->add_option("--tau", tau_text)->required();

    auto pipeline_cmd = app.add_subcommand("pipeline", "Perfect K_r^--packing via the structural pipeline");
    pipeline_cmd->add_option("--host", host_file)->required();
    pipeline_cmd->add_option("--r", r)->required();
    pipeline_cmd->add_option("--ladder", ladder_file, "JSON list of tau_1..tau_{r-1} as \"p/q\"");
    pipeline_cmd->add_option("--budget-secs", budget);
    pipeline_cmd->add_option("--trace", trace_file, "Write the stage trace here");

    auto table_cmd = app.add_subcommand("threshold-table", "Minimum-degree bound for every multiple of r");
    table_cmd->add_option("--r", r)->required();
    table_cmd->add_option("--n-max", n_max)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (invariants_cmd->parsed()) {
            emit(invariants_json(read_edge_list_file(pattern_file)));
        }
        else if (pack_cmd->parsed()) {
            auto h = read_edge_list_file(pattern_file);
            auto g = read_edge_list_file(host_file);
            SearchOptions options;
            options.budget = seconds(budget);
            json j;
            if (maximum) {
                auto res = max_packing(h, g, options);
                j["decision"] = res.size * h.size() == g.size() ? "perfect" : "partial";
                j["size"] = res.size;
                j["packing"] = packing_json(res.packing);
                j["nodes_explored"] = res.stats.nodes_explored;
                j["elapsed"] = res.stats.elapsed_seconds;
            }
            else {
                auto res = find_perfect_packing(h, g, options);
                j["decision"] = res.packing ? "found" : "absent";
                j["packing"] = res.packing ? packing_json(*res.packing) : json::array();
                j["nodes_explored"] = res.stats.nodes_explored;
                j["elapsed"] = res.stats.elapsed_seconds;
            }
            emit(j);
        }
        else if (construct_cmd->parsed()) {
            Graph g;
            if (c_krminus->parsed())
                g = k_r_minus(r);
            else if (c_bottle->parsed())
                g = bottle_graph(read_edge_list_file(pattern_file));
            else if (c_prop3->parsed())
                g = prop3_extremal(r, k);
            else if (c_prop4->parsed())
                g = prop4_extremal(read_edge_list_file(pattern_file), k);
            else if (c_canonical->parsed())
                g = canonical_graph(canonical_spec(r, q, n));
            else if (c_b1->parsed())
                g = b1_graph(r, q);
            else
                g = h_qr_graph(q, r);

            json j;
            j["n"] = g.size();
            j["m"] = g.edge_count();
            j["min_degree"] = min_degree(g);
            if (auto classes = constructed_classes(g))
                j["classes"] = *classes;
            if (out_file.empty()) {
                write_edge_list(std::cout, g);
                std::cerr << j.dump() << '\n';
            }
            else {
                write_edge_list_file(out_file, g);
                j["file"] = out_file;
                emit(j);
            }
        }
        else if (hallpack_cmd->parsed()) {
            auto g = read_edge_list_file(host_file);
            auto classes = read_classes_file(classes_file, g.size());
            auto tau = tau_text.empty() ? default_tau(q, r) : parse_rational(tau_text);
            auto res = pack_h_qr(g, classes, q, r, tau);
            json j;
            j["decision"] = res.packing ? "found" : "absent";
            if (res.packing)
                j["packing"] = packing_json(*res.packing);
            else {
                j["failed_level"] = res.failed_level;
                if (res.witness)
                    j["witness"] = { { "deficient", set_json(res.witness->deficient) },
                        { "neighbourhood", set_json(res.witness->neighbourhood) } };
            }
            j["tau"] = to_string(tau);
            j["warnings"] = res.warnings;
            emit(j);
        }
        else if (tidy_cmd->parsed()) {
            auto g = read_edge_list_file(host_file);
            auto sparse = read_classes_file(sparse_file, g.size());
            emit(tidy_json(tidy(g, sparse.classes, r, parse_rational(tau_text))));
        }
        else if (pipeline_cmd->parsed()) {
            auto g = read_edge_list_file(host_file);
            PipelineConfig config;
            config.search.budget = seconds(budget);
            if (! ladder_file.empty()) {
                auto lj = read_json_file(ladder_file);
                if (lj.is_object())
                    lj = lj.at("ladder");
                TauLadder ladder;
                for (const auto & v : lj)
                    ladder.values.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
                config.ladder = ladder;
            }
            auto res = run_pipeline(g, r, config);
            json trace = json::array();
            for (const auto & s : res.stage_trace)
                trace.push_back({ { "stage", s.stage }, { "outcome", s.outcome }, { "elapsed", s.elapsed_seconds } });
            json j;
            j["decision"] = res.packing ? "found" : "absent";
            j["path"] = res.path;
            j["q"] = res.q;
            j["packing"] = res.packing ? packing_json(*res.packing) : json::array();
            j["stage_trace"] = trace;
            j["warnings"] = res.warnings;
            if (! trace_file.empty()) {
                json t;
                t["stage_trace"] = trace;
                if (res.tidy)
                    t["tidy"] = tidy_json(*res.tidy);
                std::ofstream out{ trace_file };
                if (! out)
                    throw Error{ ErrorKind::Parse, "cannot write " + trace_file };
                out << t.dump(2) << '\n';
            }
            emit(j);
        }
        else if (table_cmd->parsed()) {
            json rows = json::array();
            for (const auto & [size, bound] : threshold_table(r, n_max))
                rows.push_back({ { "n", size }, { "min_degree", big_json(bound) } });
            auto chi_cr = critical_chromatic_number(k_r_minus(r));
            emit({ { "r", r }, { "chi_cr", to_string(chi_cr) }, { "rows", rows } });
        }
    }
    catch (const Error & e) {
        json j{ { "error", std::string{ to_string(e.kind()) } }, { "message", e.what() } };
        if (! e.stage().empty())
            j["stage"] = e.stage();
        std::cerr << j.dump() << '\n';
        return e.kind() == ErrorKind::Timeout ? 3 : 2;
    }
    return 0;
}
