#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/hall_packer.hh>
#include <hpack/invariants.hh>
#include <hpack/io.hh>
#include <hpack/pipeline.hh>
#include <hpack/solver.hh>
#include <hpack/tidy.hh>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

namespace py = pybind11;
using namespace hpack;

namespace
{
    auto fraction(const Rational & r) -> py::object
    {
        return py::module_::import("fractions").attr("Fraction")(to_string(r));
    }

    /// Accepts Fraction, int or "p/q".
    auto rational(py::handle value) -> Rational
    {
        auto f = py::module_::import("fractions").attr("Fraction")(value);
        return parse_rational(py::str(f).cast<std::string>());
    }

    auto make_graph(int n, const std::vector<std::pair<int, int>> & edges) -> Graph
    {
        GraphBuilder b{ n };
        for (auto [u, v] : edges)
            b.add_edge(u, v);
        return b.build();
    }

    auto to_sets(int host_n, const std::vector<std::vector<int>> & lists) -> std::vector<VertexSet>
    {
        std::vector<VertexSet> out;
        for (const auto & l : lists) {
            for (int v : l)
                if (v < 0 || v >= host_n)
                    throw Error{ ErrorKind::BadParameter, "vertex " + std::to_string(v) + " out of range" };
            out.push_back(VertexSet::from(host_n, l));
        }
        return out;
    }

    auto embeddings(const Packing & p) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (const auto & c : p.copies)
            out.push_back(c.embedding);
        return out;
    }

    auto to_packing(const Graph & h, int host_n, const std::vector<std::vector<int>> & copies) -> Packing
    {
        Packing p{ host_n, {} };
        for (const auto & e : copies) {
            if (int(e.size()) != h.size())
                throw Error{ ErrorKind::BadParameter, "embedding has the wrong length" };
            for (int v : e)
                if (v < 0 || v >= host_n)
                    throw Error{ ErrorKind::BadParameter, "vertex " + std::to_string(v) + " out of range" };
            p.copies.push_back(Copy{ VertexSet::from(host_n, e), e });
        }
        return p;
    }

    auto budget(double seconds) -> SearchOptions
    {
        SearchOptions o;
        o.budget = std::chrono::duration<double>{ seconds };
        return o;
    }

    auto sets_of(const Partition & p) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (const auto & c : p.classes)
            out.push_back(c.to_vector());
        return out;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Perfect H-packings and the K_r^- packing threshold";

    py::register_exception<Error>(m, "HpackError");

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::size)
        .def_property_readonly("m", &Graph::edge_count)
        .def_property_readonly("labels", &Graph::labels)
        .def("edges", &Graph::edges)
        .def("adjacent", &Graph::adjacent)
        .def("degree", &Graph::degree)
        .def("min_degree", [] (const Graph & g) { return min_degree(g); })
        .def("__len__", &Graph::size)
        .def("__eq__", [] (const Graph & a, const Graph & b) { return a == b; })
        .def("__repr__", [] (const Graph & g) {
            return "<Graph n=" + std::to_string(g.size()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("read_edge_list", &read_edge_list_file, py::arg("path"));
    m.def("write_edge_list", &write_edge_list_file, py::arg("path"), py::arg("graph"));

    m.def("k_r_minus", &k_r_minus, py::arg("r"));
    m.def("complete_graph", &complete_graph, py::arg("n"));
    m.def("complete_multipartite", [] (const std::vector<int> & sizes) { return complete_multipartite(sizes); }, py::arg("sizes"));
    m.def("bottle_graph", &bottle_graph, py::arg("h"));
    m.def("prop3_extremal", &prop3_extremal, py::arg("r"), py::arg("k"));
    m.def("prop4_extremal", &prop4_extremal, py::arg("h"), py::arg("k"));
    m.def("canonical_graph", [] (int r, int q, int n) { return canonical_graph(canonical_spec(r, q, n)); },
            py::arg("r"), py::arg("q"), py::arg("n"));
    m.def("b1_graph", &b1_graph, py::arg("r"), py::arg("q"));
    m.def("h_qr_graph", &h_qr_graph, py::arg("q"), py::arg("r"));

    m.def("invariants", [] (const Graph & h) {
        auto inv = pattern_invariants(h);
        py::dict d;
        d["chi"] = inv.profile.chi;
        d["sigma"] = inv.profile.sigma;
        d["chi_cr"] = fraction(inv.chi_cr);
        d["D"] = inv.hcf.d_set;
        d["hcf_chi"] = inv.hcf.hcf_chi ? py::object(py::int_(*inv.hcf.hcf_chi)) : py::object(py::float_(INFINITY));
        d["hcf_c"] = inv.hcf.hcf_c;
        d["hcf_is_one"] = inv.hcf.hcf_is_one;
        d["threshold_coefficient"] = fraction(inv.threshold_coefficient);
        return d;
    }, py::arg("h"));
    m.def("chromatic_number", &chromatic_number, py::arg("h"));
    m.def("critical_chromatic_number", [] (const Graph & h) { return fraction(critical_chromatic_number(h)); }, py::arg("h"));

    m.def("find_perfect_packing", [] (const Graph & h, const Graph & g, double budget_secs) -> py::object {
        auto res = find_perfect_packing(h, g, budget(budget_secs));
        if (! res.packing)
            return py::none();
        return py::cast(embeddings(*res.packing));
    }, py::arg("h"), py::arg("g"), py::arg("budget_secs") = 60.0,
    "Embeddings of a perfect packing, or None when none exists.");
    m.def("max_packing", [] (const Graph & h, const Graph & g, double budget_secs) {
        return embeddings(max_packing(h, g, budget(budget_secs)).packing);
    }, py::arg("h"), py::arg("g"), py::arg("budget_secs") = 60.0);
    m.def("verify_packing", [] (const Graph & h, const Graph & g, const std::vector<std::vector<int>> & copies, bool perfect) {
        return verify_packing(h, g, to_packing(h, g.size(), copies), perfect).ok;
    }, py::arg("h"), py::arg("g"), py::arg("copies"), py::arg("perfect") = true);

    m.def("default_tau", [] (int q, int r) { return fraction(default_tau(q, r)); }, py::arg("q"), py::arg("r"));
    m.def("pack_h_qr", [] (const Graph & g, const std::vector<std::vector<int>> & classes, int q, int r, py::object tau) {
        Partition p{ g.size(), to_sets(g.size(), classes) };
        auto t = tau.is_none() ? default_tau(q, r) : rational(tau);
        auto res = pack_h_qr(g, p, q, r, t);
        py::dict d;
        d["packing"] = res.packing ? py::cast(embeddings(*res.packing)) : py::none();
        d["failed_level"] = res.failed_level;
        if (res.witness)
            d["witness"] = py::make_tuple(res.witness->deficient.to_vector(), res.witness->neighbourhood.to_vector());
        d["warnings"] = res.warnings;
        return d;
    }, py::arg("g"), py::arg("classes"), py::arg("q"), py::arg("r"), py::arg("tau") = py::none());

    m.def("tidy", [] (const Graph & g, const std::vector<std::vector<int>> & sparse, int r, py::object tau) {
        auto t = tidy(g, to_sets(g.size(), sparse), r, rational(tau));
        py::dict d;
        d["classes"] = sets_of(t.classes);
        std::vector<std::vector<int>> removed;
        for (const auto & c : t.removed)
            removed.push_back(c.embedding);
        d["removed"] = removed;
        d["n_star"] = t.n_star;
        d["k"] = t.k;
        d["warnings"] = t.warnings;
        return d;
    }, py::arg("g"), py::arg("sparse"), py::arg("r"), py::arg("tau"));

    m.def("run_pipeline", [] (const Graph & g, int r, double budget_secs, py::object ladder) {
        PipelineConfig config;
        config.search = budget(budget_secs);
        if (! ladder.is_none()) {
            TauLadder l;
            for (auto v : ladder)
                l.values.push_back(rational(v));
            config.ladder = l;
        }
        auto res = run_pipeline(g, r, config);
        py::dict d;
        d["packing"] = res.packing ? py::cast(embeddings(*res.packing)) : py::none();
        d["path"] = res.path;
        d["q"] = res.q;
        py::list trace;
        for (const auto & s : res.stage_trace)
            trace.append(py::make_tuple(s.stage, s.outcome));
        d["stage_trace"] = trace;
        d["warnings"] = res.warnings;
        return d;
    }, py::arg("g"), py::arg("r"), py::arg("budget_secs") = 60.0, py::arg("ladder") = py::none());

    m.def("threshold_table", [] (int r, int n_max) {
        std::vector<std::pair<int, long long>> out;
        for (const auto & [n, bound] : threshold_table(r, n_max))
            out.emplace_back(n, bound.convert_to<long long>());
        return out;
    }, py::arg("r"), py::arg("n_max"));
}
