#include <hpack/io.hh>
#include <hpack/error.hh>

#include <json.hpp>

#include <fstream>
#include <sstream>

using nlohmann::json;
using std::istream;
using std::ostream;
using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    namespace
    {
        auto next_data_line(istream & in, string & line, int & line_no) -> bool
        {
            while (std::getline(in, line)) {
                ++line_no;
                auto pos = line.find_first_not_of(" \t\r");
                if (pos == string::npos || line[pos] == '#')
                    continue;
                return true;
            }
            return false;
        }
    }

    auto read_edge_list(istream & in) -> Graph
    {
        string line;
        int line_no = 0;
        if (! next_data_line(in, line, line_no))
            throw Error{ ErrorKind::Parse, "missing `n m` header" };

        long long n = -1, m = -1;
        {
            std::istringstream header(line);
            if (! (header >> n >> m) || n < 0 || m < 0)
                throw Error{ ErrorKind::Parse, "bad header on line " + to_string(line_no) };
        }

        GraphBuilder b{ int(n) };
        for (long long e = 0 ; e < m ; ++e) {
            if (! next_data_line(in, line, line_no))
                throw Error{ ErrorKind::Parse, "expected " + to_string(m) + " edges, found " + to_string(e) };
            std::istringstream row(line);
            long long u, v;
            if (! (row >> u >> v))
                throw Error{ ErrorKind::Parse, "bad edge on line " + to_string(line_no) };
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw Error{ ErrorKind::Parse, "endpoint out of range on line " + to_string(line_no) };
            if (u == v)
                throw Error{ ErrorKind::Parse, "loop on line " + to_string(line_no) };
            if (b.has_edge(int(u), int(v)))
                throw Error{ ErrorKind::Parse, "duplicate edge on line " + to_string(line_no) };
            b.add_edge(int(u), int(v));
        }
        return b.build();
    }

    auto read_edge_list_file(const string & path) -> Graph
    {
        std::ifstream in(path);
        if (! in)
            throw Error{ ErrorKind::Parse, "cannot open " + path };
        return read_edge_list(in);
    }

    void write_edge_list(ostream & out, const Graph & g)
    {
        out << g.size() << ' ' << g.edge_count() << '\n';
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << '\n';
    }

    void write_edge_list_file(const string & path, const Graph & g)
    {
        std::ofstream out(path);
        if (! out)
            throw Error{ ErrorKind::Parse, "cannot write " + path };
        write_edge_list(out, g);
    }

    auto read_classes(istream & in, int host_n) -> Partition
    {
        json doc;
        try {
            in >> doc;
        }
        catch (const json::exception & e) {
            throw Error{ ErrorKind::Parse, string{ "classes JSON: " } + e.what() };
        }
        if (! doc.is_object() || ! doc.contains("classes") || ! doc["classes"].is_array())
            throw Error{ ErrorKind::Parse, "classes JSON needs a \"classes\" array" };

        Partition p;
        p.host_n = host_n;
        for (auto & cls : doc["classes"]) {
            if (! cls.is_array())
                throw Error{ ErrorKind::Parse, "each class must be an array of vertices" };
            VertexSet s(host_n);
            for (auto & v : cls) {
                if (! v.is_number_integer())
                    throw Error{ ErrorKind::Parse, "vertex indices must be integers" };
                auto x = v.get<long long>();
                if (x < 0 || x >= host_n)
                    throw Error{ ErrorKind::Parse, "vertex " + to_string(x) + " out of range" };
                if (s.contains(int(x)))
                    throw Error{ ErrorKind::Parse, "vertex " + to_string(x) + " repeated in a class" };
                s.insert(int(x));
            }
            p.classes.push_back(std::move(s));
        }
        p.validate();
        return p;
    }

    auto read_classes_file(const string & path, int host_n) -> Partition
    {
        std::ifstream in(path);
        if (! in)
            throw Error{ ErrorKind::Parse, "cannot open " + path };
        return read_classes(in, host_n);
    }

    auto classes_to_json_string(const Partition & p) -> string
    {
        json classes = json::array();
        for (auto & c : p.classes)
            classes.push_back(c.to_vector());
        return json{ { "classes", classes } }.dump();
    }

    auto partition_from_labels(const Graph & g) -> Partition
    {
        if (! g.has_labels())
            throw Error{ ErrorKind::BadParameter, "graph carries no class labels" };
        return Partition::from_labels(g.size(), g.labels());
    }
}
