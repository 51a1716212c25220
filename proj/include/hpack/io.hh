#ifndef HPACK_IO_HH
#define HPACK_IO_HH

#include <hpack/graph.hh>

#include <iosfwd>
#include <string>
#include <vector>

namespace hpack
{
    /// Edge-list text: a header line `n m`, then m lines `u v` with 0-based endpoints.
    /// Blank lines and lines starting with '#' are skipped. Duplicate edges, loops and
    /// out-of-range endpoints are rejected with a Parse error.
    auto read_edge_list(std::istream & in) -> Graph;
    auto read_edge_list_file(const std::string & path) -> Graph;

    void write_edge_list(std::ostream & out, const Graph & g);
    void write_edge_list_file(const std::string & path, const Graph & g);

    /// Class sidecar: {"classes": [[...], [...]]}.
    auto read_classes(std::istream & in, int host_n) -> Partition;
    auto read_classes_file(const std::string & path, int host_n) -> Partition;
    auto classes_to_json_string(const Partition & p) -> std::string;

    /// Partition from a graph's labels, one class per label value.
    auto partition_from_labels(const Graph & g) -> Partition;
}

#endif
