#include <hpack/constructions.hh>
#include <hpack/error.hh>
#include <hpack/invariants.hh>

#include <algorithm>
#include <string>

using std::string;
using std::vector;

namespace hpack
{
    using std::to_string;

    namespace
    {
        void check_min_degree(const Graph & g, const Rational & expected, const string & what)
        {
            int actual = min_degree(g);
            if (Rational{ actual } != expected)
                throw Error{ ErrorKind::InternalError, what + ": minimum degree " + to_string(actual) + " but expected " + to_string(expected) };
        }
    }

    auto k_r_minus(int r) -> Graph
    {
        if (r < 3)
            throw Error{ ErrorKind::BadParameter, "K_r^- needs r >= 3, got " + to_string(r) };
        return GraphBuilder::from(complete_graph(r)).remove_edge(0, 1).build();
    }

    auto bottle_graph(const Graph & h) -> Graph
    {
        auto profile = colouring_profile(h);
        if (profile.chi < 2)
            throw Error{ ErrorKind::Degenerate, "bottle graph needs chi >= 2" };
        vector<int> sizes(std::size_t(profile.chi - 1), h.size() - profile.sigma);
        sizes.push_back((profile.chi - 1) * profile.sigma);
        return complete_multipartite(sizes);
    }

    auto prop3_extremal(int r, int k) -> Graph
    {
        if (r < 4 || k < 1)
            throw Error{ ErrorKind::BadParameter, "prop3 construction needs r >= 4 and k >= 1" };
        int n = k * r;
        int rest = n - (k - 1);
        vector<int> sizes;
        if (k > 1)
            sizes.push_back(k - 1);
        for (int i = 0 ; i < r - 2 ; ++i)
            sizes.push_back(rest / (r - 2) + (i < rest % (r - 2) ? 1 : 0));

        auto g = complete_multipartite(sizes);
        Rational coefficient = 1 - make_rational(r - 1, r * (r - 2));
        check_min_degree(g, Rational{ ceil(coefficient * n) - 1 }, "prop3(" + to_string(r) + "," + to_string(k) + ")");
        return g;
    }

    auto multipartite_classes(const Graph & h) -> vector<VertexSet>
    {
        auto classes = connected_components(complement(h));
        for (auto & c : classes)
            for (int v = c.first() ; v != -1 ; v = c.next(v))
                if (h.neighbours(v).intersects(c) || (h.neighbours(v) | c).count() != h.size())
                    return {};
        return classes;
    }

    auto prop4_extremal(const Graph & h, int k) -> Graph
    {
        if (k < 1)
            throw Error{ ErrorKind::BadParameter, "prop4 construction needs k >= 1" };
        auto classes = multipartite_classes(h);
        if (classes.size() < 3)
            throw Error{ ErrorKind::BadParameter, "prop4 construction needs a complete l-partite pattern with l >= 3" };

        vector<int> class_sizes;
        for (auto & c : classes)
            class_sizes.push_back(c.count());
        std::sort(class_sizes.begin(), class_sizes.end());
        for (std::size_t i = 1 ; i < class_sizes.size() ; ++i)
            if (class_sizes[i] < 3)
                throw Error{ ErrorKind::BadParameter, "prop4 construction needs every class but the smallest to have size >= 3" };

        int l = int(classes.size()), order = h.size(), sigma = class_sizes.front();
        vector<int> sizes;
        sizes.push_back((order - sigma) * k + 1);
        for (int i = 1 ; i < l - 1 ; ++i)
            sizes.push_back((order - sigma) * k);
        sizes.push_back(k * (l - 1) * sigma - 1);

        auto base = complete_multipartite(sizes);
        GraphBuilder b = GraphBuilder::from(base);
        int a1 = sizes.front();
        int paired = a1 % 2 == 0 ? a1 : a1 - 3;
        for (int v = 0 ; v + 1 < paired ; v += 2)
            b.add_edge(v, v + 1);
        if (a1 % 2 == 1) {
            b.add_edge(a1 - 3, a1 - 2);
            b.add_edge(a1 - 2, a1 - 1);
        }
        auto g = b.build();

        Rational chi_cr = make_rational((l - 1) * order, order - sigma);
        check_min_degree(g, (1 - 1 / chi_cr) * g.size(), "prop4(k=" + to_string(k) + ")");
        return g;
    }

    auto canonical_spec(int r, int q, int n) -> CanonicalSpec
    {
        if (r < 4)
            throw Error{ ErrorKind::BadParameter, "canonical partition needs r >= 4" };
        if (q < 1 || q > r - 2)
            throw Error{ ErrorKind::BadParameter, "canonical partition needs 1 <= q <= r-2" };
        if (n <= 0 || n % (r * (r - 2)) != 0)
            throw Error{ ErrorKind::BadParameter, "n = " + to_string(n) + " is not a positive multiple of " + to_string(r * (r - 2)) };

        CanonicalSpec spec{ r, q, n, {} };
        int sparse = (r - 1) * n / (r * (r - 2));
        spec.class_sizes.assign(std::size_t(q), sparse);
        spec.class_sizes.push_back(n - q * sparse);
        return spec;
    }

    auto canonical_graph(const CanonicalSpec & spec) -> Graph
    {
        auto checked = canonical_spec(spec.r, spec.q, spec.n);
        if (checked.class_sizes != spec.class_sizes)
            throw Error{ ErrorKind::BadParameter, "class sizes do not match the canonical sizes" };

        vector<int> labels;
        for (std::size_t c = 0 ; c < spec.class_sizes.size() ; ++c)
            labels.insert(labels.end(), std::size_t(spec.class_sizes[c]), int(c));

        GraphBuilder b(spec.n);
        for (int u = 0 ; u < spec.n ; ++u)
            for (int v = u + 1 ; v < spec.n ; ++v)
                if (labels[std::size_t(u)] != labels[std::size_t(v)] || labels[std::size_t(u)] == spec.q)
                    b.add_edge(u, v);
        b.set_labels(std::move(labels));
        return b.build();
    }

    auto b1_order(int r, int q) -> int
    {
        return (r - q - 1) * (r - 1) - 1;
    }

    auto b1_graph(int r, int q) -> Graph
    {
        if (r < 4 || q < 1 || q > r - 2)
            throw Error{ ErrorKind::BadParameter, "B_1 needs r >= 4 and 1 <= q <= r-2" };

        int colours = r - q - 1;
        GraphBuilder b(b1_order(r, q));
        vector<int> labels;
        int next = 0;

        for (int c = 0 ; c < q ; ++c) {
            for (int i = 0 ; i < colours ; ++i) {
                labels.push_back(i);
                for (int j = 0 ; j < i ; ++j)
                    b.add_edge(next + j, next + i);
            }
            next += colours;
        }

        for (int j = 0 ; j < r - q - 2 ; ++j) {
            int doubled = j + 1;
            labels.push_back(doubled);
            labels.push_back(doubled);
            for (int i = 0 ; i < colours ; ++i)
                if (i != doubled)
                    labels.push_back(i);
            for (int u = 0 ; u < r - q ; ++u)
                for (int v = u + 1 ; v < r - q ; ++v)
                    if (u != 0 || v != 1)
                        b.add_edge(next + u, next + v);
            next += r - q;
        }

        b.set_labels(std::move(labels));
        return b.build();
    }

    auto h_qr_graph(int q, int r) -> Graph
    {
        if (q < 1 || r < 1)
            throw Error{ ErrorKind::BadParameter, "H_{q,r} needs q >= 1 and r >= 1" };
        vector<int> sizes(std::size_t(q), r);
        sizes.push_back(1);
        return complete_multipartite(sizes);
    }
}
