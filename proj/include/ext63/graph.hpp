#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ext63 {

using VertexId = int;
using Edge = std::pair<int, int>; // normalized: first < second
using EdgeList = std::vector<Edge>;
using VertexSet = std::vector<int>; // sorted, no duplicates
using VertexMapping = std::vector<int>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SyntaxError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct DuplicateEdgeError : Error { using Error::Error; };
struct SelfLoopError : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NotChordalError : Error { using Error::Error; };
struct MalformedGadget : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct RoundLimitExceeded : Error { using Error::Error; };
struct NotAdjacentError : Error { using Error::Error; };
struct AlreadyPresentError : Error { using Error::Error; };

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple undirected graph over dense vertex ids [0, n). Immutable after
// construction; all transformations below return fresh graphs.
//
// Adjacency is kept as sorted neighbor lists plus, for small n, a bit
// matrix for O(1) edge tests. Gadget-bearing graphs can grow past the bit
// matrix threshold; edge tests then fall back to binary search.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n, const EdgeList& edges = {}) : n_(n) {
        if (n < 0)
            throw RangeError("vertex count must be non-negative");
        adj_.assign(n_, {});
        if (n_ <= kBitLimit) {
            words_ = (n_ + 63) / 64;
            bits_.assign(static_cast<size_t>(n_) * words_, 0);
        }
        for (const auto& [u, v] : edges)
            add_edge_checked(u, v);
        for (auto& nb : adj_)
            std::sort(nb.begin(), nb.end());
    }

    int n() const { return n_; }
    int m() const { return m_; }

    bool has_edge(int u, int v) const {
        if (u == v)
            return false;
        if (words_ > 0)
            return (bits_[static_cast<size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    EdgeList edges() const {
        EdgeList out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph& o) const {
        return n_ == o.n_ && m_ == o.m_ && adj_ == o.adj_;
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    static constexpr int kBitLimit = 4096;

    void add_edge_checked(int u, int v) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw RangeError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") with n = " + std::to_string(n_));
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (has_edge_unsorted(u, v))
            throw DuplicateEdgeError("duplicate edge (" + std::to_string(u) + ", " +
                                     std::to_string(v) + ")");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        if (words_ > 0) {
            bits_[static_cast<size_t>(u) * words_ + (v >> 6)] |= uint64_t{1} << (v & 63);
            bits_[static_cast<size_t>(v) * words_ + (u >> 6)] |= uint64_t{1} << (u & 63);
        }
        ++m_;
    }

    bool has_edge_unsorted(int u, int v) const {
        if (words_ > 0)
            return (bits_[static_cast<size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
        const auto& nb = adj_[u];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }

    int n_ = 0;
    int words_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<uint64_t> bits_;
};

namespace detail {

inline bool parse_int(std::string_view tok, int& out) {
    if (tok.empty())
        return false;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t')
            ++j;
        if (j > i)
            toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

} // namespace detail

// Edge-list text format: line 1 is "n m", followed by exactly m lines
// "u v" with 0 <= u < v < n, ASCII decimal.
inline Graph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    for (auto& ln : lines) {
        if (!ln.empty() && ln.back() == '\r')
            ln.remove_suffix(1);
    }

    size_t li = 0;
    auto next_line = [&]() -> std::string_view {
        while (li < lines.size()) {
            auto toks = detail::split_ws(lines[li]);
            if (!toks.empty())
                return lines[li++];
            ++li;
        }
        throw SyntaxError("unexpected end of input");
    };

    auto header = detail::split_ws(next_line());
    if (header.size() != 2)
        throw SyntaxError("header must be \"n m\"");
    int n = 0, m = 0;
    if (!detail::parse_int(header[0], n) || !detail::parse_int(header[1], m))
        throw SyntaxError("header tokens must be decimal integers");
    if (n < 0 || m < 0)
        throw SyntaxError("header values must be non-negative");

    EdgeList edges;
    edges.reserve(m);
    for (int k = 0; k < m; ++k) {
        auto toks = detail::split_ws(next_line());
        if (toks.size() != 2)
            throw SyntaxError("edge line must be \"u v\"");
        int u = 0, v = 0;
        if (!detail::parse_int(toks[0], u) || !detail::parse_int(toks[1], v))
            throw SyntaxError("edge tokens must be decimal integers");
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (u > v)
            throw SyntaxError("edge must be written with u < v");
        edges.emplace_back(u, v);
    }
    while (li < lines.size()) {
        if (!detail::split_ws(lines[li]).empty())
            throw SyntaxError("trailing content after edge list");
        ++li;
    }
    return Graph(n, edges);
}

inline std::string serialize_graph(const Graph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
    for (const auto& [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline VertexSet normalized_vertex_set(const Graph& g, VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s)
        if (v < 0 || v >= g.n())
            throw RangeError("vertex " + std::to_string(v) + " out of range");
    return s;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_new; // size g.n(); -1 where absent
    std::vector<int> to_old; // size |s|; the sorted subset
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s_in) {
    VertexSet s = normalized_vertex_set(g, s_in);
    InducedSubgraph out;
    out.to_old = s;
    out.to_new.assign(g.n(), -1);
    for (size_t i = 0; i < s.size(); ++i)
        out.to_new[s[i]] = static_cast<int>(i);
    EdgeList edges;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j]))
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    out.graph = Graph(static_cast<int>(s.size()), edges);
    return out;
}

inline Graph complement(const Graph& g) {
    EdgeList edges;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v))
                edges.emplace_back(u, v);
    return Graph(g.n(), edges);
}

inline std::pair<Graph, int> disjoint_union(const Graph& a, const Graph& b) {
    EdgeList edges = a.edges();
    const int offset = a.n();
    for (const auto& [u, v] : b.edges())
        edges.emplace_back(u + offset, v + offset);
    return {Graph(a.n() + b.n(), edges), offset};
}

// Relabel: vertex v of g becomes perm[v].
inline Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n())
        throw RangeError("permutation size mismatch");
    EdgeList edges;
    edges.reserve(g.m());
    for (const auto& [u, v] : g.edges())
        edges.push_back(make_edge(perm[u], perm[v]));
    return Graph(g.n(), edges);
}

inline Graph make_path(int n) {
    EdgeList e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph make_cycle(int n) {
    if (n < 3)
        throw RangeError("cycle needs at least 3 vertices");
    EdgeList e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return Graph(n, e);
}

inline Graph make_clique(int n) {
    EdgeList e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return Graph(n, e);
}

// Labeled graph from a bitmask over vertex pairs in lexicographic order
// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline Graph graph_from_mask(int n, uint64_t mask) {
    EdgeList e;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if ((mask >> bit) & 1u)
                e.emplace_back(u, v);
    return Graph(n, e);
}

} // namespace ext63
