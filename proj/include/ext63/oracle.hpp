#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "ext63/graph.hpp"

namespace ext63 {

inline constexpr int kDefaultOrbitBudget = 10;

// Unordered family of disjoint cells covering V; two vertices share a
// cell iff some automorphism maps one onto the other.
struct OrbitPartition {
    std::vector<VertexSet> cells; // each sorted; cells ordered by smallest member
};

namespace detail {

// Joint iterated neighborhood-color refinement. Color ids are assigned
// canonically from sorted signatures, so equal structures in the two
// graphs end up with equal ids.
inline void refine_colors_joint(const Graph& a, std::vector<int>& ca, const Graph& b,
                                std::vector<int>& cb) {
    using Sig = std::pair<int, std::vector<int>>;
    const int total = a.n() + b.n();
    for (int iter = 0; iter < total + 1; ++iter) {
        std::vector<Sig> sa(a.n()), sb(b.n());
        auto sig_of = [](const Graph& g, const std::vector<int>& c, int v) {
            std::vector<int> nb;
            nb.reserve(g.degree(v));
            for (int w : g.neighbors(v))
                nb.push_back(c[w]);
            std::sort(nb.begin(), nb.end());
            return Sig{c[v], std::move(nb)};
        };
        for (int v = 0; v < a.n(); ++v)
            sa[v] = sig_of(a, ca, v);
        for (int v = 0; v < b.n(); ++v)
            sb[v] = sig_of(b, cb, v);
        std::map<Sig, int> ids;
        for (const auto& s : sa)
            ids.emplace(s, 0);
        for (const auto& s : sb)
            ids.emplace(s, 0);
        int next = 0;
        for (auto& [sig, id] : ids)
            id = next++;
        int old_count = 0;
        {
            std::vector<int> all(ca);
            all.insert(all.end(), cb.begin(), cb.end());
            std::sort(all.begin(), all.end());
            old_count = static_cast<int>(std::unique(all.begin(), all.end()) - all.begin());
        }
        for (int v = 0; v < a.n(); ++v)
            ca[v] = ids[sa[v]];
        for (int v = 0; v < b.n(); ++v)
            cb[v] = ids[sb[v]];
        if (next == old_count)
            break;
    }
}

inline bool color_histograms_match(const std::vector<int>& ca, const std::vector<int>& cb) {
    std::vector<int> x = ca, y = cb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

// Backtracking over color- and adjacency-consistent bijections a -> b,
// assigning a's vertices in index order so the first complete mapping is
// the lexicographically least one. on_found returning true stops the
// search.
inline bool iso_search(const Graph& a, const Graph& b, const std::vector<int>& ca,
                       const std::vector<int>& cb,
                       const std::function<bool(const VertexMapping&)>& on_found) {
    const int n = a.n();
    VertexMapping map(n, -1);
    std::vector<char> used(n, 0);

    std::function<bool(int)> go = [&](int v) -> bool {
        if (v == n)
            return on_found(map);
        for (int w = 0; w < n; ++w) {
            if (used[w] || ca[v] != cb[w])
                continue;
            bool ok = true;
            for (int u = 0; u < v; ++u) {
                if (a.has_edge(v, u) != b.has_edge(w, map[u])) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            map[v] = w;
            used[w] = 1;
            if (go(v + 1))
                return true;
            used[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    return go(0);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace detail

inline bool verify_mapping(const Graph& a, const Graph& b, const VertexMapping& f) {
    if (a.n() != b.n() || static_cast<int>(f.size()) != a.n())
        return false;
    std::vector<char> seen(b.n(), 0);
    for (int v = 0; v < a.n(); ++v) {
        if (f[v] < 0 || f[v] >= b.n() || seen[f[v]])
            return false;
        seen[f[v]] = 1;
    }
    for (int u = 0; u < a.n(); ++u)
        for (int v = u + 1; v < a.n(); ++v)
            if (a.has_edge(u, v) != b.has_edge(f[u], f[v]))
                return false;
    return true;
}

inline std::optional<VertexMapping> find_isomorphism_colored(const Graph& a,
                                                             std::vector<int> ca,
                                                             const Graph& b,
                                                             std::vector<int> cb) {
    if (a.n() != b.n() || a.m() != b.m())
        return std::nullopt;
    detail::refine_colors_joint(a, ca, b, cb);
    if (!detail::color_histograms_match(ca, cb))
        return std::nullopt;
    std::optional<VertexMapping> result;
    detail::iso_search(a, b, ca, cb, [&](const VertexMapping& f) {
        result = f;
        return true;
    });
    if (result && !verify_mapping(a, b, *result))
        throw Error("internal: isomorphism search produced an invalid mapping");
    return result;
}

// Exact backtracking isomorphism test; deterministic (first mapping in
// lexicographic order). Degree/neighborhood pruning via color refinement.
inline std::optional<VertexMapping> find_isomorphism(const Graph& a, const Graph& b) {
    return find_isomorphism_colored(a, std::vector<int>(a.n(), 0), b,
                                    std::vector<int>(b.n(), 0));
}

inline OrbitPartition automorphism_orbits_colored(const Graph& g, std::vector<int> colors,
                                                  int budget = kDefaultOrbitBudget) {
    if (g.n() > budget)
        throw BudgetExceeded("automorphism enumeration limited to " + std::to_string(budget) +
                             " vertices (graph has " + std::to_string(g.n()) + ")");
    std::vector<int> ca = colors, cb = colors;
    detail::refine_colors_joint(g, ca, g, cb);
    detail::UnionFind uf(g.n());
    detail::iso_search(g, g, ca, cb, [&](const VertexMapping& f) {
        for (int v = 0; v < g.n(); ++v)
            uf.unite(v, f[v]);
        return false; // enumerate all automorphisms
    });
    std::map<int, VertexSet> cells;
    for (int v = 0; v < g.n(); ++v)
        cells[uf.find(v)].push_back(v);
    OrbitPartition out;
    for (auto& [root, cell] : cells)
        out.cells.push_back(std::move(cell));
    std::sort(out.cells.begin(), out.cells.end(),
              [](const VertexSet& x, const VertexSet& y) { return x.front() < y.front(); });
    return out;
}

inline OrbitPartition automorphism_orbits(const Graph& g, int budget = kDefaultOrbitBudget) {
    return automorphism_orbits_colored(g, std::vector<int>(g.n(), 0), budget);
}

// All 2^(n(n-1)/2) labeled graphs on n vertices in bitmask order.
class GraphEnumerator {
public:
    explicit GraphEnumerator(int n) : n_(n) {
        if (n < 0 || n > 7)
            throw BudgetExceeded("exhaustive enumeration limited to n <= 7");
        end_ = uint64_t{1} << (n * (n - 1) / 2);
    }

    std::optional<Graph> next() {
        if (mask_ >= end_)
            return std::nullopt;
        return graph_from_mask(n_, mask_++);
    }

    uint64_t count() const { return end_; }

private:
    int n_;
    uint64_t mask_ = 0;
    uint64_t end_ = 0;
};

// Rooted-tree isomorphism via the plain engine: both roots get enough
// pendant leaves that any isomorphism must map root to root.
inline bool rooted_trees_isomorphic(const Graph& t1, int r1, const Graph& t2, int r2) {
    if (t1.n() != t2.n())
        return false;
    int max_deg = 0;
    for (int v = 0; v < t1.n(); ++v)
        max_deg = std::max(max_deg, t1.degree(v));
    for (int v = 0; v < t2.n(); ++v)
        max_deg = std::max(max_deg, t2.degree(v));
    const int extra = max_deg + 1;
    auto marked = [&](const Graph& t, int root) {
        EdgeList e = t.edges();
        for (int k = 0; k < extra; ++k)
            e.emplace_back(root, t.n() + k);
        return Graph(t.n() + extra, e);
    };
    return find_isomorphism(marked(t1, r1), marked(t2, r2)).has_value();
}

} // namespace ext63
