#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "ext63/graph.hpp"

namespace ext63 {

// Verdict carries its own certificate: a perfect elimination ordering
// (eliminate peo[0] first; every vertex's later neighbors form a clique)
// or a chordless cycle of length >= 4.
struct ChordalityVerdict {
    bool chordal = false;
    std::vector<int> peo;
    std::vector<int> hole;
};

// Lexicographic BFS visit order, started at vertex 0, ties broken by
// smallest index. O(n^2) label comparison; fine at this scale.
inline std::vector<int> lex_bfs_order(const Graph& g) {
    const int n = g.n();
    std::vector<std::vector<int>> label(n);
    std::vector<char> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);
    // label x precedes label y when x records an earlier visit time at the
    // first difference, or extends y.
    auto better = [](const std::vector<int>& x, const std::vector<int>& y) {
        const size_t k = std::min(x.size(), y.size());
        for (size_t i = 0; i < k; ++i)
            if (x[i] != y[i])
                return x[i] < y[i];
        return x.size() > y.size();
    };
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (visited[v])
                continue;
            if (pick < 0 || better(label[v], label[pick]))
                pick = v;
        }
        visited[pick] = 1;
        order.push_back(pick);
        for (int w : g.neighbors(pick))
            if (!visited[w])
                label[w].push_back(step);
    }
    return order;
}

inline bool is_simplicial_in(const Graph& g, int v, const std::vector<char>& in_set) {
    const auto& nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i) {
        if (!in_set[nb[i]])
            continue;
        for (size_t j = i + 1; j < nb.size(); ++j)
            if (in_set[nb[j]] && !g.has_edge(nb[i], nb[j]))
                return false;
    }
    return true;
}

inline VertexSet simplicial_vertices(const Graph& g) {
    std::vector<char> all(g.n(), 1);
    VertexSet out;
    for (int v = 0; v < g.n(); ++v)
        if (is_simplicial_in(g, v, all))
            out.push_back(v);
    return out;
}

namespace detail {

// Locate a chordless cycle of length >= 4 in a graph known not to be
// chordal: for a vertex v with nonadjacent neighbors p, w, a shortest
// p-w path avoiding the rest of N[v] closes into a chordless cycle.
inline std::vector<int> find_hole(const Graph& g) {
    const int n = g.n();
    for (int v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        for (size_t i = 0; i < nb.size(); ++i) {
            for (size_t j = i + 1; j < nb.size(); ++j) {
                const int p = nb[i], w = nb[j];
                if (g.has_edge(p, w))
                    continue;
                std::vector<char> blocked(n, 0);
                blocked[v] = 1;
                for (int x : nb)
                    if (x != p && x != w)
                        blocked[x] = 1;
                std::vector<int> parent(n, -2);
                std::deque<int> queue{p};
                parent[p] = -1;
                while (!queue.empty() && parent[w] == -2) {
                    int cur = queue.front();
                    queue.pop_front();
                    for (int nx : g.neighbors(cur)) {
                        if (blocked[nx] || parent[nx] != -2)
                            continue;
                        parent[nx] = cur;
                        queue.push_back(nx);
                    }
                }
                if (parent[w] == -2)
                    continue;
                std::vector<int> path;
                for (int cur = w; cur != -1; cur = parent[cur])
                    path.push_back(cur);
                std::reverse(path.begin(), path.end()); // p ... w
                std::vector<int> hole{v};
                hole.insert(hole.end(), path.begin(), path.end());
                return hole;
            }
        }
    }
    return {};
}

inline bool is_chordless_cycle(const Graph& g, const std::vector<int>& cyc) {
    const int k = static_cast<int>(cyc.size());
    if (k < 4)
        return false;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (g.has_edge(cyc[i], cyc[j]) != consecutive)
                return false;
        }
    return true;
}

} // namespace detail

inline ChordalityVerdict check_chordal(const Graph& g) {
    const std::vector<int> visit = lex_bfs_order(g);
    const int n = g.n();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i)
        pos[visit[i]] = i;

    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
        const int x = visit[i];
        std::vector<int> pred;
        for (int w : g.neighbors(x))
            if (pos[w] < i)
                pred.push_back(w);
        for (size_t a = 0; a < pred.size() && ok; ++a)
            for (size_t b = a + 1; b < pred.size() && ok; ++b)
                if (!g.has_edge(pred[a], pred[b]))
                    ok = false;
    }

    ChordalityVerdict verdict;
    if (ok) {
        verdict.chordal = true;
        verdict.peo.assign(visit.rbegin(), visit.rend());
    } else {
        verdict.chordal = false;
        verdict.hole = detail::find_hole(g);
        if (!detail::is_chordless_cycle(g, verdict.hole))
            throw Error("internal: hole recovery failed");
    }
    return verdict;
}

} // namespace ext63
