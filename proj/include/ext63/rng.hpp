#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "ext63/graph.hpp"

namespace ext63 {

// splitmix64; self-contained so seeded outputs are identical on every
// platform (std distributions are not).
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint32_t below(uint32_t bound) { return bound == 0 ? 0 : static_cast<uint32_t>(next() % bound); }

    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
};

inline Graph random_graph(int n, double p, Rng& rng) {
    EdgeList e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p))
                e.emplace_back(u, v);
    return Graph(n, e);
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(static_cast<uint32_t>(i + 1))]);
    return perm;
}

// Random chordal graph built along a perfect elimination order: each
// vertex's later neighborhood is a vertex p plus a random subset of p's
// later closed neighborhood, which is a clique by induction.
inline Graph random_chordal(int n, double density, Rng& rng) {
    std::vector<std::vector<int>> later(n);
    EdgeList edges;
    for (int i = n - 2; i >= 0; --i) {
        if (!rng.chance(0.9))
            continue; // occasional isolated-ish vertex
        int p = i + 1 + static_cast<int>(rng.below(static_cast<uint32_t>(n - 1 - i)));
        later[i].push_back(p);
        for (int w : later[p])
            if (rng.chance(density))
                later[i].push_back(w);
        for (int w : later[i])
            edges.push_back(make_edge(i, w));
    }
    return Graph(n, edges);
}

} // namespace ext63
