#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "ext63/forbidden.hpp"
#include "ext63/graph.hpp"
#include "ext63/oracle.hpp"

namespace ext63::testing {

using OccurrenceKey = std::pair<VertexSet, int>; // (sorted host vertices, kind)

inline std::vector<OccurrenceKey> occurrence_keys(const std::vector<ForbiddenOccurrence>& occs) {
    std::vector<OccurrenceKey> keys;
    keys.reserve(occs.size());
    for (const auto& occ : occs)
        keys.emplace_back(occ.sorted_vertices(), static_cast<int>(occ.kind));
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Independent detector: every 6-subset against every pattern through the
// backtracking isomorphism oracle. Slow and simple on purpose.
inline std::vector<OccurrenceKey> brute_occurrence_keys(const Graph& g,
                                                        const VertexSet& excluded = {}) {
    std::vector<int> cand;
    for (int v = 0; v < g.n(); ++v)
        if (!std::binary_search(excluded.begin(), excluded.end(), v))
            cand.push_back(v);
    std::vector<OccurrenceKey> keys;
    const int k = static_cast<int>(cand.size());
    std::vector<int> idx(6);
    auto scan = [&](auto&& self, int depth, int start) -> void {
        if (depth == 6) {
            VertexSet subset;
            for (int i : idx)
                subset.push_back(cand[i]);
            const auto sub = induced_subgraph(g, subset);
            for (const auto& tpl : catalog())
                if (find_isomorphism(sub.graph, tpl.pattern))
                    keys.emplace_back(subset, static_cast<int>(tpl.kind));
            return;
        }
        for (int i = start; i < k; ++i) {
            idx[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    if (k >= 6)
        scan(scan, 0, 0);
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace ext63::testing
