#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ext63/chordal.hpp"
#include "ext63/forbidden.hpp"
#include "ext63/graph.hpp"
#include "ext63/marker.hpp"

namespace ext63 {

struct RoundRecord {
    int round_index = 0; // 1-based within this reduction
    std::vector<ForbiddenOccurrence> occurrences;
    EdgeList added_edges; // in discovery order; non-edges at round start
    std::map<int, CategoryCounts> code_delta;
};

struct ReductionTrace {
    bool booth_applied = false;
    std::vector<RoundRecord> rounds;
    bool final_member = false;
    std::vector<ForbiddenOccurrence> unresolved;
};

// Subdivide every edge, then join all original vertices pairwise. The
// result has n + m vertices and 2m + n(n-1)/2 edges and is always chordal
// (subdivision vertices are simplicial; peeling them leaves a clique).
// Original vertices keep their ids; the subdivision vertex of the k-th
// edge in lexicographic order is n + k.
inline MarkedGraph booth_reduce(const Graph& g) {
    const int n = g.n();
    const EdgeList base = g.edges();
    EdgeList edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    for (size_t k = 0; k < base.size(); ++k) {
        edges.emplace_back(base[k].first, n + static_cast<int>(k));
        edges.emplace_back(base[k].second, n + static_cast<int>(k));
    }
    MarkedGraph mg = wrap_graph(Graph(n + static_cast<int>(base.size()), edges));
    mg.n_original = n;
    mg.original_edges = base;
    return mg;
}

// Rounds of find / fix / mark until the core is free of forbidden
// subgraphs. Occurrence search never sees gadget vertices, so fix edges
// never touch them; gadget trees are rebuilt from the accumulated codes
// after the loop. Within a round every occurrence found at round start is
// fixed; an edge requested twice is added once with all requesting
// endpoints' counts recorded.
inline std::pair<MarkedGraph, ReductionTrace> eliminate_forbidden(const MarkedGraph& mg,
                                                                  bool attach = true) {
    const int nc = mg.core_count();
    for (int i = 0; i < nc; ++i)
        if (mg.core[i] != i)
            throw PreconditionFailed("core vertices must occupy ids [0, |core|)");

    Graph core = mg.has_gadgets() ? mg.core_graph() : mg.graph;
    std::map<int, GadgetCode> codes = mg.code_of;
    int base_rounds = 0;
    for (const auto& [v, code] : codes)
        base_rounds = std::max(base_rounds, code.round_count());
    for (auto& [v, code] : codes)
        code.ensure_rounds(base_rounds);

    ReductionTrace trace;
    const long long round_cap = static_cast<long long>(nc) * (nc - 1) / 2;
    for (int r = 1;; ++r) {
        auto occs = find_occurrences(core, {});
        if (occs.empty())
            break;
        if (r > round_cap)
            throw RoundLimitExceeded("elimination exceeded the edge-count round bound");
        RoundRecord rec;
        rec.round_index = r;
        rec.occurrences = occs;
        std::set<Edge> added_set;
        for (const auto& occ : occs) {
            const auto& tpl = catalog()[static_cast<size_t>(occ.kind)];
            const EdgeList fixes = fix_edges(core, occ);
            for (size_t fi = 0; fi < fixes.size(); ++fi) {
                if (added_set.insert(fixes[fi]).second)
                    rec.added_edges.push_back(fixes[fi]);
                const auto& [a, b] = tpl.fixes[fi];
                auto bump = [&](int tv) {
                    auto& delta = rec.code_delta[occ.embed[tv]];
                    ++delta[category_slot(occ.kind, tpl.roles[tv])];
                };
                bump(a);
                bump(b);
            }
        }
        EdgeList next_edges = core.edges();
        next_edges.insert(next_edges.end(), rec.added_edges.begin(), rec.added_edges.end());
        core = Graph(nc, next_edges);
        for (const auto& [v, delta] : rec.code_delta) {
            auto& code = codes[v];
            code.ensure_rounds(base_rounds + r - 1);
            code.rounds.push_back(delta);
        }
        trace.rounds.push_back(std::move(rec));
    }

    const int total_rounds = base_rounds + static_cast<int>(trace.rounds.size());
    for (auto& [v, code] : codes)
        code.ensure_rounds(total_rounds);

    const MembershipVerdict verdict = is_extended_class(core);
    trace.final_member = verdict.member();
    if (verdict.kind == MembershipVerdict::Kind::HasForbidden)
        throw Error("internal: occurrences remain after the elimination loop");

    MarkedGraph out;
    if (attach) {
        out = attach_gadgets(core, codes, mg.original_edges);
    } else {
        out = wrap_graph(core);
        out.original_edges = mg.original_edges;
        out.code_of = codes;
    }
    out.n_original = mg.n_original;
    return {out, std::move(trace)};
}

// Chordality gate, Booth reduction when needed, then elimination.
inline std::pair<MarkedGraph, ReductionTrace> to_extended(const Graph& g, bool attach = true) {
    const ChordalityVerdict c = check_chordal(g);
    MarkedGraph base = c.chordal ? wrap_graph(g) : booth_reduce(g);
    auto [out, trace] = eliminate_forbidden(base, attach);
    trace.booth_applied = !c.chordal;
    return {std::move(out), std::move(trace)};
}

inline nlohmann::ordered_json occurrence_to_json(const ForbiddenOccurrence& occ) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(occ.kind);
    j["verts"] = occ.embed;
    return j;
}

inline nlohmann::ordered_json trace_to_json(const ReductionTrace& t) {
    nlohmann::ordered_json j;
    j["booth"] = t.booth_applied;
    j["rounds"] = nlohmann::ordered_json::array();
    for (const auto& rec : t.rounds) {
        nlohmann::ordered_json r;
        r["added"] = nlohmann::ordered_json::array();
        for (const auto& [u, v] : rec.added_edges)
            r["added"].push_back({u, v});
        r["occurrences"] = nlohmann::ordered_json::array();
        for (const auto& occ : rec.occurrences)
            r["occurrences"].push_back(occurrence_to_json(occ));
        j["rounds"].push_back(std::move(r));
    }
    j["member"] = t.final_member;
    return j;
}

} // namespace ext63
