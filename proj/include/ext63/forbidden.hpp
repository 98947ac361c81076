#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ext63/chordal.hpp"
#include "ext63/graph.hpp"
#include "ext63/oracle.hpp"

namespace ext63 {

// The five 6-vertex forbidden patterns. Enumerator order is load-bearing:
// occurrence lists sort by (host vertex set, kind) with this order.
enum class ForbiddenKind : int {
    H1NoDashed = 0,
    H1OneDashed = 1,
    H1BothDashed = 2,
    H2 = 3,
    H3 = 4,
};

inline const char* kind_name(ForbiddenKind k) {
    switch (k) {
    case ForbiddenKind::H1NoDashed: return "H1_no_dashed";
    case ForbiddenKind::H1OneDashed: return "H1_one_dashed";
    case ForbiddenKind::H1BothDashed: return "H1_both_dashed";
    case ForbiddenKind::H2: return "H2";
    case ForbiddenKind::H3: return "H3";
    }
    return "?";
}

inline std::optional<ForbiddenKind> kind_from_name(std::string name) {
    for (char& c : name)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == "h1_no_dashed") return ForbiddenKind::H1NoDashed;
    if (name == "h1_one_dashed") return ForbiddenKind::H1OneDashed;
    if (name == "h1_both_dashed") return ForbiddenKind::H1BothDashed;
    if (name == "h2") return ForbiddenKind::H2;
    if (name == "h3") return ForbiddenKind::H3;
    return std::nullopt;
}

enum class NodeRole : int { Type1 = 0, Type2 = 1 };

struct ForbiddenTemplate {
    ForbiddenKind kind;
    Graph pattern;                 // on vertices 0..5
    std::array<NodeRole, 6> roles; // per template vertex
    std::array<Edge, 4> fixes;     // template-vertex pairs to connect
};

// Occurrence = induced copy; embed maps template vertex -> host vertex.
struct ForbiddenOccurrence {
    ForbiddenKind kind;
    std::array<int, 6> embed;

    VertexSet sorted_vertices() const {
        VertexSet v(embed.begin(), embed.end());
        std::sort(v.begin(), v.end());
        return v;
    }
};

namespace detail {

// H1: two adjacent centers (2, 3); outer pair {0, 1} on center 2, outer
// pair {4, 5} on center 3; the outer-pair edges 0-1 and 4-5 are the
// optional ones. H2: tips 0 and 5, middles 1..4. H3 = H2 minus edge 1-3.
inline std::array<ForbiddenTemplate, 5> build_catalog() {
    const EdgeList h1_base = {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}};
    const std::array<NodeRole, 6> h1_roles = {NodeRole::Type1, NodeRole::Type1, NodeRole::Type2,
                                              NodeRole::Type2, NodeRole::Type1, NodeRole::Type1};
    const std::array<Edge, 4> h1_fixes = {Edge{0, 3}, Edge{1, 3}, Edge{2, 4}, Edge{2, 5}};

    EdgeList h1_one = h1_base;
    h1_one.emplace_back(0, 1);
    EdgeList h1_both = h1_one;
    h1_both.emplace_back(4, 5);

    const EdgeList h2_edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4},
                               {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}};
    EdgeList h3_edges;
    for (const auto& e : h2_edges)
        if (e != Edge{1, 3})
            h3_edges.push_back(e);
    const std::array<NodeRole, 6> h23_roles = {NodeRole::Type1, NodeRole::Type2, NodeRole::Type2,
                                               NodeRole::Type2, NodeRole::Type2, NodeRole::Type1};
    const std::array<Edge, 4> h23_fixes = {Edge{0, 3}, Edge{0, 4}, Edge{1, 5}, Edge{2, 5}};

    return {
        ForbiddenTemplate{ForbiddenKind::H1NoDashed, Graph(6, h1_base), h1_roles, h1_fixes},
        ForbiddenTemplate{ForbiddenKind::H1OneDashed, Graph(6, h1_one), h1_roles, h1_fixes},
        ForbiddenTemplate{ForbiddenKind::H1BothDashed, Graph(6, h1_both), h1_roles, h1_fixes},
        ForbiddenTemplate{ForbiddenKind::H2, Graph(6, h2_edges), h23_roles, h23_fixes},
        ForbiddenTemplate{ForbiddenKind::H3, Graph(6, h3_edges), h23_roles, h23_fixes},
    };
}

// Bit index of position pair (i, j), i < j < 6, in lexicographic order.
inline constexpr int pair_bit(int i, int j) { return i * (11 - i) / 2 + (j - i - 1); }

// 15-bit adjacency mask -> kind, over all labeled copies of the five
// patterns. 32 KiB once; turns the 6-subset scan into a table lookup.
inline const std::array<int8_t, 1 << 15>& pattern_mask_table();

} // namespace detail

inline const std::array<ForbiddenTemplate, 5>& catalog() {
    static const std::array<ForbiddenTemplate, 5> k = detail::build_catalog();
    return k;
}

namespace detail {

inline const std::array<int8_t, 1 << 15>& pattern_mask_table() {
    static const std::array<int8_t, 1 << 15> table = [] {
        std::array<int8_t, 1 << 15> t{};
        t.fill(-1);
        for (const auto& tpl : catalog()) {
            std::array<int, 6> perm = {0, 1, 2, 3, 4, 5};
            do {
                int mask = 0;
                for (const auto& [a, b] : tpl.pattern.edges()) {
                    const int i = std::min(perm[a], perm[b]);
                    const int j = std::max(perm[a], perm[b]);
                    mask |= 1 << pair_bit(i, j);
                }
                const int8_t kind = static_cast<int8_t>(tpl.kind);
                if (t[mask] != -1 && t[mask] != kind)
                    throw Error("internal: forbidden patterns are not pairwise distinct");
                t[mask] = kind;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return t;
    }();
    return table;
}

// First (lexicographic) embedding of the template onto the given host
// 6-tuple, which is known to induce a copy of the pattern.
inline std::array<int, 6> first_embedding(const ForbiddenTemplate& tpl,
                                          const std::array<int, 6>& hosts, const Graph& g) {
    std::array<int, 6> embed{};
    std::array<char, 6> used{};
    std::function<bool(int)> go = [&](int t) -> bool {
        if (t == 6)
            return true;
        for (int p = 0; p < 6; ++p) {
            if (used[p])
                continue;
            bool ok = true;
            for (int u = 0; u < t && ok; ++u)
                if (tpl.pattern.has_edge(t, u) != g.has_edge(hosts[p], embed[u]))
                    ok = false;
            if (!ok)
                continue;
            used[p] = 1;
            embed[t] = hosts[p];
            if (go(t + 1))
                return true;
            used[p] = 0;
        }
        return false;
    };
    if (!go(0))
        throw Error("internal: embedding recovery failed");
    return embed;
}

} // namespace detail

// All induced occurrences avoiding `excluded`, one per (vertex set, kind),
// ordered by sorted host tuple then kind.
inline std::vector<ForbiddenOccurrence> find_occurrences(const Graph& g,
                                                         const VertexSet& excluded = {}) {
    const VertexSet ex = normalized_vertex_set(g, excluded);
    std::vector<int> cand;
    cand.reserve(g.n());
    {
        size_t e = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (e < ex.size() && ex[e] == v) {
                ++e;
                continue;
            }
            cand.push_back(v);
        }
    }
    const int k = static_cast<int>(cand.size());
    std::vector<ForbiddenOccurrence> out;
    if (k < 6)
        return out;

    const auto& table = detail::pattern_mask_table();
    std::array<int, 6> sub{};
    auto bit = [&](int i, int j, int mask) {
        return g.has_edge(sub[i], sub[j]) ? (mask | (1 << detail::pair_bit(i, j))) : mask;
    };
    for (int a = 0; a < k - 5; ++a) {
        sub[0] = cand[a];
        for (int b = a + 1; b < k - 4; ++b) {
            sub[1] = cand[b];
            const int m1 = bit(0, 1, 0);
            for (int c = b + 1; c < k - 3; ++c) {
                sub[2] = cand[c];
                const int m2 = bit(1, 2, bit(0, 2, m1));
                for (int d = c + 1; d < k - 2; ++d) {
                    sub[3] = cand[d];
                    const int m3 = bit(2, 3, bit(1, 3, bit(0, 3, m2)));
                    for (int e = d + 1; e < k - 1; ++e) {
                        sub[4] = cand[e];
                        const int m4 = bit(3, 4, bit(2, 4, bit(1, 4, bit(0, 4, m3))));
                        for (int f = e + 1; f < k; ++f) {
                            sub[5] = cand[f];
                            const int m5 = bit(4, 5, bit(3, 5, bit(2, 5, bit(1, 5, bit(0, 5, m4)))));
                            const int8_t kind = table[m5];
                            if (kind < 0)
                                continue;
                            const auto& tpl = catalog()[static_cast<size_t>(kind)];
                            out.push_back(ForbiddenOccurrence{
                                tpl.kind, detail::first_embedding(tpl, sub, g)});
                        }
                    }
                }
            }
        }
    }
    return out;
}

// Fix pairs of the occurrence mapped into the host. Every returned pair is
// a non-edge of the host; anything else means the embed is stale.
inline EdgeList fix_edges(const Graph& host, const ForbiddenOccurrence& occ) {
    const auto& tpl = catalog()[static_cast<size_t>(occ.kind)];
    EdgeList out;
    for (const auto& [a, b] : tpl.fixes) {
        Edge e = make_edge(occ.embed[a], occ.embed[b]);
        if (host.has_edge(e.first, e.second))
            throw AlreadyPresentError("fix edge (" + std::to_string(e.first) + ", " +
                                      std::to_string(e.second) + ") already present");
        out.push_back(e);
    }
    return out;
}

struct MembershipVerdict {
    enum class Kind { Member, NotChordal, HasForbidden } kind = Kind::Member;
    std::vector<int> hole;
    std::optional<ForbiddenOccurrence> occurrence;

    bool member() const { return kind == Kind::Member; }
};

inline MembershipVerdict is_extended_class(const Graph& g) {
    MembershipVerdict v;
    ChordalityVerdict c = check_chordal(g);
    if (!c.chordal) {
        v.kind = MembershipVerdict::Kind::NotChordal;
        v.hole = c.hole;
        return v;
    }
    auto occs = find_occurrences(g, {});
    if (!occs.empty()) {
        v.kind = MembershipVerdict::Kind::HasForbidden;
        v.occurrence = occs.front();
        return v;
    }
    v.kind = MembershipVerdict::Kind::Member;
    return v;
}

// Number of 4-subsets of s inducing a chordless path on four vertices.
inline long long count_induced_p4s(const Graph& g, const VertexSet& s_in) {
    const VertexSet s = normalized_vertex_set(g, s_in);
    const int k = static_cast<int>(s.size());
    long long count = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c)
                for (int d = c + 1; d < k; ++d) {
                    const int q[4] = {s[a], s[b], s[c], s[d]};
                    int deg[4] = {0, 0, 0, 0};
                    int edges = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = i + 1; j < 4; ++j)
                            if (g.has_edge(q[i], q[j])) {
                                ++edges;
                                ++deg[i];
                                ++deg[j];
                            }
                    if (edges != 3)
                        continue;
                    int ones = 0, twos = 0;
                    for (int i = 0; i < 4; ++i) {
                        if (deg[i] == 1) ++ones;
                        if (deg[i] == 2) ++twos;
                    }
                    if (ones == 2 && twos == 2)
                        ++count;
                }
    return count;
}

// Full catalog sanity: patterns pairwise non-isomorphic, every fix set
// removes the occurrence without creating a new one, and the two dense
// patterns land exactly on K6 minus one edge resp. two disjoint edges.
//
// Known defect, pinned here rather than hidden: the H3 fix set leaves the
// vertex pairs (0,5) and (1,3) unconnected, and those four vertices then
// carry a chordless 4-cycle. Repaired H3 copies are therefore free of
// forbidden subgraphs but NOT chordal, and fail full class membership;
// traces report this honestly.
inline void assert_catalog_valid() {
    const auto& cat = catalog();
    for (size_t i = 0; i < cat.size(); ++i) {
        const auto& tpl = cat[i];
        if (tpl.pattern.n() != 6)
            throw Error("catalog: pattern must have 6 vertices");
        EdgeList fixed_edges = tpl.pattern.edges();
        for (const auto& [a, b] : tpl.fixes) {
            if (tpl.pattern.has_edge(a, b))
                throw Error("catalog: fix pair is already an edge");
            fixed_edges.push_back(make_edge(a, b));
        }
        Graph fixed(6, fixed_edges);
        if (!find_occurrences(fixed, {}).empty())
            throw Error(std::string("catalog: ") + kind_name(tpl.kind) +
                        " plus fixes still contains a forbidden subgraph");
        const bool fixed_chordal = check_chordal(fixed).chordal;
        if (tpl.kind == ForbiddenKind::H3) {
            if (fixed_chordal)
                throw Error("catalog: repaired H3 changed shape; revisit the membership note");
        } else if (!fixed_chordal) {
            throw Error(std::string("catalog: ") + kind_name(tpl.kind) +
                        " plus fixes is not chordal");
        }
        auto self = find_occurrences(tpl.pattern, {});
        if (self.size() != 1 || self[0].kind != tpl.kind)
            throw Error(std::string("catalog: ") + kind_name(tpl.kind) +
                        " does not match itself exactly once");
        for (size_t j = i + 1; j < cat.size(); ++j)
            if (find_isomorphism(tpl.pattern, cat[j].pattern))
                throw Error("catalog: patterns are not pairwise non-isomorphic");
    }
    auto k6_minus = [](const EdgeList& missing) {
        EdgeList e;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                if (std::find(missing.begin(), missing.end(), Edge{u, v}) == missing.end())
                    e.emplace_back(u, v);
        return Graph(6, e);
    };
    auto fixed_graph = [&](ForbiddenKind k) {
        const auto& tpl = catalog()[static_cast<size_t>(k)];
        EdgeList e = tpl.pattern.edges();
        for (const auto& [a, b] : tpl.fixes)
            e.push_back(make_edge(a, b));
        return Graph(6, e);
    };
    if (fixed_graph(ForbiddenKind::H2) != k6_minus({{0, 5}}))
        throw Error("catalog: H2 plus fixes must equal K6 minus one edge");
    if (fixed_graph(ForbiddenKind::H3) != k6_minus({{0, 5}, {1, 3}}))
        throw Error("catalog: H3 plus fixes must equal K6 minus two disjoint edges");
}

} // namespace ext63
