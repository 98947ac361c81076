#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "ext63/forbidden.hpp"
#include "ext63/graph.hpp"

namespace ext63 {

inline constexpr int kCategoriesPerRound = 7;

// Per-round slots for counting fix-edge endpoints, in fixed order. The
// "between Type1" slot exists for symmetry with the H1 slots; no fix set
// produces a Type1-Type1 edge, so it stays zero.
enum class EdgeCategory : int {
    H1Type1 = 0,
    H1BetweenType1 = 1,
    H1Type2 = 2,
    H2Type1 = 3,
    H2Type2 = 4,
    H3Type1 = 5,
    H3Type2 = 6,
};

inline int category_slot(ForbiddenKind kind, NodeRole role) {
    switch (kind) {
    case ForbiddenKind::H1NoDashed:
    case ForbiddenKind::H1OneDashed:
    case ForbiddenKind::H1BothDashed:
        return role == NodeRole::Type1 ? 0 : 2;
    case ForbiddenKind::H2:
        return role == NodeRole::Type1 ? 3 : 4;
    case ForbiddenKind::H3:
        return role == NodeRole::Type1 ? 5 : 6;
    }
    return -1;
}

using CategoryCounts = std::array<int, kCategoriesPerRound>;

struct GadgetCode {
    std::vector<CategoryCounts> rounds; // padded to the global round count

    bool any_nonzero() const {
        for (const auto& r : rounds)
            for (int c : r)
                if (c != 0)
                    return true;
        return false;
    }
    int round_count() const { return static_cast<int>(rounds.size()); }

    void ensure_rounds(int k) {
        while (round_count() < k)
            rounds.push_back(CategoryCounts{});
    }

    friend bool operator==(const GadgetCode& a, const GadgetCode& b) = default;
};

// Encoding, for a code with R rounds: a spine path of 14R + 1 vertices
// rooted at vertex 0. Every spine vertex carries one marker leaf, so
// interior spine vertices have degree >= 3. Slot (round r, category k)
// lives at spine position 2*(7*(r-1)+k)+1 and holds a pendant path of
// count+1 vertices. Equal codes give identical trees; distinct codes give
// rooted-nonisomorphic ones.
inline Graph encode_gadget(const GadgetCode& code) {
    const int rounds = code.round_count();
    if (rounds < 1)
        throw PreconditionFailed("gadget code needs at least one round");
    const int spine = 14 * rounds + 1;
    EdgeList edges;
    for (int i = 0; i + 1 < spine; ++i)
        edges.emplace_back(i, i + 1);
    for (int i = 0; i < spine; ++i)
        edges.emplace_back(i, spine + i);
    int next = 2 * spine;
    for (int r = 0; r < rounds; ++r)
        for (int k = 0; k < kCategoriesPerRound; ++k) {
            const int count = code.rounds[r][k];
            if (count < 0)
                throw PreconditionFailed("gadget counts must be non-negative");
            int prev = 2 * (7 * r + k) + 1;
            for (int t = 0; t <= count; ++t) {
                edges.emplace_back(std::min(prev, next), std::max(prev, next));
                prev = next++;
            }
        }
    return Graph(next, edges);
}

namespace detail {

struct RootedTree {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
};

inline RootedTree root_tree(const Graph& g, int root) {
    const int n = g.n();
    if (root < 0 || root >= n)
        throw MalformedGadget("root out of range");
    if (g.m() != n - 1)
        throw MalformedGadget("gadget must be a tree");
    RootedTree t;
    t.parent.assign(n, -2);
    t.children.assign(n, {});
    std::vector<int> stack{root};
    t.parent[root] = -1;
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : g.neighbors(v)) {
            if (t.parent[w] != -2)
                continue;
            t.parent[w] = v;
            t.children[v].push_back(w);
            stack.push_back(w);
        }
    }
    if (seen != n)
        throw MalformedGadget("gadget tree is disconnected");
    return t;
}

// Vertex count of the subtree at v when it is a bare path (every node has
// at most one child); -1 when the subtree branches.
inline int bare_path_length(const RootedTree& t, int v) {
    int len = 0;
    int cur = v;
    while (true) {
        ++len;
        if (t.children[cur].empty())
            return len;
        if (t.children[cur].size() > 1)
            return -1;
        cur = t.children[cur][0];
    }
}

} // namespace detail

inline GadgetCode decode_gadget(const Graph& tree, int root) {
    const auto t = detail::root_tree(tree, root);

    std::vector<int> slots;
    int pos = 0;
    int cur = root;
    bool terminal = false;
    while (!terminal) {
        std::vector<int> nonbare;
        std::vector<int> bare;
        for (int c : t.children[cur]) {
            const int len = detail::bare_path_length(t, c);
            if (len < 0)
                nonbare.push_back(c);
            else
                bare.push_back(len);
        }
        std::sort(bare.begin(), bare.end());
        if (nonbare.size() > 1)
            throw MalformedGadget("spine walk is ambiguous");
        if (pos == 0) {
            if (nonbare.size() != 1 || bare != std::vector<int>{1})
                throw MalformedGadget("root must carry one marker and the spine");
        } else if (nonbare.size() == 1) {
            if (pos % 2 == 0) {
                if (bare != std::vector<int>{1})
                    throw MalformedGadget("even spine vertex must carry exactly one marker");
            } else {
                if (bare.size() != 2 || bare[0] != 1)
                    throw MalformedGadget("slot vertex must carry a marker and one slot path");
                slots.push_back(bare[1] - 1);
            }
        } else {
            // Spine end: the last spine vertex plus its marker reads as a
            // bare 2-path among this vertex's children.
            if (pos % 2 == 0 || bare.size() != 3 || bare[0] != 1)
                throw MalformedGadget("spine must end after a slot vertex");
            int slot_len;
            if (bare[1] == 2)
                slot_len = bare[2];
            else if (bare[2] == 2)
                slot_len = bare[1];
            else
                throw MalformedGadget("spine end not found");
            slots.push_back(slot_len - 1);
            pos += 1; // the terminal spine vertex
            terminal = true;
            break;
        }
        cur = nonbare[0];
        ++pos;
    }

    if (pos % 14 != 0 || pos == 0)
        throw MalformedGadget("spine length does not fit the round grammar");
    const int rounds = pos / 14;
    if (static_cast<int>(slots.size()) != kCategoriesPerRound * rounds)
        throw MalformedGadget("slot count does not fit the round grammar");
    GadgetCode code;
    code.rounds.assign(rounds, CategoryCounts{});
    for (size_t i = 0; i < slots.size(); ++i)
        code.rounds[i / kCategoriesPerRound][i % kCategoriesPerRound] = slots[i];
    return code;
}

// Graph plus bookkeeping for attached marking trees. Core vertices always
// occupy ids [0, |core|); gadget vertices follow.
struct MarkedGraph {
    Graph graph;
    VertexSet core;
    int n_original = 0;            // input vertices are ids [0, n_original)
    std::map<int, int> host_of;    // gadget vertex -> core vertex it hangs from
    std::map<int, GadgetCode> code_of;
    EdgeList original_edges;

    int core_count() const { return static_cast<int>(core.size()); }
    bool is_core(int v) const { return v < core_count(); }
    bool has_gadgets() const { return !host_of.empty(); }

    Graph core_graph() const {
        EdgeList e;
        for (const auto& [u, v] : graph.edges())
            if (is_core(u) && is_core(v))
                e.emplace_back(u, v);
        return Graph(core_count(), e);
    }
};

inline MarkedGraph wrap_graph(const Graph& g) {
    MarkedGraph mg;
    mg.graph = g;
    mg.core.resize(g.n());
    for (int v = 0; v < g.n(); ++v)
        mg.core[v] = v;
    mg.n_original = g.n();
    mg.original_edges = g.edges();
    return mg;
}

// One tree per coded vertex, attached by a single root edge. Gadget
// vertices are appended after the core block, hosts in ascending order.
inline MarkedGraph attach_gadgets(const Graph& g, const std::map<int, GadgetCode>& codes,
                                  const EdgeList& original_edges) {
    for (const auto& [u, v] : original_edges)
        if (!g.has_edge(u, v))
            throw PreconditionFailed("original edge missing from graph");
    MarkedGraph mg = wrap_graph(g);
    mg.original_edges = original_edges;
    mg.code_of = codes;
    EdgeList edges = g.edges();
    int next = g.n();
    for (const auto& [host, code] : codes) {
        if (host < 0 || host >= g.n())
            throw RangeError("gadget host out of range");
        if (code.rounds.empty())
            continue;
        const Graph tree = encode_gadget(code);
        for (const auto& [u, v] : tree.edges())
            edges.emplace_back(u + next, v + next);
        edges.push_back(make_edge(host, next)); // tree root is its vertex 0
        for (int t = 0; t < tree.n(); ++t)
            mg.host_of[next + t] = host;
        next += tree.n();
    }
    mg.graph = Graph(next, edges);
    return mg;
}

} // namespace ext63
