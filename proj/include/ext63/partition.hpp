#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ext63/chordal.hpp"
#include "ext63/graph.hpp"

namespace ext63 {

struct OrderedPartition {
    std::vector<VertexSet> cells; // disjoint, nonempty, cover V, each sorted

    int cell_count() const { return static_cast<int>(cells.size()); }
};

namespace detail {

inline std::vector<int> cell_index_of(const Graph& g, const OrderedPartition& p) {
    std::vector<int> idx(g.n(), -1);
    for (int i = 0; i < p.cell_count(); ++i)
        for (int v : p.cells[i]) {
            if (v < 0 || v >= g.n() || idx[v] != -1)
                throw PreconditionFailed("not a partition of the vertex set");
            idx[v] = i;
        }
    for (int v = 0; v < g.n(); ++v)
        if (idx[v] == -1)
            throw PreconditionFailed("partition does not cover the vertex set");
    for (const auto& cell : p.cells)
        if (cell.empty())
            throw PreconditionFailed("partition has an empty cell");
    return idx;
}

inline std::vector<int> count_vector(const Graph& g, const std::vector<int>& cell_of, int q,
                                     int v) {
    std::vector<int> counts(q, 0);
    for (int w : g.neighbors(v))
        ++counts[cell_of[w]];
    return counts;
}

} // namespace detail

// Peel: each cell is ALL simplicial vertices of the remaining suffix
// subgraph. Stalls exactly on non-chordal graphs.
inline OrderedPartition coarsest_simplicial_partition(const Graph& g) {
    const int n = g.n();
    std::vector<char> alive(n, 1);
    std::vector<char> simp(n, 0);
    for (int v = 0; v < n; ++v)
        simp[v] = is_simplicial_in(g, v, alive);
    OrderedPartition p;
    int remaining = n;
    while (remaining > 0) {
        VertexSet cell;
        for (int v = 0; v < n; ++v)
            if (alive[v] && simp[v])
                cell.push_back(v);
        if (cell.empty())
            throw NotChordalError("simplicial peeling stalled; graph is not chordal");
        for (int v : cell)
            alive[v] = 0;
        remaining -= static_cast<int>(cell.size());
        // Removal only ever turns neighbors simplicial, never the reverse.
        std::vector<int> dirty;
        for (int v : cell)
            for (int w : g.neighbors(v))
                if (alive[w] && !simp[w])
                    dirty.push_back(w);
        std::sort(dirty.begin(), dirty.end());
        dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
        for (int w : dirty)
            simp[w] = is_simplicial_in(g, w, alive);
        p.cells.push_back(std::move(cell));
    }
    return p;
}

inline bool is_regular_simplicial(const Graph& g, const OrderedPartition& p) {
    const std::vector<int> cell_of = detail::cell_index_of(g, p);
    const int q = p.cell_count();
    std::vector<char> alive(g.n(), 1);
    for (const auto& cell : p.cells) {
        for (int v : cell)
            if (!is_simplicial_in(g, v, alive))
                return false;
        for (int v : cell)
            alive[v] = 0;
    }
    for (const auto& cell : p.cells) {
        const auto ref = detail::count_vector(g, cell_of, q, cell.front());
        for (size_t i = 1; i < cell.size(); ++i)
            if (detail::count_vector(g, cell_of, q, cell[i]) != ref)
                return false;
    }
    return true;
}

namespace detail {

// Sparse per-cell neighbor counts: sorted (cell, count) pairs, compared
// in the order of the corresponding dense count vectors (absent = 0).
using SparseCounts = std::vector<std::pair<int, int>>;

inline SparseCounts sparse_counts(const Graph& g, const std::vector<int>& cell_of, int v) {
    SparseCounts s;
    for (int w : g.neighbors(v))
        s.emplace_back(cell_of[w], 1);
    std::sort(s.begin(), s.end());
    SparseCounts out;
    for (const auto& [cell, one] : s) {
        if (!out.empty() && out.back().first == cell)
            ++out.back().second;
        else
            out.emplace_back(cell, 1);
    }
    return out;
}

struct DenseLexLess {
    bool operator()(const SparseCounts& x, const SparseCounts& y) const {
        size_t i = 0, j = 0;
        while (i < x.size() && j < y.size()) {
            if (x[i].first == y[j].first) {
                if (x[i].second != y[j].second)
                    return x[i].second < y[j].second;
                ++i;
                ++j;
            } else if (x[i].first < y[j].first) {
                return false; // x nonzero where y is zero
            } else {
                return true;
            }
        }
        return j < y.size();
    }
};

// Replace cells whose members disagree on their per-cell neighbor counts
// by the groups, ordered by ascending count vector.
inline bool regularity_split(const Graph& g, std::vector<VertexSet>& cells) {
    std::vector<int> cell_of(g.n(), -1);
    for (size_t i = 0; i < cells.size(); ++i)
        for (int v : cells[i])
            cell_of[v] = static_cast<int>(i);
    bool changed = false;
    std::vector<VertexSet> next;
    for (const auto& cell : cells) {
        if (cell.size() == 1) {
            next.push_back(cell);
            continue;
        }
        std::map<SparseCounts, VertexSet, DenseLexLess> groups;
        for (int v : cell)
            groups[sparse_counts(g, cell_of, v)].push_back(v);
        if (groups.size() == 1) {
            next.push_back(cell);
        } else {
            changed = true;
            for (auto& [vec, group] : groups)
                next.push_back(std::move(group));
        }
    }
    cells = std::move(next);
    return changed;
}

// Cell-granular peel: emit the first cell with simplicial members,
// splitting off its simplicial part when the cell is only partly
// simplicial in the current suffix.
inline bool simplicial_reorder(const Graph& g, std::vector<VertexSet>& cells) {
    std::vector<char> alive(g.n(), 1);
    std::vector<VertexSet> pending = cells;
    std::vector<VertexSet> out;
    while (!pending.empty()) {
        int idx = -1;
        VertexSet simp_part;
        for (size_t i = 0; i < pending.size() && idx < 0; ++i) {
            VertexSet s;
            for (int v : pending[i])
                if (is_simplicial_in(g, v, alive))
                    s.push_back(v);
            if (!s.empty()) {
                idx = static_cast<int>(i);
                simp_part = std::move(s);
            }
        }
        if (idx < 0)
            throw NotChordalError("cell peeling stalled; graph is not chordal");
        VertexSet rest;
        for (int v : pending[idx])
            if (!std::binary_search(simp_part.begin(), simp_part.end(), v))
                rest.push_back(v);
        for (int v : simp_part)
            alive[v] = 0;
        out.push_back(std::move(simp_part));
        if (rest.empty())
            pending.erase(pending.begin() + idx);
        else
            pending[idx] = std::move(rest);
    }
    const bool changed = out != cells;
    cells = std::move(out);
    return changed;
}

} // namespace detail

// Fixpoint of regularity splits and cell-granular peeling, starting from
// the coarsest simplicial partition. Splits run to their own fixpoint
// before each re-peel; in-place splits keep every cell simplicial in its
// suffix, so the re-peel is normally a verification pass. Deterministic;
// the result always satisfies is_regular_simplicial.
inline OrderedPartition coarsest_regular_simplicial_partition(const Graph& g) {
    OrderedPartition p = coarsest_simplicial_partition(g);
    for (int outer = 0; outer <= g.n() + 2; ++outer) {
        for (int inner = 0; inner <= g.n() + 1; ++inner)
            if (!detail::regularity_split(g, p.cells))
                break;
        if (!detail::simplicial_reorder(g, p.cells)) {
            // splits settled and the peel confirmed the order
            if (!is_regular_simplicial(g, p))
                throw Error("internal: refinement fixpoint is not regular simplicial");
            return p;
        }
    }
    throw Error("internal: partition refinement failed to stabilize");
}

// Structure of one adjacent cell pair, per component: stars (a clique
// center joined to equal-size pairwise-nonadjacent clique blocks) or
// spiders (clique matched to a stable set; thin legs = matched pairs are
// the only cross edges, thick legs = the only cross non-edges). The
// degenerate two-leg case satisfies both; it counts as thin.
struct CellPairStructure {
    enum class Kind : int { Stars = 0, SpiderThin = 1, SpiderThick = 2, Other = 3 };
    Kind kind = Kind::Other;
    int components = 0;
    int center_size = 0; // stars
    int arm_count = 0;
    int arm_size = 0;
    int legs = 0; // spiders

    friend bool operator==(const CellPairStructure&, const CellPairStructure&) = default;
};

inline const char* cell_pair_kind_name(CellPairStructure::Kind k) {
    switch (k) {
    case CellPairStructure::Kind::Stars: return "stars";
    case CellPairStructure::Kind::SpiderThin: return "spider_thin";
    case CellPairStructure::Kind::SpiderThick: return "spider_thick";
    case CellPairStructure::Kind::Other: return "other";
    }
    return "?";
}

namespace detail {

// Connected components of G(S_i u S_j), split back into the two sides.
struct PairComponents {
    std::vector<VertexSet> side_i;
    std::vector<VertexSet> side_j;
    std::map<int, int> comp_of;
};

inline PairComponents pair_components(const Graph& g, const VertexSet& si, const VertexSet& sj) {
    VertexSet all = si;
    all.insert(all.end(), sj.begin(), sj.end());
    std::sort(all.begin(), all.end());
    PairComponents pc;
    int count = 0;
    for (int v : all) {
        if (pc.comp_of.count(v))
            continue;
        std::vector<int> stack{v};
        pc.comp_of[v] = count;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int w : all)
                if (!pc.comp_of.count(w) && g.has_edge(cur, w)) {
                    pc.comp_of[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    pc.side_i.resize(count);
    pc.side_j.resize(count);
    for (int v : si)
        pc.side_i[pc.comp_of[v]].push_back(v);
    for (int v : sj)
        pc.side_j[pc.comp_of[v]].push_back(v);
    return pc;
}

struct ComponentShape {
    bool star = false;
    int center_size = 0, arm_count = 0, arm_size = 0;
    bool thin = false, thick = false;
    int legs = 0;
};

inline ComponentShape classify_component(const Graph& g, const VertexSet& side_i,
                                         const VertexSet& side_j) {
    ComponentShape shape;
    auto clique = [&](const VertexSet& s) {
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b)
                if (!g.has_edge(s[a], s[b]))
                    return false;
        return true;
    };
    auto stable = [&](const VertexSet& s) {
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b)
                if (g.has_edge(s[a], s[b]))
                    return false;
        return true;
    };

    // Star: center = the side_j part; arms = components of the side_i part.
    if (!side_i.empty() && !side_j.empty() && clique(side_j)) {
        std::map<int, int> arm_of;
        std::vector<VertexSet> arms;
        for (int v : side_i) {
            if (arm_of.count(v))
                continue;
            VertexSet arm;
            std::vector<int> stack{v};
            arm_of[v] = static_cast<int>(arms.size());
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                arm.push_back(cur);
                for (int w : side_i)
                    if (!arm_of.count(w) && g.has_edge(cur, w)) {
                        arm_of[w] = static_cast<int>(arms.size());
                        stack.push_back(w);
                    }
            }
            std::sort(arm.begin(), arm.end());
            arms.push_back(std::move(arm));
        }
        bool ok = true;
        for (const auto& arm : arms) {
            if (arm.size() != arms[0].size() || !clique(arm)) {
                ok = false;
                break;
            }
            for (int a : arm)
                for (int c : side_j)
                    if (!g.has_edge(a, c)) {
                        ok = false;
                        break;
                    }
        }
        if (ok) {
            shape.star = true;
            shape.center_size = static_cast<int>(side_j.size());
            shape.arm_count = static_cast<int>(arms.size());
            shape.arm_size = static_cast<int>(arms[0].size());
        }
    }

    // Spider: side_j is the clique, side_i the stable set.
    if (side_i.size() == side_j.size() && side_i.size() >= 2 && clique(side_j) &&
        stable(side_i)) {
        const int t = static_cast<int>(side_j.size());
        bool thin = true, thick = true;
        std::vector<char> hit_thin(t, 0), hit_thick(t, 0);
        for (int s : side_i) {
            int nb = 0, last_nb = -1, last_non = -1;
            for (int k = 0; k < t; ++k) {
                if (g.has_edge(s, side_j[k])) {
                    ++nb;
                    last_nb = k;
                } else {
                    last_non = k;
                }
            }
            if (nb == 1 && !hit_thin[last_nb])
                hit_thin[last_nb] = 1;
            else
                thin = false;
            if (nb == t - 1 && last_non >= 0 && !hit_thick[last_non])
                hit_thick[last_non] = 1;
            else
                thick = false;
        }
        shape.thin = thin;
        shape.thick = thick;
        shape.legs = t;
    }
    return shape;
}

} // namespace detail

// Decompose the induced pair graph into components and classify the whole
// as stars or spiders with all centers in the later cell. 0-based cell
// indices, i < j.
inline CellPairStructure classify_cell_pair(const Graph& g, const OrderedPartition& p, int i,
                                            int j) {
    if (i < 0 || j <= i || j >= p.cell_count())
        throw PreconditionFailed("cell indices must satisfy 0 <= i < j < q");
    const VertexSet& si = p.cells[i];
    const VertexSet& sj = p.cells[j];

    bool adjacent = false;
    for (int u : si) {
        for (int v : sj)
            if (g.has_edge(u, v)) {
                adjacent = true;
                break;
            }
        if (adjacent)
            break;
    }
    if (!adjacent)
        throw NotAdjacentError("cells " + std::to_string(i) + " and " + std::to_string(j) +
                               " are not adjacent");

    const detail::PairComponents pc = detail::pair_components(g, si, sj);
    const int comp_count = static_cast<int>(pc.side_i.size());

    std::vector<detail::ComponentShape> shapes;
    shapes.reserve(comp_count);
    for (int c = 0; c < comp_count; ++c)
        shapes.push_back(detail::classify_component(g, pc.side_i[c], pc.side_j[c]));

    CellPairStructure out;
    out.components = comp_count;

    bool all_star = true;
    for (const auto& s : shapes)
        if (!s.star || s.center_size != shapes[0].center_size ||
            s.arm_count != shapes[0].arm_count || s.arm_size != shapes[0].arm_size)
            all_star = false;
    if (all_star) {
        out.kind = CellPairStructure::Kind::Stars;
        out.center_size = shapes[0].center_size;
        out.arm_count = shapes[0].arm_count;
        out.arm_size = shapes[0].arm_size;
        return out;
    }

    bool all_thin = true, all_thick = true, same_legs = true;
    for (const auto& s : shapes) {
        all_thin = all_thin && s.thin;
        all_thick = all_thick && s.thick;
        same_legs = same_legs && s.legs == shapes[0].legs;
    }
    if (same_legs && shapes[0].legs >= 2 && (all_thin || all_thick)) {
        out.kind = all_thin ? CellPairStructure::Kind::SpiderThin
                            : CellPairStructure::Kind::SpiderThick;
        out.legs = shapes[0].legs;
        return out;
    }
    out.kind = CellPairStructure::Kind::Other;
    return out;
}

struct LemmaReport {
    int lemma1_checks = 0, lemma1_failures = 0;
    int lemma2_checks = 0, lemma2_failures = 0;
    int lemma3_checks = 0, lemma3_failures = 0;
    std::vector<std::string> witnesses;

    bool all_pass() const {
        return lemma1_failures == 0 && lemma2_failures == 0 && lemma3_failures == 0;
    }
};

// Empirical validators for the three structural claims about adjacent
// cells of a regular simplicial partition. Failures are reported with
// witnesses, never asserted away.
inline LemmaReport verify_babel_lemmas(const Graph& g, const OrderedPartition& p) {
    if (!is_regular_simplicial(g, p))
        throw PreconditionFailed("partition is not regular simplicial");
    const int q = p.cell_count();
    LemmaReport report;

    auto adjacent = [&](int i, int j) {
        for (int u : p.cells[i])
            for (int v : p.cells[j])
                if (g.has_edge(u, v))
                    return true;
        return false;
    };
    std::vector<std::vector<char>> adj(q, std::vector<char>(q, 0));
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            adj[i][j] = adj[j][i] = adjacent(i, j);

    std::map<std::pair<int, int>, CellPairStructure> cls;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            if (adj[i][j])
                cls[{i, j}] = classify_cell_pair(g, p, i, j);

    auto nset = [&](int v, int k) {
        VertexSet s;
        for (int w : g.neighbors(v))
            if (std::binary_search(p.cells[k].begin(), p.cells[k].end(), w))
                s.push_back(w);
        return s;
    };

    // Lemma 1: every adjacent pair decomposes into isomorphic stars or
    // isomorphic spiders with the later cell as the centers.
    for (const auto& [ij, c] : cls) {
        ++report.lemma1_checks;
        if (c.kind == CellPairStructure::Kind::Other) {
            ++report.lemma1_failures;
            report.witnesses.push_back("lemma1 cells (" + std::to_string(ij.first) + "," +
                                       std::to_string(ij.second) + ") classify as other");
        }
    }

    // Lemma 2: for spider pairs (i, j), matched leg/center vertices have
    // identical neighborhoods in every other cell adjacent to S_i. The
    // match is the unique center neighbor (thin) resp. the unique center
    // non-neighbor within the leg's own component (thick).
    for (const auto& [ij, c] : cls) {
        const auto [i, j] = ij;
        if (c.kind != CellPairStructure::Kind::SpiderThin &&
            c.kind != CellPairStructure::Kind::SpiderThick)
            continue;
        const bool thin = c.kind == CellPairStructure::Kind::SpiderThin;
        const detail::PairComponents pc = detail::pair_components(g, p.cells[i], p.cells[j]);
        std::vector<std::pair<int, int>> pairs; // (u in S_i, matched w in S_j)
        for (int u : p.cells[i]) {
            const auto& centers = pc.side_j[pc.comp_of.at(u)];
            std::vector<int> match;
            for (int w : centers)
                if (g.has_edge(u, w) == thin)
                    match.push_back(w);
            if (match.size() == 1)
                pairs.emplace_back(u, match[0]);
        }
        for (int k = i + 1; k < q; ++k) {
            if (k == j || !adj[i][k])
                continue;
            ++report.lemma2_checks;
            bool ok = true;
            std::string why;
            for (const auto& [u, w] : pairs)
                if (nset(u, k) != nset(w, k)) {
                    ok = false;
                    why = "u=" + std::to_string(u) + " w=" + std::to_string(w);
                    break;
                }
            if (!ok) {
                ++report.lemma2_failures;
                report.witnesses.push_back("lemma2 cells (" + std::to_string(i) + "," +
                                           std::to_string(j) + ") vs cell " + std::to_string(k) +
                                           ": " + why);
            }
        }
    }

    // Lemma 3: when S_i sees only star pairs above it, neighbors across
    // the first adjacent cell agree on every other adjacent cell.
    for (int i = 0; i < q; ++i) {
        std::vector<int> above;
        for (int k = i + 1; k < q; ++k)
            if (adj[i][k])
                above.push_back(k);
        if (above.size() < 2)
            continue;
        bool all_star = true;
        for (int k : above)
            if (cls[{i, k}].kind != CellPairStructure::Kind::Stars)
                all_star = false;
        if (!all_star)
            continue;
        const int j = above[0];
        for (size_t a = 1; a < above.size(); ++a) {
            const int k = above[a];
            ++report.lemma3_checks;
            bool ok = true;
            std::string why;
            for (int u : p.cells[i]) {
                for (int w : p.cells[j]) {
                    if (!g.has_edge(u, w))
                        continue;
                    if (nset(u, k) != nset(w, k)) {
                        ok = false;
                        why = "u=" + std::to_string(u) + " w=" + std::to_string(w);
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            if (!ok) {
                ++report.lemma3_failures;
                report.witnesses.push_back("lemma3 cell " + std::to_string(i) + " via " +
                                           std::to_string(j) + " vs cell " + std::to_string(k) +
                                           ": " + why);
            }
        }
    }
    return report;
}

// Label-invariant summary of a regular simplicial partition: cell sizes,
// the per-cell neighbor count matrix, and the structure of each adjacent
// cell pair.
struct PartitionSignature {
    int q = 0;
    std::vector<int> sizes;
    std::vector<std::vector<int>> counts;
    std::vector<std::tuple<int, int, CellPairStructure>> pair_kinds;

    friend bool operator==(const PartitionSignature&, const PartitionSignature&) = default;
};

inline PartitionSignature partition_signature(const Graph& g, const OrderedPartition& p) {
    if (!is_regular_simplicial(g, p))
        throw PreconditionFailed("partition is not regular simplicial");
    const std::vector<int> cell_of = detail::cell_index_of(g, p);
    PartitionSignature sig;
    sig.q = p.cell_count();
    for (const auto& cell : p.cells)
        sig.sizes.push_back(static_cast<int>(cell.size()));
    for (const auto& cell : p.cells)
        sig.counts.push_back(detail::count_vector(g, cell_of, sig.q, cell.front()));
    for (int i = 0; i < sig.q; ++i)
        for (int j = i + 1; j < sig.q; ++j)
            if (sig.counts[i][j] > 0)
                sig.pair_kinds.emplace_back(i, j, classify_cell_pair(g, p, i, j));
    return sig;
}

inline nlohmann::ordered_json partition_to_json(const OrderedPartition& p) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : p.cells)
        cells.push_back(cell);
    return cells;
}

inline nlohmann::ordered_json cell_pair_to_json(const CellPairStructure& c) {
    nlohmann::ordered_json j;
    j["kind"] = cell_pair_kind_name(c.kind);
    j["components"] = c.components;
    switch (c.kind) {
    case CellPairStructure::Kind::Stars:
        j["center_size"] = c.center_size;
        j["arms"] = c.arm_count;
        j["arm_size"] = c.arm_size;
        break;
    case CellPairStructure::Kind::SpiderThin:
    case CellPairStructure::Kind::SpiderThick:
        j["legs"] = c.legs;
        break;
    case CellPairStructure::Kind::Other:
        break;
    }
    return j;
}

inline nlohmann::ordered_json signature_to_json(const PartitionSignature& sig) {
    nlohmann::ordered_json j;
    j["q"] = sig.q;
    j["sizes"] = sig.sizes;
    j["counts"] = sig.counts;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [i, jj, c] : sig.pair_kinds) {
        nlohmann::ordered_json e;
        e["i"] = i;
        e["j"] = jj;
        e["structure"] = cell_pair_to_json(c);
        j["pairs"].push_back(std::move(e));
    }
    return j;
}

inline nlohmann::ordered_json lemma_report_to_json(const LemmaReport& r) {
    nlohmann::ordered_json j;
    j["lemma1"] = {{"checks", r.lemma1_checks}, {"failures", r.lemma1_failures}};
    j["lemma2"] = {{"checks", r.lemma2_checks}, {"failures", r.lemma2_failures}};
    j["lemma3"] = {{"checks", r.lemma3_checks}, {"failures", r.lemma3_failures}};
    j["witnesses"] = r.witnesses;
    return j;
}

} // namespace ext63
