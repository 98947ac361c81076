#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ext63/forbidden.hpp"
#include "ext63/graph.hpp"
#include "ext63/marker.hpp"
#include "ext63/oracle.hpp"
#include "ext63/partition.hpp"
#include "ext63/reducer.hpp"
#include "ext63/rng.hpp"

namespace ext63 {

enum class IsoMode { Marked, Alignment };

struct IsoDecision {
    enum class Verdict { Isomorphic, NotIsomorphic, Inconclusive };
    enum class Reason { None, SizeMismatch, SignatureMismatch, AlignmentFailed };

    Verdict verdict = Verdict::Inconclusive;
    Reason reason = Reason::None;
    std::optional<VertexMapping> mapping; // on the original input vertices
    std::string detail;

    bool isomorphic() const { return verdict == Verdict::Isomorphic; }
};

inline const char* verdict_name(IsoDecision::Verdict v) {
    switch (v) {
    case IsoDecision::Verdict::Isomorphic: return "isomorphic";
    case IsoDecision::Verdict::NotIsomorphic: return "not_isomorphic";
    case IsoDecision::Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline const char* reason_name(IsoDecision::Reason r) {
    switch (r) {
    case IsoDecision::Reason::None: return "none";
    case IsoDecision::Reason::SizeMismatch: return "size_mismatch";
    case IsoDecision::Reason::SignatureMismatch: return "signature_mismatch";
    case IsoDecision::Reason::AlignmentFailed: return "alignment_failed";
    }
    return "?";
}

inline nlohmann::ordered_json decision_to_json(const IsoDecision& d) {
    nlohmann::ordered_json j;
    j["verdict"] = verdict_name(d.verdict);
    if (d.verdict == IsoDecision::Verdict::Isomorphic)
        j["mapping"] = *d.mapping;
    if (d.verdict == IsoDecision::Verdict::NotIsomorphic)
        j["reason"] = reason_name(d.reason);
    if (!d.detail.empty())
        j["detail"] = d.detail;
    return j;
}

namespace detail {

// Cell-aligned backtracking: bijections mapping cell i of pa onto cell i
// of pb. Candidates may be required to preserve a full adjacency
// structure (checked through assigned neighbors plus an assigned-degree
// count, O(deg) per candidate) and to match raw edges on the original
// vertex prefix. Assignment runs originals first, then remaining core,
// then gadget vertices in id order (parent before child inside marking
// trees), so conflicts surface before the symmetric tree parts are
// touched. With originals_only, only the original vertices are searched
// and the rest of the mapping is filled cell-wise. Returns 1 with the
// first complete mapping in deterministic order, 0 when none exists,
// 2 on node-budget overrun.
struct AlignProblem {
    const OrderedPartition* pa = nullptr;
    const OrderedPartition* pb = nullptr;
    const Graph* full_a = nullptr;
    const Graph* full_b = nullptr;
    const Graph* raw_a = nullptr; // original-pair constraint when set
    const Graph* raw_b = nullptr;
    int n_orig = 0;
    int n_a = 0, n_b = 0;
    std::function<int(int)> assign_class; // lower classes assigned first
    bool originals_only = false;
    std::function<bool(int, int)> compat; // optional per-assignment filter
};

inline int aligned_search(const AlignProblem& pr, VertexMapping& out, long long node_budget) {
    const auto& pa = *pr.pa;
    const auto& pb = *pr.pb;
    if (pa.cell_count() != pb.cell_count())
        return 0;
    std::vector<int> cell_of_a(pr.n_a, -1);
    std::vector<std::vector<int>> cell_targets(pb.cell_count());
    for (int i = 0; i < pa.cell_count(); ++i) {
        if (pa.cells[i].size() != pb.cells[i].size())
            return 0;
        for (int v : pa.cells[i])
            cell_of_a[v] = i;
        cell_targets[i] = pb.cells[i];
    }

    std::vector<int> order;
    if (pr.originals_only) {
        for (int i = 0; i < pa.cell_count(); ++i) {
            size_t oa = 0, ob = 0;
            for (int v : pa.cells[i])
                oa += v < pr.n_orig;
            for (int w : pb.cells[i])
                ob += w < pr.n_orig;
            if (oa != ob)
                return 0;
        }
        for (int v = 0; v < std::min(pr.n_orig, pr.n_a); ++v)
            order.push_back(v);
    } else {
        order.resize(pr.n_a);
        for (int v = 0; v < pr.n_a; ++v)
            order[v] = v;
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            const int cx = pr.assign_class ? pr.assign_class(x) : 0;
            const int cy = pr.assign_class ? pr.assign_class(y) : 0;
            return cx != cy ? cx < cy : x < y;
        });
    }

    VertexMapping map(pr.n_a, -1);
    std::vector<char> used_b(pr.n_b, 0);
    std::vector<char> assigned_a(pr.n_a, 0);
    std::vector<int> assigned_originals;
    long long nodes = 0;
    bool overrun = false;

    std::function<bool(size_t)> go = [&](size_t pos) -> bool {
        if (pos == order.size()) {
            out = map;
            return true;
        }
        if (++nodes > node_budget) {
            overrun = true;
            return true; // unwind
        }
        const int v = order[pos];
        std::vector<int> mapped_neighbors; // images of v's assigned neighbors
        if (pr.full_a)
            for (int u : pr.full_a->neighbors(v))
                if (assigned_a[u])
                    mapped_neighbors.push_back(map[u]);
        for (int w : cell_targets[cell_of_a[v]]) {
            if (used_b[w])
                continue;
            if (pr.originals_only && w >= pr.n_orig)
                continue;
            if (pr.compat && !pr.compat(v, w))
                continue;
            bool ok = true;
            if (pr.full_a) {
                for (int x : mapped_neighbors)
                    if (!pr.full_b->has_edge(w, x)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    int cnt_b = 0;
                    for (int x : pr.full_b->neighbors(w))
                        if (x < pr.n_b && used_b[x])
                            ++cnt_b;
                    ok = cnt_b == static_cast<int>(mapped_neighbors.size());
                }
            }
            if (ok && pr.raw_a && v < pr.n_orig) {
                for (int u : assigned_originals)
                    if (pr.raw_a->has_edge(v, u) != pr.raw_b->has_edge(w, map[u])) {
                        ok = false;
                        break;
                    }
            }
            if (!ok)
                continue;
            map[v] = w;
            used_b[w] = 1;
            assigned_a[v] = 1;
            if (v < pr.n_orig)
                assigned_originals.push_back(v);
            if (go(pos + 1))
                return true;
            if (v < pr.n_orig)
                assigned_originals.pop_back();
            assigned_a[v] = 0;
            used_b[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    const bool found = go(0);
    if (overrun)
        return 2;
    if (!found)
        return 0;
    if (pr.originals_only) {
        // extend over the non-originals cell-wise, ascending to ascending
        for (int i = 0; i < pa.cell_count(); ++i) {
            std::vector<int> free_b;
            for (int w : cell_targets[i])
                if (!used_b[w])
                    free_b.push_back(w);
            size_t k = 0;
            for (int v : pa.cells[i])
                if (out[v] == -1)
                    out[v] = free_b[k++];
        }
    }
    return 1;
}

} // namespace detail

// First cell-aligned bijection between the two marked graphs preserving
// full adjacency; partitions must already have equal signatures.
inline std::optional<VertexMapping> align_and_verify(const MarkedGraph& m1,
                                                     const OrderedPartition& p1,
                                                     const MarkedGraph& m2,
                                                     const OrderedPartition& p2) {
    if (!(partition_signature(m1.graph, p1) == partition_signature(m2.graph, p2)))
        throw PreconditionFailed("partition signatures differ");
    detail::AlignProblem pr;
    pr.pa = &p1;
    pr.pb = &p2;
    pr.full_a = &m1.graph;
    pr.full_b = &m2.graph;
    pr.n_a = m1.graph.n();
    pr.n_b = m2.graph.n();
    pr.assign_class = [&m1](int v) {
        return v < m1.n_original ? 0 : (m1.is_core(v) ? 1 : 2);
    };
    VertexMapping out;
    const int rc = detail::aligned_search(pr, out, static_cast<long long>(1) << 62);
    if (rc != 1)
        return std::nullopt;
    return out;
}

// Reduction of one input graph, shared between the two test modes.
struct ReducedForms {
    MarkedGraph bare;   // edge additions only
    MarkedGraph marked; // with marking trees attached
    ReductionTrace trace;
    std::optional<OrderedPartition> bare_partition, marked_partition;
    std::optional<PartitionSignature> bare_sig, marked_sig;
};

inline ReducedForms reduce_forms(const Graph& g) {
    ReducedForms f;
    auto [bare, trace] = to_extended(g, false);
    f.bare = std::move(bare);
    f.trace = std::move(trace);
    f.marked = attach_gadgets(f.bare.graph, f.bare.code_of, f.bare.original_edges);
    f.marked.n_original = f.bare.n_original;
    if (f.trace.final_member) {
        f.bare_partition = coarsest_regular_simplicial_partition(f.bare.graph);
        f.bare_sig = partition_signature(f.bare.graph, *f.bare_partition);
        f.marked_partition = coarsest_regular_simplicial_partition(f.marked.graph);
        f.marked_sig = partition_signature(f.marked.graph, *f.marked_partition);
    }
    return f;
}

namespace detail {

inline constexpr long long kIsoNodeBudget = 50'000'000;

inline IsoDecision decide_pair(const Graph& g1, const ReducedForms& f1, const Graph& g2,
                               const ReducedForms& f2, IsoMode mode) {
    IsoDecision d;
    if (g1.n() != g2.n() || g1.m() != g2.m()) {
        d.verdict = IsoDecision::Verdict::NotIsomorphic;
        d.reason = IsoDecision::Reason::SizeMismatch;
        return d;
    }
    if (!f1.trace.final_member || !f2.trace.final_member) {
        d.verdict = IsoDecision::Verdict::Inconclusive;
        d.detail = "reducer did not produce a class member";
        return d;
    }
    const bool marked = mode == IsoMode::Marked;
    const MarkedGraph& m1 = marked ? f1.marked : f1.bare;
    const MarkedGraph& m2 = marked ? f2.marked : f2.bare;
    const OrderedPartition& p1 = marked ? *f1.marked_partition : *f1.bare_partition;
    const OrderedPartition& p2 = marked ? *f2.marked_partition : *f2.bare_partition;
    const PartitionSignature& s1 = marked ? *f1.marked_sig : *f1.bare_sig;
    const PartitionSignature& s2 = marked ? *f2.marked_sig : *f2.bare_sig;
    if (!(s1 == s2)) {
        d.verdict = IsoDecision::Verdict::NotIsomorphic;
        d.reason = IsoDecision::Reason::SignatureMismatch;
        return d;
    }

    const int n_orig = m1.n_original;

    // Marked mode: candidates preserve the full marked adjacency and, on
    // original pairs, the raw input edges, so a complete candidate
    // projects to an input isomorphism directly. Alignment mode: cells
    // constrain the original vertices and only the original edges are
    // checked; the rest of the bijection is filled in cell-wise.
    detail::AlignProblem pr;
    pr.pa = &p1;
    pr.pb = &p2;
    pr.n_a = m1.graph.n();
    pr.n_b = m2.graph.n();
    pr.n_orig = n_orig;
    pr.raw_a = &g1;
    pr.raw_b = &g2;
    if (marked) {
        pr.full_a = &m1.graph;
        pr.full_b = &m2.graph;
        pr.assign_class = [&m1, n_orig](int v) {
            return v < n_orig ? 0 : (m1.is_core(v) ? 1 : 2);
        };
        pr.compat = [&, n_orig](int v, int w) {
            if ((v < n_orig) != (w < n_orig))
                return false;
            return m1.is_core(v) == m2.is_core(w);
        };
    } else {
        pr.originals_only = true;
    }

    VertexMapping full;
    const int rc = detail::aligned_search(pr, full, kIsoNodeBudget);
    if (rc == 2) {
        d.verdict = IsoDecision::Verdict::Inconclusive;
        d.detail = "alignment search budget exceeded";
        return d;
    }
    if (rc == 1) {
        VertexMapping proj(n_orig);
        for (int v = 0; v < n_orig; ++v)
            proj[v] = full[v];
        if (!verify_mapping(g1, g2, proj))
            throw Error("internal: aligned mapping failed input verification");
        d.verdict = IsoDecision::Verdict::Isomorphic;
        d.mapping = std::move(proj);
        return d;
    }

    if (marked) {
        // Distinguish "marked graphs not isomorphic" from "isomorphic but
        // never along the original edges" (the latter is a counterexample
        // to the marking scheme and is reported, not hidden).
        detail::AlignProblem plain = pr;
        plain.raw_a = plain.raw_b = nullptr;
        VertexMapping any;
        const int rc2 = detail::aligned_search(plain, any, kIsoNodeBudget);
        if (rc2 == 1) {
            d.verdict = IsoDecision::Verdict::Inconclusive;
            d.detail = "marked graphs isomorphic, but no isomorphism matches the input edges";
            return d;
        }
        if (rc2 == 2) {
            d.verdict = IsoDecision::Verdict::Inconclusive;
            d.detail = "alignment search budget exceeded";
            return d;
        }
    }
    d.verdict = IsoDecision::Verdict::NotIsomorphic;
    d.reason = IsoDecision::Reason::AlignmentFailed;
    return d;
}

} // namespace detail

// End-to-end isomorphism test. Marked mode reduces with marking trees and
// aligns the full marked graphs; alignment mode reduces without trees,
// aligns cells, and checks the original edges. Positive answers always
// re-verify on the raw inputs.
inline IsoDecision iso_test(const Graph& g1, const Graph& g2, IsoMode mode) {
    IsoDecision quick;
    if (g1.n() != g2.n() || g1.m() != g2.m()) {
        quick.verdict = IsoDecision::Verdict::NotIsomorphic;
        quick.reason = IsoDecision::Reason::SizeMismatch;
        return quick;
    }
    const ReducedForms f1 = reduce_forms(g1);
    const ReducedForms f2 = reduce_forms(g2);
    return detail::decide_pair(g1, f1, g2, f2, mode);
}

struct CorpusSpec {
    bool exhaustive = true;
    int n = 4;
    int samples = 500; // random pairs when !exhaustive
    uint64_t seed = 1;
    double edge_probability = 0.25;
    int jobs = 1;
    int orbit_budget = kDefaultOrbitBudget;
    std::string counterexample_dir; // empty: count but do not write
};

struct ModeStats {
    long long agree = 0, disagree = 0, inconclusive = 0;
};

struct ValidationReport {
    std::string corpus_kind;
    int n = 0;
    uint64_t seed = 0;
    long long graphs = 0, pairs = 0;
    ModeStats marked, alignment;
    long long verified_mappings = 0, verify_failures = 0;
    long long reductions = 0, members = 0, partitions_regular = 0;
    long long lemma_graphs = 0, lemma_pass = 0;
    long long orbit_members = 0, orbit_agree = 0, orbit_disagree = 0, orbit_skipped = 0;
    long long reduced_orbit_checked = 0, reduced_orbit_agree = 0, reduced_orbit_disagree = 0,
              reduced_orbit_skipped = 0;
    long long strict_full_members = 0; // marked outputs that are members on all vertices
    std::vector<std::string> counterexamples;

    nlohmann::ordered_json to_json() const;
};

namespace detail {

inline std::string ratio_str(long long num, long long den) {
    if (den == 0)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", static_cast<double>(num) / static_cast<double>(den));
    return buf;
}

inline std::vector<VertexSet> sorted_family(std::vector<VertexSet> cells) {
    for (auto& c : cells)
        std::sort(c.begin(), c.end());
    std::sort(cells.begin(), cells.end());
    return cells;
}

inline std::string code_key(const GadgetCode& code) {
    std::string s;
    for (const auto& r : code.rounds) {
        for (int c : r)
            s += std::to_string(c) + ",";
        s += ";";
    }
    return s;
}

inline void run_chunked(long long total, int jobs, const std::function<void(long long)>& work) {
    if (jobs <= 1 || total < 2) {
        for (long long i = 0; i < total; ++i)
            work(i);
        return;
    }
    std::vector<std::thread> threads;
    const int J = static_cast<int>(std::min<long long>(jobs, total));
    for (int t = 0; t < J; ++t)
        threads.emplace_back([&, t]() {
            for (long long i = t; i < total; i += J)
                work(i);
        });
    for (auto& th : threads)
        th.join();
}

// Per-graph measurements: membership, lemma checks, and the two
// partition-vs-orbit comparisons (raw member graphs, and marked outputs
// through code-colored core orbits).
struct GraphFacts {
    bool reduced_member = false;
    bool strict_full_member = false;
    bool input_member = false;
    int orbit_state = -1;   // -1 n/a, 0 skipped, 1 agree, 2 disagree
    int reduced_orbit = -1; // same encoding, on the marked output core
    bool lemma_checked = false, lemma_pass = false;
};

inline GraphFacts analyze_graph(const Graph& g, const ReducedForms& forms,
                                const CorpusSpec& spec) {
    GraphFacts f;
    f.reduced_member = forms.trace.final_member;
    f.strict_full_member = forms.trace.final_member && !forms.marked.has_gadgets();

    if (is_extended_class(g).member()) {
        f.input_member = true;
        const OrderedPartition p = coarsest_regular_simplicial_partition(g);
        const LemmaReport lr = verify_babel_lemmas(g, p);
        f.lemma_checked = true;
        f.lemma_pass = lr.all_pass();
        try {
            const OrbitPartition orb = automorphism_orbits(g, spec.orbit_budget);
            f.orbit_state = sorted_family(p.cells) == sorted_family(orb.cells) ? 1 : 2;
        } catch (const BudgetExceeded&) {
            f.orbit_state = 0;
        }
    }

    if (forms.trace.final_member) {
        const MarkedGraph& mk = forms.marked;
        const int nc = mk.core_count();
        if (nc <= spec.orbit_budget) {
            std::map<std::string, int> key_ids;
            std::vector<int> colors(nc, 0);
            for (int v = 0; v < nc; ++v) {
                auto it = mk.code_of.find(v);
                const std::string key =
                    it == mk.code_of.end() ? std::string() : code_key(it->second);
                colors[v] = key_ids.emplace(key, static_cast<int>(key_ids.size())).first->second;
            }
            try {
                const OrbitPartition orb =
                    automorphism_orbits_colored(mk.core_graph(), colors, spec.orbit_budget);
                std::vector<VertexSet> core_cells;
                for (const auto& cell : forms.marked_partition->cells) {
                    VertexSet c;
                    for (int v : cell)
                        if (v < nc)
                            c.push_back(v);
                    if (!c.empty())
                        core_cells.push_back(std::move(c));
                }
                f.reduced_orbit =
                    sorted_family(core_cells) == sorted_family(orb.cells) ? 1 : 2;
            } catch (const BudgetExceeded&) {
                f.reduced_orbit = 0;
            }
        } else {
            f.reduced_orbit = 0;
        }
    }
    return f;
}

struct PairOutcome {
    bool oracle = false;
    IsoDecision marked, alignment;
};

} // namespace detail

inline nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["corpus"] = {{"kind", corpus_kind}, {"n", n}, {"seed", seed}};
    j["graphs"] = graphs;
    j["pairs"] = pairs;
    auto mode_json = [](const ModeStats& m, long long total) {
        nlohmann::ordered_json x;
        x["agree"] = m.agree;
        x["disagree"] = m.disagree;
        x["inconclusive"] = m.inconclusive;
        x["agreement_rate"] = detail::ratio_str(m.agree, total);
        return x;
    };
    j["modes"] = {{"marked", mode_json(marked, pairs)}, {"alignment", mode_json(alignment, pairs)}};
    j["verified_mappings"] = verified_mappings;
    j["verify_failures"] = verify_failures;
    j["stages"] = {{"reductions", reductions},
                   {"members", members},
                   {"partitions_regular", partitions_regular},
                   {"lemma_graphs", lemma_graphs},
                   {"lemma_pass", lemma_pass}};
    j["orbit_comparison"] = {{"members", orbit_members},
                             {"agree", orbit_agree},
                             {"disagree", orbit_disagree},
                             {"skipped", orbit_skipped}};
    j["reduced_orbit_comparison"] = {{"checked", reduced_orbit_checked},
                                     {"agree", reduced_orbit_agree},
                                     {"disagree", reduced_orbit_disagree},
                                     {"skipped", reduced_orbit_skipped}};
    j["strict_full_members"] = strict_full_members;
    j["counterexamples"] = counterexamples;
    return j;
}

// Compare both iso_test modes against the brute-force oracle over a small
// corpus; also measure the partition-vs-orbit agreement on every class
// member encountered. Deterministic for a fixed spec. Random corpora are
// processed pair by pair so large reductions are never held in memory
// together; exhaustive corpora share one reduction per graph.
inline ValidationReport validate_corpus(const CorpusSpec& spec) {
    std::vector<Graph> graphs;
    std::vector<std::pair<int, int>> pair_indices;

    if (spec.exhaustive) {
        if (spec.n > 5)
            throw BudgetExceeded("exhaustive pair validation limited to n <= 5");
        GraphEnumerator en(spec.n);
        while (auto g = en.next())
            graphs.push_back(std::move(*g));
        for (int i = 0; i < static_cast<int>(graphs.size()); ++i)
            for (int j = i; j < static_cast<int>(graphs.size()); ++j)
                pair_indices.emplace_back(i, j);
    } else {
        Rng rng(spec.seed);
        for (int k = 0; k < spec.samples; ++k) {
            Graph g1 = random_graph(spec.n, spec.edge_probability, rng);
            Graph g2 = rng.chance(0.5) ? permute_graph(g1, random_permutation(spec.n, rng))
                                       : random_graph(spec.n, spec.edge_probability, rng);
            graphs.push_back(std::move(g1));
            graphs.push_back(std::move(g2));
            pair_indices.emplace_back(2 * k, 2 * k + 1);
        }
    }

    ValidationReport report;
    report.corpus_kind = spec.exhaustive ? "exhaustive" : "random";
    report.n = spec.n;
    report.seed = spec.exhaustive ? 0 : spec.seed;
    report.graphs = static_cast<long long>(graphs.size());
    report.pairs = static_cast<long long>(pair_indices.size());

    std::vector<detail::GraphFacts> facts(graphs.size());
    std::vector<detail::PairOutcome> outcomes(pair_indices.size());

    if (spec.exhaustive) {
        std::vector<ReducedForms> forms(graphs.size());
        detail::run_chunked(static_cast<long long>(graphs.size()), spec.jobs, [&](long long gi) {
            forms[gi] = reduce_forms(graphs[gi]);
            facts[gi] = detail::analyze_graph(graphs[gi], forms[gi], spec);
        });
        detail::run_chunked(static_cast<long long>(pair_indices.size()), spec.jobs,
                            [&](long long pi) {
                                const auto [i, j] = pair_indices[pi];
                                detail::PairOutcome& o = outcomes[pi];
                                o.oracle = find_isomorphism(graphs[i], graphs[j]).has_value();
                                o.marked = detail::decide_pair(graphs[i], forms[i], graphs[j],
                                                               forms[j], IsoMode::Marked);
                                o.alignment = detail::decide_pair(graphs[i], forms[i], graphs[j],
                                                                  forms[j], IsoMode::Alignment);
                            });
    } else {
        detail::run_chunked(static_cast<long long>(pair_indices.size()), spec.jobs,
                            [&](long long pi) {
                                const auto [i, j] = pair_indices[pi];
                                const ReducedForms fi = reduce_forms(graphs[i]);
                                const ReducedForms fj = reduce_forms(graphs[j]);
                                facts[i] = detail::analyze_graph(graphs[i], fi, spec);
                                facts[j] = detail::analyze_graph(graphs[j], fj, spec);
                                detail::PairOutcome& o = outcomes[pi];
                                o.oracle = find_isomorphism(graphs[i], graphs[j]).has_value();
                                o.marked = detail::decide_pair(graphs[i], fi, graphs[j], fj,
                                                               IsoMode::Marked);
                                o.alignment = detail::decide_pair(graphs[i], fi, graphs[j], fj,
                                                                  IsoMode::Alignment);
                            });
    }

    // Merge (single-threaded, deterministic).
    for (const auto& f : facts) {
        ++report.reductions;
        if (f.reduced_member) {
            ++report.members;
            ++report.partitions_regular; // partition construction verifies itself
        }
        if (f.strict_full_member)
            ++report.strict_full_members;
        if (f.lemma_checked) {
            ++report.lemma_graphs;
            if (f.lemma_pass)
                ++report.lemma_pass;
        }
        if (f.input_member) {
            ++report.orbit_members;
            if (f.orbit_state == 1)
                ++report.orbit_agree;
            else if (f.orbit_state == 2)
                ++report.orbit_disagree;
            else if (f.orbit_state == 0)
                ++report.orbit_skipped;
        }
        if (f.reduced_orbit >= 0) {
            ++report.reduced_orbit_checked;
            if (f.reduced_orbit == 1)
                ++report.reduced_orbit_agree;
            else if (f.reduced_orbit == 2)
                ++report.reduced_orbit_disagree;
            else
                ++report.reduced_orbit_skipped;
        }
    }

    const bool write = !spec.counterexample_dir.empty();
    if (write)
        std::filesystem::create_directories(spec.counterexample_dir);
    auto archive_pair = [&](long long pi, const char* mode, const IsoDecision& d, bool oracle) {
        char name[64];
        std::snprintf(name, sizeof(name), "pair_%06lld_%s", pi, mode);
        const std::string base =
            (write ? spec.counterexample_dir + "/" : std::string()) + name;
        report.counterexamples.push_back(base + ".json");
        if (!write)
            return;
        const auto [i, j] = pair_indices[pi];
        nlohmann::ordered_json cj;
        cj["pair"] = pi;
        cj["mode"] = mode;
        cj["oracle_isomorphic"] = oracle;
        cj["decision"] = decision_to_json(d);
        std::ofstream(base + ".json") << cj.dump(2) << "\n";
        std::ofstream(base + "_a.el") << serialize_graph(graphs[i]);
        std::ofstream(base + "_b.el") << serialize_graph(graphs[j]);
        std::ofstream(base + "_trace_a.json")
            << trace_to_json(to_extended(graphs[i]).second).dump(2) << "\n";
        std::ofstream(base + "_trace_b.json")
            << trace_to_json(to_extended(graphs[j]).second).dump(2) << "\n";
    };

    for (long long pi = 0; pi < static_cast<long long>(pair_indices.size()); ++pi) {
        const detail::PairOutcome& o = outcomes[pi];
        auto tally = [&](const IsoDecision& d, ModeStats& stats, const char* mode) {
            if (d.verdict == IsoDecision::Verdict::Inconclusive) {
                ++stats.inconclusive;
                ++stats.disagree;
                archive_pair(pi, mode, d, o.oracle);
                return;
            }
            const bool pos = d.isomorphic();
            if (pos) {
                const auto [i, j] = pair_indices[pi];
                if (verify_mapping(graphs[i], graphs[j], *d.mapping))
                    ++report.verified_mappings;
                else
                    ++report.verify_failures;
            }
            if (pos == o.oracle) {
                ++stats.agree;
            } else {
                ++stats.disagree;
                archive_pair(pi, mode, d, o.oracle);
            }
        };
        tally(o.marked, report.marked, "marked");
        tally(o.alignment, report.alignment, "alignment");
    }
    return report;
}

} // namespace ext63
