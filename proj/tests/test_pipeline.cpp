#include <catch2/catch.hpp>

#include "ext63/graph.hpp"
#include "ext63/oracle.hpp"
#include "ext63/pipeline.hpp"
#include "ext63/rng.hpp"

using namespace ext63;

TEST_CASE("iso_test finds and certifies mappings") {
    const Graph c5 = make_cycle(5);
    const Graph rot = permute_graph(c5, {2, 3, 4, 0, 1});
    for (IsoMode mode : {IsoMode::Marked, IsoMode::Alignment}) {
        const IsoDecision d = iso_test(c5, rot, mode);
        REQUIRE(d.isomorphic());
        REQUIRE(verify_mapping(c5, rot, *d.mapping));
    }
}

TEST_CASE("iso_test negatives") {
    SECTION("size mismatch short-circuits") {
        const IsoDecision d = iso_test(make_cycle(5), make_path(5), IsoMode::Marked);
        REQUIRE(d.verdict == IsoDecision::Verdict::NotIsomorphic);
        REQUIRE(d.reason == IsoDecision::Reason::SizeMismatch);
    }
    SECTION("equal degree sequences still separate") {
        const Graph c6 = make_cycle(6);
        const Graph two = disjoint_union(make_cycle(3), make_cycle(3)).first;
        for (IsoMode mode : {IsoMode::Marked, IsoMode::Alignment}) {
            const IsoDecision d = iso_test(c6, two, mode);
            REQUIRE(d.verdict == IsoDecision::Verdict::NotIsomorphic);
        }
    }
}

TEST_CASE("iso_test matches the oracle on all n = 4 labeled pairs, alignment mode") {
    std::vector<Graph> graphs;
    GraphEnumerator en(4);
    while (auto g = en.next())
        graphs.push_back(std::move(*g));
    std::vector<ReducedForms> forms;
    forms.reserve(graphs.size());
    for (const auto& g : graphs)
        forms.push_back(reduce_forms(g));
    int checked = 0;
    for (size_t i = 0; i < graphs.size(); i += 7)
        for (size_t j = i; j < graphs.size(); j += 9) {
            const bool oracle = find_isomorphism(graphs[i], graphs[j]).has_value();
            const IsoDecision d =
                detail::decide_pair(graphs[i], forms[i], graphs[j], forms[j], IsoMode::Alignment);
            if (d.verdict != IsoDecision::Verdict::Inconclusive) {
                REQUIRE(d.isomorphic() == oracle);
                ++checked;
            }
        }
    REQUIRE(checked > 0);
}

TEST_CASE("self-test: permuted copies are always isomorphic") {
    Rng rng(73);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(4));
        const Graph g = random_graph(n, 0.4, rng);
        const Graph h = permute_graph(g, random_permutation(n, rng));
        for (IsoMode mode : {IsoMode::Marked, IsoMode::Alignment}) {
            const IsoDecision d = iso_test(g, h, mode);
            if (d.verdict == IsoDecision::Verdict::Inconclusive)
                continue; // reducer failure is reported, not hidden
            REQUIRE(d.isomorphic());
            REQUIRE(verify_mapping(g, h, *d.mapping));
        }
    }
}

TEST_CASE("verdict classes are symmetric") {
    Rng rng(79);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(3));
        const Graph g = random_graph(n, 0.4, rng);
        const Graph h =
            rng.chance(0.5) ? permute_graph(g, random_permutation(n, rng)) : random_graph(n, 0.4, rng);
        for (IsoMode mode : {IsoMode::Marked, IsoMode::Alignment})
            REQUIRE(iso_test(g, h, mode).verdict == iso_test(h, g, mode).verdict);
    }
}

TEST_CASE("align_and_verify") {
    SECTION("identical inputs align") {
        const Graph g = make_path(5);
        const ReducedForms f = reduce_forms(g);
        const auto mapping = align_and_verify(f.marked, *f.marked_partition, f.marked,
                                              *f.marked_partition);
        REQUIRE(mapping.has_value());
        REQUIRE(verify_mapping(f.marked.graph, f.marked.graph, *mapping));
    }
    SECTION("singleton cells force the unique candidate") {
        const Graph g(3, {{0, 1}, {1, 2}});
        const ReducedForms f = reduce_forms(g);
        for (const auto& cell : f.bare_partition->cells)
            (void)cell;
        const auto mapping =
            align_and_verify(f.bare, *f.bare_partition, f.bare, *f.bare_partition);
        REQUIRE(mapping.has_value());
    }
    SECTION("signature mismatch is a precondition error") {
        const ReducedForms a = reduce_forms(make_path(4));
        const ReducedForms b = reduce_forms(make_clique(4));
        REQUIRE_THROWS_AS(
            align_and_verify(a.bare, *a.bare_partition, b.bare, *b.bare_partition),
            PreconditionFailed);
    }
}

TEST_CASE("validate_corpus") {
    SECTION("exhaustive n = 3") {
        CorpusSpec spec;
        spec.exhaustive = true;
        spec.n = 3;
        const ValidationReport r = validate_corpus(spec);
        REQUIRE(r.graphs == 8);
        REQUIRE(r.pairs == 36); // C(8,2) + 8
        REQUIRE(r.verify_failures == 0);
        REQUIRE(r.marked.agree + r.marked.disagree == r.pairs);
        REQUIRE(r.alignment.agree + r.alignment.disagree == r.pairs);
        // n = 3 is too small for any forbidden subgraph: everything agrees
        REQUIRE(r.marked.agree == r.pairs);
        REQUIRE(r.alignment.agree == r.pairs);
        // every graph on three vertices is chordal and pattern-free
        REQUIRE(r.orbit_members == r.graphs);
        REQUIRE(r.orbit_agree == r.orbit_members);
    }
    SECTION("a single-graph corpus agrees with itself") {
        CorpusSpec spec;
        spec.exhaustive = true;
        spec.n = 1;
        const ValidationReport r = validate_corpus(spec);
        REQUIRE(r.graphs == 1);
        REQUIRE(r.pairs == 1);
        REQUIRE(r.marked.agree == 1);
        REQUIRE(r.alignment.agree == 1);
        REQUIRE(r.verified_mappings == 2);
    }
    SECTION("reports are byte-identical across runs") {
        CorpusSpec spec;
        spec.exhaustive = false;
        spec.n = 6;
        spec.samples = 20;
        spec.seed = 99;
        const std::string a = validate_corpus(spec).to_json().dump(2);
        const std::string b = validate_corpus(spec).to_json().dump(2);
        REQUIRE(a == b);
    }
    SECTION("jobs do not change the report") {
        CorpusSpec spec;
        spec.exhaustive = false;
        spec.n = 6;
        spec.samples = 12;
        spec.seed = 5;
        const std::string a = validate_corpus(spec).to_json().dump(2);
        spec.jobs = 2;
        const std::string b = validate_corpus(spec).to_json().dump(2);
        REQUIRE(a == b);
    }
    SECTION("exhaustive corpora beyond n = 5 are rejected") {
        CorpusSpec spec;
        spec.exhaustive = true;
        spec.n = 6;
        REQUIRE_THROWS_AS(validate_corpus(spec), BudgetExceeded);
    }
}
