#include <catch2/catch.hpp>

#include "ext63/chordal.hpp"
#include "ext63/graph.hpp"
#include "ext63/marker.hpp"
#include "ext63/oracle.hpp"
#include "ext63/rng.hpp"

using namespace ext63;

namespace {

GadgetCode random_code(Rng& rng, int max_rounds = 3, int max_count = 6) {
    GadgetCode code;
    const int rounds = 1 + static_cast<int>(rng.below(static_cast<uint32_t>(max_rounds)));
    code.rounds.assign(rounds, CategoryCounts{});
    for (auto& r : code.rounds)
        for (int& c : r)
            c = static_cast<int>(rng.below(static_cast<uint32_t>(max_count + 1)));
    return code;
}

} // namespace

TEST_CASE("zero code encodes the minimal one-round tree") {
    GadgetCode zero;
    zero.rounds.assign(1, CategoryCounts{});
    const Graph t = encode_gadget(zero);
    // 15 spine vertices, one marker each, 7 one-vertex slot paths
    REQUIRE(t.n() == 15 + 15 + 7);
    REQUIRE(t.m() == t.n() - 1);
    REQUIRE(t.degree(0) == 2); // root: next spine vertex plus its marker
    int deg3 = 0, deg4 = 0;
    for (int v = 0; v < t.n(); ++v) {
        if (t.degree(v) == 3)
            ++deg3;
        if (t.degree(v) == 4)
            ++deg4;
    }
    REQUIRE(deg4 == 7); // slot vertices carry spine x2, marker, slot path
    REQUIRE(deg3 == 6); // even interior spine vertices
    REQUIRE(decode_gadget(t, 0) == zero);
}

TEST_CASE("category slots cover all kind/role combinations") {
    REQUIRE(category_slot(ForbiddenKind::H1NoDashed, NodeRole::Type1) == 0);
    REQUIRE(category_slot(ForbiddenKind::H1BothDashed, NodeRole::Type2) == 2);
    REQUIRE(category_slot(ForbiddenKind::H2, NodeRole::Type1) == 3);
    REQUIRE(category_slot(ForbiddenKind::H2, NodeRole::Type2) == 4);
    REQUIRE(category_slot(ForbiddenKind::H3, NodeRole::Type1) == 5);
    REQUIRE(category_slot(ForbiddenKind::H3, NodeRole::Type2) == 6);
}

TEST_CASE("encode/decode round-trips") {
    GadgetCode one;
    one.rounds.assign(1, CategoryCounts{});
    one.rounds[0][0] = 1;
    REQUIRE(decode_gadget(encode_gadget(one), 0) == one);

    Rng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const GadgetCode code = random_code(rng);
        REQUIRE(decode_gadget(encode_gadget(code), 0) == code);
    }
}

TEST_CASE("decode rejects trees outside the grammar") {
    REQUIRE_THROWS_AS(decode_gadget(make_path(8), 0), MalformedGadget);
    REQUIRE_THROWS_AS(decode_gadget(make_cycle(6), 0), MalformedGadget);
    const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    REQUIRE_THROWS_AS(decode_gadget(star, 0), MalformedGadget);
    GadgetCode zero;
    zero.rounds.assign(1, CategoryCounts{});
    REQUIRE_THROWS_AS(decode_gadget(encode_gadget(zero), 3), MalformedGadget);
}

TEST_CASE("codes and rooted trees are interchangeable over 1000 pairs") {
    Rng rng(37);
    for (int rep = 0; rep < 1000; ++rep) {
        const GadgetCode a = random_code(rng, 2, 3);
        GadgetCode b = rng.chance(0.5) ? a : random_code(rng, 2, 3);
        if (rep % 4 == 0) { // adjacent pair differing in exactly one count
            b = a;
            auto& slot = b.rounds[rng.below(static_cast<uint32_t>(b.rounds.size()))]
                                 [rng.below(kCategoriesPerRound)];
            slot += 1;
        }
        const bool same = a == b;
        REQUIRE(rooted_trees_isomorphic(encode_gadget(a), 0, encode_gadget(b), 0) == same);
    }
}

TEST_CASE("attach_gadgets") {
    SECTION("one coded vertex on an edge") {
        GadgetCode code;
        code.rounds.assign(1, CategoryCounts{});
        code.rounds[0][category_slot(ForbiddenKind::H1NoDashed, NodeRole::Type2)] = 1;
        const Graph k2 = make_clique(2);
        const MarkedGraph mg = attach_gadgets(k2, {{0, code}}, k2.edges());
        REQUIRE(mg.core == VertexSet{0, 1});
        REQUIRE(mg.graph.n() == 2 + (15 + 15 + 6 + 2));
        REQUIRE(mg.graph.has_edge(0, 2)); // root edge
        // gadget vertices induce a tree hanging off vertex 0
        const auto sub = induced_subgraph(mg.graph, [&] {
            VertexSet s;
            for (const auto& [v, host] : mg.host_of)
                s.push_back(v);
            return s;
        }());
        REQUIRE(sub.graph.m() == sub.graph.n() - 1);
        for (const auto& [v, host] : mg.host_of)
            REQUIRE(host == 0);
        REQUIRE(decode_gadget(sub.graph, 0) == code);
    }
    SECTION("no codes means no change") {
        const Graph g = make_path(4);
        const MarkedGraph mg = attach_gadgets(g, {}, g.edges());
        REQUIRE(mg.graph == g);
        REQUIRE(mg.core_count() == 4);
        REQUIRE_FALSE(mg.has_gadgets());
    }
    SECTION("attachment preserves chordality") {
        Rng rng(41);
        for (int rep = 0; rep < 30; ++rep) {
            const Graph host = random_chordal(4 + static_cast<int>(rng.below(6)), 0.5, rng);
            std::map<int, GadgetCode> codes;
            for (int v = 0; v < host.n(); ++v)
                if (rng.chance(0.3))
                    codes[v] = random_code(rng, 2, 3);
            const MarkedGraph mg = attach_gadgets(host, codes, host.edges());
            REQUIRE(check_chordal(mg.graph).chordal);
        }
    }
    SECTION("isomorphic hosts with matching codes give isomorphic outputs") {
        Rng rng(43);
        const Graph host = random_chordal(6, 0.5, rng);
        const std::vector<int> perm = random_permutation(6, rng);
        std::map<int, GadgetCode> codes{{1, random_code(rng)}, {4, random_code(rng)}};
        std::map<int, GadgetCode> permuted_codes;
        for (const auto& [v, c] : codes)
            permuted_codes[perm[v]] = c;
        const MarkedGraph a = attach_gadgets(host, codes, host.edges());
        const MarkedGraph b = attach_gadgets(permute_graph(host, perm), permuted_codes,
                                             permute_graph(host, perm).edges());
        REQUIRE(find_isomorphism(a.graph, b.graph).has_value());
    }
}
