#include <set>

#include "doctest.h"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/hypergraph.hpp"
#include "helpers.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

Groupoid zmod(int n) {
    // cym of the directed n-cycle over the one-site loop pair
    auto p = oneSiteLoopPair();
    std::vector<std::pair<std::string, std::string>> verts;
    std::vector<std::pair<std::string, std::string>> fwd, bwd;
    for (int i = 0; i < n; ++i) {
        std::string a = "v" + std::to_string(i), b = "v" + std::to_string((i + 1) % n);
        verts.push_back({a, "s"});
        fwd.push_back({a, b});
        bwd.push_back({b, a});
    }
    IGraph h(p, verts, {{"e", fwd}, {"e'", bwd}});
    return cym(h);
}

Bits allPairs(const IncidencePattern& p) {
    Bits b((std::size_t)p.nPairs());
    for (int i = 0; i < p.nPairs(); ++i) b.set((std::size_t)i);
    return b;
}

}  // namespace

TEST_CASE("cym of a one-site matching gives the order-2 group") {
    auto p = oneSiteLoopPair();
    IGraph h(p, {{"1", "s"}, {"2", "s"}}, {{"e", {{"1", "2"}}}, {"e'", {{"2", "1"}}}});
    auto g = cym(h);
    // completion symmetrises the matching; the generator is an involution
    CHECK(g.size() == 2);
    int ge = g.generator(p.edgeIndex("e"));
    CHECK_FALSE(g.isIdentity(ge));
    CHECK(g.product(ge, ge) == g.identity(0));
    CHECK(g.inverse(ge) == ge);
}

TEST_CASE("cym of the pattern-as-I-graph has one element per site pair path class") {
    auto p = intersection_pattern(tetrahedron());
    auto g = cym(pattern_as_igraph(p));
    // every fibre is a singleton, so each rho_w is determined by its sorts
    CHECK(g.size() == 16);  // 4x4 sort pairs, all connected
    for (int e = 0; e < p.nEdges(); ++e) CHECK_FALSE(g.isIdentity(g.generator(e)));
}

TEST_CASE("Z6 behaves as the cyclic group") {
    auto g = zmod(6);
    CHECK(g.size() == 6);
    int r = g.generator(g.pattern().edgeIndex("e"));
    int x = g.identity(0);
    for (int i = 0; i < 5; ++i) x = g.product(x, r);
    CHECK_FALSE(g.isIdentity(x));
    x = g.product(x, r);
    CHECK(x == g.identity(0));
}

TEST_CASE("cayley graph is complete and cym round-trips (generator-respecting)") {
    auto g = zmod(6);
    auto cay = cayley_graph(g);
    CHECK(is_complete(cay).complete);
    auto g2 = cym(cay);
    CHECK(groupoids_isomorphic(g, g2));

    auto tp = intersection_pattern(tetrahedron());
    auto gt = cym(pattern_as_igraph(tp));
    CHECK(groupoids_isomorphic(gt, cym(cayley_graph(gt))));
}

TEST_CASE("trivial groupoid over an edgeless pattern has a discrete cayley graph") {
    IncidencePattern p({"a", "b"}, {});
    auto g = cym(pattern_as_igraph(p));
    CHECK(g.size() == 2);
    auto cay = cayley_graph(g);
    CHECK(cay.nVertices() == 2);
    CHECK(cay.pattern().nEdges() == 0);
}

TEST_CASE("cayley incidence pattern of Z6 is a 6-cycle covering the loop pattern") {
    auto g = zmod(6);
    auto cp = cayley_incidence_pattern(g);
    CHECK(validate_pattern(cp.pattern).ok());
    CHECK(cp.pattern.nSites() == 6);
    CHECK(cp.pattern.nEdges() == 12);
    CHECK(verify_pattern_covering(cp.covering).ok());
}

TEST_CASE("cayley incidence pattern of the trivial one-site groupoid is the base") {
    auto p = oneSiteLoopPair();
    IGraph h(p, {{"1", "s"}}, {{"e", {{"1", "1"}}}, {"e'", {{"1", "1"}}}});
    auto g = cym(h);
    CHECK(g.size() == 1);
    auto cp = cayley_incidence_pattern(g);
    CHECK(cp.pattern.nSites() == 1);
    CHECK(cp.pattern.nEdges() == 2);
    CHECK(verify_pattern_covering(cp.covering).ok());
}

TEST_CASE("subgroupoid of the empty set is identities only") {
    auto g = zmod(6);
    Bits none((std::size_t)g.pattern().nPairs());
    auto ids = subgroupoid_elements(g, none);
    CHECK((int)ids.size() == g.pattern().nSites());
    for (int x : ids) CHECK(g.isIdentity(x));
    auto sub = subgroupoid(g, none);
    CHECK(sub.size() == g.pattern().nSites());
}

TEST_CASE("subgroupoid of everything is the groupoid itself") {
    auto g = zmod(6);
    auto all = allPairs(g.pattern());
    CHECK((int)subgroupoid_elements(g, all).size() == g.size());
    CHECK(groupoids_isomorphic(subgroupoid(g, all), g));
}

TEST_CASE("cosets: empty generator set gives the singleton") {
    auto g = zmod(6);
    Bits none((std::size_t)g.pattern().nPairs());
    auto c = coset(g, 3, none);
    CHECK(c.members == std::vector<int>{3});
    auto full = coset(g, g.identity(0), allPairs(g.pattern()));
    CHECK((int)full.members.size() == 6);
}

TEST_CASE("compatibility: cym(h) is compatible with h, its completion, its cayley graph") {
    auto p = oneSiteLoopPair();
    IGraph h(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}},
             {{"e", {{"1", "2"}}}, {"e'", {{"2", "1"}}}});
    auto g = cym(h);
    CHECK(is_compatible(g, h).compatible);
    CHECK(is_compatible(g, complete_igraph(h)).compatible);
    CHECK(is_compatible(g, cayley_graph(g)).compatible);
}

TEST_CASE("cym of a disjoint union is compatible with both parts") {
    Rng rng(31);
    RandomIGraphSpec spec;
    spec.maxSites = 2;
    spec.maxPairs = 2;
    spec.maxVerticesPerSite = 3;
    for (int i = 0; i < 8; ++i) {
        auto p = randomPattern(rng, spec);
        auto h1 = pattern_as_igraph(p);
        Rng rng2(1000 + i);
        // second igraph over the same pattern: completion of a random one is
        // awkward to produce over a fixed pattern via the helper, so reuse a
        // structured one: the pattern igraph doubled
        auto h2 = disjoint_union(h1, h1, "c1:", "c2:");
        auto joint = disjoint_union(h1, h2, "L:", "R:");
        auto g = cym(joint);
        CHECK(is_compatible(g, h2).compatible);
        CHECK(is_compatible(g, complete_igraph(h2)).compatible);
        CHECK(is_compatible(g, cayley_graph(cym(h2))).compatible);
    }
}

TEST_CASE("incompatibility: order-2 group against a 3-cycle, witness ee") {
    auto p = oneSiteLoopPair();
    // G = Z2 via a total transposition
    IGraph h2(p, {{"1", "s"}, {"2", "s"}},
              {{"e", {{"1", "2"}, {"2", "1"}}}, {"e'", {{"1", "2"}, {"2", "1"}}}});
    auto g = cym(h2);
    CHECK(g.size() == 2);
    // H requires order 3
    IGraph h3(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}},
              {{"e", {{"1", "2"}, {"2", "3"}, {"3", "1"}}},
               {"e'", {{"2", "1"}, {"3", "2"}, {"1", "3"}}}});
    auto res = is_compatible(g, h3);
    CHECK_FALSE(res.compatible);
    // the witness denotes an identity in G but not in cym(h3)
    CHECK(g.isIdentity(g.evalWord(res.witnessWord)));
    auto m = cym(h3);
    CHECK_FALSE(m.isIdentity(m.evalWord(res.witnessWord)));
}

TEST_CASE("coset cycles: any groupoid is 1-acyclic; a forced meet violation gives a 2-cycle") {
    auto p = oneSiteLoops(2);
    // rho_{e1} = rho_{e2} = the same transposition: the element lies in two
    // incomparable sub-groupoids whose meet is trivial
    IGraph h(p, {{"1", "s"}, {"2", "s"}},
             {{"e1", {{"1", "2"}, {"2", "1"}}},
              {"e1'", {{"1", "2"}, {"2", "1"}}},
              {"e2", {{"1", "2"}, {"2", "1"}}},
              {"e2'", {{"1", "2"}, {"2", "1"}}}});
    auto g = cym(h);
    CHECK(g.size() == 2);
    CHECK(find_coset_cycles(g, 1).empty());
    auto res = find_coset_cycles(g, 2);
    REQUIRE(res.status == CycleSearchResult::Status::FoundCycles);
    REQUIRE(!res.cycles.empty());
    CHECK(verify_coset_cycle(g, res.cycles[0]).ok());
    // and indeed G_alpha cap G_beta strictly contains G_{alpha cap beta}
    Bits a1((std::size_t)2), a2((std::size_t)2);
    a1.set(0);
    a2.set(1);
    auto s1 = subgroupoid_elements(g, a1);
    auto s2 = subgroupoid_elements(g, a2);
    auto s12 = subgroupoid_elements(g, a1 & a2);
    std::vector<int> inter;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(inter));
    CHECK(inter.size() > s12.size());
}

TEST_CASE("one-site one-pair groupoids have no coset cycles at any length") {
    auto g = zmod(4);
    CHECK(find_coset_cycles(g, 4).empty());
}

TEST_CASE("minimal supports are supports and minimal on a small example") {
    auto p = oneSiteLoops(2);
    IGraph h(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}},
             {{"e1", {{"1", "2"}, {"2", "1"}, {"3", "3"}}},
              {"e1'", {{"1", "2"}, {"2", "1"}, {"3", "3"}}},
              {"e2", {{"1", "1"}, {"2", "3"}, {"3", "2"}}},
              {"e2'", {{"1", "1"}, {"2", "3"}, {"3", "2"}}}});
    auto g = cym(h);
    auto supp = minimal_supports(g);
    SubgroupoidIndex idx(g);
    for (int x = 0; x < g.size(); ++x) {
        REQUIRE(!supp[x].empty());
        for (const auto& s : supp[x]) {
            CHECK(idx.get(s).contains(x));
            // removing any pair from a minimal support loses membership
            for (std::size_t pIdx = 0; pIdx < s.size(); ++pIdx) {
                if (!s.test(pIdx)) continue;
                Bits smaller = s;
                smaller.reset(pIdx);
                CHECK_FALSE(idx.get(smaller).contains(x));
            }
        }
    }
}

TEST_CASE("coset intersections agree with closure under the meet for 2-acyclic groupoids") {
    // zmod(6) over one pair is trivially coset-cycle free; richer meet
    // structure needs two pairs acting consistently
    auto p = oneSiteLoops(2);
    IGraph h(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}, {"4", "s"}},
             {{"e1", {{"1", "2"}, {"2", "1"}, {"3", "4"}, {"4", "3"}}},
              {"e1'", {{"1", "2"}, {"2", "1"}, {"3", "4"}, {"4", "3"}}},
              {"e2", {{"1", "3"}, {"3", "1"}, {"2", "4"}, {"4", "2"}}},
              {"e2'", {{"1", "3"}, {"3", "1"}, {"2", "4"}, {"4", "2"}}}});
    auto g = cym(h);  // Klein four-group
    CHECK(g.size() == 4);
    CHECK(find_coset_cycles(g, 2).empty());
    // set-based oracle: coset(base, a) cap coset(base, b) vs coset(base, a&b)
    Rng rng(77);
    for (int t = 0; t < 40; ++t) {
        int base = (int)rng.below((std::uint64_t)g.size());
        Bits a((std::size_t)2), b((std::size_t)2);
        if (rng.coin()) a.set(0);
        if (rng.coin()) a.set(1);
        if (rng.coin()) b.set(0);
        if (rng.coin()) b.set(1);
        auto ca = coset(g, base, a).members;
        auto cb = coset(g, base, b).members;
        std::vector<int> inter;
        std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                              std::back_inserter(inter));
        CHECK(inter == coset(g, base, a & b).members);
    }
}
