#include <set>

#include "doctest.h"
#include "grpd/errors.hpp"
#include "grpd/hypergraph.hpp"
#include "grpd/igraph.hpp"
#include "helpers.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

IGraph threePathLoopGraph() {
    // one site, loop pair, rho_e: 1 -> 2 on V = {1,2,3}
    auto p = oneSiteLoopPair();
    return IGraph(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}},
                  {{"e", {{"1", "2"}}}, {"e'", {{"2", "1"}}}});
}

}  // namespace

TEST_CASE("empty word evaluates to the identity") {
    auto h = threePathLoopGraph();
    auto m = eval_word(h, PathWord::empty(0));
    for (int i = 0; i < 3; ++i) CHECK(m.img[i] == i);
}

TEST_CASE("e e^-1 is the identity restricted to dom(rho_e)") {
    auto h = threePathLoopGraph();
    int e = h.pattern().edgeIndex("e"), r = h.pattern().edgeIndex("e'");
    auto m = eval_word(h, PathWord{0, {e, r}});
    int v1 = h.vertexIndex("1"), v3 = h.vertexIndex("3");
    CHECK(m.img[h.fibrePos(v1)] == h.fibrePos(v1));
    CHECK(m.img[h.fibrePos(v3)] == -1);  // proper domain: not all of V_s
}

TEST_CASE("word evaluation rejects non-paths") {
    auto p = twoSiteParallelPairs();
    IGraph h(p, {{"x", "s"}, {"y", "t"}}, {});
    int e1 = p.edgeIndex("e1");
    CHECK_THROWS_AS(eval_word(h, PathWord{0, {e1, e1}}), ValidationError);
}

TEST_CASE("tetrahedron H(A): sizes, coherence, word composition") {
    auto a = tetrahedron();
    auto ha = igraph_of(a);
    const IGraph& h = ha.graph;
    CHECK(h.nVertices() == 12);  // 4 faces x 3 vertices
    for (int e = 0; e < h.pattern().nEdges(); ++e) CHECK(h.edgeSize(e) == 2);
    CHECK(is_coherent(h).coherent);
    CHECK_FALSE(is_complete(h).complete);

    // word through faces h0 -> h1 -> h2 is defined exactly on the single
    // common vertex of the two overlaps ({1,2} then {1,4} gives {1})
    int e01 = h.pattern().edgeIndex("h0>h1");
    int e12 = h.pattern().edgeIndex("h1>h2");
    REQUIRE(e01 >= 0);
    REQUIRE(e12 >= 0);
    auto m = eval_word(h, PathWord{h.pattern().src(e01), {e01, e12}});
    int defined = 0;
    for (auto v : m.img)
        if (v >= 0) ++defined;
    CHECK(defined == 1);
    int src = h.vertexIndex("1@h0");
    int dst = h.vertexIndex("1@h2");
    CHECK(m.img[h.fibrePos(src)] == h.fibrePos(dst));
}

TEST_CASE("pattern as I-graph is trivially coherent and complete") {
    auto p = twoSiteParallelPairs();
    auto h = pattern_as_igraph(p);
    CHECK(is_coherent(h).coherent);
    CHECK(is_complete(h).complete);
}

TEST_CASE("a swapping composite breaks coherence with a witness") {
    // one site, two loop pairs; rho_{e1} swaps 1,2 totally; rho_{e2} = id.
    auto p = oneSiteLoops(2);
    IGraph h(p, {{"1", "s"}, {"2", "s"}},
             {{"e1", {{"1", "2"}, {"2", "1"}}},
              {"e1'", {{"2", "1"}, {"1", "2"}}},
              {"e2", {{"1", "1"}, {"2", "2"}}},
              {"e2'", {{"1", "1"}, {"2", "2"}}}});
    auto res = is_coherent(h);
    CHECK_FALSE(res.coherent);
    CHECK_FALSE(res.witnessWord.edges.empty());
    // the witness word indeed moves the witness vertex
    auto m = eval_word(h, res.witnessWord);
    int v = h.vertexIndex(res.witnessVertex);
    CHECK(m.img[h.fibrePos(v)] != h.fibrePos(v));
}

TEST_CASE("completion wraps the maximal e-path and keeps isolated vertices") {
    auto h = threePathLoopGraph();
    auto hc = complete_igraph(h);
    CHECK(is_complete(hc).complete);
    CHECK(hc.nVertices() == 3);
    int e = hc.pattern().edgeIndex("e");
    // frozen from hand-executing the loop rule: {(1,2),(2,1),(3,3)}
    std::set<std::pair<std::string, std::string>> got;
    for (auto [a, b] : hc.edgePairs(e))
        got.insert({hc.vertexName(a), hc.vertexName(b)});
    std::set<std::pair<std::string, std::string>> want{
        {"1@s", "2@s"}, {"2@s", "1@s"}, {"3@s", "3@s"}};
    CHECK(got == want);
}

TEST_CASE("completion leaves e-cycles alone") {
    auto p = oneSiteLoopPair();
    IGraph h(p, {{"1", "s"}, {"2", "s"}, {"3", "s"}},
             {{"e", {{"1", "2"}, {"2", "3"}, {"3", "1"}}},
              {"e'", {{"2", "1"}, {"3", "2"}, {"1", "3"}}}});
    CHECK(is_complete(h).complete);
    auto hc = complete_igraph(h);
    CHECK(igraphs_isomorphic(h, hc));
}

TEST_CASE("completion of a complete graph is isomorphic to it") {
    Rng rng(7);
    RandomIGraphSpec spec;
    for (int i = 0; i < 25; ++i) {
        auto h = randomIGraph(rng, spec);
        auto hc = complete_igraph(h);
        CHECK(is_complete(hc).complete);
        auto hcc = complete_igraph(hc);
        CHECK(igraphs_isomorphic(hc, hcc));
    }
}

TEST_CASE("completion commutes with disjoint unions") {
    Rng rng(11);
    RandomIGraphSpec spec;
    spec.maxSites = 2;
    spec.maxPairs = 2;
    spec.maxVerticesPerSite = 3;
    for (int i = 0; i < 10; ++i) {
        auto p = randomPattern(rng, spec);
        // two igraphs over the same pattern
        auto makeOver = [&](const std::string& pre) {
            std::vector<std::pair<std::string, std::string>> verts;
            std::vector<std::vector<std::string>> bySite(p.nSites());
            for (int s = 0; s < p.nSites(); ++s)
                for (int k = 0; k < 2; ++k) {
                    std::string v = pre + p.site(s) + std::to_string(k);
                    verts.push_back({v, p.site(s)});
                    bySite[s].push_back(v);
                }
            std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> edges;
            std::vector<char> done(p.nEdges(), 0);
            for (int e = 0; e < p.nEdges(); ++e) {
                if (done[e]) continue;
                done[e] = done[p.rev(e)] = 1;
                std::vector<std::pair<std::string, std::string>> fwd, bwd;
                if (rng.coin()) {
                    int i0 = (int)rng.below(2), j0 = (int)rng.below(2);
                    auto& a = bySite[p.src(e)][i0];
                    auto& b = bySite[p.tgt(e)][j0];
                    fwd.push_back({a, b});
                    bwd.push_back({b, a});
                }
                edges.push_back({p.edgeId(e), fwd});
                edges.push_back({p.edgeId(p.rev(e)), bwd});
            }
            return IGraph(p, verts, edges);
        };
        auto h1 = makeOver("A");
        auto h2 = makeOver("B");
        auto u = disjoint_union(h1, h2, "", "");
        auto cu = complete_igraph(u);
        auto cc = disjoint_union(complete_igraph(h1), complete_igraph(h2), "", "");
        CHECK(igraphs_isomorphic(cu, cc));
    }
}

TEST_CASE("reducts: full, empty, rev-closure enforced") {
    auto h = threePathLoopGraph();
    int nE = h.pattern().nEdges();
    Bits all((std::size_t)nE), none((std::size_t)nE), bad((std::size_t)nE);
    for (int e = 0; e < nE; ++e) all.set((std::size_t)e);
    bad.set((std::size_t)h.pattern().edgeIndex("e"));
    CHECK(reduct(h, all) == h);
    auto r0 = reduct(h, none);
    CHECK(r0.pattern().nEdges() == 0);
    CHECK(r0.nVertices() == 3);
    CHECK_THROWS_AS(reduct(h, bad), ValidationError);
}

TEST_CASE("alpha-reducts of completions nest as the closure law requires") {
    // vertex set of completion(h) is closed under alpha-edges inside
    // completion(h restricted to alpha), and the alpha-reducts agree there
    Rng rng(23);
    RandomIGraphSpec spec;
    spec.maxSites = 3;
    spec.maxPairs = 3;
    spec.maxVerticesPerSite = 3;
    for (int iter = 0; iter < 15; ++iter) {
        auto h = randomIGraph(rng, spec);
        const auto& I = h.pattern();
        for (std::uint64_t mask = 0; mask < (1ull << I.nPairs()); ++mask) {
            Bits pairs((std::size_t)I.nPairs());
            for (int p = 0; p < I.nPairs(); ++p)
                if ((mask >> p) & 1) pairs.set((std::size_t)p);
            Bits alpha = I.edgesOfPairs(pairs);
            auto hBar = complete_igraph(h);
            auto kBar = complete_igraph(reduct(h, alpha, /*keepPattern=*/true));
            // same "v@s" vertex names in both products
            std::set<std::string> hv, kv;
            for (int v = 0; v < hBar.nVertices(); ++v) hv.insert(hBar.vertexName(v));
            for (int v = 0; v < kBar.nVertices(); ++v) kv.insert(kBar.vertexName(v));
            for (const auto& n : hv) CHECK(kv.count(n) == 1);
            // alpha-edges of kBar starting inside hBar stay inside, and agree
            for (int e = 0; e < I.nEdges(); ++e) {
                if (!alpha.test((std::size_t)e)) continue;
                for (auto [a, b] : kBar.edgePairs(e)) {
                    bool aIn = hv.count(kBar.vertexName(a)) > 0;
                    bool bIn = hv.count(kBar.vertexName(b)) > 0;
                    CHECK(aIn == bIn);
                    if (aIn) {
                        int ha = hBar.vertexIndex(kBar.vertexName(a));
                        int hb = hBar.vertexIndex(kBar.vertexName(b));
                        CHECK(hBar.apply(e, ha) == hb);
                    }
                }
                // and every alpha-edge of hBar appears in kBar
                for (auto [a, b] : hBar.edgePairs(e)) {
                    int ka = kBar.vertexIndex(hBar.vertexName(a));
                    int kb = kBar.vertexIndex(hBar.vertexName(b));
                    REQUIRE(ka >= 0);
                    REQUIRE(kb >= 0);
                    CHECK(kBar.apply(e, ka) == kb);
                }
            }
        }
    }
}

TEST_CASE("coherent overlap on the tetrahedron: two faces share two vertices") {
    auto ha = igraph_of(tetrahedron());
    const IGraph& h = ha.graph;
    int s = h.pattern().siteIndex("h0"), t = h.pattern().siteIndex("h1");
    auto m = coherent_overlap(h, s, t);
    int defined = 0;
    for (auto v : m.img)
        if (v >= 0) ++defined;
    CHECK(defined == 2);  // faces {1,2,3} and {1,2,4} share {1,2}
}

TEST_CASE("coherent overlap s to s is the identity") {
    auto ha = igraph_of(tetrahedron());
    const IGraph& h = ha.graph;
    int s = h.pattern().siteIndex("h2");
    auto m = coherent_overlap(h, s, s);
    for (int i = 0; i < (int)m.img.size(); ++i) CHECK(m.img[i] == i);
}

TEST_CASE("coherent overlap of disconnected sites is empty") {
    Hypergraph a({"1", "2", "3", "4"}, {{"1", "2"}, {"3", "4"}});
    auto ha = igraph_of(a);
    auto m = coherent_overlap(ha.graph, 0, 1);
    CHECK(m.isEmpty());
}

TEST_CASE("eval_word concatenation equals composition on random graphs") {
    Rng rng(99);
    RandomIGraphSpec spec;
    spec.maxSites = 3;
    spec.maxPairs = 3;
    for (int iter = 0; iter < 20; ++iter) {
        auto h = randomIGraph(rng, spec);
        const auto& I = h.pattern();
        // random composable word pair
        for (int trial = 0; trial < 10; ++trial) {
            int s = (int)rng.below((std::uint64_t)I.nSites());
            PathWord w1{s, {}}, w2;
            int at = s;
            for (int k = 0; k < 3; ++k) {
                const auto& out = I.edgesFrom(at);
                if (out.empty()) break;
                int e = out[rng.below(out.size())];
                w1.edges.push_back(e);
                at = I.tgt(e);
            }
            w2.anchorSite = at;
            for (int k = 0; k < 3; ++k) {
                const auto& out = I.edgesFrom(at);
                if (out.empty()) break;
                int e = out[rng.below(out.size())];
                w2.edges.push_back(e);
                at = I.tgt(e);
            }
            PathWord cat{s, w1.edges};
            for (int e : w2.edges) cat.edges.push_back(e);
            auto lhs = eval_word(h, cat);
            auto rhs = compose(h, eval_word(h, w1), eval_word(h, w2));
            CHECK(lhs == rhs);
            // and inversion
            auto inv = eval_word(h, word_inverse(I, w1));
            CHECK(inv == invert(h, eval_word(h, w1)));
        }
    }
}

TEST_CASE("completion output: one in/out edge per colour per vertex") {
    Rng rng(5);
    RandomIGraphSpec spec;
    for (int i = 0; i < 10; ++i) {
        auto hc = complete_igraph(randomIGraph(rng, spec));
        const auto& I = hc.pattern();
        for (int e = 0; e < I.nEdges(); ++e) {
            std::vector<int> inDeg(hc.nVertices(), 0);
            for (int v : hc.fibre(I.src(e))) {
                int w = hc.apply(e, v);
                REQUIRE(w >= 0);
                inDeg[w]++;
            }
            for (int v : hc.fibre(I.tgt(e))) CHECK(inDeg[v] == 1);
        }
    }
}
