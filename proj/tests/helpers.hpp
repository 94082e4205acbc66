#pragma once

#include <string>
#include <vector>

#include "grpd/hypergraph.hpp"
#include "grpd/igraph.hpp"
#include "grpd/incidence.hpp"
#include "grpd/util.hpp"

namespace grpd::testing {

/// One site, one loop pair {e, e'}.
inline IncidencePattern oneSiteLoopPair() {
    return IncidencePattern({"s"}, {{"e", "s", "s", "e'"}, {"e'", "s", "s", "e"}});
}

/// One site, k loop pairs e1/e1', ..., ek/ek'.
inline IncidencePattern oneSiteLoops(int k) {
    std::vector<IncidencePattern::EdgeSpec> es;
    for (int i = 1; i <= k; ++i) {
        std::string a = "e" + std::to_string(i), b = "e" + std::to_string(i) + "'";
        es.push_back({a, "s", "s", b});
        es.push_back({b, "s", "s", a});
    }
    return IncidencePattern({"s"}, es);
}

/// Two sites with two parallel edge pairs s->t (e1, e2) and reverses.
inline IncidencePattern twoSiteParallelPairs() {
    return IncidencePattern({"s", "t"}, {{"e1", "s", "t", "e1'"},
                                         {"e1'", "t", "s", "e1"},
                                         {"e2", "s", "t", "e2'"},
                                         {"e2'", "t", "s", "e2"}});
}

/// The complete 3-uniform hypergraph on four vertices (tetrahedron faces).
inline Hypergraph tetrahedron() {
    return Hypergraph({"1", "2", "3", "4"},
                      {{"1", "2", "3"}, {"1", "2", "4"}, {"1", "3", "4"}, {"2", "3", "4"}});
}

/// Deterministic random I-graph over a random small pattern.
struct RandomIGraphSpec {
    int maxSites = 4;
    int maxPairs = 4;
    int maxVerticesPerSite = 6;
    bool allowLoops = true;
};

inline IncidencePattern randomPattern(Rng& rng, const RandomIGraphSpec& spec) {
    int nS = 1 + (int)rng.below((std::uint64_t)spec.maxSites);
    std::vector<std::string> sites;
    for (int i = 0; i < nS; ++i) sites.push_back("s" + std::to_string(i));
    int nP = 1 + (int)rng.below((std::uint64_t)spec.maxPairs);
    std::vector<IncidencePattern::EdgeSpec> es;
    for (int p = 0; p < nP; ++p) {
        int a = (int)rng.below((std::uint64_t)nS);
        int b = (int)rng.below((std::uint64_t)nS);
        if (!spec.allowLoops && a == b) b = (a + 1) % nS;
        std::string e = "e" + std::to_string(p), r = "e" + std::to_string(p) + "'";
        es.push_back({e, sites[a], sites[b], r});
        es.push_back({r, sites[b], sites[a], e});
    }
    return IncidencePattern(std::move(sites), std::move(es));
}

inline IGraph randomIGraph(Rng& rng, const RandomIGraphSpec& spec) {
    IncidencePattern I = randomPattern(rng, spec);
    std::vector<std::pair<std::string, std::string>> verts;
    std::vector<std::vector<std::string>> bySite(I.nSites());
    for (int s = 0; s < I.nSites(); ++s) {
        int n = 1 + (int)rng.below((std::uint64_t)spec.maxVerticesPerSite);
        for (int i = 0; i < n; ++i) {
            std::string v = I.site(s) + "v" + std::to_string(i);
            verts.push_back({v, I.site(s)});
            bySite[s].push_back(v);
        }
    }
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> edges;
    std::vector<char> done(I.nEdges(), 0);
    for (int e = 0; e < I.nEdges(); ++e) {
        if (done[e]) continue;
        int r = I.rev(e);
        done[e] = done[r] = 1;
        auto& src = bySite[I.src(e)];
        auto& tgt = bySite[I.tgt(e)];
        // random partial injection src -> tgt (for loops: partial matching
        // allowed to be any partial injection, cycles included)
        std::vector<int> perm(tgt.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = (int)i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<std::pair<std::string, std::string>> fwd, bwd;
        std::size_t k = rng.below(std::min(src.size(), tgt.size()) + 1);
        std::size_t taken = 0;
        for (std::size_t i = 0; i < src.size() && taken < k; ++i) {
            fwd.push_back({src[i], tgt[perm[taken]]});
            bwd.push_back({tgt[perm[taken]], src[i]});
            ++taken;
        }
        edges.push_back({I.edgeId(e), fwd});
        edges.push_back({I.edgeId(r), bwd});
    }
    return IGraph(I, verts, edges);
}

}  // namespace grpd::testing
