#include "grpd/incidence.hpp"

#include <algorithm>
#include <set>

#include "grpd/errors.hpp"

namespace grpd {

IncidencePattern::IncidencePattern(std::vector<std::string> sites,
                                   std::vector<EdgeSpec> edges) {
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
        throw ValidationError("pattern: duplicate site id");
    sites_ = std::move(sites);
    for (int i = 0; i < (int)sites_.size(); ++i) siteIdx_[sites_[i]] = i;

    std::sort(edges.begin(), edges.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (const auto& e : edges) {
        if (edgeIdx_.count(e.id)) throw ValidationError("pattern: duplicate edge id " + e.id);
        edgeIdx_[e.id] = (int)edgeIds_.size();
        edgeIds_.push_back(e.id);
    }
    src_.resize(edgeIds_.size());
    tgt_.resize(edgeIds_.size());
    rev_.resize(edgeIds_.size());
    for (const auto& e : edges) {
        int i = edgeIdx_[e.id];
        auto s = siteIdx_.find(e.src);
        auto t = siteIdx_.find(e.tgt);
        auto r = edgeIdx_.find(e.rev);
        if (s == siteIdx_.end()) throw ValidationError("pattern: unknown site " + e.src);
        if (t == siteIdx_.end()) throw ValidationError("pattern: unknown site " + e.tgt);
        if (r == edgeIdx_.end()) throw ValidationError("pattern: unknown edge " + e.rev);
        src_[i] = s->second;
        tgt_[i] = t->second;
        rev_[i] = r->second;
    }
    outEdges_.assign(sites_.size(), {});
    for (int e = 0; e < nEdges(); ++e) outEdges_[src_[e]].push_back(e);

    // Pair orientations; for broken rev maps fall back to self-pairing so
    // that validate() can still run.
    pairIndex_.assign(edgeIds_.size(), -1);
    for (int e = 0; e < nEdges(); ++e) {
        if (pairIndex_[e] >= 0) continue;
        int r = rev_[e];
        int p = (int)pairRep_.size();
        pairRep_.push_back(std::min(e, r));
        pairIndex_[e] = p;
        if (r >= 0 && r < nEdges()) pairIndex_[r] = p;
    }
}

int IncidencePattern::siteIndex(const std::string& id) const {
    auto it = siteIdx_.find(id);
    return it == siteIdx_.end() ? -1 : it->second;
}

int IncidencePattern::edgeIndex(const std::string& id) const {
    auto it = edgeIdx_.find(id);
    return it == edgeIdx_.end() ? -1 : it->second;
}

Bits IncidencePattern::edgesOfPairs(const Bits& pairs) const {
    Bits out((std::size_t)nEdges());
    for (int e = 0; e < nEdges(); ++e)
        if (pairs.test((std::size_t)pairIndex_[e])) out.set((std::size_t)e);
    return out;
}

std::vector<int> IncidencePattern::siteComponents(const Bits& edgeSet) const {
    std::vector<int> comp(nSites(), -1);
    int c = 0;
    for (int s0 = 0; s0 < nSites(); ++s0) {
        if (comp[s0] >= 0) continue;
        comp[s0] = c;
        std::vector<int> stack{s0};
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int e : outEdges_[s]) {
                if (!edgeSet.test((std::size_t)e)) continue;
                int t = tgt_[e];
                if (comp[t] < 0) {
                    comp[t] = c;
                    stack.push_back(t);
                }
            }
        }
        ++c;
    }
    return comp;
}

std::vector<int> IncidencePattern::siteComponents() const {
    Bits all((std::size_t)nEdges());
    for (int e = 0; e < nEdges(); ++e) all.set((std::size_t)e);
    return siteComponents(all);
}

Report validate_pattern(const IncidencePattern& p) {
    Report r;
    for (int e = 0; e < p.nEdges(); ++e) {
        int rv = p.rev(e);
        if (rv == e)
            r.add("fixpoint", "rev(" + p.edgeId(e) + ") = " + p.edgeId(e));
        if (p.rev(rv) != e)
            r.add("involution", "rev(rev(" + p.edgeId(e) + ")) = " + p.edgeId(p.rev(rv)));
        if (p.src(rv) != p.tgt(e) || p.tgt(rv) != p.src(e))
            r.add("reversal-endpoints",
                  p.edgeId(e) + ": " + p.site(p.src(e)) + "->" + p.site(p.tgt(e)) +
                      " vs rev " + p.site(p.src(rv)) + "->" + p.site(p.tgt(rv)));
    }
    return r;
}

Report verify_pattern_symmetry(const IncidencePattern& p, const PatternSymmetry& sym) {
    Report r;
    if ((int)sym.siteMap.size() != p.nSites() || (int)sym.edgeMap.size() != p.nEdges()) {
        r.add("shape", "map sizes do not match pattern");
        return r;
    }
    std::vector<bool> seenS(p.nSites(), false), seenE(p.nEdges(), false);
    for (int s = 0; s < p.nSites(); ++s) {
        if (sym.siteMap[s] < 0 || sym.siteMap[s] >= p.nSites() || seenS[sym.siteMap[s]])
            r.add("site-bijection", p.site(s));
        else
            seenS[sym.siteMap[s]] = true;
    }
    for (int e = 0; e < p.nEdges(); ++e) {
        int f = sym.edgeMap[e];
        if (f < 0 || f >= p.nEdges() || seenE[f]) {
            r.add("edge-bijection", p.edgeId(e));
            continue;
        }
        seenE[f] = true;
        if (p.src(f) != sym.siteMap[p.src(e)] || p.tgt(f) != sym.siteMap[p.tgt(e)])
            r.add("type-preservation", p.edgeId(e) + " -> " + p.edgeId(f));
        if (sym.edgeMap[p.rev(e)] != p.rev(f))
            r.add("reversal-equivariance", p.edgeId(e));
    }
    return r;
}

namespace {

void extendEdgeMap(const IncidencePattern& p, const std::vector<int>& siteMap,
                   std::vector<PatternSymmetry>& out) {
    // For the fixed site bijection, backtrack over edge bijections that
    // preserve typing and commute with rev. Edges are matched in index
    // order, so the output order is deterministic.
    int n = p.nEdges();
    std::vector<int> edgeMap(n, -1);
    std::vector<bool> used(n, false);
    // candidate targets per edge: same typed class under siteMap
    auto candidates = [&](int e) {
        std::vector<int> c;
        for (int f = 0; f < n; ++f)
            if (p.src(f) == siteMap[p.src(e)] && p.tgt(f) == siteMap[p.tgt(e)])
                c.push_back(f);
        return c;
    };
    std::vector<std::vector<int>> cand(n);
    for (int e = 0; e < n; ++e) cand[e] = candidates(e);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;

    // recursive lambda
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == n) {
            out.push_back({siteMap, edgeMap});
            return;
        }
        int e = order[idx];
        if (edgeMap[e] >= 0) {
            self(self, idx + 1);
            return;
        }
        for (int f : cand[e]) {
            if (used[f]) continue;
            int er = p.rev(e), fr = p.rev(f);
            if (er == e) continue;  // broken pattern; no symmetry search
            if (edgeMap[er] >= 0 && edgeMap[er] != fr) continue;
            bool revFree = edgeMap[er] < 0;
            if (revFree && used[fr] && fr != f) continue;
            if (er != e && fr == f) continue;  // rev must stay fixpoint-free
            edgeMap[e] = f;
            used[f] = true;
            if (revFree && er != e) {
                edgeMap[er] = fr;
                used[fr] = true;
            }
            self(self, idx + 1);
            edgeMap[e] = -1;
            used[f] = false;
            if (revFree && er != e) {
                edgeMap[er] = -1;
                used[fr] = false;
            }
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<PatternSymmetry> symmetries_of_pattern(const IncidencePattern& p,
                                                   int maxSites) {
    if (p.nSites() > maxSites)
        throw SizeGuardError("symmetries_of_pattern: " + std::to_string(p.nSites()) +
                             " sites exceeds cap " + std::to_string(maxSites));
    std::vector<PatternSymmetry> out;
    std::vector<int> perm(p.nSites());
    for (int i = 0; i < p.nSites(); ++i) perm[i] = i;
    // std::next_permutation on the identity enumerates all site bijections
    // in lexicographic order.
    do {
        // quick degree screen
        bool ok = true;
        for (int s = 0; s < p.nSites() && ok; ++s)
            if (p.edgesFrom(s).size() != p.edgesFrom(perm[s]).size()) ok = false;
        if (ok) extendEdgeMap(p, perm, out);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

PatternSymmetry identity_symmetry(const IncidencePattern& p) {
    PatternSymmetry s;
    s.siteMap.resize(p.nSites());
    s.edgeMap.resize(p.nEdges());
    for (int i = 0; i < p.nSites(); ++i) s.siteMap[i] = i;
    for (int i = 0; i < p.nEdges(); ++i) s.edgeMap[i] = i;
    return s;
}

PatternSymmetry compose(const IncidencePattern& p, const PatternSymmetry& f,
                        const PatternSymmetry& g) {
    PatternSymmetry h;
    h.siteMap.resize(p.nSites());
    h.edgeMap.resize(p.nEdges());
    for (int i = 0; i < p.nSites(); ++i) h.siteMap[i] = g.siteMap[f.siteMap[i]];
    for (int i = 0; i < p.nEdges(); ++i) h.edgeMap[i] = g.edgeMap[f.edgeMap[i]];
    return h;
}

PatternSymmetry inverse(const IncidencePattern& p, const PatternSymmetry& f) {
    PatternSymmetry h;
    h.siteMap.resize(p.nSites());
    h.edgeMap.resize(p.nEdges());
    for (int i = 0; i < p.nSites(); ++i) h.siteMap[f.siteMap[i]] = i;
    for (int i = 0; i < p.nEdges(); ++i) h.edgeMap[f.edgeMap[i]] = i;
    return h;
}

Report verify_pattern_covering(const PatternCovering& c) {
    Report r;
    const auto& S = c.source;
    const auto& T = c.target;
    if ((int)c.siteProj.size() != S.nSites() || (int)c.edgeProj.size() != S.nEdges()) {
        r.add("shape", "projection sizes do not match source pattern");
        return r;
    }
    std::vector<bool> siteHit(T.nSites(), false), edgeHit(T.nEdges(), false);
    for (int s = 0; s < S.nSites(); ++s) {
        if (c.siteProj[s] < 0 || c.siteProj[s] >= T.nSites()) {
            r.add("site-proj-range", S.site(s));
            return r;
        }
        siteHit[c.siteProj[s]] = true;
    }
    for (int e = 0; e < S.nEdges(); ++e) {
        int pe = c.edgeProj[e];
        if (pe < 0 || pe >= T.nEdges()) {
            r.add("edge-proj-range", S.edgeId(e));
            return r;
        }
        edgeHit[pe] = true;
        if (T.src(pe) != c.siteProj[S.src(e)] || T.tgt(pe) != c.siteProj[S.tgt(e)])
            r.add("homomorphism", S.edgeId(e) + " -> " + T.edgeId(pe));
        if (c.edgeProj[S.rev(e)] != T.rev(pe))
            r.add("reversal-commutes", S.edgeId(e));
    }
    for (int s = 0; s < T.nSites(); ++s)
        if (!siteHit[s]) r.add("site-surjective", T.site(s));
    for (int e = 0; e < T.nEdges(); ++e)
        if (!edgeHit[e]) r.add("edge-surjective", T.edgeId(e));
    // back-property: every base edge lifts at every site over its source
    for (int sTil = 0; sTil < S.nSites(); ++sTil) {
        int s = c.siteProj[sTil];
        for (int e : T.edgesFrom(s)) {
            bool found = false;
            for (int eTil : S.edgesFrom(sTil))
                if (c.edgeProj[eTil] == e) {
                    found = true;
                    break;
                }
            if (!found)
                r.add("back-property", "site " + S.site(sTil) + " edge " + T.edgeId(e));
        }
    }
    return r;
}

}  // namespace grpd
