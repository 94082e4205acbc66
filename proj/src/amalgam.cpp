#include "grpd/amalgam.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "grpd/errors.hpp"

namespace grpd {

IGraph coset_igraph(const Groupoid& g, int base, const Bits& alphaPairs) {
    Coset c = coset(g, base, alphaPairs);
    Bits edges = g.pattern().edgesOfPairs(alphaPairs);
    std::vector<std::string> names;
    std::vector<int> sorts;
    std::vector<int> where(g.size(), -1);
    for (int x : c.members) {
        where[x] = (int)names.size();
        names.push_back(g.name(x));
        sorts.push_back(g.tgtSort(x));
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(g.pattern().nEdges());
    for (int x : c.members)
        for (int e : g.pattern().edgesFrom(g.tgtSort(x))) {
            if (!edges.test((std::size_t)e)) continue;
            int y = g.rightMul(x, e);
            pairs[e].push_back({where[x], where[y]});
        }
    return IGraph::fromIndexed(g.pattern(), std::move(names), std::move(sorts),
                               std::move(pairs));
}

AmalgamResult amalgamate_pair(const IGraph& c1, int v1, const IGraph& c2, int v2,
                              const Bits& commonEdges) {
    if (!(c1.pattern() == c2.pattern()))
        throw ValidationError("amalgamate_pair: pattern mismatch");
    if (c1.sortOf(v1) != c2.sortOf(v2))
        throw ValidationError("amalgamate_pair: reference vertices have different colours");
    const IncidencePattern& I = c1.pattern();
    for (int e = 0; e < I.nEdges(); ++e)
        if (commonEdges.test((std::size_t)e) != commonEdges.test((std::size_t)I.rev(e)))
            throw ValidationError("amalgamate_pair: edge set not closed under reversal");

    // propagate the pointed isomorphism v1 -> v2 over the commonEdges
    // components; completeness of the components w.r.t. the common colours
    // makes the extension unique when it exists
    std::vector<int> glue(c1.nVertices(), -1);
    std::vector<int> glueBack(c2.nVertices(), -1);
    std::vector<int> stack{v1};
    glue[v1] = v2;
    glueBack[v2] = v1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        int b = glue[a];
        for (int e = 0; e < I.nEdges(); ++e) {
            if (!commonEdges.test((std::size_t)e)) continue;
            if (I.src(e) != c1.sortOf(a)) continue;
            int an = c1.apply(e, a);
            int bn = c2.apply(e, b);
            if ((an >= 0) != (bn >= 0))
                throw ValidationError(
                    "amalgamate_pair: overlap components are not isomorphic at " +
                    c1.vertexName(a) + " / " + c2.vertexName(b) + " edge " + I.edgeId(e));
            if (an < 0) continue;
            if (glue[an] >= 0) {
                if (glue[an] != bn)
                    throw ValidationError(
                        "amalgamate_pair: overlap identification inconsistent at " +
                        c1.vertexName(an));
                continue;
            }
            if (glueBack[bn] >= 0)
                throw ValidationError(
                    "amalgamate_pair: overlap identification not injective at " +
                    c2.vertexName(bn));
            glue[an] = bn;
            glueBack[bn] = an;
            stack.push_back(an);
        }
    }
    // the component of v2 must be exhausted (same size)
    {
        auto comp2 = c2.componentOf(v2, commonEdges);
        for (int b : comp2)
            if (glueBack[b] < 0)
                throw ValidationError(
                    "amalgamate_pair: overlap component of the right graph is larger");
    }

    AmalgamResult out;
    std::vector<std::string> names;
    std::vector<int> sorts;
    out.map1.assign(c1.nVertices(), -1);
    out.map2.assign(c2.nVertices(), -1);
    for (int a = 0; a < c1.nVertices(); ++a) {
        out.map1[a] = (int)names.size();
        names.push_back(c1.vertexName(a));
        sorts.push_back(c1.sortOf(a));
    }
    for (int b = 0; b < c2.nVertices(); ++b) {
        if (glueBack[b] >= 0) {
            out.map2[b] = out.map1[glueBack[b]];
            continue;
        }
        if (c1.vertexIndex(c2.vertexName(b)) >= 0)
            throw ValidationError("amalgamate_pair: vertex name collision " +
                                  c2.vertexName(b));
        out.map2[b] = (int)names.size();
        names.push_back(c2.vertexName(b));
        sorts.push_back(c2.sortOf(b));
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(I.nEdges());
    for (int e = 0; e < I.nEdges(); ++e) {
        std::set<std::pair<int, int>> acc;
        for (auto [a, b] : c1.edgePairs(e)) acc.insert({out.map1[a], out.map1[b]});
        for (auto [a, b] : c2.edgePairs(e)) acc.insert({out.map2[a], out.map2[b]});
        pairs[e].assign(acc.begin(), acc.end());
    }
    // index maps must be recomputed after fromIndexed re-sorts names
    std::vector<std::string> savedNames = names;
    out.graph = IGraph::fromIndexed(I, std::move(names), std::move(sorts),
                                    std::move(pairs));
    for (auto& m : out.map1) m = out.graph.vertexIndex(savedNames[m]);
    for (auto& m : out.map2)
        if (m >= 0) m = out.graph.vertexIndex(savedNames[m]);
    return out;
}

namespace {

bool cosetsDisjoint(const Groupoid& g, int base1, const Bits& p1, int base2,
                    const Bits& p2, int* witness = nullptr) {
    auto a = coset(g, base1, p1).members;
    auto b = coset(g, base2, p2).members;
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    if (!inter.empty() && witness) *witness = inter[0];
    return inter.empty();
}

}  // namespace

Report validate_chain(const Groupoid& g, const ChainSpec& spec) {
    Report r;
    std::size_t m = spec.length();
    if (m == 0) {
        r.add("shape", "empty chain");
        return r;
    }
    SubgroupoidIndex idx(g);
    for (std::size_t i = 0; i < m; ++i) {
        const ChainLink& L = spec.links[i];
        if (L.gElem < 0 || L.gElem >= g.size()) {
            r.add("reference-range", "link " + std::to_string(i));
            return r;
        }
        if (g.tgtSort(L.gElem) != L.site)
            r.add("reference-colour", "link " + std::to_string(i));
        if (!idx.get(L.alphaPairs).contains(L.gElem))
            r.add("reference-membership",
                  "link " + std::to_string(i) + ": " + g.name(L.gElem));
        bool needH = i + 1 < m;
        if (needH) {
            if (L.hConnector < 0 || L.hConnector >= g.size()) {
                r.add("connector-missing", "link " + std::to_string(i));
                return r;
            }
            if (!idx.get(L.alphaPairs).contains(L.hConnector))
                r.add("connector-membership",
                      "link " + std::to_string(i) + ": " + g.name(L.hConnector));
            if (g.srcSort(L.hConnector) != L.site)
                r.add("connector-source-sort", "link " + std::to_string(i));
            if (g.tgtSort(L.hConnector) != spec.links[i + 1].site)
                r.add("connector-target-sort", "link " + std::to_string(i));
        }
    }
    if (!r.ok()) return r;
    // non-interference at inner constituents
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const ChainLink& L = spec.links[i];
        Bits withPrev = L.alphaPairs & spec.links[i - 1].alphaPairs;
        Bits withNext = L.alphaPairs & spec.links[i + 1].alphaPairs;
        int exit = g.product(L.gElem, L.hConnector);
        int witness = -1;
        if (!cosetsDisjoint(g, L.gElem, withPrev, exit, withNext, &witness))
            r.add("coset-interference",
                  "link " + std::to_string(i) + " witness " + g.name(witness));
    }
    return r;
}

IGraph build_chain(const Groupoid& g, const ChainSpec& spec) {
    Report v = validate_chain(g, spec);
    if (!v.ok()) throw ValidationError("build_chain: " + v.summary());
    auto constituent = [&](std::size_t i) {
        IGraph raw = coset_igraph(g, spec.links[i].gElem, spec.links[i].alphaPairs);
        // prefix names so distinct constituents stay distinct
        std::vector<std::string> names;
        std::vector<int> sorts;
        for (int v2 = 0; v2 < raw.nVertices(); ++v2) {
            names.push_back("k" + std::to_string(i) + ":" + raw.vertexName(v2));
            sorts.push_back(raw.sortOf(v2));
        }
        std::vector<std::vector<std::pair<int, int>>> pairs(raw.pattern().nEdges());
        for (int e = 0; e < raw.pattern().nEdges(); ++e) pairs[e] = raw.edgePairs(e);
        return IGraph::fromIndexed(raw.pattern(), std::move(names), std::move(sorts),
                                   std::move(pairs));
    };
    IGraph acc = constituent(0);
    if (spec.length() == 1) return acc;
    // cursor: the exit vertex of the growing amalgam
    int cursor = acc.vertexIndex("k0:" + g.name(g.product(spec.links[0].gElem,
                                                          spec.links[0].hConnector)));
    for (std::size_t i = 1; i < spec.length(); ++i) {
        IGraph next = constituent(i);
        int entry = next.vertexIndex("k" + std::to_string(i) + ":" +
                                     g.name(spec.links[i].gElem));
        Bits common = spec.links[i - 1].alphaPairs & spec.links[i].alphaPairs;
        AmalgamResult am = amalgamate_pair(acc, cursor, next, entry,
                                           g.pattern().edgesOfPairs(common));
        if (i + 1 < spec.length()) {
            int exitIn2 = next.vertexIndex(
                "k" + std::to_string(i) + ":" +
                g.name(g.product(spec.links[i].gElem, spec.links[i].hConnector)));
            cursor = am.map2[exitIn2];
        }
        acc = std::move(am.graph);
    }
    return acc;
}

namespace {

// subsets of pair indices of size up to k, ordered by (size, lexicographic)
std::vector<Bits> pairSubsetsUpTo(int nPairs, int k, std::size_t cap) {
    std::vector<Bits> out;
    std::vector<int> comb;
    for (int size = 0; size <= std::min(k, nPairs); ++size) {
        comb.clear();
        auto bySize = [&](auto&& self, int start, int left) -> void {
            if (left == 0) {
                Bits b((std::size_t)nPairs);
                for (int x : comb) b.set((std::size_t)x);
                out.push_back(b);
                if (out.size() > cap)
                    throw BudgetError("booster",
                                      "generator-subset enumeration exceeded " +
                                          std::to_string(cap));
                return;
            }
            for (int x = start; x <= nPairs - left; ++x) {
                comb.push_back(x);
                self(self, x + 1, left - 1);
                comb.pop_back();
            }
        };
        bySize(bySize, 0, size);
    }
    return out;
}

// canonical representatives of the right G_delta-cosets inside the
// source-sort slice of G_gamma
std::vector<int> gluingCosetReps(const Groupoid& g, SubgroupoidIndex& idx,
                                 const Bits& gamma, int srcSort, const Bits& delta) {
    const auto& set = idx.get(gamma);
    std::vector<char> visited(g.size(), 0);
    std::vector<int> reps;
    for (int x : set.list) {
        if (g.srcSort(x) != srcSort || visited[x]) continue;
        reps.push_back(x);
        for (int y : coset(g, x, delta).members) visited[y] = 1;
    }
    return reps;
}

struct ChainEnumerator {
    const Groupoid& g;
    SubgroupoidIndex& idx;
    int kPairs;
    int maxLen;
    bool deltaOnly;
    std::size_t maxChains;
    std::vector<ChainSpec> out;

    void emit(const ChainSpec& spec) {
        if (deltaOnly && kPairs > 1) {
            Bits u = spec.links[0].alphaPairs;
            std::size_t maxSize = 0;
            for (const auto& l : spec.links) {
                u = u | l.alphaPairs;
                maxSize = std::max(maxSize, l.alphaPairs.count());
            }
            // chains whose constituents were preserved verbatim by the
            // previous stage impose nothing new
            if (u.count() <= (std::size_t)kPairs - 1 &&
                maxSize < (std::size_t)kPairs - 1)
                return;
        }
        out.push_back(spec);
        if (out.size() > maxChains)
            throw BudgetError("booster", "chain enumeration exceeded " +
                                             std::to_string(maxChains));
    }

    void run() {
        auto subsets = pairSubsetsUpTo(g.pattern().nPairs(), kPairs,
                                       maxChains * 4 + 64);
        // length-1 chains: one coset per connected component of the reduced
        // pattern (cosets within a component are isomorphic via left
        // translation)
        for (const Bits& gamma : subsets) {
            Bits edges = g.pattern().edgesOfPairs(gamma);
            auto comp = g.pattern().siteComponents(edges);
            std::vector<char> seen(g.pattern().nSites(), 0);
            for (int s = 0; s < g.pattern().nSites(); ++s) {
                if (seen[comp[s]]) continue;
                seen[comp[s]] = 1;
                ChainSpec spec;
                spec.links.push_back({gamma, g.identity(s), -1, s});
                emit(spec);
            }
        }
        if (maxLen < 2) return;
        ChainSpec cur;
        auto rec = [&](auto&& self, const Bits& unionSoFar) -> void {
            if ((int)cur.length() >= maxLen) return;
            ChainLink last = cur.links.back();
            for (const Bits& gamma : subsets) {
                if (gamma.subsetOf(last.alphaPairs) || last.alphaPairs.subsetOf(gamma))
                    continue;  // comparable neighbours collapse
                Bits u = unionSoFar | gamma;
                if (u.count() > (std::size_t)kPairs) continue;
                Bits delta = last.alphaPairs & gamma;
                for (int h : gluingCosetReps(g, idx, last.alphaPairs, last.site, delta)) {
                    // non-interference at the now-inner previous constituent
                    if (cur.length() >= 2) {
                        Bits withPrev =
                            last.alphaPairs & cur.links[cur.length() - 2].alphaPairs;
                        if (!cosetsDisjoint(g, last.gElem, withPrev,
                                            g.product(last.gElem, h), delta))
                            continue;
                    }
                    int sNext = g.tgtSort(h);
                    cur.links.back().hConnector = h;
                    cur.links.push_back({gamma, g.identity(sNext), -1, sNext});
                    emit(cur);
                    self(self, u);
                    cur.links.pop_back();
                    cur.links.back().hConnector = -1;
                }
            }
        };
        for (const Bits& gamma : subsets) {
            if (gamma.none()) continue;  // comparable with everything
            Bits edges = g.pattern().edgesOfPairs(gamma);
            auto comp = g.pattern().siteComponents(edges);
            std::vector<char> seen(g.pattern().nSites(), 0);
            for (int s = 0; s < g.pattern().nSites(); ++s) {
                if (seen[comp[s]]) continue;
                seen[comp[s]] = 1;
                cur.links.clear();
                cur.links.push_back({gamma, g.identity(s), -1, s});
                rec(rec, gamma);
            }
        }
    }
};

// component pool with isomorphism dedup keyed by cheap invariants
struct ComponentPool {
    std::vector<IGraph> entries;
    std::unordered_map<std::uint64_t, std::vector<int>> byInvariant;

    static std::uint64_t invariant(const IGraph& h) {
        std::uint64_t k = splitmix64((std::uint64_t)h.nVertices());
        for (int s = 0; s < h.pattern().nSites(); ++s)
            k = hashCombine(k, h.fibre(s).size());
        for (int e = 0; e < h.pattern().nEdges(); ++e)
            k = hashCombine(k, (std::uint64_t)h.edgeSize(e));
        return k;
    }
    bool add(IGraph h) {
        std::uint64_t k = invariant(h);
        for (int i : byInvariant[k])
            if (igraphs_isomorphic(entries[i], h)) return false;
        byInvariant[k].push_back((int)entries.size());
        entries.push_back(std::move(h));
        return true;
    }
};

}  // namespace

Groupoid booster_step(const Groupoid& g, int k, int maxLen, const BoosterConfig& cfg,
                      StageReport* report, bool hypothesisCertified) {
    if (k < 1) throw ValidationError("booster_step: stage must be >= 1");
    if (k > 1 && !hypothesisCertified)
        throw ValidationError(
            "booster_step: stage hypothesis not certified; run stages in order");
    if (maxLen < 1) throw ValidationError("booster_step: chain length must be >= 1");

    SubgroupoidIndex idx(g);
    ChainEnumerator en{g, idx, k, maxLen, cfg.deltaOnly, cfg.budget.maxChains, {}};
    en.run();

    ComponentPool pool;
    {
        auto comp = g.pattern().siteComponents();
        std::vector<char> seen(g.pattern().nSites(), 0);
        Bits all((std::size_t)g.pattern().nPairs());
        for (int p = 0; p < g.pattern().nPairs(); ++p) all.set((std::size_t)p);
        for (int s = 0; s < g.pattern().nSites(); ++s) {
            if (seen[comp[s]]) continue;
            seen[comp[s]] = 1;
            pool.add(coset_igraph(g, g.identity(s), all));
        }
    }
    std::size_t carrierVertices = 0;
    for (const auto& e : pool.entries) carrierVertices += (std::size_t)e.nVertices();
    for (const auto& spec : en.out) {
        IGraph chain = build_chain(g, spec);
        IGraph completed = complete_igraph(chain);
        for (auto& part : connected_components(completed)) {
            int nv = part.nVertices();
            if (pool.add(std::move(part))) {
                carrierVertices += (std::size_t)nv;
                if (carrierVertices > cfg.budget.maxCarrierVertices)
                    throw BudgetError("booster stage " + std::to_string(k),
                                      "carrier exceeds " +
                                          std::to_string(cfg.budget.maxCarrierVertices) +
                                          " vertices");
            }
        }
    }
    // assemble the carrier as one disjoint union
    std::vector<std::string> names;
    std::vector<int> sorts;
    std::vector<std::vector<std::pair<int, int>>> pairs(g.pattern().nEdges());
    for (std::size_t c = 0; c < pool.entries.size(); ++c) {
        const IGraph& h = pool.entries[c];
        int off = (int)names.size();
        std::string prefix = "c" + std::to_string(c) + ":";
        for (int v = 0; v < h.nVertices(); ++v) {
            names.push_back(prefix + h.vertexName(v));
            sorts.push_back(h.sortOf(v));
        }
        for (int e = 0; e < g.pattern().nEdges(); ++e)
            for (auto [a, b] : h.edgePairs(e)) pairs[e].push_back({a + off, b + off});
    }
    IGraph carrier = IGraph::fromIndexed(g.pattern(), std::move(names),
                                         std::move(sorts), std::move(pairs));
    Groupoid out = cym(carrier, cfg.budget);

    if (report) {
        report->stage = k;
        report->chains = en.out.size();
        report->carrierVertices = (std::size_t)carrier.nVertices();
        report->poolComponents = pool.entries.size();
        report->elements = out.size();
        report->claimChecked = true;
        report->claimHolds = true;
        if (k > 1) {
            auto small = pairSubsetsUpTo(g.pattern().nPairs(),
                                         std::min(k - 1, g.pattern().nPairs()),
                                         cfg.budget.maxChains * 4 + 64);
            for (const Bits& alpha : small) {
                if (alpha.count() >= (std::size_t)k) continue;
                if (subgroupoid_elements(g, alpha).size() !=
                    subgroupoid_elements(out, alpha).size()) {
                    report->claimHolds = false;
                    report->note = "sub-groupoid below threshold changed size";
                    break;
                }
            }
        }
    }
    return out;
}

BoostResult make_n_acyclic(const IncidencePattern& pattern, int n, const IGraph* seed,
                           BoosterConfig cfg,
                           const std::function<void(const StageReport&)>& onStage) {
    if (n < 2) throw ValidationError("make_n_acyclic: N must be >= 2");
    if (seed && !(seed->pattern() == pattern))
        throw ValidationError("make_n_acyclic: seed pattern mismatch");
    int maxLen = cfg.chainLenLimit > 0 ? cfg.chainLenLimit : n;
    int stages = cfg.maxStages > 0 ? std::min(cfg.maxStages, pattern.nPairs())
                                   : pattern.nPairs();

    BoostResult res;
    res.groupoid =
        seed ? cym(*seed, cfg.budget) : cym(pattern_as_igraph(pattern), cfg.budget);

    auto certify = [&]() {
        auto search = find_coset_cycles(res.groupoid, n, cfg.budget, cfg.maxWitnesses);
        res.cycleSearchComplete = search.status != CycleSearchResult::Status::Budget;
        res.cyclesFound = search.cycles;
        return search.status == CycleSearchResult::Status::Certified;
    };

    try {
        if ((cfg.earlyExit || stages == 0) && certify()) {
            res.certified = true;
        } else {
            for (int k = 1; k <= stages && !res.certified; ++k) {
                StageReport rep;
                res.groupoid = booster_step(res.groupoid, k, maxLen, cfg, &rep,
                                            /*hypothesisCertified=*/true);
                res.stagesRun = k;
                res.stages.push_back(rep);
                if (onStage) onStage(rep);
                if (cfg.earlyExit || k == stages) res.certified = certify();
            }
        }
    } catch (const BudgetError& e) {
        res.failure = e.what();
        res.certified = false;
    }
    if (!res.certified && res.failure.empty()) {
        if (!res.cyclesFound.empty())
            res.failure = "coset cycles remain after the final stage";
        else if (!res.cycleSearchComplete)
            res.failure = "cycle search exceeded its budget; acyclicity unknown";
        else
            res.failure = "not certified";
    }
    if (seed) {
        try {
            res.seedCompatible =
                is_compatible(res.groupoid, *seed, cfg.budget).compatible;
        } catch (const BudgetError& e) {
            res.seedCompatible = false;
            if (res.failure.empty()) res.failure = e.what();
        }
    }
    return res;
}

}  // namespace grpd
