#include "grpd/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "grpd/errors.hpp"

namespace grpd {

int Groupoid::product(int a, int b) const {
    if (elems_[a].tgtSort != elems_[b].srcSort)
        throw ValidationError("groupoid product: sort mismatch");
    PathWord w = wordOf(b);
    int cur = a;
    for (int e : w.edges) {
        cur = rightMul_[cur][e];
        if (cur < 0) throw Error("groupoid product: broken right Cayley structure");
    }
    return cur;
}

PathWord Groupoid::wordOf(int g) const {
    std::vector<int> edges;
    int cur = g;
    while (elems_[cur].parent >= 0) {
        edges.push_back(elems_[cur].viaEdge);
        cur = elems_[cur].parent;
    }
    std::reverse(edges.begin(), edges.end());
    return PathWord{elems_[g].srcSort, edges};
}

std::vector<std::int32_t> Groupoid::actionTable(int g) const {
    PathWord w = wordOf(g);
    std::vector<std::int32_t> tab(carrier_.fibre(elems_[g].srcSort).size());
    for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = (std::int32_t)i;
    for (int e : w.edges) {
        const auto& act = carrier_.edgeAction(e);
        for (auto& x : tab) x = act[x];
    }
    return tab;
}

int Groupoid::evalWord(const PathWord& w) const {
    word_target(pattern_, w);
    int cur = identityAt_[w.anchorSite];
    for (int e : w.edges) {
        cur = rightMul_[cur][e];
        if (cur < 0) throw ValidationError("evalWord: word is not a path");
    }
    return cur;
}

Groupoid cym(const IGraph& h, const Budget& budget) {
    Groupoid g;
    g.pattern_ = h.pattern();
    if (is_complete(h).complete)
        g.carrier_ = h;
    else
        g.carrier_ = complete_igraph(h);
    const IGraph& K = g.carrier_;
    const IncidencePattern& I = g.pattern_;
    if ((std::size_t)K.nVertices() > budget.maxCarrierVertices)
        throw BudgetError("cym", "carrier has " + std::to_string(K.nVertices()) +
                                     " vertices (cap " +
                                     std::to_string(budget.maxCarrierVertices) + ")");

    // transient action tables, hash-consed
    std::vector<std::vector<std::int32_t>> tables;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    std::size_t tableBytes = 0;

    auto keyOf = [&](int s, int t, const std::vector<std::int32_t>& tab) {
        return hashInts(tab, hashCombine((std::uint64_t)s, (std::uint64_t)t));
    };
    auto lookupOrInsert = [&](int s, int t, std::vector<std::int32_t> tab, int parent,
                              int via) -> int {
        std::uint64_t k = keyOf(s, t, tab);
        auto& bucket = buckets[k];
        for (int i : bucket)
            if (g.elems_[i].srcSort == s && g.elems_[i].tgtSort == t && tables[i] == tab)
                return i;
        if (g.elems_.size() >= budget.maxElements)
            throw BudgetError("cym", "element cap " + std::to_string(budget.maxElements));
        tableBytes += tab.size() * sizeof(std::int32_t);
        if (tableBytes > budget.maxTableBytes)
            throw BudgetError("cym", "closure tables exceed " +
                                         std::to_string(budget.maxTableBytes) + " bytes");
        int id = (int)g.elems_.size();
        g.elems_.push_back({s, t, parent, via});
        tables.push_back(std::move(tab));
        bucket.push_back(id);
        return id;
    };

    g.identityAt_.assign(I.nSites(), -1);
    for (int s = 0; s < I.nSites(); ++s) {
        std::vector<std::int32_t> tab(K.fibre(s).size());
        for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = (std::int32_t)i;
        g.identityAt_[s] = lookupOrInsert(s, s, std::move(tab), -1, -1);
        g.names_.push_back("1@" + I.site(s));
    }

    // BFS closure under right multiplication with the edge actions
    g.rightMul_.reserve(1024);
    for (std::size_t head = 0; head < g.elems_.size(); ++head) {
        g.rightMul_.push_back(std::vector<std::int32_t>(I.nEdges(), -1));
        int t = g.elems_[head].tgtSort;
        for (int e : I.edgesFrom(t)) {
            const auto& act = K.edgeAction(e);
            std::vector<std::int32_t> tab = tables[head];
            for (auto& x : tab) x = act[x];
            int to = lookupOrInsert(g.elems_[head].srcSort, I.tgt(e), std::move(tab),
                                    (int)head, e);
            if (to == (int)g.names_.size()) g.names_.push_back("g" + std::to_string(to));
            g.rightMul_[head][e] = to;
        }
    }

    tables.clear();
    tables.shrink_to_fit();

    g.generatorOf_.assign(I.nEdges(), -1);
    for (int e = 0; e < I.nEdges(); ++e)
        g.generatorOf_[e] = g.rightMul_[g.identityAt_[I.src(e)]][e];

    // inverses in BFS order: parents are always resolved first
    g.inverseOf_.assign(g.elems_.size(), -1);
    for (int x = 0; x < (int)g.elems_.size(); ++x) {
        if (g.elems_[x].parent < 0) {
            g.inverseOf_[x] = x;
            continue;
        }
        int p = g.elems_[x].parent;
        int e = g.elems_[x].viaEdge;
        // x = p . g_e  =>  x^-1 = g_{e^-1} . p^-1
        g.inverseOf_[x] = g.product(g.generatorOf_[I.rev(e)], g.inverseOf_[p]);
    }

    g.byTgtSort_.assign(I.nSites(), {});
    for (int x = 0; x < (int)g.elems_.size(); ++x)
        g.byTgtSort_[g.elems_[x].tgtSort].push_back(x);
    return g;
}

IGraph cayley_graph(const Groupoid& g) {
    const IncidencePattern& I = g.pattern();
    std::vector<std::string> names;
    std::vector<int> sorts;
    for (int x = 0; x < g.size(); ++x) {
        names.push_back(g.name(x));
        sorts.push_back(g.tgtSort(x));  // Cayley colour
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(I.nEdges());
    for (int x = 0; x < g.size(); ++x)
        for (int e : I.edgesFrom(g.tgtSort(x)))
            pairs[e].push_back({x, g.rightMul(x, e)});
    return IGraph::fromIndexed(I, std::move(names), std::move(sorts), std::move(pairs));
}

std::vector<int> subgroupoid_elements(const Groupoid& g, const Bits& alphaPairs) {
    Bits edges = g.pattern().edgesOfPairs(alphaPairs);
    std::vector<char> seen(g.size(), 0);
    std::vector<int> out, stack;
    for (int s = 0; s < g.pattern().nSites(); ++s) {
        int id = g.identity(s);
        if (!seen[id]) {
            seen[id] = 1;
            stack.push_back(id);
        }
    }
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (int e : g.pattern().edgesFrom(g.tgtSort(x))) {
            if (!edges.test((std::size_t)e)) continue;
            int y = g.rightMul(x, e);
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

const SubgroupoidIndex::Set& SubgroupoidIndex::get(const Bits& alphaPairs) {
    auto it = cache_.find(alphaPairs);
    if (it != cache_.end()) return it->second;
    Set s;
    s.list = subgroupoid_elements(g_, alphaPairs);
    s.member.assign(g_.size(), 0);
    for (int e : s.list) s.member[e] = 1;
    return cache_.emplace(alphaPairs, std::move(s)).first->second;
}

Groupoid subgroupoid(const Groupoid& g, const Bits& alphaPairs, const Budget& budget) {
    IGraph cay = cayley_graph(g);
    Bits edges = g.pattern().edgesOfPairs(alphaPairs);
    return cym(reduct(cay, edges, /*keepPattern=*/false), budget);
}

Coset coset(const Groupoid& g, int base, const Bits& alphaPairs) {
    Bits edges = g.pattern().edgesOfPairs(alphaPairs);
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{base};
    seen[base] = 1;
    Coset c;
    c.base = base;
    c.alphaPairs = alphaPairs;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        c.members.push_back(x);
        for (int e : g.pattern().edgesFrom(g.tgtSort(x))) {
            if (!edges.test((std::size_t)e)) continue;
            int y = g.rightMul(x, e);
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    std::sort(c.members.begin(), c.members.end());
    return c;
}

CompatResult is_compatible(const Groupoid& g, const IGraph& h, const Budget& budget) {
    if (!(g.pattern() == h.pattern()))
        throw ValidationError("is_compatible: pattern mismatch");
    Groupoid m = cym(h, budget);
    // product-automaton reachability over pairs (w^G, rho_w)
    const IncidencePattern& I = g.pattern();
    struct Pair {
        int a, b, parent, viaEdge;
    };
    std::vector<Pair> pairs;
    std::unordered_map<std::uint64_t, int> seen;
    auto key = [&](int a, int b) {
        return hashCombine((std::uint64_t)a, (std::uint64_t)b * 0x9e3779b97f4a7c15ULL);
    };
    std::vector<int> firstWithA(g.size(), -1);
    auto wordOfPair = [&](int idx) {
        std::vector<int> es;
        while (pairs[idx].parent >= 0) {
            es.push_back(pairs[idx].viaEdge);
            idx = pairs[idx].parent;
        }
        std::reverse(es.begin(), es.end());
        return es;
    };
    auto conflict = [&](int idx1, int idx2) {
        // two words with the same groupoid value but different actions:
        // w1 w2^-1 denotes an identity of G but not of cym(H)
        PathWord w;
        auto e1 = wordOfPair(idx1);
        auto e2 = wordOfPair(idx2);
        w.anchorSite = g.srcSort(pairs[idx1].a);
        w.edges = e1;
        for (auto it = e2.rbegin(); it != e2.rend(); ++it)
            w.edges.push_back(I.rev(*it));
        CompatResult r;
        r.compatible = false;
        r.witnessWord = w;
        return r;
    };
    for (int s = 0; s < I.nSites(); ++s) {
        int a = g.identity(s), b = m.identity(s);
        seen[key(a, b)] = (int)pairs.size();
        firstWithA[a] = (int)pairs.size();
        pairs.push_back({a, b, -1, -1});
    }
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        int a = pairs[head].a, b = pairs[head].b;
        for (int e : I.edgesFrom(g.tgtSort(a))) {
            int a2 = g.rightMul(a, e);
            int b2 = m.rightMul(b, e);
            auto k = key(a2, b2);
            if (seen.count(k)) continue;
            if (firstWithA[a2] >= 0 && pairs[firstWithA[a2]].b != b2) {
                int idx = (int)pairs.size();
                pairs.push_back({a2, b2, (int)head, e});
                return conflict(idx, firstWithA[a2]);
            }
            seen[k] = (int)pairs.size();
            if (firstWithA[a2] < 0) firstWithA[a2] = (int)pairs.size();
            pairs.push_back({a2, b2, (int)head, e});
        }
    }
    return {};
}

bool groupoids_isomorphic(const Groupoid& a, const Groupoid& b) {
    if (!(a.pattern() == b.pattern())) return false;
    if (a.size() != b.size()) return false;
    const IncidencePattern& I = a.pattern();
    std::vector<int> fwd(a.size(), -1), bwd(b.size(), -1);
    std::vector<std::pair<int, int>> stack;
    auto pair = [&](int x, int y) -> bool {
        if (fwd[x] >= 0 || bwd[y] >= 0) return fwd[x] == y && bwd[y] == x;
        fwd[x] = y;
        bwd[y] = x;
        stack.push_back({x, y});
        return true;
    };
    for (int s = 0; s < I.nSites(); ++s)
        if (!pair(a.identity(s), b.identity(s))) return false;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (a.tgtSort(x) != b.tgtSort(y) || a.srcSort(x) != b.srcSort(y)) return false;
        for (int e : I.edgesFrom(a.tgtSort(x)))
            if (!pair(a.rightMul(x, e), b.rightMul(y, e))) return false;
    }
    for (int x = 0; x < a.size(); ++x)
        if (fwd[x] < 0) return false;  // not generated? cannot happen
    return true;
}

Report verify_coset_cycle(const Groupoid& g, const CosetCycle& c) {
    Report r;
    std::size_t n = c.elems.size();
    if (n < 2 || c.alphas.size() != n) {
        r.add("shape", "cycle needs length >= 2 and matching alpha list");
        return r;
    }
    SubgroupoidIndex idx(g);
    for (std::size_t i = 0; i < n; ++i) {
        int gi = c.elems[i], gj = c.elems[(i + 1) % n];
        if (g.srcSort(gi) != g.srcSort(gj)) {
            r.add("source-sorts", "elements must share their source sort");
            return r;
        }
        int hi = g.product(g.inverse(gi), gj);
        if (!idx.get(c.alphas[i]).contains(hi))
            r.add("connector", "h_" + std::to_string(i) + " = " + g.name(hi) +
                                   " not in the alpha_" + std::to_string(i) +
                                   " sub-groupoid");
    }
    for (std::size_t i = 0; i < n; ++i) {
        int gi = c.elems[i], gj = c.elems[(i + 1) % n];
        Bits b1 = c.alphas[i] & c.alphas[(i + n - 1) % n];
        Bits b2 = c.alphas[i] & c.alphas[(i + 1) % n];
        // direct coset intersection, independent of the search's product-set
        // membership formulation
        Coset left = coset(g, gi, b1);
        Coset right = coset(g, gj, b2);
        std::vector<int> inter;
        std::set_intersection(left.members.begin(), left.members.end(),
                              right.members.begin(), right.members.end(),
                              std::back_inserter(inter));
        if (!inter.empty())
            r.add("double-coset-disjointness",
                  "index " + std::to_string(i) + " witness " + g.name(inter[0]));
    }
    return r;
}

std::vector<std::vector<Bits>> minimal_supports(const Groupoid& g) {
    const IncidencePattern& I = g.pattern();
    std::size_t P = (std::size_t)I.nPairs();
    std::vector<std::vector<Bits>> supp(g.size());
    auto insertMinimal = [](std::vector<Bits>& anti, const Bits& cand) -> bool {
        for (const auto& s : anti)
            if (s.subsetOf(cand)) return false;  // dominated
        anti.erase(std::remove_if(anti.begin(), anti.end(),
                                  [&](const Bits& s) { return cand.subsetOf(s); }),
                   anti.end());
        anti.push_back(cand);
        return true;
    };
    std::deque<int> work;
    for (int s = 0; s < I.nSites(); ++s) {
        int id = g.identity(s);
        if (insertMinimal(supp[id], Bits(P))) work.push_back(id);
    }
    while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        std::vector<Bits> mine = supp[x];  // copy: supp[x] may change later
        for (int e : I.edgesFrom(g.tgtSort(x))) {
            int y = g.rightMul(x, e);
            bool changed = false;
            for (const auto& s : mine) {
                Bits cand = s;
                cand.set((std::size_t)I.pairIndex(e));
                if (insertMinimal(supp[y], cand)) changed = true;
            }
            if (changed) work.push_back(y);
        }
    }
    return supp;
}

CayleyPatternResult cayley_incidence_pattern(const Groupoid& g) {
    const IncidencePattern& I = g.pattern();
    std::vector<std::string> sites;
    for (int x = 0; x < g.size(); ++x) sites.push_back(g.name(x));
    std::vector<IncidencePattern::EdgeSpec> es;
    struct Rec {
        std::string id;
        int elem, baseEdge;
    };
    std::vector<Rec> recs;
    for (int x = 0; x < g.size(); ++x)
        for (int e : I.edgesFrom(g.tgtSort(x))) {
            int y = g.rightMul(x, e);
            std::string id = g.name(x) + "|" + I.edgeId(e);
            es.push_back({id, g.name(x), g.name(y),
                          g.name(y) + "|" + I.edgeId(I.rev(e))});
            recs.push_back({std::move(id), x, e});
        }
    CayleyPatternResult out;
    out.pattern = IncidencePattern(sites, es);
    std::unordered_map<std::string, int> elemOf;
    for (int x = 0; x < g.size(); ++x) elemOf[g.name(x)] = x;
    out.siteElem.resize(g.size());
    for (int s = 0; s < out.pattern.nSites(); ++s)
        out.siteElem[s] = elemOf.at(out.pattern.site(s));
    out.liftedEdge.assign(g.size(), std::vector<int>(I.nEdges(), -1));
    std::vector<int> siteProj(out.pattern.nSites());
    std::vector<int> edgeProj(out.pattern.nEdges(), -1);
    for (int s = 0; s < out.pattern.nSites(); ++s)
        siteProj[s] = g.tgtSort(out.siteElem[s]);
    for (const auto& r : recs) {
        int te = out.pattern.edgeIndex(r.id);
        edgeProj[te] = r.baseEdge;
        out.liftedEdge[r.elem][r.baseEdge] = te;
    }
    out.covering = PatternCovering{out.pattern, I, std::move(siteProj), std::move(edgeProj)};
    return out;
}

namespace {

// h in G_{b1} . G_{b2} (composable products)? Memoised per call site.
struct ProductSetOracle {
    const Groupoid& g;
    SubgroupoidIndex& idx;
    std::unordered_map<std::uint64_t, bool> memo;

    bool contains(const Bits& b1, const Bits& b2, int h) {
        std::uint64_t k = hashCombine(hashCombine(b1.hash(), b2.hash()), (std::uint64_t)h);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        bool ans = false;
        const auto& s1 = idx.get(b1);
        const auto& s2 = idx.get(b2);
        int srcH = g.srcSort(h);
        for (int x : s1.list) {
            if (g.srcSort(x) != srcH) continue;
            // y = x^-1 . h must be in G_{b2}
            int y = g.product(g.inverse(x), h);
            if (s2.contains(y)) {
                ans = true;
                break;
            }
        }
        memo[k] = ans;
        return ans;
    }
};

}  // namespace

CycleSearchResult find_coset_cycles(const Groupoid& g, int maxLen, const Budget& budget,
                                    std::size_t maxWitnesses) {
    CycleSearchResult res;
    if (maxLen < 2) return res;  // cycles have length >= 2
    SubgroupoidIndex idx(g);
    ProductSetOracle oracle{g, idx, {}};
    auto supports = minimal_supports(g);
    std::size_t nodes = 0;
    auto tick = [&]() {
        if (++nodes > budget.maxSearchNodes)
            throw BudgetError("find_coset_cycles",
                              std::to_string(budget.maxSearchNodes) + " nodes");
        return true;
    };

    auto emit = [&](const std::vector<int>& hs, const std::vector<Bits>& alphas) {
        // reconstruct g_i as prefix products from the identity
        CosetCycle c;
        c.alphas = alphas;
        int cur = g.identity(g.srcSort(hs[0]));
        for (std::size_t i = 0; i < hs.size(); ++i) {
            c.elems.push_back(cur);
            cur = g.product(cur, hs[i]);
        }
        Report check = verify_coset_cycle(g, c);
        if (!check.ok())
            throw Error("find_coset_cycles: witness failed re-check: " + check.summary());
        res.cycles.push_back(std::move(c));
        res.status = CycleSearchResult::Status::FoundCycles;
    };

    try {
        // n = 2: h in G_a ∩ G_b with h not in G_{a∩b}
        for (int h = 0; h < g.size() && res.cycles.size() < maxWitnesses; ++h) {
            if (g.isIdentity(h)) continue;
            const auto& ms = supports[h];
            for (std::size_t i = 0; i < ms.size() && res.cycles.size() < maxWitnesses; ++i)
                for (std::size_t j = 0; j < ms.size(); ++j) {
                    tick();
                    Bits meet = ms[i] & ms[j];
                    if (!idx.get(meet).contains(h)) {
                        emit({h, g.inverse(h)}, {ms[i], ms[j]});
                        break;
                    }
                }
        }
        if (!res.cycles.empty() || maxLen < 3) return res;

        // n >= 3: DFS over connector tuples with interleaved alpha choice.
        // Rotation pruning: h_0 carries the minimal element id in the tuple.
        for (int n = 3; n <= maxLen; ++n) {
            std::vector<int> hs;
            std::vector<Bits> alphas;
            std::vector<int> prefix;  // prefix products starting at identity

            auto innerOk = [&](std::size_t i) {
                // disjointness condition at index i (needs alpha_{i-1}, alpha_i,
                // alpha_{i+1} all chosen; callers pass valid i)
                std::size_t m = hs.size();
                Bits b1 = alphas[i] & alphas[(i + m - 1) % m];
                Bits b2 = alphas[i] & alphas[(i + 1) % m];
                return !oracle.contains(b1, b2, hs[i]);
            };

            auto rec = [&](auto&& self) -> bool {
                std::size_t depth = hs.size();
                if (depth == (std::size_t)n - 1) {
                    // close the cycle
                    int closing = g.inverse(prefix.back());
                    if (g.isIdentity(closing)) return false;
                    if (closing < hs[0]) return false;  // rotation pruning
                    if (g.tgtSort(closing) != g.srcSort(hs[0])) return false;
                    tick();
                    hs.push_back(closing);
                    for (const Bits& aN : supports[closing]) {
                        alphas.push_back(aN);
                        bool ok = true;
                        // all conditions involving the last alpha: indices
                        // n-2, n-1 and 0
                        for (std::size_t i : {(std::size_t)n - 2, (std::size_t)n - 1,
                                              (std::size_t)0})
                            if (!innerOk(i)) {
                                ok = false;
                                break;
                            }
                        // plus any inner conditions not yet checked (for n == 3
                        // none remain; for larger n indices 1..n-3 were checked
                        // during the descent)
                        if (ok) {
                            emit(hs, alphas);
                            if (res.cycles.size() >= maxWitnesses) {
                                alphas.pop_back();
                                hs.pop_back();
                                return true;
                            }
                        }
                        alphas.pop_back();
                    }
                    hs.pop_back();
                    return false;
                }
                int wantSrc = depth == 0 ? -1 : g.tgtSort(hs.back());
                for (int h = 0; h < g.size(); ++h) {
                    if (g.isIdentity(h)) continue;
                    if (depth > 0 && g.srcSort(h) != wantSrc) continue;
                    if (depth > 0 && h < hs[0]) continue;  // rotation pruning
                    tick();
                    int pref = depth == 0 ? g.product(g.identity(g.srcSort(h)), h)
                                          : g.product(prefix.back(), h);
                    hs.push_back(h);
                    prefix.push_back(pref);
                    for (const Bits& a : supports[h]) {
                        alphas.push_back(a);
                        // condition at depth-1 becomes fully determined once
                        // alpha_{depth} is chosen, except that it also needs
                        // alpha_{depth-2}: available when depth >= 2
                        if (depth >= 2 && !innerOk(depth - 1)) {
                            alphas.pop_back();
                            continue;
                        }
                        if (self(self)) return true;
                        alphas.pop_back();
                    }
                    prefix.pop_back();
                    hs.pop_back();
                }
                return false;
            };
            rec(rec);
            if (!res.cycles.empty()) break;
        }
    } catch (const BudgetError&) {
        res.status = CycleSearchResult::Status::Budget;
    }
    res.nodesVisited = nodes;
    return res;
}

}  // namespace grpd
