#include "grpd/igraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "grpd/errors.hpp"
#include "grpd/wordmap.hpp"

namespace grpd {

int word_target(const IncidencePattern& p, const PathWord& w) {
    if (w.anchorSite < 0 || w.anchorSite >= p.nSites())
        throw ValidationError("word: anchor site out of range");
    int at = w.anchorSite;
    for (int e : w.edges) {
        if (e < 0 || e >= p.nEdges()) throw ValidationError("word: edge out of range");
        if (p.src(e) != at)
            throw ValidationError("word: not a path in the pattern at edge " + p.edgeId(e));
        at = p.tgt(e);
    }
    return at;
}

PathWord word_inverse(const IncidencePattern& p, const PathWord& w) {
    PathWord r;
    r.anchorSite = word_target(p, w);
    for (auto it = w.edges.rbegin(); it != w.edges.rend(); ++it)
        r.edges.push_back(p.rev(*it));
    return r;
}

std::string word_to_string(const IncidencePattern& p, const PathWord& w) {
    if (w.edges.empty()) return "lambda_" + p.site(w.anchorSite);
    std::string s;
    for (int e : w.edges) {
        if (!s.empty()) s += ".";
        s += p.edgeId(e);
    }
    return s;
}

int IGraph::vertexIndex(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int IGraph::apply(int edge, int v) const {
    int pos = fibrePos_[v];
    if (sort_[v] != pattern_.src(edge)) return -1;
    std::int32_t t = act_[edge][pos];
    return t < 0 ? -1 : fibre_[pattern_.tgt(edge)][t];
}

int IGraph::edgeSize(int edge) const {
    int n = 0;
    for (auto v : act_[edge])
        if (v >= 0) ++n;
    return n;
}

std::vector<int> IGraph::componentOf(int v0, const Bits& edgeSet) const {
    std::vector<int> comp;
    std::vector<char> seen(names_.size(), 0);
    std::vector<int> stack{v0};
    seen[v0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int e = 0; e < pattern_.nEdges(); ++e) {
            if (!edgeSet.test((std::size_t)e)) continue;
            if (sort_[v] != pattern_.src(e)) continue;
            int w = apply(e, v);
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

void IGraph::finishConstruction(std::vector<std::vector<std::pair<int, int>>> edgePairs) {
    fibre_.assign(pattern_.nSites(), {});
    fibrePos_.resize(names_.size());
    for (int v = 0; v < (int)names_.size(); ++v) {
        fibrePos_[v] = (int)fibre_[sort_[v]].size();
        fibre_[sort_[v]].push_back(v);
    }
    act_.assign(pattern_.nEdges(), {});
    for (int e = 0; e < pattern_.nEdges(); ++e)
        act_[e].assign(fibre_[pattern_.src(e)].size(), -1);
    for (int e = 0; e < pattern_.nEdges(); ++e) {
        for (auto [a, b] : edgePairs[e]) {
            if (sort_[a] != pattern_.src(e) || sort_[b] != pattern_.tgt(e))
                throw ValidationError("igraph: edge " + pattern_.edgeId(e) + " pair (" +
                                      names_[a] + "," + names_[b] + ") leaves its sorts");
            auto& slot = act_[e][fibrePos_[a]];
            if (slot >= 0 && slot != fibrePos_[b])
                throw ValidationError("igraph: rho_" + pattern_.edgeId(e) +
                                      " not functional at " + names_[a]);
            slot = fibrePos_[b];
        }
    }
    // injectivity and reversal compatibility
    for (int e = 0; e < pattern_.nEdges(); ++e) {
        std::vector<char> hit(fibre_[pattern_.tgt(e)].size(), 0);
        for (auto t : act_[e]) {
            if (t < 0) continue;
            if (hit[t])
                throw ValidationError("igraph: rho_" + pattern_.edgeId(e) +
                                      " not injective");
            hit[t] = 1;
        }
        int r = pattern_.rev(e);
        for (int pos = 0; pos < (int)act_[e].size(); ++pos) {
            auto t = act_[e][pos];
            if (t >= 0 && act_[r][t] != pos)
                throw ValidationError("igraph: R_" + pattern_.edgeId(r) +
                                      " is not the inverse of R_" + pattern_.edgeId(e));
        }
        for (int pos = 0; pos < (int)act_[r].size(); ++pos) {
            auto t = act_[r][pos];
            if (t >= 0 && act_[e][t] != pos)
                throw ValidationError("igraph: R_" + pattern_.edgeId(e) +
                                      " is not the inverse of R_" + pattern_.edgeId(r));
        }
    }
}

IGraph::IGraph(
    IncidencePattern pattern, std::vector<std::pair<std::string, std::string>> vertices,
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> edges) {
    pattern_ = std::move(pattern);
    std::sort(vertices.begin(), vertices.end());
    for (const auto& [name, site] : vertices) {
        if (index_.count(name)) throw ValidationError("igraph: duplicate vertex " + name);
        int s = pattern_.siteIndex(site);
        if (s < 0) throw ValidationError("igraph: unknown site " + site);
        index_[name] = (int)names_.size();
        names_.push_back(name);
        sort_.push_back(s);
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(pattern_.nEdges());
    for (const auto& [eid, lst] : edges) {
        int e = pattern_.edgeIndex(eid);
        if (e < 0) throw ValidationError("igraph: unknown edge " + eid);
        for (const auto& [a, b] : lst) {
            int va = vertexIndex(a), vb = vertexIndex(b);
            if (va < 0) throw ValidationError("igraph: unknown vertex " + a);
            if (vb < 0) throw ValidationError("igraph: unknown vertex " + b);
            pairs[e].push_back({va, vb});
        }
    }
    finishConstruction(std::move(pairs));
}

IGraph IGraph::fromIndexed(IncidencePattern pattern, std::vector<std::string> names,
                           std::vector<int> sorts,
                           std::vector<std::vector<std::pair<int, int>>> edgePairs) {
    // Re-sort names lexicographically, remapping indices.
    std::vector<int> order(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return names[a] < names[b]; });
    std::vector<int> where(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = (int)i;

    IGraph g;
    g.pattern_ = std::move(pattern);
    g.names_.resize(names.size());
    g.sort_.resize(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        g.names_[where[i]] = names[i];
        g.sort_[where[i]] = sorts[i];
    }
    for (std::size_t i = 0; i < g.names_.size(); ++i) {
        if (g.index_.count(g.names_[i]))
            throw ValidationError("igraph: duplicate vertex " + g.names_[i]);
        g.index_[g.names_[i]] = (int)i;
    }
    for (auto& lst : edgePairs)
        for (auto& [a, b] : lst) {
            a = where[a];
            b = where[b];
        }
    g.finishConstruction(std::move(edgePairs));
    return g;
}

std::vector<std::pair<int, int>> IGraph::edgePairs(int edge) const {
    std::vector<std::pair<int, int>> out;
    const auto& srcFibre = fibre_[pattern_.src(edge)];
    const auto& tgtFibre = fibre_[pattern_.tgt(edge)];
    for (int pos = 0; pos < (int)act_[edge].size(); ++pos)
        if (act_[edge][pos] >= 0) out.push_back({srcFibre[pos], tgtFibre[act_[edge][pos]]});
    std::sort(out.begin(), out.end());
    return out;
}

PartialMap identity_map(const IGraph& h, int site) {
    PartialMap m;
    m.srcSite = m.tgtSite = site;
    m.img.resize(h.fibre(site).size());
    for (int i = 0; i < (int)m.img.size(); ++i) m.img[i] = i;
    return m;
}

PartialMap compose(const IGraph& h, const PartialMap& a, const PartialMap& b) {
    if (a.tgtSite != b.srcSite) throw ValidationError("compose: sort mismatch");
    PartialMap m;
    m.srcSite = a.srcSite;
    m.tgtSite = b.tgtSite;
    m.img.assign(h.fibre(a.srcSite).size(), -1);
    for (int i = 0; i < (int)a.img.size(); ++i)
        if (a.img[i] >= 0) m.img[i] = b.img[a.img[i]];
    return m;
}

PartialMap invert(const IGraph& h, const PartialMap& m) {
    PartialMap r;
    r.srcSite = m.tgtSite;
    r.tgtSite = m.srcSite;
    r.img.assign(h.fibre(m.tgtSite).size(), -1);
    for (int i = 0; i < (int)m.img.size(); ++i)
        if (m.img[i] >= 0) r.img[m.img[i]] = i;
    return r;
}

PartialMap eval_word(const IGraph& h, const PathWord& w) {
    word_target(h.pattern(), w);  // validates
    PartialMap m = identity_map(h, w.anchorSite);
    for (int e : w.edges) {
        PartialMap step;
        step.srcSite = h.pattern().src(e);
        step.tgtSite = h.pattern().tgt(e);
        step.img = h.edgeAction(e);
        m = compose(h, m, step);
    }
    return m;
}

CoherenceResult is_coherent(const IGraph& h, std::size_t maxMaps) {
    for (int s = 0; s < h.pattern().nSites(); ++s) {
        WordMapClosure c(h, s, maxMaps);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const PartialMap& m = c.map(i);
            if (m.tgtSite != s) continue;
            for (int pos = 0; pos < (int)m.img.size(); ++pos) {
                if (m.img[pos] >= 0 && m.img[pos] != pos) {
                    CoherenceResult r;
                    r.coherent = false;
                    r.witnessWord = c.wordOf(i);
                    r.witnessVertex = h.vertexName(h.fibre(s)[pos]);
                    return r;
                }
            }
        }
    }
    return {};
}

CompletenessResult is_complete(const IGraph& h) {
    for (int e = 0; e < h.pattern().nEdges(); ++e) {
        const auto& act = h.edgeAction(e);
        for (int pos = 0; pos < (int)act.size(); ++pos)
            if (act[pos] < 0)
                return {false, "rho_" + h.pattern().edgeId(e) + " undefined at " +
                                   h.vertexName(h.fibre(h.pattern().src(e))[pos])};
        std::vector<char> hit(h.fibre(h.pattern().tgt(e)).size(), 0);
        for (auto t : act)
            if (t >= 0) hit[t] = 1;
        for (int pos = 0; pos < (int)hit.size(); ++pos)
            if (!hit[pos])
                return {false, "rho_" + h.pattern().edgeId(e) + " misses " +
                                   h.vertexName(h.fibre(h.pattern().tgt(e))[pos])};
    }
    return {};
}

IGraph complete_igraph(const IGraph& h) {
    const auto& I = h.pattern();
    int nV = h.nVertices();
    int nS = I.nSites();
    // product vertex (v, s) -> id v*nS + s
    auto pid = [&](int v, int s) { return v * nS + s; };

    // lifted edge actions on product vertices: lift[e][v] = v' meaning
    // ((v, src e), (v', tgt e)) is an e-edge of the product
    std::vector<std::vector<int>> lift(I.nEdges(), std::vector<int>(nV, -1));
    std::vector<char> pairDone(I.nPairs(), 0);
    for (int e = 0; e < I.nEdges(); ++e) {
        int p = I.pairIndex(e);
        if (pairDone[p]) continue;
        pairDone[p] = 1;
        int r = I.rev(e);
        if (I.src(e) != I.tgt(e)) {
            // non-loop: matched pairs both directions, diagonal for the rest
            std::vector<int> partner(nV, -1);
            for (int v = 0; v < nV; ++v) {
                int w = h.apply(e, v);
                if (w >= 0) {
                    partner[v] = w;
                    partner[w] = v;
                }
            }
            for (int v = 0; v < nV; ++v) {
                int w = partner[v] >= 0 ? partner[v] : v;
                lift[e][v] = w;
                lift[r][w] = v;
            }
        } else {
            // loop: keep matched pairs; wrap each maximal e-path with a
            // closing edge; e-cycles are already complete; isolated
            // vertices are trivial paths and get a reflexive edge
            std::vector<int> nxt(nV, -1), prv(nV, -1);
            for (int v = 0; v < nV; ++v) {
                int w = h.apply(e, v);
                if (w >= 0) {
                    nxt[v] = w;
                    prv[w] = v;
                }
            }
            std::vector<char> onCycle(nV, 0);
            for (int v = 0; v < nV; ++v) {
                if (onCycle[v] || nxt[v] < 0) continue;
                int cur = nxt[v];
                std::vector<int> trail{v};
                bool cycle = false;
                while (cur >= 0 && cur != v && nxt[cur] >= 0) {
                    trail.push_back(cur);
                    cur = nxt[cur];
                }
                if (cur == v) cycle = true;
                if (cycle)
                    for (int x : trail) onCycle[x] = 1;
            }
            for (int v = 0; v < nV; ++v) lift[e][v] = nxt[v];
            for (int v = 0; v < nV; ++v) {
                if (onCycle[v] || nxt[v] >= 0) continue;
                // v is the last vertex of a maximal path (possibly trivial);
                // walk back to its first vertex and close the path
                int first = v;
                while (prv[first] >= 0) first = prv[first];
                lift[e][v] = first;
            }
            for (int v = 0; v < nV; ++v)
                if (lift[e][v] >= 0) lift[r][lift[e][v]] = v;
        }
    }

    // connected components of the product meeting the diagonal
    std::vector<char> keep((std::size_t)nV * nS, 0);
    std::vector<int> stack;
    for (int v = 0; v < nV; ++v) {
        int start = pid(v, h.sortOf(v));
        if (!keep[start]) {
            keep[start] = 1;
            stack.push_back(start);
        }
    }
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        int v = x / nS, s = x % nS;
        for (int e : I.edgesFrom(s)) {
            int w = lift[e][v];
            int y = pid(w, I.tgt(e));
            if (!keep[y]) {
                keep[y] = 1;
                stack.push_back(y);
            }
        }
        // incoming edges: follow reversals (edge set closed under rev, so
        // outgoing edges of every site cover both directions)
    }

    std::vector<std::string> names;
    std::vector<int> sorts;
    std::vector<int> newId((std::size_t)nV * nS, -1);
    for (int v = 0; v < nV; ++v)
        for (int s = 0; s < nS; ++s)
            if (keep[pid(v, s)]) {
                newId[pid(v, s)] = (int)names.size();
                names.push_back(h.vertexName(v) + "@" + I.site(s));
                sorts.push_back(s);
            }
    std::vector<std::vector<std::pair<int, int>>> pairs(I.nEdges());
    for (int e = 0; e < I.nEdges(); ++e) {
        int s = I.src(e), t = I.tgt(e);
        for (int v = 0; v < nV; ++v) {
            int a = newId[pid(v, s)];
            if (a < 0) continue;
            int w = lift[e][v];
            int b = newId[pid(w, t)];
            if (b < 0)
                throw Error("completion: component not closed under lifted edges");
            pairs[e].push_back({a, b});
        }
    }
    return IGraph::fromIndexed(I, std::move(names), std::move(sorts), std::move(pairs));
}

IGraph reduct(const IGraph& h, const Bits& alphaEdges, bool keepPattern) {
    const auto& I = h.pattern();
    for (int e = 0; e < I.nEdges(); ++e)
        if (alphaEdges.test((std::size_t)e) != alphaEdges.test((std::size_t)I.rev(e)))
            throw ValidationError("reduct: alpha not closed under edge reversal");
    if (keepPattern) {
        std::vector<std::vector<std::pair<int, int>>> pairs(I.nEdges());
        for (int e = 0; e < I.nEdges(); ++e)
            if (alphaEdges.test((std::size_t)e)) pairs[e] = h.edgePairs(e);
        std::vector<std::string> names(h.nVertices());
        std::vector<int> sorts(h.nVertices());
        for (int v = 0; v < h.nVertices(); ++v) {
            names[v] = h.vertexName(v);
            sorts[v] = h.sortOf(v);
        }
        return IGraph::fromIndexed(I, std::move(names), std::move(sorts), std::move(pairs));
    }
    // restricted pattern I_alpha
    std::vector<IncidencePattern::EdgeSpec> es;
    for (int e = 0; e < I.nEdges(); ++e)
        if (alphaEdges.test((std::size_t)e))
            es.push_back({I.edgeId(e), I.site(I.src(e)), I.site(I.tgt(e)),
                          I.edgeId(I.rev(e))});
    IncidencePattern ia(I.sites(), es);
    std::vector<std::pair<std::string, std::string>> verts;
    for (int v = 0; v < h.nVertices(); ++v)
        verts.push_back({h.vertexName(v), I.site(h.sortOf(v))});
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> edges;
    for (int e = 0; e < I.nEdges(); ++e) {
        if (!alphaEdges.test((std::size_t)e)) continue;
        std::vector<std::pair<std::string, std::string>> lst;
        for (auto [a, b] : h.edgePairs(e))
            lst.push_back({h.vertexName(a), h.vertexName(b)});
        edges.push_back({I.edgeId(e), std::move(lst)});
    }
    return IGraph(std::move(ia), std::move(verts), std::move(edges));
}

PartialMap coherent_overlap(const IGraph& h, int s, int t) {
    auto coh = is_coherent(h);
    if (!coh.coherent)
        throw ValidationError("coherent_overlap: igraph is not coherent (witness " +
                              word_to_string(h.pattern(), coh.witnessWord) + ")");
    WordMapClosure c(h, s, 2000000);
    PartialMap u;
    u.srcSite = s;
    u.tgtSite = t;
    u.img.assign(h.fibre(s).size(), -1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const PartialMap& m = c.map(i);
        if (m.tgtSite != t) continue;
        for (int pos = 0; pos < (int)m.img.size(); ++pos) {
            if (m.img[pos] < 0) continue;
            if (u.img[pos] >= 0 && u.img[pos] != m.img[pos])
                throw Error("coherent_overlap: union not well-defined");
            u.img[pos] = m.img[pos];
        }
    }
    return u;
}

namespace {

// Try to extend the pointed map a(v0) = w0 over the whole component of v0
// by following edge actions; complete components make this deterministic.
bool propagateIso(const IGraph& a, const IGraph& b, int v0, int w0,
                  std::vector<int>& out) {
    if (a.sortOf(v0) != b.sortOf(w0)) return false;
    std::vector<int> stack{v0};
    out[v0] = w0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int w = out[v];
        for (int e = 0; e < a.pattern().nEdges(); ++e) {
            if (a.pattern().src(e) != a.sortOf(v)) continue;
            int vn = a.apply(e, v);
            int wn = b.apply(e, w);
            if ((vn >= 0) != (wn >= 0)) return false;
            if (vn < 0) continue;
            if (out[vn] >= 0) {
                if (out[vn] != wn) return false;
            } else {
                out[vn] = wn;
                stack.push_back(vn);
            }
        }
    }
    return true;
}

}  // namespace

bool igraphs_isomorphic(const IGraph& a, const IGraph& b) {
    if (!(a.pattern() == b.pattern())) return false;
    if (a.nVertices() != b.nVertices()) return false;
    for (int s = 0; s < a.pattern().nSites(); ++s)
        if (a.fibre(s).size() != b.fibre(s).size()) return false;
    for (int e = 0; e < a.pattern().nEdges(); ++e)
        if (a.edgeSize(e) != b.edgeSize(e)) return false;

    // match components greedily; within a component, try each same-sort
    // anchor image and propagate
    Bits all((std::size_t)a.pattern().nEdges());
    for (int e = 0; e < a.pattern().nEdges(); ++e) all.set((std::size_t)e);

    std::vector<char> doneA(a.nVertices(), 0), usedB(b.nVertices(), 0);
    for (int v0 = 0; v0 < a.nVertices(); ++v0) {
        if (doneA[v0]) continue;
        auto compA = a.componentOf(v0, all);
        bool matched = false;
        for (int w0 = 0; w0 < b.nVertices() && !matched; ++w0) {
            if (usedB[w0] || b.sortOf(w0) != a.sortOf(v0)) continue;
            std::vector<int> m(a.nVertices(), -1);
            if (!propagateIso(a, b, v0, w0, m)) continue;
            // propagation may not reach the whole undirected component if
            // edges only leave it one way; edge sets are rev-closed here so
            // forward propagation covers it. Check coverage + injectivity.
            bool ok = true;
            std::set<int> image;
            for (int v : compA) {
                if (m[v] < 0 || usedB[m[v]] || image.count(m[v])) {
                    ok = false;
                    break;
                }
                image.insert(m[v]);
            }
            // verify edges within the matched component both ways
            if (ok) {
                for (int v : compA) {
                    for (int e = 0; e < a.pattern().nEdges() && ok; ++e) {
                        if (a.pattern().src(e) != a.sortOf(v)) continue;
                        int vn = a.apply(e, v);
                        int wn = b.apply(e, m[v]);
                        if ((vn >= 0) != (wn >= 0)) ok = false;
                        else if (vn >= 0 && m[vn] != wn) ok = false;
                    }
                    if (!ok) break;
                }
            }
            if (ok) {
                for (int v : compA) {
                    doneA[v] = 1;
                    usedB[m[v]] = 1;
                }
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

IGraph disjoint_union(const IGraph& a, const IGraph& b, const std::string& prefixA,
                      const std::string& prefixB) {
    if (!(a.pattern() == b.pattern()))
        throw ValidationError("disjoint_union: pattern mismatch");
    std::vector<std::string> names;
    std::vector<int> sorts;
    for (int v = 0; v < a.nVertices(); ++v) {
        names.push_back(prefixA + a.vertexName(v));
        sorts.push_back(a.sortOf(v));
    }
    int off = a.nVertices();
    for (int v = 0; v < b.nVertices(); ++v) {
        names.push_back(prefixB + b.vertexName(v));
        sorts.push_back(b.sortOf(v));
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(a.pattern().nEdges());
    for (int e = 0; e < a.pattern().nEdges(); ++e) {
        for (auto [x, y] : a.edgePairs(e)) pairs[e].push_back({x, y});
        for (auto [x, y] : b.edgePairs(e)) pairs[e].push_back({x + off, y + off});
    }
    return IGraph::fromIndexed(a.pattern(), std::move(names), std::move(sorts),
                               std::move(pairs));
}

std::vector<IGraph> connected_components(const IGraph& h) {
    Bits all((std::size_t)h.pattern().nEdges());
    for (int e = 0; e < h.pattern().nEdges(); ++e) all.set((std::size_t)e);
    std::vector<char> seen(h.nVertices(), 0);
    std::vector<IGraph> out;
    for (int v0 = 0; v0 < h.nVertices(); ++v0) {
        if (seen[v0]) continue;
        auto comp = h.componentOf(v0, all);
        std::vector<int> where(h.nVertices(), -1);
        std::vector<std::string> names;
        std::vector<int> sorts;
        for (int v : comp) {
            seen[v] = 1;
            where[v] = (int)names.size();
            names.push_back(h.vertexName(v));
            sorts.push_back(h.sortOf(v));
        }
        std::vector<std::vector<std::pair<int, int>>> pairs(h.pattern().nEdges());
        for (int e = 0; e < h.pattern().nEdges(); ++e)
            for (auto [x, y] : h.edgePairs(e))
                if (where[x] >= 0) pairs[e].push_back({where[x], where[y]});
        out.push_back(IGraph::fromIndexed(h.pattern(), std::move(names),
                                          std::move(sorts), std::move(pairs)));
    }
    return out;
}

IGraph pattern_as_igraph(const IncidencePattern& p) {
    std::vector<std::string> names;
    std::vector<int> sorts;
    for (int s = 0; s < p.nSites(); ++s) {
        names.push_back(p.site(s));
        sorts.push_back(s);
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(p.nEdges());
    for (int e = 0; e < p.nEdges(); ++e) pairs[e].push_back({p.src(e), p.tgt(e)});
    return IGraph::fromIndexed(p, std::move(names), std::move(sorts), std::move(pairs));
}

}  // namespace grpd
