#include "grpd/hypergraph.hpp"

#include <algorithm>
#include <set>

#include "grpd/errors.hpp"
#include "grpd/wordmap.hpp"

namespace grpd {

Hypergraph::Hypergraph(std::vector<std::string> vertices,
                       std::vector<std::vector<std::string>> hyperedges) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    names_ = std::move(vertices);
    for (int i = 0; i < (int)names_.size(); ++i) index_[names_[i]] = i;

    std::set<std::vector<int>> family;
    for (const auto& he : hyperedges) {
        std::vector<int> e;
        for (const auto& v : he) {
            auto it = index_.find(v);
            if (it == index_.end())
                throw ValidationError("hypergraph: hyperedge vertex " + v +
                                      " not in vertex set");
            e.push_back(it->second);
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        family.insert(std::move(e));
    }
    edges_.assign(family.begin(), family.end());
    vertexEdges_.assign(names_.size(), {});
    for (int i = 0; i < (int)edges_.size(); ++i)
        for (int v : edges_[i]) vertexEdges_[v].push_back(i);
}

int Hypergraph::vertexIndex(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool Hypergraph::edgeContains(int e, int v) const {
    const auto& ed = edges_[e];
    return std::binary_search(ed.begin(), ed.end(), v);
}

int Hypergraph::findEdge(const std::vector<int>& sortedVerts) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), sortedVerts);
    if (it != edges_.end() && *it == sortedVerts) return (int)(it - edges_.begin());
    return -1;
}

SimpleGraph gaifman(const Hypergraph& a) {
    SimpleGraph g;
    g.n = a.nVertices();
    g.adj.assign((std::size_t)g.n * g.n, 0);
    for (const auto& e : a.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                g.adj[(std::size_t)e[i] * g.n + e[j]] = 1;
                g.adj[(std::size_t)e[j] * g.n + e[i]] = 1;
            }
    return g;
}

IncidencePattern intersection_pattern(const Hypergraph& a) {
    std::vector<std::string> sites;
    for (int i = 0; i < a.nEdges(); ++i) sites.push_back("h" + std::to_string(i));
    std::vector<IncidencePattern::EdgeSpec> es;
    for (int i = 0; i < a.nEdges(); ++i)
        for (int j = 0; j < a.nEdges(); ++j) {
            if (i == j) continue;
            std::vector<int> inter;
            std::set_intersection(a.edge(i).begin(), a.edge(i).end(),
                                  a.edge(j).begin(), a.edge(j).end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            std::string id = "h" + std::to_string(i) + ">h" + std::to_string(j);
            std::string rid = "h" + std::to_string(j) + ">h" + std::to_string(i);
            es.push_back({id, sites[i], sites[j], rid});
        }
    return IncidencePattern(std::move(sites), std::move(es));
}

IGraphOfResult igraph_of(const Hypergraph& a) {
    IncidencePattern I = intersection_pattern(a);
    std::vector<std::string> names;
    std::vector<int> sorts;
    std::vector<std::pair<int, int>> decode;  // (hypergraph vertex, hyperedge)
    // vertex order: per hyperedge (site index equals hyperedge index by the
    // "h<i>" naming), vertices in sorted order
    std::vector<std::vector<int>> id(a.nEdges());
    for (int i = 0; i < a.nEdges(); ++i) {
        int s = I.siteIndex("h" + std::to_string(i));
        for (int v : a.edge(i)) {
            id[i].push_back((int)names.size());
            names.push_back(a.vertexName(v) + "@h" + std::to_string(i));
            sorts.push_back(s);
            decode.push_back({v, i});
        }
    }
    std::vector<std::vector<std::pair<int, int>>> pairs(I.nEdges());
    for (int e = 0; e < I.nEdges(); ++e) {
        // edge id "h<i>>h<j>"
        const std::string& eid = I.edgeId(e);
        auto gt = eid.find(">");
        int i = std::stoi(eid.substr(1, gt - 1));
        int j = std::stoi(eid.substr(gt + 2));
        for (int k = 0; k < (int)a.edge(i).size(); ++k) {
            int v = a.edge(i)[k];
            if (!a.edgeContains(j, v)) continue;
            int l = (int)(std::lower_bound(a.edge(j).begin(), a.edge(j).end(), v) -
                          a.edge(j).begin());
            pairs[e].push_back({id[i][k], id[j][l]});
        }
    }
    IGraph g = IGraph::fromIndexed(I, names, sorts, std::move(pairs));
    // names were re-sorted inside fromIndexed; rebuild decode by lookup
    IGraphOfResult out;
    out.baseVertex.assign(g.nVertices(), -1);
    out.baseEdge.assign(g.nVertices(), -1);
    for (std::size_t k = 0; k < names.size(); ++k) {
        int v = g.vertexIndex(names[k]);
        out.baseVertex[v] = decode[k].first;
        out.baseEdge[v] = decode[k].second;
    }
    out.graph = std::move(g);
    return out;
}

namespace {

// Enumerate cliques of size up to n by DFS over ordered extensions; stop
// at the first clique not contained in a hyperedge.
bool findUncoveredClique(const Hypergraph& a, const SimpleGraph& g, int n,
                         std::vector<int>& witness) {
    std::vector<int> cur;
    auto covered = [&](const std::vector<int>& c) {
        for (int e = 0; e < a.nEdges(); ++e) {
            bool all = true;
            for (int v : c)
                if (!a.edgeContains(e, v)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        return false;
    };
    auto rec = [&](auto&& self, int lo) -> bool {
        if (!cur.empty() && !covered(cur)) {
            witness = cur;
            return true;
        }
        if ((int)cur.size() == n) return false;
        for (int v = lo; v < g.n; ++v) {
            bool ok = true;
            for (int u : cur)
                if (!g.has(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(v);
            if (self(self, v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

// Chordless cycle of length in [4, n]: DFS over induced paths anchored at
// the cycle's minimal vertex, closing back to the anchor. A candidate
// extension adjacent to a middle path vertex would be a chord and is
// pruned; one adjacent to the anchor either closes the cycle now or is
// dropped.
bool findChordlessCycle(const SimpleGraph& g, int n, std::vector<int>& witness) {
    if (n < 4) return false;
    std::vector<int> path;
    std::vector<char> inPath(g.n, 0);
    auto rec = [&](auto&& self) -> bool {
        int a0 = path[0];
        int last = path.back();
        for (int v = a0 + 1; v < g.n; ++v) {
            if (inPath[v] || !g.has(last, v)) continue;
            bool chordToMiddle = false;
            for (std::size_t i = 1; i + 1 < path.size(); ++i)
                if (g.has(path[i], v)) {
                    chordToMiddle = true;
                    break;
                }
            if (chordToMiddle) continue;
            if (g.has(a0, v)) {
                if ((int)path.size() + 1 >= 4) {
                    witness = path;
                    witness.push_back(v);
                    return true;
                }
                continue;  // would become a chord on any longer path
            }
            if ((int)path.size() <= n - 2) {
                path.push_back(v);
                inPath[v] = 1;
                if (self(self)) return true;
                inPath[v] = 0;
                path.pop_back();
            }
        }
        return false;
    };
    for (int a0 = 0; a0 < g.n; ++a0) {
        for (int b = a0 + 1; b < g.n; ++b) {
            if (!g.has(a0, b)) continue;
            path = {a0, b};
            std::fill(inPath.begin(), inPath.end(), 0);
            inPath[a0] = inPath[b] = 1;
            if (rec(rec)) return true;
        }
    }
    return false;
}

}  // namespace

AcyclicityReport check_acyclicity(const Hypergraph& a, int n) {
    if (n < 2) throw ValidationError("check_acyclicity: n must be >= 2");
    AcyclicityReport rep;
    rep.n = n;
    SimpleGraph g = gaifman(a);
    std::vector<int> w;
    if (findUncoveredClique(a, g, n, w)) {
        rep.nConformal = false;
        for (int v : w) rep.cliqueWitness.push_back(a.vertexName(v));
    }
    w.clear();
    if (findChordlessCycle(g, n, w)) {
        rep.nChordal = false;
        for (int v : w) rep.cycleWitness.push_back(a.vertexName(v));
    }
    return rep;
}

std::optional<TreeDecomposition> tree_decomposition(const Hypergraph& a) {
    if (a.nEdges() == 0) return TreeDecomposition{};  // empty: trivially decomposable
    int m = a.nEdges();
    std::vector<std::set<int>> cur(m);
    for (int i = 0; i < m; ++i) cur[i] = {a.edge(i).begin(), a.edge(i).end()};
    std::vector<char> alive(m, 1);
    std::vector<int> removedOrder;      // hyperedge indices in removal order
    std::vector<int> removedParent;     // container at removal time
    std::vector<int> edgeCount(a.nVertices(), 0);
    for (int i = 0; i < m; ++i)
        for (int v : cur[i]) edgeCount[v]++;

    bool changed = true;
    while (changed) {
        changed = false;
        // ear vertices: in exactly one live hyperedge
        for (int i = 0; i < m; ++i) {
            if (!alive[i]) continue;
            std::vector<int> ears;
            for (int v : cur[i])
                if (edgeCount[v] == 1) ears.push_back(v);
            for (int v : ears) {
                cur[i].erase(v);
                edgeCount[v] = 0;
                changed = true;
            }
        }
        // contained hyperedges (ties broken by index for determinism)
        for (int i = 0; i < m; ++i) {
            if (!alive[i]) continue;
            for (int j = 0; j < m; ++j) {
                if (i == j || !alive[j]) continue;
                if (std::includes(cur[j].begin(), cur[j].end(), cur[i].begin(),
                                  cur[i].end())) {
                    alive[i] = 0;
                    removedOrder.push_back(i);
                    removedParent.push_back(j);
                    for (int v : cur[i]) edgeCount[v]--;
                    changed = true;
                    break;
                }
            }
        }
    }
    int liveCount = 0, root = -1;
    for (int i = 0; i < m; ++i)
        if (alive[i]) {
            ++liveCount;
            root = i;
        }
    if (liveCount != 1) return std::nullopt;

    TreeDecomposition td;
    td.order.push_back(root);
    td.parent.push_back(-1);
    std::vector<int> posOf(m, -1);
    posOf[root] = 0;
    // reverse removal order; parents were removed later (or are the root),
    // so they already have positions
    for (int k = (int)removedOrder.size() - 1; k >= 0; --k) {
        int e = removedOrder[k];
        int p = removedParent[k];
        // the recorded container may itself have been removed before
        // gaining a position only if it was removed later than e, which the
        // reverse order guarantees has a position already
        td.parent.push_back(posOf[p]);
        posOf[e] = (int)td.order.size();
        td.order.push_back(e);
    }
    // independent re-verification of the defining condition; a failure here
    // would be a construction bug, not evidence of non-decomposability
    std::set<int> seen;
    for (std::size_t l = 0; l < td.order.size(); ++l) {
        if (l > 0) {
            const auto& sl = a.edge(td.order[l]);
            const auto& par = a.edge(td.order[td.parent[l]]);
            for (int v : sl)
                if (seen.count(v) &&
                    !std::binary_search(par.begin(), par.end(), v))
                    throw Error("tree_decomposition: certificate re-check failed");
        }
        for (int v : a.edge(td.order[l])) seen.insert(v);
    }
    return td;
}

bool is_acyclic(const Hypergraph& a) { return tree_decomposition(a).has_value(); }

Report verify_covering(const CoveringCert& c) {
    Report r;
    if ((int)c.vertexMap.size() != c.cover.nVertices()) {
        r.add("shape", "vertexMap size mismatch");
        return r;
    }
    for (int v = 0; v < c.cover.nVertices(); ++v)
        if (c.vertexMap[v] < 0 || c.vertexMap[v] >= c.base.nVertices()) {
            r.add("vertex-map-range", c.cover.vertexName(v));
            return r;
        }
    // homomorphism: each cover hyperedge maps bijectively onto a base
    // hyperedge
    std::vector<int> imageEdge(c.cover.nEdges(), -1);
    for (int i = 0; i < c.cover.nEdges(); ++i) {
        std::vector<int> img;
        for (int v : c.cover.edge(i)) img.push_back(c.vertexMap[v]);
        std::sort(img.begin(), img.end());
        bool inj = std::adjacent_find(img.begin(), img.end()) == img.end();
        if (!inj) {
            r.add("homomorphism-injective", "cover hyperedge " + std::to_string(i));
            continue;
        }
        int e = c.base.findEdge(img);
        if (e < 0) {
            r.add("homomorphism-image", "cover hyperedge " + std::to_string(i) +
                                            " does not map onto a base hyperedge");
            continue;
        }
        imageEdge[i] = e;
    }
    if (!r.ok()) return r;
    // back-property
    for (int i = 0; i < c.cover.nEdges(); ++i) {
        int s = imageEdge[i];
        for (int sp = 0; sp < c.base.nEdges(); ++sp) {
            std::vector<int> want;
            std::set_intersection(c.base.edge(s).begin(), c.base.edge(s).end(),
                                  c.base.edge(sp).begin(), c.base.edge(sp).end(),
                                  std::back_inserter(want));
            bool found = false;
            for (int j = 0; j < c.cover.nEdges() && !found; ++j) {
                if (imageEdge[j] != sp) continue;
                std::vector<int> inter;
                std::set_intersection(c.cover.edge(i).begin(), c.cover.edge(i).end(),
                                      c.cover.edge(j).begin(), c.cover.edge(j).end(),
                                      std::back_inserter(inter));
                std::vector<int> img;
                for (int v : inter) img.push_back(c.vertexMap[v]);
                std::sort(img.begin(), img.end());
                if (img == want) found = true;
            }
            if (!found)
                r.add("back-property", "cover hyperedge " + std::to_string(i) +
                                           " base hyperedge " + std::to_string(sp));
        }
    }
    return r;
}

namespace {

std::vector<int> coverImageEdges(const CoveringCert& c) {
    std::vector<int> imageEdge(c.cover.nEdges(), -1);
    for (int i = 0; i < c.cover.nEdges(); ++i) {
        std::vector<int> img;
        for (int v : c.cover.edge(i)) img.push_back(c.vertexMap[v]);
        std::sort(img.begin(), img.end());
        imageEdge[i] = c.base.findEdge(img);
    }
    return imageEdge;
}

}  // namespace

Report verify_strict(const CoveringCert& c, std::size_t maxMaps) {
    Report r = verify_covering(c);
    if (!r.ok()) return r;
    auto imageEdge = coverImageEdges(c);
    IGraphOfResult ha = igraph_of(c.base);
    const IncidencePattern& I = ha.graph.pattern();
    // reusable closures per source site
    std::vector<std::optional<WordMapClosure>> closures(I.nSites());
    for (int i = 0; i < c.cover.nEdges(); ++i) {
        for (int j = 0; j < c.cover.nEdges(); ++j) {
            if (i == j) continue;
            std::vector<int> inter;
            std::set_intersection(c.cover.edge(i).begin(), c.cover.edge(i).end(),
                                  c.cover.edge(j).begin(), c.cover.edge(j).end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            int s = imageEdge[i], t = imageEdge[j];
            int sSite = I.siteIndex("h" + std::to_string(s));
            int tSite = I.siteIndex("h" + std::to_string(t));
            // desired map in H(base): a@s -> a@t for a in the projected
            // intersection
            PartialMap want;
            want.srcSite = sSite;
            want.tgtSite = tSite;
            want.img.assign(ha.graph.fibre(sSite).size(), -1);
            for (int v : inter) {
                int b = c.vertexMap[v];
                int sv = ha.graph.vertexIndex(c.base.vertexName(b) + "@h" +
                                              std::to_string(s));
                int tv = ha.graph.vertexIndex(c.base.vertexName(b) + "@h" +
                                              std::to_string(t));
                want.img[ha.graph.fibrePos(sv)] = ha.graph.fibrePos(tv);
            }
            if (!closures[sSite]) closures[sSite].emplace(ha.graph, sSite, maxMaps);
            if (!closures[sSite]->find(want))
                r.add("strictness",
                      "intersection of cover hyperedges " + std::to_string(i) +
                          "," + std::to_string(j) + " not induced by any path word");
        }
    }
    return r;
}

Report verify_realisation(const RealisationCert& r, std::size_t maxMaps) {
    Report rep;
    const IGraph& h = r.spec;
    const IncidencePattern& I = h.pattern();
    int m = r.real.nEdges();
    if ((int)r.edgeSite.size() != m || (int)r.edgeProj.size() != m) {
        rep.add("shape", "certificate arrays do not match hyperedge count");
        return rep;
    }
    // projections are bijections onto their site fibres
    for (int i = 0; i < m; ++i) {
        int s = r.edgeSite[i];
        if (s < 0 || s >= I.nSites()) {
            rep.add("site-range", "hyperedge " + std::to_string(i));
            return rep;
        }
        const auto& members = r.real.edge(i);
        if (r.edgeProj[i].size() != members.size() ||
            members.size() != h.fibre(s).size()) {
            rep.add("projection-bijection",
                    "hyperedge " + std::to_string(i) + " vs fibre " + I.site(s));
            continue;
        }
        std::vector<char> hit(h.fibre(s).size(), 0);
        for (std::size_t k = 0; k < members.size(); ++k) {
            int sv = r.edgeProj[i][k];
            if (sv < 0 || sv >= h.nVertices() || h.sortOf(sv) != s) {
                rep.add("projection-range", "hyperedge " + std::to_string(i));
                break;
            }
            if (hit[h.fibrePos(sv)]) {
                rep.add("projection-injective", "hyperedge " + std::to_string(i));
                break;
            }
            hit[h.fibrePos(sv)] = 1;
        }
    }
    if (!rep.ok()) return rep;

    // composite partial map pi_j . pi_i^-1 : V_{s_i} -> V_{s_j}
    auto composite = [&](int i, int j) {
        PartialMap m2;
        m2.srcSite = r.edgeSite[i];
        m2.tgtSite = r.edgeSite[j];
        m2.img.assign(h.fibre(m2.srcSite).size(), -1);
        // vertex -> position within hyperedge j
        std::unordered_map<int, int> posJ;
        for (std::size_t k = 0; k < r.real.edge(j).size(); ++k)
            posJ[r.real.edge(j)[k]] = (int)k;
        for (std::size_t k = 0; k < r.real.edge(i).size(); ++k) {
            auto it = posJ.find(r.real.edge(i)[k]);
            if (it == posJ.end()) continue;
            m2.img[h.fibrePos(r.edgeProj[i][k])] =
                h.fibrePos(r.edgeProj[j][it->second]);
        }
        return m2;
    };

    // condition (i)
    for (int i = 0; i < m; ++i) {
        int s = r.edgeSite[i];
        for (int e : I.edgesFrom(s)) {
            bool found = false;
            for (int j = 0; j < m && !found; ++j) {
                if (r.edgeSite[j] != I.tgt(e)) continue;
                PartialMap comp = composite(i, j);
                PartialMap rho;
                rho.srcSite = s;
                rho.tgtSite = I.tgt(e);
                rho.img = h.edgeAction(e);
                if (comp == rho) found = true;
            }
            if (!found)
                rep.add("overlap-missing", "hyperedge " + std::to_string(i) +
                                               " edge " + I.edgeId(e));
        }
    }
    // condition (ii)
    std::vector<std::optional<WordMapClosure>> closures(I.nSites());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            std::vector<int> inter;
            std::set_intersection(r.real.edge(i).begin(), r.real.edge(i).end(),
                                  r.real.edge(j).begin(), r.real.edge(j).end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            PartialMap comp = composite(i, j);
            int s = r.edgeSite[i];
            if (!closures[s]) closures[s].emplace(h, s, maxMaps);
            if (!closures[s]->find(comp))
                rep.add("intersection-not-specified",
                        "hyperedges " + std::to_string(i) + "," + std::to_string(j));
        }
    return rep;
}

RealisationCert realisation_from_covering(const RealisationCert& r,
                                          const CoveringCert& c) {
    Report rr = verify_realisation(r);
    if (!rr.ok())
        throw ValidationError("realisation_from_covering: realisation invalid: " +
                              rr.summary());
    if (!(c.base == r.real))
        throw ValidationError("realisation_from_covering: covering base differs "
                              "from the realisation");
    Report rc = verify_strict(c);
    if (!rc.ok())
        throw ValidationError("realisation_from_covering: covering not strict: " +
                              rc.summary());
    auto imageEdge = coverImageEdges(c);
    RealisationCert out;
    out.spec = r.spec;
    out.real = c.cover;
    out.edgeSite.resize(c.cover.nEdges());
    out.edgeProj.resize(c.cover.nEdges());
    for (int i = 0; i < c.cover.nEdges(); ++i) {
        int under = imageEdge[i];
        out.edgeSite[i] = r.edgeSite[under];
        // position of base vertex in the under-edge
        std::unordered_map<int, int> pos;
        for (std::size_t k = 0; k < r.real.edge(under).size(); ++k)
            pos[r.real.edge(under)[k]] = (int)k;
        for (int v : c.cover.edge(i))
            out.edgeProj[i].push_back(r.edgeProj[under][pos.at(c.vertexMap[v])]);
    }
    return out;
}

CoveringCert covering_from_realisation(const Hypergraph& a, const IGraphOfResult& ha,
                                       const RealisationCert& r) {
    CoveringCert c;
    c.cover = r.real;
    c.base = a;
    c.vertexMap.assign(r.real.nVertices(), -1);
    for (int i = 0; i < r.real.nEdges(); ++i) {
        for (std::size_t k = 0; k < r.real.edge(i).size(); ++k) {
            int v = r.real.edge(i)[k];
            int specVertex = r.edgeProj[i][k];
            int baseV = ha.baseVertex[specVertex];
            if (c.vertexMap[v] >= 0 && c.vertexMap[v] != baseV)
                throw ValidationError(
                    "covering_from_realisation: projections disagree at " +
                    r.real.vertexName(v));
            c.vertexMap[v] = baseV;
        }
    }
    for (int v = 0; v < r.real.nVertices(); ++v)
        if (c.vertexMap[v] < 0)
            throw ValidationError("covering_from_realisation: vertex " +
                                  r.real.vertexName(v) + " lies in no hyperedge");
    return c;
}

}  // namespace grpd
