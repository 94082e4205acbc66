#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/igraph.hpp"
#include "grpd/incidence.hpp"
#include "grpd/util.hpp"

namespace grpd {

/// Finite hypergraph (A, S). Vertices are opaque strings; hyperedges are
/// stored as sorted vertex-index lists with set semantics (duplicates
/// collapse). Hyperedges are addressed by index in their sorted order.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::vector<std::string> vertices,
               std::vector<std::vector<std::string>> hyperedges);

    int nVertices() const { return (int)names_.size(); }
    int nEdges() const { return (int)edges_.size(); }
    const std::string& vertexName(int v) const { return names_[v]; }
    int vertexIndex(const std::string& name) const;
    const std::vector<int>& edge(int i) const { return edges_[i]; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    /// Edge indices containing v.
    const std::vector<int>& edgesOf(int v) const { return vertexEdges_[v]; }
    bool edgeContains(int e, int v) const;
    /// Index of the hyperedge equal to the given sorted vertex set, or -1.
    int findEdge(const std::vector<int>& sortedVerts) const;

    bool operator==(const Hypergraph& o) const {
        return names_ == o.names_ && edges_ == o.edges_;
    }

private:
    std::vector<std::string> names_;  // sorted
    std::vector<std::vector<int>> edges_;  // each sorted; family sorted, deduped
    std::vector<std::vector<int>> vertexEdges_;
    std::unordered_map<std::string, int> index_;
};

/// Simple undirected Gaifman graph as an adjacency matrix.
struct SimpleGraph {
    int n = 0;
    std::vector<char> adj;  // n*n symmetric, no loops
    bool has(int a, int b) const { return adj[(std::size_t)a * n + b] != 0; }
};

SimpleGraph gaifman(const Hypergraph& a);

/// Intersection graph of the hyperedges as an incidence pattern: one site
/// per hyperedge, one edge pair per intersecting distinct pair, loop-free.
/// Edge ids are "i>j" for hyperedge indices i, j.
IncidencePattern intersection_pattern(const Hypergraph& a);

/// The I-graph representation H(A) over intersection_pattern(a):
/// disjoint union of the hyperedges with overlap identifications.
/// Vertex names are "a@h<i>"; baseVertex/baseEdge decode them.
struct IGraphOfResult {
    IGraph graph;
    std::vector<int> baseVertex;  // per igraph vertex: hypergraph vertex index
    std::vector<int> baseEdge;    // per igraph vertex: hyperedge index (= sort)
};
IGraphOfResult igraph_of(const Hypergraph& a);

/// N-conformality and N-chordality of the Gaifman graph, with witnesses.
/// N >= 2 accepted (2-conformality: every Gaifman edge lies in a
/// hyperedge; 2-chordality is vacuous).
struct AcyclicityReport {
    int n = 0;
    bool nConformal = true;
    bool nChordal = true;
    std::vector<std::string> cliqueWitness;  // uncovered clique, if any
    std::vector<std::string> cycleWitness;   // chordless cycle, if any
    bool acyclic() const { return nConformal && nChordal; }
};
AcyclicityReport check_acyclicity(const Hypergraph& a, int n);

/// Tree decomposition as an enumeration (s_l, n(l)) with
/// s_l ∩ (s_0 ∪ ... ∪ s_{l-1}) ⊆ s_{n(l)}, found by GYO-style reduction
/// (ear vertices and contained hyperedges removed until fixpoint).
/// The certificate is re-verified before returning; nullopt if none exists.
struct TreeDecomposition {
    std::vector<int> order;   // hyperedge indices, root first
    std::vector<int> parent;  // parent[l] = position index n(l) < l; parent[0] = -1
};
std::optional<TreeDecomposition> tree_decomposition(const Hypergraph& a);

/// Convenience: full acyclicity via GYO (agrees with chordal+conformal).
bool is_acyclic(const Hypergraph& a);

/// Hypergraph covering certificate: vertexMap restricts to a bijection of
/// every cover hyperedge onto a base hyperedge and has the back-property.
struct CoveringCert {
    Hypergraph cover;
    Hypergraph base;
    std::vector<int> vertexMap;  // cover vertex -> base vertex
};

Report verify_covering(const CoveringCert& c);

/// Strictness (on top of verify_covering): every nonempty intersection of
/// cover hyperedges is the domain of some rho_w in H(base).
Report verify_strict(const CoveringCert& c, std::size_t maxMaps = 2000000);

/// Realisation certificate: a hypergraph realising the overlap pattern
/// specified by an I-graph. Per cover hyperedge: its base site and a
/// bijection onto that site's fibre.
struct RealisationCert {
    IGraph spec;       // the overlap specification H
    Hypergraph real;   // the realisation
    std::vector<int> edgeSite;                 // per hyperedge: site index
    std::vector<std::vector<int>> edgeProj;    // per hyperedge: member vertex -> spec vertex
                                               //   (parallel to real.edge(i))
};

/// Conditions (i) every specified overlap rho_e realised at every cover
/// hyperedge, and (ii) every nonempty intersection induced by some rho_w.
Report verify_realisation(const RealisationCert& r, std::size_t maxMaps = 2000000);

/// Transport of a realisation along a strict covering of it (projections
/// compose). Preconditions re-checked.
RealisationCert realisation_from_covering(const RealisationCert& r, const CoveringCert& c);

/// A realisation of H(a) is a (strict) covering of a: build the covering
/// certificate by composing the realisation projections with the
/// H(a) base decode.
CoveringCert covering_from_realisation(const Hypergraph& a, const IGraphOfResult& ha,
                                       const RealisationCert& r);

}  // namespace grpd
