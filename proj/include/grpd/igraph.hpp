#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/incidence.hpp"
#include "grpd/util.hpp"

namespace grpd {

/// Injective partial function between two sort fibres, indexed by fibre
/// position (-1 = undefined).
struct PartialMap {
    int srcSite = -1;
    int tgtSite = -1;
    std::vector<std::int32_t> img;  // size |V_src|, values are positions in V_tgt

    bool defined(int pos) const { return img[pos] >= 0; }
    bool isEmpty() const {
        for (auto v : img) if (v >= 0) return false;
        return true;
    }
    bool operator==(const PartialMap& o) const {
        return srcSite == o.srcSite && tgtSite == o.tgtSite && img == o.img;
    }
};

/// Site-anchored edge word: the labelling of a directed path in the
/// pattern. Empty words carry their anchor site.
struct PathWord {
    int anchorSite = -1;          // source site (also target for empty words)
    std::vector<int> edges;       // consecutive edges compose in the pattern

    static PathWord empty(int site) { return PathWord{site, {}}; }
};

/// Checks that w is a path in p; returns the target site.
int word_target(const IncidencePattern& p, const PathWord& w);
PathWord word_inverse(const IncidencePattern& p, const PathWord& w);
std::string word_to_string(const IncidencePattern& p, const PathWord& w);

/// I-graph: a sorted vertex set with one partial bijection per pattern
/// edge, compatible with edge reversal. The overlap specification.
///
/// Vertices are opaque strings, ordered lexicographically; edge actions
/// are stored per edge as fibre-position maps.
class IGraph {
public:
    IGraph() = default;

    /// vertices: (id, site id); edges: per edge id a list of (v, v') pairs.
    /// Construction validates all type invariants (partition, partial
    /// bijections, R_{e^-1} = R_e^-1) and throws ValidationError.
    IGraph(IncidencePattern pattern,
           std::vector<std::pair<std::string, std::string>> vertices,
           std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> edges);

    const IncidencePattern& pattern() const { return pattern_; }
    int nVertices() const { return (int)names_.size(); }
    const std::string& vertexName(int v) const { return names_[v]; }
    int vertexIndex(const std::string& name) const;  // -1 if absent
    int sortOf(int v) const { return sort_[v]; }
    int fibrePos(int v) const { return fibrePos_[v]; }
    const std::vector<int>& fibre(int site) const { return fibre_[site]; }

    /// rho_e on a vertex index; -1 when undefined.
    int apply(int edge, int v) const;
    /// rho_e as a fibre-position map.
    const std::vector<std::int32_t>& edgeAction(int edge) const { return act_[edge]; }
    /// Number of defined entries of rho_e.
    int edgeSize(int edge) const;

    /// Neighbours of v (undirected over all edge colours), for
    /// connectivity computations.
    std::vector<int> componentOf(int v, const Bits& edgeSet) const;

    bool operator==(const IGraph& o) const {
        return pattern_ == o.pattern_ && names_ == o.names_ && sort_ == o.sort_ &&
               act_ == o.act_;
    }

    /// Low-level constructor from indexed data; validates.
    static IGraph fromIndexed(IncidencePattern pattern, std::vector<std::string> names,
                              std::vector<int> sorts,
                              std::vector<std::vector<std::pair<int, int>>> edgePairs);

    /// All edge relations as (v, v') index pairs, sorted.
    std::vector<std::pair<int, int>> edgePairs(int edge) const;

private:
    IncidencePattern pattern_;
    std::vector<std::string> names_;   // sorted lexicographically
    std::vector<int> sort_;            // per vertex
    std::vector<int> fibrePos_;        // position of v inside fibre_[sort_[v]]
    std::vector<std::vector<int>> fibre_;
    std::vector<std::vector<std::int32_t>> act_;  // per edge, fibre-pos map
    std::unordered_map<std::string, int> index_;

    void finishConstruction(std::vector<std::vector<std::pair<int, int>>> edgePairs);
};

/// rho_w: relational composition of the edge actions along w.
/// The empty word evaluates to the identity on its anchor fibre.
PartialMap eval_word(const IGraph& h, const PathWord& w);

PartialMap compose(const IGraph& h, const PartialMap& a, const PartialMap& b);
PartialMap invert(const IGraph& h, const PartialMap& m);
PartialMap identity_map(const IGraph& h, int site);

/// Coherence: every cyclic composition rho_w (w from s back to s) is a
/// restriction of the identity. Decided by a fixpoint over reachable
/// partial maps. On failure the witness word and vertex are reported.
struct CoherenceResult {
    bool coherent = true;
    PathWord witnessWord;       // meaningful when !coherent
    std::string witnessVertex;  // vertex moved by the witness word
};
CoherenceResult is_coherent(const IGraph& h, std::size_t maxMaps = 2000000);

/// Completeness: every rho_e total and surjective between its fibres.
struct CompletenessResult {
    bool complete = true;
    std::string witness;  // first offending edge/vertex
};
CompletenessResult is_complete(const IGraph& h);

/// Canonical completion inside the product with the pattern: vertices are
/// "v@s" pairs; non-loop edges are lifted by symmetrisation plus diagonal
/// padding, loop edges by wrapping each maximal e-path into a cycle
/// (existing e-cycles are left as they are). The result is the union of
/// the connected components meeting the diagonal copy of the input.
IGraph complete_igraph(const IGraph& h);

/// Reduct to the edges in alpha (must be closed under rev).
/// keepPattern=false (default) restricts the pattern to I_alpha as well;
/// keepPattern=true keeps the full pattern with empty relations outside
/// alpha, which is the view used when completing reducts.
IGraph reduct(const IGraph& h, const Bits& alphaEdges, bool keepPattern = false);

/// rho_st: the union of all rho_w for words from s to t. Requires
/// coherence, which makes the union a well-defined partial bijection.
PartialMap coherent_overlap(const IGraph& h, int s, int t);

/// Isomorphism of I-graphs over the identity pattern symmetry.
/// Works by pointed propagation per connected component; intended for
/// complete components but correct generally (falls back to backtracking
/// over anchor choices within a component).
bool igraphs_isomorphic(const IGraph& a, const IGraph& b);

/// Disjoint union; vertex names are prefixed to stay unique.
IGraph disjoint_union(const IGraph& a, const IGraph& b, const std::string& prefixA,
                      const std::string& prefixB);

/// Split into connected components (over all edge colours).
std::vector<IGraph> connected_components(const IGraph& h);

/// The pattern itself as a (trivially complete) I-graph: one vertex per
/// site, R_e the singleton {(src e, tgt e)}.
IGraph pattern_as_igraph(const IncidencePattern& p);

}  // namespace grpd
