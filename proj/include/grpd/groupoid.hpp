#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/igraph.hpp"
#include "grpd/util.hpp"

namespace grpd {

/// I-groupoid realised concretely: every element is the composite action
/// rho_w of some path word on a designated complete I-graph (the carrier).
/// During the closure elements are hash-consed by their full action table;
/// afterwards only the right Cayley structure, generating words and
/// inverses are retained, and tables are recomputed on demand.
///
/// Sorts: an element g in G_{st} maps the carrier fibre of s onto the
/// fibre of t. Its colour as a Cayley-graph vertex is t.
class Groupoid {
public:
    struct Elem {
        int srcSort, tgtSort;
        int parent;   // element this was first reached from (-1 for identities)
        int viaEdge;  // generator edge used (-1 for identities)
    };

    const IncidencePattern& pattern() const { return pattern_; }
    const IGraph& carrier() const { return carrier_; }
    int size() const { return (int)elems_.size(); }
    const Elem& elem(int g) const { return elems_[g]; }
    const std::string& name(int g) const { return names_[g]; }
    int srcSort(int g) const { return elems_[g].srcSort; }
    int tgtSort(int g) const { return elems_[g].tgtSort; }
    bool isIdentity(int g) const { return elems_[g].parent == -1; }
    int identity(int site) const { return identityAt_[site]; }
    int generator(int edge) const { return generatorOf_[edge]; }

    /// Right multiplication by the generator of `edge`; -1 on sort mismatch.
    int rightMul(int g, int edge) const {
        return pattern_.src(edge) == elems_[g].tgtSort ? rightMul_[g][edge] : -1;
    }
    int inverse(int g) const { return inverseOf_[g]; }

    /// Groupoid product; requires tgtSort(a) == srcSort(b).
    int product(int a, int b) const;

    /// Generating word of g (a path from srcSort(g) to tgtSort(g)).
    PathWord wordOf(int g) const;

    /// Action table of g on the carrier, recomputed from its word:
    /// fibre positions of srcSort -> fibre positions of tgtSort.
    std::vector<std::int32_t> actionTable(int g) const;

    /// Value of a path word in the groupoid.
    int evalWord(const PathWord& w) const;

    /// Elements listed by target sort (Cayley colour).
    const std::vector<int>& elementsByTgtSort(int site) const {
        return byTgtSort_[site];
    }

    friend Groupoid cym(const IGraph& h, const Budget& budget);

private:
    IncidencePattern pattern_;
    IGraph carrier_;
    std::vector<Elem> elems_;
    std::vector<std::string> names_;
    std::vector<int> identityAt_;
    std::vector<int> generatorOf_;
    std::vector<std::vector<std::int32_t>> rightMul_;
    std::vector<int> inverseOf_;
    std::vector<std::vector<int>> byTgtSort_;
};

/// The groupoid abstracted from an I-graph: all distinct composite
/// bijections rho_w on the completion, under composition. Incomplete
/// inputs are completed first.
Groupoid cym(const IGraph& h, const Budget& budget = {});

/// The Cayley graph: vertices are the elements (colour = target sort),
/// R_e is right multiplication by the generator of e. Always complete.
IGraph cayley_graph(const Groupoid& g);

/// Sorted element ids of the sub-groupoid generated by the pairs in
/// `alphaPairs` (a Bits over pattern pair indices): all identities plus
/// everything reachable by right multiplication with alpha generators.
std::vector<int> subgroupoid_elements(const Groupoid& g, const Bits& alphaPairs);

/// Memoising wrapper around subgroupoid_elements with O(1) membership.
class SubgroupoidIndex {
public:
    explicit SubgroupoidIndex(const Groupoid& g) : g_(g) {}
    struct Set {
        std::vector<int> list;
        std::vector<char> member;
        bool contains(int e) const { return member[e] != 0; }
    };
    const Set& get(const Bits& alphaPairs);

private:
    const Groupoid& g_;
    std::unordered_map<Bits, Set, BitsHash> cache_;
};

/// The restriction G_alpha as a groupoid in its own right, over the
/// reduced pattern I_alpha: cym of the alpha-reduct of the Cayley graph.
Groupoid subgroupoid(const Groupoid& g, const Bits& alphaPairs, const Budget& budget = {});

/// Coset gG_alpha: the alpha-connected component of `base` in the Cayley
/// graph, i.e. closure under right multiplication by alpha generators.
struct Coset {
    int base;
    Bits alphaPairs;
    std::vector<int> members;  // sorted element ids
};
Coset coset(const Groupoid& g, int base, const Bits& alphaPairs);

/// Compatibility of G with an I-graph H: every cyclic word that denotes
/// an identity in G acts as a restriction of the identity in cym(H).
/// Decided by the joint closure of Cayley(G) with the completion of H
/// (implemented as a product-automaton reachability check whose states
/// are the pairs (w^G, rho_w)); a conflict yields a witness word w with
/// w^G = 1 but rho_w != id.
struct CompatResult {
    bool compatible = true;
    PathWord witnessWord;
};
CompatResult is_compatible(const Groupoid& g, const IGraph& h, const Budget& budget = {});

/// Generator-respecting isomorphism test: the pairing w^A |-> w^B is
/// well-defined and bijective (product-automaton reachability).
bool groupoids_isomorphic(const Groupoid& a, const Groupoid& b);

/// Coset cycle witness: elements g_i with generator sets alpha_i such
/// that h_i = g_i^-1 g_{i+1} lies in G_{alpha_i} and adjacent double
/// cosets are disjoint.
struct CosetCycle {
    std::vector<int> elems;    // g_i
    std::vector<Bits> alphas;  // pair subsets
};

/// Independent re-check of the two coset-cycle conditions.
Report verify_coset_cycle(const Groupoid& g, const CosetCycle& c);

/// Exhaustive search for coset cycles of length 2..maxLen. The search
/// normalises g_0 = 1_s (left translation) and tries, for each connector
/// h_i, only its minimal generator supports: shrinking any alpha_i
/// preserves both cycle conditions, so this is sound and complete.
///
/// status: Certified means the search ran to completion and found
/// nothing (the groupoid is maxLen-acyclic); Budget means the node cap
/// was hit and nothing is claimed.
struct CycleSearchResult {
    enum class Status { Certified, FoundCycles, Budget };
    Status status = Status::Certified;
    std::vector<CosetCycle> cycles;
    std::size_t nodesVisited = 0;
    bool empty() const { return status == Status::Certified; }
};
CycleSearchResult find_coset_cycles(const Groupoid& g, int maxLen,
                                    const Budget& budget = {},
                                    std::size_t maxWitnesses = 1);

/// Minimal generator supports per element (antichain of pair subsets).
std::vector<std::vector<Bits>> minimal_supports(const Groupoid& g);

/// The incidence pattern of the Cayley graph: one site per element, one
/// edge per (element, applicable generator), together with the covering
/// onto the base pattern (site g --> tgtSort(g), edge (g,e) --> e).
/// Edge ids are "<element>|<edge>".
struct CayleyPatternResult {
    IncidencePattern pattern;
    PatternCovering covering;
    std::vector<int> siteElem;                  // pattern site -> element id
    std::vector<std::vector<int>> liftedEdge;   // [element][base edge] -> pattern edge
};
CayleyPatternResult cayley_incidence_pattern(const Groupoid& g);

}  // namespace grpd
