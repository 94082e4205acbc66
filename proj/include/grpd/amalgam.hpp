#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

/// One constituent of an amalgamation chain: the coset of `gElem` under
/// the sub-groupoid generated by `alphaPairs`, glued to the next
/// constituent at gElem * hConnector (hConnector = -1 on the last link).
struct ChainLink {
    Bits alphaPairs;
    int gElem;
    int hConnector;
    int site;  // colour of gElem (target sort)
};

struct ChainSpec {
    std::vector<ChainLink> links;
    std::size_t length() const { return links.size(); }
};

/// The coset gG_alpha as an abstract I-graph over the full pattern
/// (edges outside alpha empty). Vertex names are the element names.
IGraph coset_igraph(const Groupoid& g, int base, const Bits& alphaPairs);

/// Amalgam of two pointed I-graphs along the unique colour-respecting
/// isomorphism of the commonEdges-components of their reference vertices
/// that matches v1 to v2; everything else stays disjoint. Vertex names
/// must not collide outside the glued region.
/// map1/map2 give the embeddings of the inputs into the result.
struct AmalgamResult {
    IGraph graph;
    std::vector<int> map1, map2;
};
AmalgamResult amalgamate_pair(const IGraph& c1, int v1, const IGraph& c2, int v2,
                              const Bits& commonEdges);

/// Checks the chain conditions against g: membership of the references
/// and connectors in their sub-groupoids, matching sites, and the
/// non-interference of adjacent gluing cosets at every inner constituent.
Report validate_chain(const Groupoid& g, const ChainSpec& spec);

/// Connected I-graph formed by successive pairwise amalgams of the
/// constituent cosets. Rejects specs violating the chain conditions.
IGraph build_chain(const Groupoid& g, const ChainSpec& spec);

struct BoosterConfig {
    int chainLenLimit = -1;  // default: the target N
    int maxStages = -1;      // default: number of generator pairs
    Budget budget;
    bool deltaOnly = true;   // skip chains provably inherited from earlier stages
    bool earlyExit = true;   // stop once the independent cycle search certifies
    std::size_t maxWitnesses = 1;
};

struct StageReport {
    int stage = 0;
    std::size_t chains = 0;
    std::size_t carrierVertices = 0;
    std::size_t poolComponents = 0;
    int elements = 0;
    bool claimChecked = false;  // sub-groupoid preservation below threshold
    bool claimHolds = false;
    std::string note;
};

/// One induction stage: G* = cym(Cayley(G) + all amalgamation chains of
/// sub-groupoids generated by subsets of up to k pairs, with chain length
/// up to maxLen). Chains are enumerated canonically (references fixed at
/// identities, connectors up to gluing cosets, comparable neighbours
/// collapsed) and the completed carrier components are deduplicated up to
/// isomorphism, which leaves cym unchanged.
/// The stage hypothesis is trivial at k = 1; for k > 1 the caller asserts
/// it via hypothesisCertified (stages run in increasing order).
Groupoid booster_step(const Groupoid& g, int k, int maxLen, const BoosterConfig& cfg,
                      StageReport* report, bool hypothesisCertified);

struct BoostResult {
    Groupoid groupoid;
    bool certified = false;         // independent cycle search found nothing
    bool cycleSearchComplete = false;
    int stagesRun = 0;
    std::vector<StageReport> stages;
    std::vector<CosetCycle> cyclesFound;
    std::string failure;            // nonempty when not certified
    bool seedCompatible = false;    // is_compatible against the seed, when given
};

/// Finite N-acyclic I-groupoid construction: start from cym(seed) (or the
/// pattern as its own I-graph) and run booster stages for k = 1, 2, ...,
/// certifying with the independent coset-cycle search. Budgets fail
/// loudly; a partial result is returned flagged not-certified.
BoostResult make_n_acyclic(const IncidencePattern& pattern, int n,
                           const IGraph* seed = nullptr, BoosterConfig cfg = {},
                           const std::function<void(const StageReport&)>& onStage = {});

}  // namespace grpd
