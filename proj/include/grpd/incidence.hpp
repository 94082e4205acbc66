#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "grpd/util.hpp"

namespace grpd {

/// Incidence pattern I = (S, E): a finite directed multigraph with an
/// involutive, fixpoint-free edge reversal. Sites and edges are opaque
/// string identifiers; all iteration orders are lexicographic in the ids.
///
/// Loops keep e != e^-1: both orientations of a loop are distinct edges.
class IncidencePattern {
public:
    IncidencePattern() = default;

    /// Edges given as (id, src, tgt, rev) tuples over site ids.
    /// Ill-formed references (unknown site/edge ids, duplicates) throw;
    /// the semantic invariants are checked by validate() instead so that
    /// broken patterns can be loaded and diagnosed.
    struct EdgeSpec {
        std::string id, src, tgt, rev;
    };
    IncidencePattern(std::vector<std::string> sites, std::vector<EdgeSpec> edges);

    int nSites() const { return (int)sites_.size(); }
    int nEdges() const { return (int)edgeIds_.size(); }
    const std::string& site(int s) const { return sites_[s]; }
    const std::string& edgeId(int e) const { return edgeIds_[e]; }
    int src(int e) const { return src_[e]; }
    int tgt(int e) const { return tgt_[e]; }
    int rev(int e) const { return rev_[e]; }
    const std::vector<std::string>& sites() const { return sites_; }
    const std::vector<std::string>& edgeIds() const { return edgeIds_; }

    int siteIndex(const std::string& id) const;  // -1 if absent
    int edgeIndex(const std::string& id) const;  // -1 if absent

    /// Edges leaving site s, sorted by edge index.
    const std::vector<int>& edgesFrom(int s) const { return outEdges_[s]; }

    /// Canonical pairing {e, e^-1}: pairIndex maps both orientations to one
    /// pair id; pairRep is the lexicographically smaller orientation.
    int nPairs() const { return (int)pairRep_.size(); }
    int pairIndex(int e) const { return pairIndex_[e]; }
    int pairRep(int p) const { return pairRep_[p]; }

    /// Edge set of a pair subset, as a Bits over edge indices.
    Bits edgesOfPairs(const Bits& pairs) const;

    /// Connected components of the reduct to the given edge set:
    /// component id per site, -1 never (isolated sites get their own).
    std::vector<int> siteComponents(const Bits& edgeSet) const;
    std::vector<int> siteComponents() const;

    bool operator==(const IncidencePattern& o) const {
        return sites_ == o.sites_ && edgeIds_ == o.edgeIds_ && src_ == o.src_ &&
               tgt_ == o.tgt_ && rev_ == o.rev_;
    }

private:
    std::vector<std::string> sites_;    // sorted
    std::vector<std::string> edgeIds_;  // sorted
    std::vector<int> src_, tgt_, rev_;
    std::vector<std::vector<int>> outEdges_;
    std::vector<int> pairIndex_, pairRep_;
    std::unordered_map<std::string, int> siteIdx_, edgeIdx_;
};

/// Checks the incidence pattern invariants: rev is a fixpoint-free
/// involution and swaps endpoints. Lists every violation with witnesses.
Report validate_pattern(const IncidencePattern& p);

/// Automorphism of the two-sorted view of a pattern: a site bijection
/// plus an edge bijection that preserves typing and commutes with rev.
struct PatternSymmetry {
    std::vector<int> siteMap;  // size nSites
    std::vector<int> edgeMap;  // size nEdges
};

Report verify_pattern_symmetry(const IncidencePattern& p, const PatternSymmetry& sym);

/// Exhaustive, deterministic enumeration of all pattern symmetries.
/// Refuses (SizeGuardError) when nSites exceeds the cap.
std::vector<PatternSymmetry> symmetries_of_pattern(const IncidencePattern& p,
                                                   int maxSites = 8);

PatternSymmetry identity_symmetry(const IncidencePattern& p);
PatternSymmetry compose(const IncidencePattern& p, const PatternSymmetry& f,
                        const PatternSymmetry& g);  // g after f
PatternSymmetry inverse(const IncidencePattern& p, const PatternSymmetry& f);

/// Surjective pattern homomorphism with the back-property.
struct PatternCovering {
    IncidencePattern source;  // covering pattern
    IncidencePattern target;  // base pattern
    std::vector<int> siteProj;  // source site -> target site
    std::vector<int> edgeProj;  // source edge -> target edge
};

/// Homomorphism + surjectivity + back-property, with witnesses.
Report verify_pattern_covering(const PatternCovering& c);

}  // namespace grpd
