#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "grpd/igraph.hpp"

namespace grpd {

/// Closure of all composite maps rho_w for path words w starting at a
/// fixed source site, with parent links for witness-word reconstruction.
/// The monoid of composites is finite, so the fixpoint terminates; a cap
/// guards against degenerate blowups.
class WordMapClosure {
public:
    WordMapClosure(const IGraph& h, int srcSite, std::size_t maxMaps);

    const IGraph& graph() const { return h_; }
    int srcSite() const { return src_; }
    std::size_t size() const { return maps_.size(); }
    const PartialMap& map(std::size_t i) const { return maps_[i]; }
    PathWord wordOf(std::size_t i) const;

    /// Index of a map equal to m, if reachable.
    std::optional<std::size_t> find(const PartialMap& m) const;

private:
    const IGraph& h_;
    int src_;
    std::vector<PartialMap> maps_;
    std::vector<int> parent_, viaEdge_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;

    std::uint64_t keyOf(const PartialMap& m) const;
    bool push(PartialMap m, int parent, int viaEdge, std::size_t maxMaps);
};

}  // namespace grpd
