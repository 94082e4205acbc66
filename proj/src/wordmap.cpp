#include "grpd/wordmap.hpp"

#include <algorithm>

#include "grpd/errors.hpp"

namespace grpd {

std::uint64_t WordMapClosure::keyOf(const PartialMap& m) const {
    return hashInts(m.img, (std::uint64_t)m.tgtSite * 0x100000001b3ULL);
}

bool WordMapClosure::push(PartialMap m, int parent, int viaEdge, std::size_t maxMaps) {
    auto& bucket = buckets_[keyOf(m)];
    for (int i : bucket)
        if (maps_[i] == m) return false;
    if (maps_.size() >= maxMaps)
        throw BudgetError("partial-map closure", std::to_string(maxMaps) + " maps");
    bucket.push_back((int)maps_.size());
    maps_.push_back(std::move(m));
    parent_.push_back(parent);
    viaEdge_.push_back(viaEdge);
    return true;
}

WordMapClosure::WordMapClosure(const IGraph& h, int srcSite, std::size_t maxMaps)
    : h_(h), src_(srcSite) {
    push(identity_map(h, srcSite), -1, -1, maxMaps);
    for (std::size_t head = 0; head < maps_.size(); ++head) {
        PartialMap cur = maps_[head];  // copy: maps_ may grow
        for (int e : h.pattern().edgesFrom(cur.tgtSite)) {
            PartialMap step;
            step.srcSite = h.pattern().src(e);
            step.tgtSite = h.pattern().tgt(e);
            step.img = h.edgeAction(e);
            push(compose(h, cur, step), (int)head, e, maxMaps);
        }
    }
}

PathWord WordMapClosure::wordOf(std::size_t i) const {
    std::vector<int> edges;
    int idx = (int)i;
    while (parent_[idx] >= 0) {
        edges.push_back(viaEdge_[idx]);
        idx = parent_[idx];
    }
    std::reverse(edges.begin(), edges.end());
    return PathWord{src_, edges};
}

std::optional<std::size_t> WordMapClosure::find(const PartialMap& m) const {
    auto it = buckets_.find(keyOf(m));
    if (it == buckets_.end()) return std::nullopt;
    for (int i : it->second)
        if (maps_[i] == m) return (std::size_t)i;
    return std::nullopt;
}

}  // namespace grpd
