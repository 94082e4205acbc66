#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace grpd {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic PRNG for test generators and seeded sampling.
/// No global randomness anywhere in the toolkit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64(state_);
    }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

inline std::uint64_t hashCombine(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t hashInts(const std::vector<std::int32_t>& v, std::uint64_t seed = 0) {
    std::uint64_t h = splitmix64(seed ^ (std::uint64_t)v.size());
    for (std::int32_t x : v) h = hashCombine(h, (std::uint64_t)(std::uint32_t)x);
    return h;
}

/// Variable-width bitset for generator subsets (edge pairs) and element sets.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool none() const {
        for (auto w : w_) if (w) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += (std::size_t)__builtin_popcountll(w);
        return c;
    }
    bool subsetOf(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    Bits operator&(const Bits& o) const {
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    Bits operator|(const Bits& o) const {
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    bool operator<(const Bits& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (std::size_t i = w_.size(); i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }
    std::uint64_t hash() const {
        std::uint64_t h = splitmix64(n_);
        for (auto w : w_) h = hashCombine(h, w);
        return h;
    }
    std::vector<std::size_t> members() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) r.push_back(i);
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return (std::size_t)b.hash(); }
};

/// One verification failure, with a human-readable witness.
struct Violation {
    std::string rule;
    std::string witness;
};

/// Outcome of a diagnostic check; empty violation list means ok.
struct Report {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string rule, std::string witness) {
        violations.push_back({std::move(rule), std::move(witness)});
    }
    std::string summary() const {
        if (ok()) return "ok";
        std::string s;
        for (const auto& v : violations) {
            if (!s.empty()) s += "; ";
            s += v.rule + " [" + v.witness + "]";
        }
        return s;
    }
};

/// Global resource caps. Constructions check these and fail loudly.
struct Budget {
    std::size_t maxElements = 200000;        // groupoid elements
    std::size_t maxCarrierVertices = 400000; // cym carrier size
    std::size_t maxTableBytes = 1ull << 31;  // transient closure tables
    std::size_t maxChains = 100000;          // amalgamation chains per stage
    std::size_t maxSearchNodes = 60000000;   // coset-cycle search
    std::size_t maxWordMaps = 2000000;       // partial-map fixpoints
};

}  // namespace grpd
