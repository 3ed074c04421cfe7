#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "degjoin/relation.hpp"

namespace degjoin {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct TupleHash {
    std::size_t operator()(std::span<const Value> t) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ t.size();
        for (Value v : t) h = mix64(h ^ v) + 0x9e3779b97f4a7c15ULL;
        return h;
    }
    std::size_t operator()(const std::vector<Value>& t) const noexcept {
        return (*this)(std::span<const Value>(t));
    }
};

/// Hash set of fixed-arity tuples.
class TupleSet {
public:
    explicit TupleSet(int arity) : arity_(arity) {}
    void insert(const std::vector<Value>& t) { set_.insert(t); }
    bool contains(const std::vector<Value>& t) const { return set_.count(t) > 0; }
    std::size_t size() const { return set_.size(); }

private:
    int arity_;
    std::unordered_set<std::vector<Value>, TupleHash> set_;
};

}  // namespace degjoin
