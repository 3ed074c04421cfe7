#include "degjoin/generic_join.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace degjoin {

namespace {

/// A relation with columns permuted into the global attribute order and rows
/// sorted lexicographically in that order.
struct Trie {
    int arity = 0;
    std::vector<Value> data;
    std::size_t rows = 0;
    std::vector<int> depth_of;  ///< column -> global depth

    Value at(std::size_t r, int c) const { return data[r * arity + c]; }
};

Trie make_trie(const Relation& rel, const std::vector<int>& depth) {
    Trie t;
    t.arity = rel.arity();
    std::vector<std::pair<int, AttrId>> cols;
    for (AttrId a : rel.schema()) cols.emplace_back(depth[a], a);
    std::sort(cols.begin(), cols.end());
    std::vector<int> src;
    for (auto [d, a] : cols) {
        src.push_back(rel.column(a));
        t.depth_of.push_back(d);
    }
    std::vector<std::vector<Value>> rows(rel.size(), std::vector<Value>(t.arity));
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto r = rel.row(i);
        for (int c = 0; c < t.arity; ++c) rows[i][c] = r[src[c]];
    }
    std::sort(rows.begin(), rows.end());
    t.rows = rows.size();
    t.data.reserve(t.rows * t.arity);
    for (auto& r : rows) t.data.insert(t.data.end(), r.begin(), r.end());
    return t;
}

struct Range {
    std::size_t lo, hi;
};

/// Sub-range of rows in [r.lo, r.hi) whose column c equals v (rows agree on
/// all earlier columns, so column c is sorted within the range).
Range narrow(const Trie& t, Range r, int c, Value v) {
    std::size_t lo = r.lo, hi = r.hi;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (t.at(mid, c) < v) lo = mid + 1; else hi = mid;
    }
    std::size_t start = lo;
    hi = r.hi;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (t.at(mid, c) <= v) lo = mid + 1; else hi = mid;
    }
    return {start, lo};
}

}  // namespace

Relation generic_join(const std::vector<Relation>& rels, const std::vector<AttrId>& order, AttrSet output,
                      std::uint64_t* ops) {
    std::uint64_t local_ops = 0;
    std::uint64_t& counter = ops ? *ops : local_ops;
    for (const auto& r : rels)
        if (r.empty()) return Relation(output);
    std::vector<int> depth(kMaxAttrs, -1);
    for (std::size_t i = 0; i < order.size(); ++i) depth[order[i]] = static_cast<int>(i);
    AttrSet all;
    for (const auto& r : rels) all |= r.schema();
    for (AttrId a : all)
        if (depth[a] < 0) throw std::invalid_argument("generic_join: attribute order misses an attribute");

    std::vector<Trie> tries;
    for (const auto& r : rels)
        if (r.arity() > 0) tries.push_back(make_trie(r, depth));
    const int n = static_cast<int>(order.size());
    // Relations (and their column) participating at each depth.
    std::vector<std::vector<std::pair<int, int>>> at_depth(n);
    for (std::size_t t = 0; t < tries.size(); ++t)
        for (int c = 0; c < tries[t].arity; ++c) at_depth[tries[t].depth_of[c]].emplace_back(static_cast<int>(t), c);

    RelationBuilder out(output);
    std::vector<Value> assign(kMaxAttrs, 0), proj;
    std::vector<std::vector<Range>> ranges(n + 1, std::vector<Range>(tries.size()));
    for (std::size_t t = 0; t < tries.size(); ++t) ranges[0][t] = {0, tries[t].rows};

    auto emit = [&]() {
        proj.clear();
        for (AttrId a : output) proj.push_back(assign[a]);
        if (output.empty()) out.add_unit(); else out.add(proj);
    };

    std::function<void(int)> expand = [&](int k) {
        if (k == n) {
            emit();
            return;
        }
        auto& parts = at_depth[k];
        auto& cur = ranges[k];
        auto& next = ranges[k + 1];
        if (parts.empty()) {
            // Attribute outside every relation: nothing to bind.
            next = cur;
            expand(k + 1);
            return;
        }
        // Iterate the participant with the smallest range.
        int lead = 0;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto [t, c] = parts[i];
            auto [t0, c0] = parts[lead];
            if (cur[t].hi - cur[t].lo < cur[t0].hi - cur[t0].lo) lead = static_cast<int>(i);
        }
        auto [lt, lc] = parts[lead];
        const Trie& L = tries[lt];
        std::size_t row = cur[lt].lo;
        while (row < cur[lt].hi) {
            Value v = L.at(row, lc);
            ++counter;
            next = cur;
            Range lr = narrow(L, cur[lt], lc, v);
            next[lt] = lr;
            bool ok = true;
            for (std::size_t i = 0; i < parts.size() && ok; ++i) {
                if (static_cast<int>(i) == lead) continue;
                auto [t, c] = parts[i];
                ++counter;
                Range r = narrow(tries[t], cur[t], c, v);
                if (r.lo == r.hi) ok = false;
                next[t] = r;
            }
            if (ok) {
                assign[order[k]] = v;
                expand(k + 1);
            }
            row = lr.hi;
        }
    };
    expand(0);
    return std::move(out).build();
}

Relation generic_join(const std::vector<Relation>& rels, AttrSet output, std::uint64_t* ops) {
    AttrSet all;
    for (const auto& r : rels) all |= r.schema();
    return generic_join(rels, all.to_vector(), output, ops);
}

}  // namespace degjoin
