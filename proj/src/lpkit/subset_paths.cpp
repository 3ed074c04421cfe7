#include "degjoin/subset_paths.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace degjoin {

std::size_t SubsetPaths::index(AttrSet s) const { return local_mask(universe_, s); }

SubsetPaths::SubsetPaths(const std::vector<RelStats>& rels, AttrSet universe, AttrSet source)
    : universe_(universe), source_(source) {
    if (!source.subset_of(universe)) throw std::invalid_argument("SubsetPaths: source outside universe");
    if (universe.size() > 20) throw std::invalid_argument("SubsetPaths: universe too large");
    const std::size_t nodes = std::size_t{1} << universe.size();
    const double inf = std::numeric_limits<double>::infinity();
    dist_.assign(nodes, inf);
    pred_.assign(nodes, PathStep{});
    std::vector<bool> done(nodes, false);

    using Item = std::pair<double, std::uint32_t>;  // (distance, global bits)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[index(source)] = 0;
    heap.push({0.0, source.bits()});

    auto relax = [&](AttrSet from, AttrSet to, double w, int rel, AttrSet ext) {
        double nd = dist_[index(from)] + w;
        std::size_t ti = index(to);
        if (nd < dist_[ti] - 1e-12) {
            dist_[ti] = nd;
            pred_[ti] = PathStep{from, to, rel, ext, w};
            heap.push({nd, to.bits()});
        }
    };

    while (!heap.empty()) {
        auto [d, bits] = heap.top();
        heap.pop();
        AttrSet u(bits);
        std::size_t ui = index(u);
        if (done[ui]) continue;
        done[ui] = true;
        for (AttrId a : u) relax(u, u - AttrSet::single(a), 0.0, -1, {});
        for (std::size_t r = 0; r < rels.size(); ++r) {
            const RelStats& rs = rels[r];
            AttrSet schema = rs.schema & universe_;
            if (schema != rs.schema) continue;
            for_each_subset(schema, [&](AttrSet b) {
                if (b.subset_of(u)) return;
                // The largest admissible A = B ∩ U has the smallest weight.
                relax(u, u | b, rs.at(b & u, b), static_cast<int>(r), b);
            });
        }
    }
}

std::vector<PathStep> SubsetPaths::chain(AttrSet target) const {
    std::vector<PathStep> steps;
    AttrSet cur = target;
    while (cur != source_) {
        const PathStep& p = pred_[index(cur)];
        if (p.to != cur) throw std::logic_error("SubsetPaths::chain: target unreachable");
        steps.push_back(p);
        cur = p.from;
    }
    return {steps.rbegin(), steps.rend()};
}

double m_value(const std::vector<RelStats>& rels, AttrSet target) {
    AttrSet all;
    for (const auto& r : rels) all |= r.schema;
    return SubsetPaths(rels, all, {}).distance(target);
}

}  // namespace degjoin
