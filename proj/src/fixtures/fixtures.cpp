#include "degjoin/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace degjoin {

namespace {

Relation binary(AttrId x, AttrId y, const std::vector<std::pair<Value, Value>>& pairs) {
    // Columns are stored in ascending attribute order.
    std::vector<Value> flat;
    flat.reserve(pairs.size() * 2);
    for (auto [a, b] : pairs) {
        if (x < y) {
            flat.push_back(a);
            flat.push_back(b);
        } else {
            flat.push_back(b);
            flat.push_back(a);
        }
    }
    return Relation::from_rows(AttrSet::single(x) | AttrSet::single(y), std::move(flat));
}

Relation random_graph(AttrId x, AttrId y, std::size_t N, std::size_t domain, std::mt19937_64& rng) {
    std::uniform_int_distribution<Value> pick(0, domain - 1);
    std::vector<std::pair<Value, Value>> pairs;
    for (std::size_t i = 0; i < N; ++i) pairs.emplace_back(pick(rng), pick(rng));
    return binary(x, y, pairs);
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

Instance finish(std::vector<Relation> rels, std::vector<std::string> attr_names, const std::string& prefix = "R") {
    Instance inst;
    inst.query = make_query(std::move(rels));
    inst.query.names = numbered(prefix, static_cast<int>(inst.query.rels.size()));
    inst.attr_names = std::move(attr_names);
    return inst;
}

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomParams& p) {
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        const int k = uni(2, p.max_attrs);
        const int m = uni(1, p.max_relations);
        const int domain = uni(2, p.domain);
        std::vector<AttrSet> schemas;
        for (int i = 0; i < m; ++i) {
            const int arity = uni(1, std::min(p.max_arity, k));
            std::vector<AttrId> ids(k);
            for (int a = 0; a < k; ++a) ids[a] = a;
            std::shuffle(ids.begin(), ids.end(), rng);
            AttrSet s;
            for (int a = 0; a < arity; ++a) s.insert(ids[a]);
            schemas.push_back(s);
        }
        AttrSet all;
        for (auto s : schemas) all |= s;
        if (all != AttrSet::range(k)) continue;
        // Connectivity.
        AttrSet comp = schemas[0];
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto s : schemas)
                if (s.intersects(comp) && !s.subset_of(comp)) {
                    comp |= s;
                    grew = true;
                }
        }
        if (comp != all) continue;

        std::vector<Relation> rels;
        for (auto s : schemas) {
            const int rows = uni(0, 20) == 0 ? 0 : uni(1, p.max_tuples);
            std::vector<Value> flat;
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < s.size(); ++c) flat.push_back(static_cast<Value>(uni(0, domain - 1)));
            rels.push_back(Relation::from_rows(s, std::move(flat)));
        }
        return finish(std::move(rels), numbered("A", k));
    }
}

Instance regular_triangle(std::size_t N, std::size_t d) {
    const std::size_t n = std::max<std::size_t>(1, N / d);
    std::vector<std::pair<Value, Value>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) pairs.emplace_back(i, (i + k) % n);
    return finish({binary(0, 1, pairs), binary(1, 2, pairs), binary(0, 2, pairs)}, {"A", "B", "C"});
}

Instance matching_cycle(int n, std::size_t N) {
    std::vector<std::pair<Value, Value>> pairs;
    for (std::size_t i = 0; i < N; ++i) pairs.emplace_back(i, i);
    std::vector<Relation> rels;
    for (int i = 0; i < n; ++i) rels.push_back(binary(i, (i + 1) % n, pairs));
    return finish(std::move(rels), numbered("A", n));
}

Instance skewed_cycle(int n, std::size_t N) {
    const std::size_t half = N / 2;
    const std::size_t b = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(half))));
    std::vector<std::pair<Value, Value>> pairs;
    for (std::size_t i = 0; i < half; ++i) pairs.emplace_back(i, i);
    const Value base = 1'000'000;
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) pairs.emplace_back(base + i, base + j);
    std::vector<Relation> rels;
    for (int i = 0; i < n; ++i) rels.push_back(binary(i, (i + 1) % n, pairs));
    return finish(std::move(rels), numbered("A", n));
}

Instance chain(int n, std::size_t N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Relation> rels;
    for (int i = 0; i < n; ++i) rels.push_back(random_graph(i, i + 1, N, std::max<std::size_t>(2, N / 2), rng));
    return finish(std::move(rels), numbered("A", n + 1));
}

Instance k2n(int m, std::size_t N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t domain = std::max<std::size_t>(2, N / 2);
    std::vector<Relation> rels;
    for (int i = 0; i < m; ++i) {
        rels.push_back(random_graph(0, 2 + i, N, domain, rng));
        rels.push_back(random_graph(2 + i, 1, N, domain, rng));
    }
    std::vector<std::string> names = {"S", "T"};
    for (int i = 0; i < m; ++i) names.push_back("M" + std::to_string(i));
    return finish(std::move(rels), std::move(names));
}

Instance series_parallel(const std::vector<int>& path_lengths, bool direct_edge, std::size_t N,
                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t domain = std::max<std::size_t>(2, N / 2);
    std::vector<Relation> rels;
    std::vector<std::string> names = {"S", "T"};
    AttrId next = 2;
    if (direct_edge) rels.push_back(random_graph(0, 1, N, domain, rng));
    for (std::size_t p = 0; p < path_lengths.size(); ++p) {
        AttrId prev = 0;
        for (int e = 0; e < path_lengths[p]; ++e) {
            AttrId to = e + 1 == path_lengths[p] ? 1 : next;
            if (to == next) {
                names.push_back("P" + std::to_string(p) + "_" + std::to_string(e + 1));
                ++next;
            }
            if (next > kMaxAttrs) throw std::invalid_argument("series_parallel: too many attributes");
            rels.push_back(random_graph(prev, to, N, domain, rng));
            prev = to;
        }
    }
    return finish(std::move(rels), std::move(names));
}

RelStats binary_stats(AttrId x, AttrId y, double s, double px, double py, double dx, double dy) {
    AttrSet X = AttrSet::single(x), Y = AttrSet::single(y), XY = X | Y;
    RelStats r(XY);
    r.at({}, X) = px;
    r.at({}, Y) = py;
    r.at({}, XY) = s;
    r.at(X, XY) = dx;
    r.at(Y, XY) = dy;
    return r;
}

std::vector<RelStats> uniform_graph_stats(const std::vector<std::pair<AttrId, AttrId>>& edges, double s,
                                          double delta) {
    std::vector<RelStats> out;
    for (auto [x, y] : edges) out.push_back(binary_stats(x, y, s, s - delta, s - delta, delta, delta));
    return out;
}

std::vector<std::pair<AttrId, AttrId>> cycle_edges(int n) {
    std::vector<std::pair<AttrId, AttrId>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return e;
}

std::vector<std::pair<AttrId, AttrId>> path_edges(int n) {
    std::vector<std::pair<AttrId, AttrId>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

std::vector<std::pair<AttrId, AttrId>> k2n_edges(int m) {
    std::vector<std::pair<AttrId, AttrId>> e;
    for (int i = 0; i < m; ++i) {
        e.emplace_back(0, 2 + i);
        e.emplace_back(2 + i, 1);
    }
    return e;
}

}  // namespace degjoin
