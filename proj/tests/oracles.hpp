#pragma once

// Test-side oracles. They share no code with the library beyond the
// Relation/AttrSet containers and are kept deliberately naive.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "degjoin/query.hpp"
#include "degjoin/relation.hpp"

namespace oracle {

using degjoin::AttrId;
using degjoin::AttrSet;
using degjoin::Relation;
using degjoin::Value;

using TupleSet = std::set<std::vector<Value>>;
using Binding = std::map<AttrId, Value>;

inline TupleSet rows_of(const Relation& r) {
    TupleSet out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        auto row = r.row(i);
        out.emplace(row.begin(), row.end());
    }
    return out;
}

/// Nested-loop natural join over attribute bindings, then projection.
inline TupleSet naive_join(const std::vector<Relation>& rels, AttrSet output) {
    std::vector<Binding> cur{Binding{}};
    for (const auto& r : rels) {
        const auto attrs = r.schema().to_vector();
        std::vector<Binding> next;
        for (const auto& b : cur) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                auto row = r.row(i);
                Binding nb = b;
                bool ok = true;
                for (std::size_t k = 0; k < attrs.size() && ok; ++k) {
                    auto [it, fresh] = nb.emplace(attrs[k], row[k]);
                    ok = fresh || it->second == row[k];
                }
                if (ok) next.push_back(std::move(nb));
            }
        }
        cur = std::move(next);
    }
    TupleSet out;
    for (const auto& b : cur) {
        std::vector<Value> t;
        for (AttrId a : output) t.push_back(b.at(a));
        out.insert(std::move(t));
    }
    return out;
}

inline TupleSet naive_join(const degjoin::Query& q) { return naive_join(q.rels, q.output); }

/// Degree of every value of pi_A(rel), by direct counting of distinct tuples.
inline std::map<std::vector<Value>, std::uint64_t> naive_degrees(const Relation& r, AttrSet a) {
    std::map<std::vector<Value>, std::uint64_t> out;
    const auto attrs = r.schema().to_vector();
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<Value> key;
        for (std::size_t k = 0; k < attrs.size(); ++k)
            if (a.contains(attrs[k])) key.push_back(r.row(i)[k]);
        ++out[key];
    }
    return out;
}

/// Three-rule decision on path edge counts: a direct edge wins, length-2
/// paths are irrelevant, three or more longer paths lose.
inline std::string subquadratic_verdict(const std::vector<int>& path_edges, bool direct) {
    if (direct) return "subquadratic";
    int long_paths = 0;
    for (int e : path_edges) long_paths += e >= 3;
    return long_paths >= 3 ? "not subquadratic (modulo 3-SUM)" : "subquadratic";
}

/// Exponent-space value of a two-variable LP max c.x s.t. A x <= b, x >= 0,
/// by enumerating all pairwise constraint intersections.
struct Line {
    double a, b, rhs;
};
inline double max_2d(double c0, double c1, std::vector<Line> rows) {
    rows.push_back({-1, 0, 0});
    rows.push_back({0, -1, 0});
    double best = -INFINITY;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i].a * rows[j].b - rows[j].a * rows[i].b;
            if (std::abs(det) < 1e-12) continue;
            const double x = (rows[i].rhs * rows[j].b - rows[j].rhs * rows[i].b) / det;
            const double y = (rows[i].a * rows[j].rhs - rows[j].a * rows[i].rhs) / det;
            bool ok = true;
            for (const auto& r : rows) ok = ok && r.a * x + r.b * y <= r.rhs + 1e-9;
            if (ok) best = std::max(best, c0 * x + c1 * y);
        }
    return best;
}

}  // namespace oracle
