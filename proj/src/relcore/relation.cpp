#include "degjoin/relation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "degjoin/tuple_hash.hpp"

namespace degjoin {

std::string to_string(AttrSet s, const std::vector<std::string>* names) {
    std::string out = "{";
    bool first = true;
    for (AttrId a : s) {
        if (!first) out += ",";
        first = false;
        if (names && a < static_cast<int>(names->size()))
            out += (*names)[a];
        else
            out += std::to_string(a);
    }
    return out + "}";
}

Relation Relation::from_rows(AttrSet schema, std::vector<Value> flat) {
    Relation r(schema);
    if (r.arity_ == 0) {
        throw RelationError("from_rows: use Relation::unit() for nullary relations");
    }
    if (flat.size() % r.arity_ != 0) throw RelationError("from_rows: value count not a multiple of arity");
    r.rows_ = flat.size() / r.arity_;
    r.data_ = std::move(flat);
    r.normalize();
    return r;
}

Relation Relation::from_rows(AttrSet schema, std::initializer_list<std::initializer_list<Value>> rows) {
    std::vector<Value> flat;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != schema.size()) throw RelationError("from_rows: arity mismatch");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (schema.empty()) {
        Relation r;
        r.rows_ = rows.size() ? 1 : 0;
        return r;
    }
    return from_rows(schema, std::move(flat));
}

Relation Relation::unit() {
    Relation r;
    r.rows_ = 1;
    return r;
}

void Relation::normalize() {
    if (arity_ == 0) {
        rows_ = rows_ ? 1 : 0;
        return;
    }
    const std::size_t k = arity_;
    std::vector<std::size_t> order(rows_);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(data_.begin() + a * k, data_.begin() + a * k + k,
                                            data_.begin() + b * k, data_.begin() + b * k + k);
    };
    auto eq = [&](std::size_t a, std::size_t b) {
        return std::equal(data_.begin() + a * k, data_.begin() + a * k + k, data_.begin() + b * k);
    };
    if (!std::is_sorted(order.begin(), order.end(), less)) std::sort(order.begin(), order.end(), less);
    order.erase(std::unique(order.begin(), order.end(), eq), order.end());
    std::vector<Value> out;
    out.reserve(order.size() * k);
    for (std::size_t i : order) out.insert(out.end(), data_.begin() + i * k, data_.begin() + i * k + k);
    data_ = std::move(out);
    rows_ = order.size();
}

bool Relation::contains(std::span<const Value> tuple) const {
    if (static_cast<int>(tuple.size()) != arity_) return false;
    if (arity_ == 0) return rows_ > 0;
    std::size_t lo = 0, hi = rows_;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto r = row(mid);
        if (std::lexicographical_compare(r.begin(), r.end(), tuple.begin(), tuple.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == rows_) return false;
    auto r = row(lo);
    return std::equal(r.begin(), r.end(), tuple.begin());
}

Relation RelationBuilder::build() && {
    if (arity_ == 0) return rows_ ? Relation::unit() : Relation();
    return Relation::from_rows(schema_, std::move(flat_));
}

namespace {

/// Column positions in `rel` of the attributes of `sub`, in ascending attribute order.
std::vector<int> columns_of(const Relation& rel, AttrSet sub) {
    std::vector<int> cols;
    for (AttrId a : sub) cols.push_back(rel.column(a));
    return cols;
}

}  // namespace

void project_row(const Relation& rel, std::size_t i, AttrSet sub, std::vector<Value>& out) {
    out.clear();
    auto r = rel.row(i);
    for (AttrId a : sub) out.push_back(r[rel.column(a)]);
}

Relation project(const Relation& rel, AttrSet attrs) {
    if (!attrs.subset_of(rel.schema())) throw RelationError("project: attribute set not contained in schema");
    if (attrs == rel.schema()) return rel;
    if (attrs.empty()) return rel.empty() ? Relation() : Relation::unit();
    auto cols = columns_of(rel, attrs);
    std::vector<Value> flat;
    flat.reserve(rel.size() * cols.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto r = rel.row(i);
        for (int c : cols) flat.push_back(r[c]);
    }
    return Relation::from_rows(attrs, std::move(flat));
}

Relation select_eq(const Relation& rel, AttrId a, Value v) {
    int c = rel.column(a);
    RelationBuilder b(rel.schema());
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto r = rel.row(i);
        if (r[c] == v) b.add(r);
    }
    return std::move(b).build();
}

Relation semijoin(const Relation& left, const Relation& right) {
    AttrSet shared = left.schema() & right.schema();
    if (shared.empty()) return right.empty() ? Relation(left.schema()) : left;
    auto rcols = columns_of(right, shared);
    auto lcols = columns_of(left, shared);
    TupleSet keys(shared.size());
    std::vector<Value> key(shared.size());
    for (std::size_t i = 0; i < right.size(); ++i) {
        auto r = right.row(i);
        for (std::size_t j = 0; j < rcols.size(); ++j) key[j] = r[rcols[j]];
        keys.insert(key);
    }
    RelationBuilder b(left.schema());
    if (left.arity() == 0) {
        if (!left.empty()) b.add_unit();
        return std::move(b).build();
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
        auto r = left.row(i);
        for (std::size_t j = 0; j < lcols.size(); ++j) key[j] = r[lcols[j]];
        if (keys.contains(key)) b.add(r);
    }
    return std::move(b).build();
}

Relation natural_join(const Relation& left, const Relation& right) {
    AttrSet shared = left.schema() & right.schema();
    AttrSet out_schema = left.schema() | right.schema();
    if (left.empty() || right.empty()) return Relation(out_schema);
    if (left.arity() == 0) return right;
    if (right.arity() == 0) return left;
    auto lcols = columns_of(left, shared);
    auto rcols = columns_of(right, shared);
    // Build on the right, probe with the left.
    std::unordered_map<std::vector<Value>, std::vector<std::size_t>, TupleHash> index;
    std::vector<Value> key(shared.size());
    for (std::size_t i = 0; i < right.size(); ++i) {
        auto r = right.row(i);
        for (std::size_t j = 0; j < rcols.size(); ++j) key[j] = r[rcols[j]];
        index[key].push_back(i);
    }
    // For every output attribute, where to read it from: (side, column).
    std::vector<std::pair<int, int>> source;
    for (AttrId a : out_schema) {
        if (left.schema().contains(a))
            source.emplace_back(0, left.column(a));
        else
            source.emplace_back(1, right.column(a));
    }
    std::vector<Value> flat;
    for (std::size_t i = 0; i < left.size(); ++i) {
        auto l = left.row(i);
        for (std::size_t j = 0; j < lcols.size(); ++j) key[j] = l[lcols[j]];
        auto it = index.find(key);
        if (it == index.end()) continue;
        for (std::size_t ri : it->second) {
            auto r = right.row(ri);
            for (auto [side, col] : source) flat.push_back(side == 0 ? l[col] : r[col]);
        }
    }
    if (flat.empty()) return Relation(out_schema);
    return Relation::from_rows(out_schema, std::move(flat));
}

Relation set_union(const Relation& a, const Relation& b) {
    if (a.schema() != b.schema()) throw RelationError("set_union: schema mismatch");
    if (a.arity() == 0) return (a.empty() && b.empty()) ? Relation() : Relation::unit();
    std::vector<Value> flat = a.data();
    flat.insert(flat.end(), b.data().begin(), b.data().end());
    if (flat.empty()) return Relation(a.schema());
    return Relation::from_rows(a.schema(), std::move(flat));
}

Relation set_intersection(const Relation& a, const Relation& b) {
    if (a.schema() != b.schema()) throw RelationError("set_intersection: schema mismatch");
    return semijoin(a, b);
}

Relation restrict_to(const Relation& rel, const Relation& keys) {
    if (!keys.schema().subset_of(rel.schema())) throw RelationError("restrict_to: key schema not contained");
    return semijoin(rel, keys);
}

std::string debug_string(const Relation& rel) {
    std::ostringstream os;
    os << to_string(rel.schema()) << "[" << rel.size() << "]";
    for (std::size_t i = 0; i < rel.size() && i < 16; ++i) {
        os << " (";
        auto r = rel.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j];
        os << ")";
    }
    return os.str();
}

}  // namespace degjoin
