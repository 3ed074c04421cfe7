#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "degjoin/attrset.hpp"

namespace degjoin {

using Value = std::uint64_t;

class RelationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A set of tuples over an attribute set. Columns are stored in ascending
/// attribute-id order and rows are kept sorted and distinct, so two relations
/// with the same contents compare equal bit-for-bit.
///
/// A nullary relation (empty schema) holds either zero rows or the single
/// empty tuple.
class Relation {
public:
    Relation() = default;
    explicit Relation(AttrSet schema) : schema_(schema), arity_(schema.size()) {}

    /// Builds a relation from row-major values; sorts and drops duplicates.
    static Relation from_rows(AttrSet schema, std::vector<Value> flat);
    static Relation from_rows(AttrSet schema, std::initializer_list<std::initializer_list<Value>> rows);
    /// The nullary relation containing the empty tuple.
    static Relation unit();

    AttrSet schema() const { return schema_; }
    int arity() const { return arity_; }
    std::size_t size() const { return rows_; }
    bool empty() const { return rows_ == 0; }

    std::span<const Value> row(std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(arity_), static_cast<std::size_t>(arity_)};
    }
    const std::vector<Value>& data() const { return data_; }

    /// Column index of attribute `a` (must be in the schema).
    int column(AttrId a) const { return schema_.rank(a); }

    bool contains(std::span<const Value> tuple) const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.schema_ == b.schema_ && a.rows_ == b.rows_ && a.data_ == b.data_;
    }

private:
    void normalize();

    AttrSet schema_;
    int arity_ = 0;
    std::size_t rows_ = 0;
    std::vector<Value> data_;
};

/// Incrementally collects rows, then produces a normalized relation.
class RelationBuilder {
public:
    explicit RelationBuilder(AttrSet schema) : schema_(schema), arity_(schema.size()) {}
    void add(std::span<const Value> tuple) { flat_.insert(flat_.end(), tuple.begin(), tuple.end()); ++rows_; }
    void add_unit() { ++rows_; }
    std::size_t pending() const { return rows_; }
    Relation build() &&;

private:
    AttrSet schema_;
    int arity_;
    std::size_t rows_ = 0;
    std::vector<Value> flat_;
};

// Relational operators. All results are normalized relations.

/// pi_A(rel). Throws RelationError when A is not a subset of the schema.
Relation project(const Relation& rel, AttrSet attrs);
/// sigma_{a = v}(rel).
Relation select_eq(const Relation& rel, AttrId a, Value v);
/// Rows of `left` that agree with some row of `right` on the shared attributes.
Relation semijoin(const Relation& left, const Relation& right);
/// Natural join via hashing on the shared attributes.
Relation natural_join(const Relation& left, const Relation& right);
Relation set_union(const Relation& a, const Relation& b);
Relation set_intersection(const Relation& a, const Relation& b);
/// Rows of `rel` whose `attrs`-projection lies in `keys` (keys.schema() == attrs).
Relation restrict_to(const Relation& rel, const Relation& keys);

/// Extracts the projection of one row onto a sub-schema.
void project_row(const Relation& rel, std::size_t i, AttrSet sub, std::vector<Value>& out);

std::string debug_string(const Relation& rel);

}  // namespace degjoin
