#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "degjoin/relation.hpp"

namespace degjoin {

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NamedRelation {
    std::string name;
    Relation rel;
    std::filesystem::path path;
    std::size_t rows_read = 0;
    std::size_t duplicates_dropped = 0;
};

/// Relations loaded from a manifest, plus the attribute and value dictionaries
/// shared by all of them.
class Catalog {
public:
    AttrId attr_id(const std::string& name) const;
    AttrId intern_attr(const std::string& name);
    const std::vector<std::string>& attr_names() const { return attr_names_; }
    int attr_count() const { return static_cast<int>(attr_names_.size()); }

    Value intern_value(const std::string& text);
    const std::string& value_text(Value v) const { return symbols_.at(v); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    const NamedRelation& relation(const std::string& name) const;
    bool has_relation(const std::string& name) const { return by_name_.count(name) > 0; }
    const std::vector<NamedRelation>& relations() const { return relations_; }
    void add_relation(NamedRelation nr);

    std::filesystem::path manifest_path;

private:
    std::vector<std::string> attr_names_;
    std::unordered_map<std::string, AttrId> attr_index_;
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Value> symbol_index_;
    std::vector<NamedRelation> relations_;
    std::map<std::string, std::size_t> by_name_;
};

/// Reads a JSON manifest {"relations":[{"name","path","schema":[...]}]}.
/// Paths are resolved relative to the manifest's directory.
Catalog load_catalog(const std::filesystem::path& manifest);

/// Writes one CSV per relation plus a manifest into `dir`. Values are written
/// through the catalog's symbol table.
void save_catalog(const Catalog& cat, const std::filesystem::path& dir, const std::string& manifest_name = "manifest.json");

/// Writes `rel` as CSV with a header of attribute names, rows sorted.
void write_csv(const Relation& rel, const Catalog& cat, const std::filesystem::path& path);

}  // namespace degjoin
