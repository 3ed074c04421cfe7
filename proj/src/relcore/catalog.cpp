#include "degjoin/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace degjoin {

namespace fs = std::filesystem;
using nlohmann::json;

AttrId Catalog::attr_id(const std::string& name) const {
    auto it = attr_index_.find(name);
    if (it == attr_index_.end()) throw CatalogError("unknown attribute: " + name);
    return it->second;
}

AttrId Catalog::intern_attr(const std::string& name) {
    auto it = attr_index_.find(name);
    if (it != attr_index_.end()) return it->second;
    if (attr_count() >= kMaxAttrs) throw CatalogError("too many attributes (limit 32)");
    AttrId id = attr_count();
    attr_names_.push_back(name);
    attr_index_.emplace(name, id);
    return id;
}

Value Catalog::intern_value(const std::string& text) {
    auto it = symbol_index_.find(text);
    if (it != symbol_index_.end()) return it->second;
    Value v = symbols_.size();
    symbols_.push_back(text);
    symbol_index_.emplace(text, v);
    return v;
}

const NamedRelation& Catalog::relation(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw CatalogError("unknown relation: " + name);
    return relations_[it->second];
}

void Catalog::add_relation(NamedRelation nr) {
    if (by_name_.count(nr.name)) throw CatalogError("duplicate relation name: " + nr.name);
    by_name_.emplace(nr.name, relations_.size());
    relations_.push_back(std::move(nr));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        std::size_t b = cell.find_first_not_of(' ');
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

NamedRelation read_relation(Catalog& cat, const std::string& name, const fs::path& path,
                            const std::vector<std::string>& schema) {
    std::ifstream in(path);
    if (!in) throw CatalogError("missing file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CatalogError("empty CSV (no header): " + path.string());
    auto header = split_csv_line(line);
    if (!schema.empty()) {
        auto a = header, b = schema;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw CatalogError("header of " + path.string() + " does not match manifest schema");
    }
    {
        auto sorted = header;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw CatalogError("repeated attribute in header of " + path.string());
    }
    AttrSet s;
    std::vector<AttrId> ids;
    for (const auto& h : header) {
        ids.push_back(cat.intern_attr(h));
        s.insert(ids.back());
    }
    // Position in the stored (ascending id) row of each CSV column.
    std::vector<int> dest;
    for (AttrId a : ids) dest.push_back(s.rank(a));

    RelationBuilder b(s);
    std::vector<Value> tuple(ids.size());
    std::size_t rows = 0, lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw CatalogError("arity mismatch in " + path.string() + " line " + std::to_string(lineno));
        for (std::size_t j = 0; j < cells.size(); ++j) tuple[dest[j]] = cat.intern_value(cells[j]);
        b.add(tuple);
        ++rows;
    }
    NamedRelation nr;
    nr.name = name;
    nr.path = path;
    nr.rel = std::move(b).build();
    nr.rows_read = rows;
    nr.duplicates_dropped = rows - nr.rel.size();
    return nr;
}

}  // namespace

Catalog load_catalog(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw CatalogError("missing file: " + manifest.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw CatalogError("malformed manifest " + manifest.string() + ": " + e.what());
    }
    if (!doc.contains("relations") || !doc["relations"].is_array())
        throw CatalogError("manifest lacks a \"relations\" array");
    Catalog cat;
    cat.manifest_path = manifest;
    fs::path base = manifest.parent_path();
    for (const auto& entry : doc["relations"]) {
        std::string name = entry.at("name").get<std::string>();
        fs::path p = entry.at("path").get<std::string>();
        if (p.is_relative()) p = base / p;
        std::vector<std::string> schema;
        if (entry.contains("schema")) schema = entry["schema"].get<std::vector<std::string>>();
        if (cat.has_relation(name)) throw CatalogError("duplicate relation name: " + name);
        cat.add_relation(read_relation(cat, name, p, schema));
    }
    return cat;
}

void write_csv(const Relation& rel, const Catalog& cat, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw CatalogError("cannot write " + path.string());
    bool first = true;
    for (AttrId a : rel.schema()) {
        out << (first ? "" : ",") << cat.attr_names().at(a);
        first = false;
    }
    out << '\n';
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto r = rel.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << cat.value_text(r[j]);
        out << '\n';
    }
}

void save_catalog(const Catalog& cat, const fs::path& dir, const std::string& manifest_name) {
    fs::create_directories(dir);
    json doc;
    doc["relations"] = json::array();
    for (const auto& nr : cat.relations()) {
        std::string file = nr.name + ".csv";
        write_csv(nr.rel, cat, dir / file);
        std::vector<std::string> schema;
        for (AttrId a : nr.rel.schema()) schema.push_back(cat.attr_names().at(a));
        doc["relations"].push_back({{"name", nr.name}, {"path", file}, {"schema", schema}});
    }
    std::ofstream out(dir / manifest_name);
    out << doc.dump(2) << '\n';
}

}  // namespace degjoin
