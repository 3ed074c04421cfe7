#include "degjoin/query.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace degjoin {

AttrSet Query::attrs() const {
    AttrSet s;
    for (const auto& r : rels) s |= r.schema();
    return s;
}

double Query::in_size() const {
    double n = 0;
    for (const auto& r : rels) n += static_cast<double>(r.size());
    return n;
}

bool Query::any_empty() const {
    return std::any_of(rels.begin(), rels.end(), [](const Relation& r) { return r.empty(); });
}

std::vector<AttrSet> Query::components(AttrSet keep) const {
    std::vector<AttrSet> comps;
    AttrSet left = keep;
    while (!left.empty()) {
        AttrSet comp = AttrSet::single(left.first());
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& r : rels) {
                AttrSet s = r.schema() & keep;
                if (s.intersects(comp) && !s.subset_of(comp)) {
                    comp |= s;
                    grew = true;
                }
            }
        }
        comps.push_back(comp);
        left -= comp;
    }
    return comps;
}

Query make_query(std::vector<Relation> rels, AttrSet output) {
    Query q;
    q.rels = std::move(rels);
    for (std::size_t i = 0; i < q.rels.size(); ++i) q.names.push_back("R" + std::to_string(i));
    q.output = output;
    if (!output.subset_of(q.attrs())) throw RelationError("output attributes not in query");
    return q;
}

Query make_query(std::vector<Relation> rels) {
    AttrSet all;
    for (const auto& r : rels) all |= r.schema();
    return make_query(std::move(rels), all);
}

Query parse_query(const std::string& text, const Catalog& cat) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw CatalogError(std::string("malformed query: ") + e.what());
    }
    if (!doc.contains("relations") || !doc["relations"].is_array())
        throw CatalogError("query lacks a \"relations\" array");
    Query q;
    for (const auto& name : doc["relations"]) {
        const auto& nr = cat.relation(name.get<std::string>());
        q.rels.push_back(nr.rel);
        q.names.push_back(nr.name);
    }
    AttrSet all = q.attrs();
    if (doc.contains("output")) {
        AttrSet out;
        for (const auto& a : doc["output"]) {
            std::string n = a.get<std::string>();
            AttrId id;
            try {
                id = cat.attr_id(n);
            } catch (const CatalogError&) {
                throw CatalogError("unknown attribute in output list: " + n);
            }
            if (!all.contains(id)) throw CatalogError("unknown attribute in output list: " + n);
            out.insert(id);
        }
        q.output = out;
    } else {
        q.output = all;
    }
    return q;
}

Query load_query(const std::filesystem::path& path, const Catalog& cat) {
    std::ifstream in(path);
    if (!in) throw CatalogError("missing file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_query(ss.str(), cat);
}

Relation reference_join(const Query& q) {
    for (const auto& r : q.rels)
        if (r.empty()) return Relation(q.output);
    AttrSet all = q.attrs();
    std::vector<AttrId> order = all.to_vector();
    const int n = static_cast<int>(order.size());

    // Candidate values per attribute: intersection of the column supports.
    std::vector<std::vector<Value>> domain(n);
    for (int k = 0; k < n; ++k) {
        bool first = true;
        for (const auto& r : q.rels) {
            if (!r.schema().contains(order[k])) continue;
            Relation col = project(r, AttrSet::single(order[k]));
            std::vector<Value> vals(col.data().begin(), col.data().end());
            if (first) {
                domain[k] = std::move(vals);
                first = false;
            } else {
                std::vector<Value> keep;
                std::set_intersection(domain[k].begin(), domain[k].end(), vals.begin(), vals.end(),
                                      std::back_inserter(keep));
                domain[k] = std::move(keep);
            }
        }
    }
    // Relations to check once the attribute at depth k is bound.
    std::vector<std::vector<int>> check_at(n);
    for (std::size_t i = 0; i < q.rels.size(); ++i) {
        AttrSet s = q.rels[i].schema();
        if (s.empty()) continue;
        AttrId last = *std::max_element(s.begin(), s.end());
        int depth = static_cast<int>(std::find(order.begin(), order.end(), last) - order.begin());
        check_at[depth].push_back(static_cast<int>(i));
    }

    RelationBuilder out(q.output);
    if (n == 0) {
        out.add_unit();
        return std::move(out).build();
    }
    std::vector<Value> assign(kMaxAttrs, 0);
    std::vector<Value> probe, proj;
    std::vector<std::size_t> pos(n, 0);
    int k = 0;
    while (k >= 0) {
        if (pos[k] == domain[k].size()) {
            pos[k] = 0;
            --k;
            if (k >= 0) ++pos[k];
            continue;
        }
        assign[order[k]] = domain[k][pos[k]];
        bool ok = true;
        for (int ri : check_at[k]) {
            probe.clear();
            for (AttrId a : q.rels[ri].schema()) probe.push_back(assign[a]);
            if (!q.rels[ri].contains(probe)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++pos[k];
            continue;
        }
        if (k == n - 1) {
            proj.clear();
            for (AttrId a : q.output) proj.push_back(assign[a]);
            if (q.output.empty())
                out.add_unit();
            else
                out.add(proj);
            ++pos[k];
        } else {
            ++k;
        }
    }
    return std::move(out).build();
}

}  // namespace degjoin
