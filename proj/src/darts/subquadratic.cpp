#include "degjoin/subquadratic.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace degjoin {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Subquadratic: return "subquadratic";
        case Verdict::NotSubquadratic3Sum: return "not subquadratic (modulo 3-SUM)";
        case Verdict::NotSeriesParallel: return "not 1-series-parallel";
    }
    return "?";
}

std::string check_series_parallel(const SeriesParallelGraph& g) {
    if (g.source.empty() || g.sink.empty()) return "source and sink must be named";
    if (g.source == g.sink) return "source and sink coincide";
    if (g.paths.empty() && !g.direct_edge) return "no source-sink path";
    std::set<std::string> interior;
    for (std::size_t p = 0; p < g.paths.size(); ++p) {
        const auto& path = g.paths[p];
        const std::string id = "path " + std::to_string(p);
        if (path.size() < 2) return id + " has fewer than two vertices";
        if (path.front() != g.source) return id + " does not start at the source";
        if (path.back() != g.sink) return id + " does not end at the sink";
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            const auto& v = path[i];
            if (v == g.source || v == g.sink) return id + " revisits the source or sink";
            if (!interior.insert(v).second) return "vertex " + v + " shared by two paths or repeated";
        }
    }
    return "";
}

SubquadraticVerdict decide_subquadratic_1sp(const SeriesParallelGraph& g) {
    SubquadraticVerdict out;
    if (auto err = check_series_parallel(g); !err.empty()) {
        out.verdict = Verdict::NotSeriesParallel;
        out.rule = "input";
        out.trace.push_back(err);
        return out;
    }
    bool direct = g.direct_edge;
    for (const auto& p : g.paths) direct = direct || p.size() == 2;
    if (direct) {
        out.verdict = Verdict::Subquadratic;
        out.rule = "rule 1";
        out.trace.push_back("rule 1: direct source-sink edge present");
        return out;
    }
    std::size_t dropped = 0, remaining = 0;
    for (const auto& p : g.paths) {
        if (p.size() == 3) ++dropped;
        else ++remaining;
    }
    out.trace.push_back("rule 2: removed " + std::to_string(dropped) + " path(s) of length 2");
    if (remaining >= 3) {
        out.verdict = Verdict::NotSubquadratic3Sum;
        out.rule = "rule 3";
        out.trace.push_back("rule 3: " + std::to_string(remaining) + " paths of length >= 3 remain");
    } else {
        out.verdict = Verdict::Subquadratic;
        out.rule = "rule 3";
        out.trace.push_back("rule 3: only " + std::to_string(remaining) + " path(s) of length >= 3 remain");
    }
    return out;
}

SeriesParallelGraph parse_sp_graph(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    SeriesParallelGraph g;
    g.source = j.at("source").get<std::string>();
    g.sink = j.at("sink").get<std::string>();
    for (const auto& p : j.at("paths")) {
        std::vector<std::string> path;
        for (const auto& v : p) path.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        g.paths.push_back(std::move(path));
    }
    g.direct_edge = j.value("direct_edge", false);
    return g;
}

std::string sp_graph_to_json(const SeriesParallelGraph& g) {
    nlohmann::json j;
    j["source"] = g.source;
    j["sink"] = g.sink;
    j["paths"] = g.paths;
    j["direct_edge"] = g.direct_edge;
    return j.dump(2);
}

}  // namespace degjoin
