#pragma once

#include <string>
#include <vector>

namespace degjoin {

/// Source, sink and source-to-sink paths. Each path lists its vertices from
/// the source to the sink inclusive; a two-vertex path is a direct edge.
struct SeriesParallelGraph {
    std::string source;
    std::string sink;
    std::vector<std::vector<std::string>> paths;
    bool direct_edge = false;
};

enum class Verdict { Subquadratic, NotSubquadratic3Sum, NotSeriesParallel };
const char* to_string(Verdict v);

struct SubquadraticVerdict {
    Verdict verdict = Verdict::NotSeriesParallel;
    /// Rule that decided the verdict ("rule 1", "rule 3", or "input").
    std::string rule;
    std::vector<std::string> trace;
};

/// Empty when the graph is 1-series-parallel, else the first problem found.
std::string check_series_parallel(const SeriesParallelGraph& g);

/// Three-rule procedure: a direct edge decides subquadratic; length-2 paths
/// are dropped; three or more remaining paths decide not subquadratic (modulo
/// 3-SUM), otherwise subquadratic.
SubquadraticVerdict decide_subquadratic_1sp(const SeriesParallelGraph& g);

/// Parses {"source","sink","paths":[[v,...],...],"direct_edge":bool}.
SeriesParallelGraph parse_sp_graph(const std::string& json_text);
std::string sp_graph_to_json(const SeriesParallelGraph& g);

}  // namespace degjoin
