#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "degjoin/bounds.hpp"
#include "degjoin/catalog.hpp"
#include "degjoin/darts.hpp"
#include "degjoin/degree.hpp"
#include "degjoin/fixtures.hpp"
#include "degjoin/generic_join.hpp"
#include "degjoin/ghd.hpp"
#include "degjoin/mrsim.hpp"
#include "degjoin/query.hpp"
#include "degjoin/subquadratic.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace degjoin;

namespace {

/// Internal invariant violated; maps to exit status 1.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Inputs {
    std::string catalog;
    std::string query;
    std::string artifacts = ".";
};

struct Loaded {
    Catalog cat;
    Query q;
};

Loaded load_inputs(const Inputs& in) {
    Loaded l;
    l.cat = load_catalog(in.catalog);
    l.q = load_query(in.query, l.cat);
    return l;
}

void write_artifact(const Inputs& in, const std::string& name, const json& doc) {
    fs::create_directories(in.artifacts);
    fs::path p = fs::path(in.artifacts) / (name + ".json");
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << doc.dump(2) << '\n';
    std::cout << "artifact: " << p.string() << "\n";
}

std::vector<std::string> names_of(AttrSet s, const Catalog& cat) {
    std::vector<std::string> out;
    for (AttrId a : s) out.push_back(cat.attr_names().at(a));
    return out;
}

double env_or(const char* name, double fallback) {
    const char* v = std::getenv(name);
    return v ? std::atof(v) : fallback;
}

PlannerOptions planner_options() {
    PlannerOptions opt;
    opt.max_relations = static_cast<int>(env_or("DEGJOIN_MAX_RELATIONS", opt.max_relations));
    opt.max_attrs = static_cast<int>(env_or("DEGJOIN_MAX_ATTRS", opt.max_attrs));
    opt.max_states = static_cast<std::size_t>(env_or("DEGJOIN_MAX_STATES", static_cast<double>(opt.max_states)));
    return opt;
}

json bound_json(const BoundValue& b) {
    json j;
    j["log"] = std::isinf(b.log_value) ? json(nullptr) : json(b.log_value);
    j["exponent"] = b.exponent();
    j["absolute"] = b.absolute();
    return j;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Inputs& in, const std::string& out_dir) {
    Catalog cat = load_catalog(in.catalog);
    json doc;
    doc["manifest"] = in.catalog;
    doc["relations"] = json::array();
    std::cout << std::left << std::setw(16) << "relation" << std::setw(10) << "rows" << std::setw(10) << "tuples"
              << std::setw(12) << "duplicates" << "distinct per attribute\n";
    for (const auto& nr : cat.relations()) {
        json r;
        r["name"] = nr.name;
        r["schema"] = names_of(nr.rel.schema(), cat);
        r["rows_read"] = nr.rows_read;
        r["tuples"] = nr.rel.size();
        r["duplicates_dropped"] = nr.duplicates_dropped;
        json distinct;
        std::ostringstream d;
        for (AttrId a : nr.rel.schema()) {
            auto n = project(nr.rel, AttrSet::single(a)).size();
            distinct[cat.attr_names().at(a)] = n;
            d << cat.attr_names().at(a) << "=" << n << " ";
        }
        r["distinct"] = distinct;
        doc["relations"].push_back(r);
        std::cout << std::setw(16) << nr.name << std::setw(10) << nr.rows_read << std::setw(10) << nr.rel.size()
                  << std::setw(12) << nr.duplicates_dropped << d.str() << "\n";
    }
    if (!out_dir.empty()) {
        save_catalog(cat, out_dir);
        std::cout << "normalized catalog written to " << out_dir << "\n";
    }
    write_artifact(in, "ingest", doc);
    return 0;
}

int cmd_stats(const Inputs& in, std::uint64_t L) {
    Catalog cat = load_catalog(in.catalog);
    json doc;
    doc["L"] = L;
    doc["relations"] = json::array();
    for (const auto& nr : cat.relations()) {
        json r;
        r["name"] = nr.name;
        r["size"] = nr.rel.size();
        r["subsets"] = json::array();
        std::cout << nr.name << " (" << nr.rel.size() << " tuples)\n";
        for_each_subset(nr.rel.schema(), [&](AttrSet a) {
            if (a.empty()) return;
            auto table = degree_table(nr.rel, a);
            std::uint64_t mx = 0;
            std::map<int, std::uint64_t> hist;
            for (const auto& [v, d] : table) {
                mx = std::max(mx, d);
                ++hist[bucket_of(d, L)];
            }
            json s;
            s["attrs"] = names_of(a, cat);
            s["max_degree"] = mx;
            s["distinct"] = table.size();
            json h = json::object();
            std::ostringstream hs;
            for (auto [b, c] : hist) {
                h[std::to_string(b)] = c;
                hs << " B" << b << ":" << c;
            }
            s["bucket_histogram"] = h;
            r["subsets"].push_back(s);
            std::cout << "  " << std::left << std::setw(20) << to_string(a, &cat.attr_names()) << " max_deg="
                      << std::setw(8) << mx << " buckets" << hs.str() << "\n";
        });
        doc["relations"].push_back(r);
    }
    write_artifact(in, "stats", doc);
    return 0;
}

int cmd_bounds(const Inputs& in) {
    auto [cat, q] = load_inputs(in);
    PartitionedQuery pq = partition_catalog(q, 2);
    if (auto errs = validate_partition(pq); !errs.empty()) throw InvariantError("partition invalid: " + errs[0]);
    BoundReport rep = bound_report(pq);
    json doc;
    doc["in"] = rep.in_size;
    doc["agm_query"] = rep.agm_query;
    doc["agm_total"] = rep.agm_total;
    doc["dbp_total"] = rep.dbp_total;
    doc["mo_total"] = rep.mo_total;
    doc["configs"] = json::array();
    std::cout << std::right << std::setw(8) << "config" << std::setw(14) << "AGM" << std::setw(14) << "DBP"
              << std::setw(14) << "MO" << std::setw(12) << "AGM/MO" << "\n";
    for (const auto& row : rep.rows) {
        json r;
        r["config"] = row.config;
        r["agm"] = bound_json(row.agm);
        r["dbp"] = bound_json(row.dbp);
        r["mo"] = bound_json(row.mo);
        doc["configs"].push_back(r);
        double ratio = row.mo.absolute() > 0 ? row.agm.absolute() / row.mo.absolute() : 0.0;
        std::cout << std::setw(8) << row.config << std::setw(14) << std::setprecision(6) << row.agm.absolute()
                  << std::setw(14) << row.dbp.absolute() << std::setw(14) << row.mo.absolute() << std::setw(12)
                  << ratio << "\n";
    }
    std::cout << std::setw(8) << "total" << std::setw(14) << rep.agm_total << std::setw(14) << rep.dbp_total
              << std::setw(14) << rep.mo_total << std::setw(12)
              << (rep.mo_total > 0 ? rep.agm_total / rep.mo_total : 0.0) << "\n";
    std::cout << "AGM of the unpartitioned query: " << rep.agm_query << "\n";
    doc["violations"] = rep.violations;
    write_artifact(in, "bounds", doc);
    if (!rep.violations.empty()) {
        for (const auto& v : rep.violations) std::cerr << "violation: " << v << "\n";
        return 1;
    }
    return 0;
}

json ghd_json(const GHD& g, const Catalog& cat) {
    json j;
    j["bags"] = json::array();
    for (auto b : g.bags) j["bags"].push_back(names_of(b, cat));
    j["parent"] = g.parent;
    return j;
}

int cmd_width(const Inputs& in, int max_bags) {
    auto [cat, q] = load_inputs(in);
    PartitionedQuery pq = partition_catalog(q, 2);
    WidthReport rep = m_width(pq, max_bags);
    json doc;
    doc["fhw"] = rep.fhw;
    doc["m_width"] = rep.m_width;
    doc["fhw_ghd"] = ghd_json(rep.fhw_ghd, cat);
    doc["configs"] = json::array();
    std::cout << "fhw = " << rep.fhw << "\nm-width = " << rep.m_width << "\n";
    std::cout << "fhw GHD:";
    for (auto b : rep.fhw_ghd.bags) std::cout << " " << to_string(b, &cat.attr_names());
    std::cout << "\n";
    const double log_in = rep.in_size > 1 ? std::log(rep.in_size) : 1.0;
    for (const auto& cw : rep.configs) {
        json c;
        c["config"] = cw.config;
        c["m_exponent"] = cw.mw_log / log_in;
        c["ghd"] = ghd_json(cw.ghd, cat);
        doc["configs"].push_back(c);
        std::cout << "config " << cw.config << ": m = " << cw.mw_log / log_in << " bags";
        for (auto b : cw.ghd.bags) std::cout << " " << to_string(b, &cat.attr_names());
        std::cout << "\n";
    }
    write_artifact(in, "width", doc);
    return 0;
}

int cmd_plan(const Inputs& in) {
    auto [cat, q] = load_inputs(in);
    PartitionedQuery pq = partition_catalog(q, 2);
    json doc;
    doc["configs"] = json::array();
    const double log_in = q.in_size() > 1 ? std::log(q.in_size()) : 1.0;
    for (std::size_t c : pq.live_configs()) {
        json j;
        j["config"] = c;
        std::cout << "config " << c << ":\n";
        try {
            Planner planner(planner_options());
            auto plan = planner.plan(Subproblem{pq.config_stats(c), q.output});
            if (auto err = check_plan(*plan, CostMode::Concrete); !err.empty()) throw InvariantError(err);
            std::string text = plan_to_string(*plan, &cat.attr_names());
            std::cout << text;
            j["q_log"] = plan->bound.q;
            j["q_exponent"] = plan->bound.q / log_in;
            j["states"] = planner.states();
            j["plan"] = text;
        } catch (const PlanRefused& e) {
            std::cout << "  refused: " << e.what() << "\n";
            j["refused"] = e.what();
        }
        doc["configs"].push_back(j);
    }
    write_artifact(in, "plan", doc);
    return 0;
}

Relation run_engine(const std::string& engine, const Query& q, json& metrics) {
    if (engine == "darts") {
        DartsResult r = darts_join(q, planner_options());
        metrics["ops"] = r.ops;
        metrics["configs"] = json::array();
        for (const auto& c : r.configs)
            metrics["configs"].push_back(
                {{"config", c.config}, {"q_log", c.q_log}, {"ops", c.ops}, {"engine", c.engine}, {"output", c.output}});
        return r.output;
    }
    if (engine == "generic") {
        std::uint64_t ops = 0;
        Relation r = generic_join(q.rels, q.output, &ops);
        metrics["ops"] = ops;
        return r;
    }
    if (engine == "yannakakis") {
        std::vector<AttrSet> edges;
        for (const auto& r : q.rels) edges.push_back(r.schema());
        auto jt = gyo_acyclic(edges);
        if (!jt) throw CLI::ValidationError("--engine", "yannakakis requires an alpha-acyclic query");
        return yannakakis(q.rels, *jt, q.output);
    }
    if (engine == "ghd") {
        PartitionedQuery pq = partition_catalog(q, 2);
        return ghd_execute(pq, static_cast<int>(std::max<std::size_t>(1, q.rels.size())));
    }
    throw CLI::ValidationError("--engine", "unknown engine " + engine);
}

int cmd_join(const Inputs& in, const std::string& engine, const std::string& out_path) {
    auto [cat, q] = load_inputs(in);
    json doc;
    doc["engine"] = engine;
    Relation r = run_engine(engine, q, doc);
    doc["output_size"] = r.size();
    doc["in"] = q.in_size();
    if (!out_path.empty()) {
        write_csv(r, cat, out_path);
        json sym = json::array();
        for (std::size_t i = 0; i < cat.symbols().size(); ++i) sym.push_back({{"id", i}, {"text", cat.symbols()[i]}});
        std::ofstream s(out_path + ".symbols.json");
        s << sym.dump(1) << '\n';
        doc["output_file"] = out_path;
    }
    std::cout << "engine " << engine << ": " << r.size() << " output tuples\n";
    write_artifact(in, "join_" + engine, doc);
    return 0;
}

int cmd_simulate(const Inputs& in, std::uint64_t L, std::uint64_t seed, bool skip) {
    auto [cat, q] = load_inputs(in);
    ParallelResult pr = parallel_join(q, L, seed, skip);
    Relation ref = generic_join(q.rels, q.output);
    if (!(pr.output == ref)) throw InvariantError("parallel_join output differs from generic_join");
    PartitionedQuery pq = partition_catalog(q, L);
    CommunicationBudget b = communication_budget(pq, L, static_cast<double>(pr.output.size()));
    json doc;
    doc["L"] = L;
    doc["seed"] = seed;
    doc["rounds"] = pr.metrics.rounds;
    doc["total_communication"] = pr.metrics.total_communication;
    doc["round1_communication"] = pr.metrics.round1_communication;
    doc["max_load"] = pr.metrics.max_load;
    doc["median_load"] = pr.metrics.median_load();
    doc["output"] = pr.output.size();
    doc["budget"] = {{"in", b.in}, {"out", b.out}, {"dbp_term", b.dbp_term}, {"total", b.total}};
    doc["ratio"] = b.total > 0 ? pr.metrics.total_communication / b.total : 0.0;
    doc["per_round"] = json::array();
    for (const auto& r : pr.metrics.per_round) {
        std::uint64_t mx = 0;
        for (auto l : r.load) mx = std::max(mx, l);
        doc["per_round"].push_back({{"name", r.name}, {"communication", r.communication}, {"max_load", mx},
                                    {"processors", r.load.size()}});
    }
    doc["configs"] = json::array();
    for (const auto& c : pr.configs) {
        json shares = json::object();
        for (AttrId a : c.shares.attrs) shares[cat.attr_names().at(a)] = c.shares.share[a];
        doc["configs"].push_back({{"config", c.config},
                                  {"dbp_log", c.dbp_log},
                                  {"shares", shares},
                                  {"rounding_factor", c.shares.rounding_factor()},
                                  {"round1_measured", c.round1_measured},
                                  {"round1_predicted", c.round1_predicted}});
        if (c.round1_measured != c.round1_predicted) throw InvariantError("round-1 communication mismatch");
    }
    std::cout << "rounds: " << pr.metrics.rounds << "\n"
              << "total communication: " << pr.metrics.total_communication << "\n"
              << "max load: " << pr.metrics.max_load << "  median load: " << pr.metrics.median_load() << "\n"
              << "predicted budget: " << b.total << "  ratio: " << doc["ratio"].get<double>() << "\n"
              << "output tuples: " << pr.output.size() << "\n";
    write_artifact(in, "simulate", doc);
    return 0;
}

int cmd_decide(const Inputs& in, const std::string& graph_path) {
    std::ifstream f(graph_path);
    if (!f) throw CatalogError("missing file: " + graph_path);
    std::stringstream ss;
    ss << f.rdbuf();
    SeriesParallelGraph g = parse_sp_graph(ss.str());
    SubquadraticVerdict v = decide_subquadratic_1sp(g);
    std::cout << to_string(v.verdict) << "\n";
    for (const auto& t : v.trace) std::cout << "  " << t << "\n";
    write_artifact(in, "decide_subquadratic", {{"verdict", to_string(v.verdict)}, {"rule", v.rule}, {"trace", v.trace}});
    return 0;
}

int cmd_selftest(const Inputs& in, int instances, std::uint64_t seed) {
    int failures = 0;
    json doc;
    doc["instances"] = instances;
    doc["failures"] = json::array();
    auto fail = [&](std::uint64_t s, const std::string& what) {
        ++failures;
        doc["failures"].push_back({{"seed", s}, {"check", what}});
        std::cerr << "seed " << s << ": " << what << "\n";
    };
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Instance inst = random_instance(s);
        const Query& q = inst.query;
        Relation ref = reference_join(q);
        if (!(generic_join(q.rels, q.output) == ref)) fail(s, "generic_join");
        if (!(darts_join(q, planner_options()).output == ref)) fail(s, "darts_join");
        if (!(parallel_join(q, 2, s).output == ref)) fail(s, "parallel_join");
        std::vector<AttrSet> edges;
        for (const auto& r : q.rels) edges.push_back(r.schema());
        if (auto jt = gyo_acyclic(edges); jt && !(yannakakis(q.rels, *jt, q.output) == ref)) fail(s, "yannakakis");
        PartitionedQuery pq = partition_catalog(q, 2);
        if (!validate_partition(pq).empty()) fail(s, "validate_partition");
        BoundReport rep = bound_report(pq);
        if (!rep.violations.empty()) fail(s, "bound ordering: " + rep.violations[0]);
    }
    doc["failed"] = failures;
    std::cout << "selftest: " << instances << " instances, " << failures << " failures\n";
    write_artifact(in, "selftest", doc);
    return failures == 0 ? 0 : 1;
}

// Writes an Instance as CSVs + manifest + query file.
void write_instance(const Instance& inst, const fs::path& dir) {
    Catalog cat;
    for (const auto& n : inst.attr_names) cat.intern_attr(n);
    for (std::size_t i = 0; i < inst.query.rels.size(); ++i) {
        const Relation& r = inst.query.rels[i];
        std::vector<Value> flat;
        for (std::size_t t = 0; t < r.size(); ++t)
            for (Value v : r.row(t)) flat.push_back(cat.intern_value(std::to_string(v)));
        NamedRelation nr;
        nr.name = inst.query.names[i];
        nr.rel = Relation::from_rows(r.schema(), std::move(flat));
        cat.add_relation(std::move(nr));
    }
    save_catalog(cat, dir);
    json q;
    q["relations"] = inst.query.names;
    std::ofstream out(dir / "query.json");
    out << q.dump(2) << '\n';
}

int cmd_gen(const std::string& kind, const std::string& dir, std::size_t N, std::size_t d, int n,
            std::uint64_t seed, const std::vector<int>& paths, bool direct) {
    Instance inst;
    if (kind == "triangle") inst = regular_triangle(N, d);
    else if (kind == "matching-cycle") inst = matching_cycle(n, N);
    else if (kind == "skewed-cycle") inst = skewed_cycle(n, N);
    else if (kind == "chain") inst = chain(n, N, seed);
    else if (kind == "k2n") inst = k2n(n, N, seed);
    else if (kind == "random") inst = random_instance(seed);
    else if (kind == "series-parallel") {
        inst = series_parallel(paths, direct, N, seed);
        SeriesParallelGraph g;
        g.source = "S";
        g.sink = "T";
        g.direct_edge = direct;
        int next = 0;
        for (std::size_t p = 0; p < paths.size(); ++p) {
            std::vector<std::string> vs = {"S"};
            for (int e = 1; e < paths[p]; ++e) vs.push_back("P" + std::to_string(p) + "_" + std::to_string(e));
            vs.push_back("T");
            g.paths.push_back(vs);
            ++next;
        }
        fs::create_directories(dir);
        std::ofstream(fs::path(dir) / "graph.json") << sp_graph_to_json(g) << '\n';
    } else {
        throw CLI::ValidationError("kind", "unknown fixture " + kind);
    }
    write_instance(inst, dir);
    std::cout << "wrote " << kind << " fixture to " << dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree-aware join toolkit: bounds, widths, joins, planning and simulation"};
    app.require_subcommand(1);
    Inputs in;
    app.add_option("--artifacts", in.artifacts, "Directory for JSON artifacts")->capture_default_str();

    auto with_catalog = [&](CLI::App* sub, bool query) {
        sub->add_option("--catalog", in.catalog, "Catalog manifest (JSON)")->required()->check(CLI::ExistingFile);
        if (query) sub->add_option("--query", in.query, "Query file (JSON)")->required()->check(CLI::ExistingFile);
    };

    std::string out_dir;
    auto* ingest = app.add_subcommand("ingest", "Load a catalog and report ingestion statistics");
    with_catalog(ingest, false);
    ingest->add_option("--out", out_dir, "Write the normalized catalog here");

    std::uint64_t L = 2;
    auto* stats = app.add_subcommand("stats", "Degree statistics per relation and attribute subset");
    with_catalog(stats, false);
    stats->add_option("--L", L, "Bucket base")->check(CLI::Range(2, 1 << 20))->capture_default_str();

    auto* bounds = app.add_subcommand("bounds", "AGM, DBP and MO bounds per degree configuration");
    with_catalog(bounds, true);

    int max_bags = 8;
    auto* width = app.add_subcommand("width", "fhw and m-width with witness decompositions");
    with_catalog(width, true);
    width->add_option("--max-bags", max_bags, "Largest decomposition considered")->capture_default_str();

    auto* plan = app.add_subcommand("plan", "Transform plan per configuration");
    with_catalog(plan, true);

    std::string engine = "darts", out_path;
    auto* join = app.add_subcommand("join", "Evaluate the query");
    with_catalog(join, true);
    join->add_option("--engine", engine, "Join engine")
        ->check(CLI::IsMember({"darts", "generic", "yannakakis", "ghd"}))
        ->capture_default_str();
    join->add_option("--out", out_path, "Sorted CSV output");

    std::uint64_t load = 16, seed = 1;
    bool skip = false;
    auto* sim = app.add_subcommand("simulate", "Simulated parallel join with communication accounting");
    with_catalog(sim, true);
    sim->add_option("--load", load, "Load parameter L")->check(CLI::Range(2, 1 << 30))->capture_default_str();
    sim->add_option("--seed", seed, "Hash seed")->capture_default_str();
    sim->add_flag("--skip-degree-rounds", skip, "Assume degree statistics are cached");

    std::string graph;
    auto* decide = app.add_subcommand("decide-subquadratic", "Subquadratic decision for 1-series-parallel graphs");
    decide->add_option("graph", graph, "Graph JSON")->required();

    int instances = 50;
    auto* self = app.add_subcommand("selftest", "Oracle equivalence and bound ordering on generated instances");
    self->add_option("--instances", instances, "Number of random instances")->capture_default_str();
    self->add_option("--seed", seed, "First seed")->capture_default_str();

    std::string kind, gen_dir;
    std::size_t N = 1000, d = 2;
    int n = 4;
    std::vector<int> paths;
    bool direct = false;
    auto* gen = app.add_subcommand("gen", "Write a synthetic fixture");
    gen->group("");
    gen->add_option("kind", kind, "triangle|matching-cycle|skewed-cycle|chain|k2n|series-parallel|random")->required();
    gen->add_option("--out", gen_dir, "Output directory")->required();
    gen->add_option("--N", N, "Tuples per relation")->capture_default_str();
    gen->add_option("--d", d, "Degree (triangle)")->capture_default_str();
    gen->add_option("--n", n, "Cycle/chain length or K_{2,n} width")->capture_default_str();
    gen->add_option("--seed", seed, "Seed")->capture_default_str();
    gen->add_option("--paths", paths, "Path lengths (series-parallel)");
    gen->add_flag("--direct-edge", direct, "Add a direct source-sink edge (series-parallel)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ingest) return cmd_ingest(in, out_dir);
        if (*stats) return cmd_stats(in, L);
        if (*bounds) return cmd_bounds(in);
        if (*width) return cmd_width(in, max_bags);
        if (*plan) return cmd_plan(in);
        if (*join) return cmd_join(in, engine, out_path);
        if (*sim) return cmd_simulate(in, load, seed, skip);
        if (*decide) return cmd_decide(in, graph);
        if (*self) return cmd_selftest(in, instances, seed);
        if (*gen) return cmd_gen(kind, gen_dir, N, d, n, seed, paths, direct);
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const WidthError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
