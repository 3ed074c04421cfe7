#include "degjoin/mrsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "degjoin/generic_join.hpp"

namespace degjoin {

namespace {

constexpr std::uint64_t kMaxProcessors = 50'000'000;

std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::uint64_t tuple_hash(std::uint64_t seed, std::span<const Value> t) {
    std::uint64_t h = mix(seed + 0x632BE59BD9B4E019ull);
    for (std::size_t i = 0; i < t.size(); ++i) h = mix(h ^ sim_hash(seed, static_cast<AttrId>(i), t[i]));
    return h;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t sim_hash(std::uint64_t seed, AttrId a, Value x) {
    return mix(x * 0x9E3779B97F4A7C15ull + mix(seed ^ (static_cast<std::uint64_t>(a) + 1) * 0xD6E8FEB86659FD93ull));
}

std::uint64_t ShareAssignment::processors() const {
    std::uint64_t p = 1;
    for (AttrId a : attrs) {
        p *= share[a];
        if (p > kMaxProcessors) throw std::runtime_error("share grid exceeds the processor limit");
    }
    return p;
}

double ShareAssignment::rounding_factor() const {
    double log_ratio = 0;
    for (AttrId a : attrs) log_ratio += std::log(static_cast<double>(share[a])) - v[a];
    return std::exp(log_ratio);
}

ShareAssignment make_shares(const std::vector<double>& v, AttrSet attrs) {
    ShareAssignment s;
    s.attrs = attrs;
    s.share.assign(kMaxAttrs, 1);
    s.v.assign(kMaxAttrs, 0.0);
    for (AttrId a : attrs) {
        double va = a < static_cast<AttrId>(v.size()) ? v[a] : 0.0;
        s.v[a] = va;
        double raw = std::exp(va);
        s.share[a] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(raw + 0.5)));
    }
    return s;
}

void SimMetrics::add_round(RoundLoad r) {
    ++rounds;
    total_communication += r.communication;
    if (per_round.empty()) round1_communication = r.communication;
    for (auto l : r.load) max_load = std::max(max_load, l);
    per_round.push_back(std::move(r));
}

void SimMetrics::merge_parallel(const SimMetrics& o) {
    rounds = std::max(rounds, o.rounds);
    total_communication += o.total_communication;
    round1_communication += o.round1_communication;
    max_load = std::max(max_load, o.max_load);
    if (per_round.size() < o.per_round.size()) per_round.resize(o.per_round.size());
    for (std::size_t i = 0; i < o.per_round.size(); ++i) {
        auto& mine = per_round[i];
        if (mine.name.empty()) mine.name = o.per_round[i].name;
        mine.communication += o.per_round[i].communication;
        mine.load.insert(mine.load.end(), o.per_round[i].load.begin(), o.per_round[i].load.end());
    }
}

double SimMetrics::median_load() const {
    std::vector<std::uint64_t> all;
    for (const auto& r : per_round)
        for (auto l : r.load)
            if (l > 0) all.push_back(l);
    if (all.empty()) return 0;
    std::sort(all.begin(), all.end());
    const std::size_t n = all.size();
    return n % 2 ? static_cast<double>(all[n / 2]) : 0.5 * static_cast<double>(all[n / 2 - 1] + all[n / 2]);
}

SimCluster::SimCluster(ShareAssignment shares, std::uint64_t seed)
    : shares_(std::move(shares)), seed_(seed), processors_(shares_.processors()) {}

std::uint64_t SimCluster::bucket(AttrId a, Value x) const { return sim_hash(seed_, a, x) % shares_.share[a]; }

std::uint64_t shares_communication(const std::vector<SubRelation>& subrels, const ShareAssignment& shares) {
    AttrSet all;
    for (const auto& s : subrels) all |= s.attrs;
    std::uint64_t total = 0;
    for (const auto& s : subrels) {
        std::uint64_t rep = 1;
        for (AttrId a : all - s.attrs) rep *= shares.share[a];
        total += project(s.rel, s.attrs).size() * rep;
    }
    return total;
}

SharesResult shares_round(const std::vector<SubRelation>& subrels, const ShareAssignment& shares,
                          std::uint64_t seed) {
    AttrSet all;
    for (const auto& s : subrels) all |= s.attrs;
    ShareAssignment grid = shares;
    grid.attrs = all;
    SimCluster cluster(grid, seed);
    const std::uint64_t procs = cluster.processors();
    std::vector<std::uint64_t> stride(kMaxAttrs, 0);
    {
        std::uint64_t st = 1;
        for (AttrId a : all) {
            stride[a] = st;
            st *= grid.share[a];
        }
    }

    const std::size_t k = subrels.size();
    // processor -> per subrelation flat rows
    std::unordered_map<std::uint64_t, std::vector<std::vector<Value>>> inbox;
    RoundLoad round;
    round.name = "shares";
    round.load.assign(procs, 0);

    for (std::size_t i = 0; i < k; ++i) {
        Relation p = project(subrels[i].rel, subrels[i].attrs);
        const AttrSet fixed = subrels[i].attrs;
        const std::vector<AttrId> free = (all - fixed).to_vector();
        for (std::size_t r = 0; r < p.size(); ++r) {
            auto row = p.row(r);
            std::uint64_t base = 0;
            int c = 0;
            for (AttrId a : fixed) base += cluster.bucket(a, row[c++]) * stride[a];
            // Enumerate every coordinate of the free attributes.
            std::vector<std::uint64_t> digit(free.size(), 0);
            while (true) {
                std::uint64_t id = base;
                for (std::size_t f = 0; f < free.size(); ++f) id += digit[f] * stride[free[f]];
                auto& box = inbox[id];
                if (box.empty()) box.resize(k);
                box[i].insert(box[i].end(), row.begin(), row.end());
                ++round.load[id];
                ++round.communication;
                std::size_t f = 0;
                while (f < free.size() && ++digit[f] == grid.share[free[f]]) digit[f++] = 0;
                if (f == free.size()) break;
            }
        }
    }

    SharesResult res;
    RelationBuilder out(all);
    std::vector<std::uint64_t> ids;
    for (const auto& [id, _] : inbox) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (auto id : ids) {
        auto& box = inbox[id];
        std::vector<Relation> local;
        bool missing = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (box[i].empty()) missing = true;
            local.push_back(Relation::from_rows(subrels[i].attrs, std::move(box[i])));
        }
        if (missing) continue;
        Relation j = generic_join(local, all);
        for (std::size_t r = 0; r < j.size(); ++r) out.add(j.row(r));
    }
    res.output = std::move(out).build();
    res.metrics.add_round(std::move(round));
    return res;
}

int mr_degree_rounds(std::size_t n, std::uint64_t L) {
    if (L < 2) throw std::invalid_argument("mr_degree: L must be at least 2");
    // ceil(log_L(ceil(n / L))) computed exactly on integers.
    std::uint64_t k2 = std::max<std::uint64_t>(1, ceil_div(n, L));
    int steps = 0;
    for (std::uint64_t span = 1; span < k2; span *= L) ++steps;
    return steps + 1;
}

DegreeRun mr_degree(const Relation& rel, AttrSet a, std::uint64_t L, std::uint64_t seed) {
    if (L < 2) throw std::invalid_argument("mr_degree: L must be at least 2");
    if (!a.subset_of(rel.schema())) throw std::invalid_argument("mr_degree: attributes outside the schema");
    DegreeRun run;
    const std::uint64_t n = rel.size();
    if (n == 0) {
        run.metrics.add_round(RoundLoad{"scatter", 0, {}});
        return run;
    }
    const std::uint64_t k1 = n;
    std::uint64_t k2 = std::max<std::uint64_t>(1, ceil_div(n, L));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, k2);

    using Proc = std::pair<std::uint64_t, std::uint64_t>;
    std::map<Proc, std::map<std::vector<Value>, std::uint64_t>> procs;
    std::map<Proc, std::uint64_t> received;
    std::vector<Value> key;
    for (std::size_t r = 0; r < n; ++r) {
        project_row(rel, r, a, key);
        Proc p{tuple_hash(seed, key) % k1, pick(rng)};
        procs[p][key] += 1;
        ++received[p];
    }
    auto close_round = [&](const std::string& name, std::uint64_t comm) {
        RoundLoad rl;
        rl.name = name;
        rl.communication = comm;
        for (const auto& [p, c] : received) rl.load.push_back(c);
        run.metrics.add_round(std::move(rl));
    };
    close_round("scatter", n);

    while (k2 > 1) {
        std::map<Proc, std::map<std::vector<Value>, std::uint64_t>> next;
        received.clear();
        std::uint64_t comm = 0;
        for (auto& [p, table] : procs) {
            Proc dest{p.first, ceil_div(p.second, L)};
            for (auto& [k, c] : table) {
                next[dest][k] += c;
                if (dest != p) {
                    ++comm;
                    ++received[dest];
                }
            }
        }
        procs = std::move(next);
        k2 = ceil_div(k2, L);
        close_round("aggregate", comm);
    }
    for (auto& [p, table] : procs)
        for (auto& [k, c] : table) run.counts[k] += c;
    return run;
}

ParallelResult parallel_join(const Query& q, std::uint64_t L, std::uint64_t seed, bool skip_degree_rounds) {
    if (L < 2) throw std::invalid_argument("parallel_join: L must be at least 2");
    ParallelResult res;
    res.output = Relation(q.output);

    if (!skip_degree_rounds) {
        std::uint64_t s = seed;
        for (const auto& r : q.rels) {
            for_each_subset(r.schema(), [&](AttrSet sub) {
                if (sub.empty() || sub == r.schema()) return;
                res.degree_metrics.merge_parallel(mr_degree(r, sub, L, ++s).metrics);
            });
        }
    }

    PartitionedQuery pq = partition_catalog(q, L);
    const AttrSet all = q.attrs();
    SimMetrics join;
    std::size_t index = 0;
    for (std::size_t c : pq.live_configs()) {
        Query cq = pq.config_query(c);
        if (cq.any_empty()) continue;
        auto stats = pq.config_stats(c);
        DbpResult dbp = dbp_log(stats, all, static_cast<double>(L));
        ConfigSim cs;
        cs.config = c;
        cs.dbp_log = dbp.log_value;
        cs.cover = dbp.cover;
        cs.shares = make_shares(dbp.v, all);
        std::vector<SubRelation> subrels;
        std::vector<bool> full(cq.rels.size(), false);
        for (const auto& item : dbp.cover) {
            subrels.push_back({cq.rels[item.rel], item.attrs});
            if (item.attrs == cq.rels[item.rel].schema()) full[item.rel] = true;
        }
        const std::uint64_t cseed = mix(seed + 0x9E3779B97F4A7C15ull * (++index));
        SharesResult r1 = shares_round(subrels, cs.shares, cseed);
        cs.round1_measured = r1.metrics.round1_communication;
        cs.round1_predicted = shares_communication(subrels, cs.shares);
        SimMetrics m = r1.metrics;
        Relation j = std::move(r1.output);

        std::vector<int> partners;
        for (std::size_t i = 0; i < cq.rels.size(); ++i)
            if (!full[i]) partners.push_back(static_cast<int>(i));
        if (!partners.empty()) {
            // Round 2: semijoins of the round-1 output with every partner.
            std::uint64_t moved = 0;
            for (int i : partners) moved += j.size() + cq.rels[i].size();
            const std::uint64_t p2 = std::max<std::uint64_t>(1, ceil_div(moved, L));
            RoundLoad r2{"semijoin", moved, std::vector<std::uint64_t>(p2, 0)};
            std::vector<Value> key;
            std::vector<Relation> reduced;
            for (int i : partners) {
                const Relation& rel = cq.rels[i];
                for (std::size_t r = 0; r < j.size(); ++r) {
                    project_row(j, r, rel.schema(), key);
                    ++r2.load[tuple_hash(cseed + i, key) % p2];
                }
                for (std::size_t r = 0; r < rel.size(); ++r) ++r2.load[tuple_hash(cseed + i, rel.row(r)) % p2];
                reduced.push_back(semijoin(j, rel));
            }
            m.add_round(std::move(r2));
            // Round 3: intersection of the semijoin results, hashed on whole tuples.
            std::uint64_t moved3 = 0;
            for (const auto& r : reduced) moved3 += r.size();
            const std::uint64_t p3 = std::max<std::uint64_t>(1, ceil_div(moved3, L));
            RoundLoad r3{"intersect", moved3, std::vector<std::uint64_t>(p3, 0)};
            for (const auto& r : reduced)
                for (std::size_t t = 0; t < r.size(); ++t) ++r3.load[tuple_hash(cseed, r.row(t)) % p3];
            m.add_round(std::move(r3));
            j = reduced[0];
            for (std::size_t i = 1; i < reduced.size(); ++i) j = set_intersection(j, reduced[i]);
        }
        Relation out = project(j, q.output);
        cs.output = out.size();
        res.output = set_union(res.output, out);
        join.merge_parallel(m);
        res.configs.push_back(std::move(cs));
    }

    // Degree rounds run before the join rounds.
    res.metrics = res.degree_metrics;
    for (auto& r : join.per_round) {
        RoundLoad copy = r;
        res.metrics.rounds += 1;
        res.metrics.total_communication += copy.communication;
        for (auto l : copy.load) res.metrics.max_load = std::max(res.metrics.max_load, l);
        res.metrics.per_round.push_back(std::move(copy));
    }
    res.metrics.round1_communication = join.round1_communication;
    return res;
}

CommunicationBudget communication_budget(const PartitionedQuery& pq, std::uint64_t L, double out_size) {
    CommunicationBudget b;
    b.in = pq.in_size();
    b.out = out_size;
    const AttrSet all = pq.query.attrs();
    for (std::size_t c : pq.live_configs()) {
        DbpResult d = dbp_log(pq.config_stats(c), all, static_cast<double>(L));
        if (d.log_value == -std::numeric_limits<double>::infinity()) continue;
        b.dbp_term = std::max(b.dbp_term, static_cast<double>(L) * std::exp(d.log_value));
    }
    b.total = b.in + b.out + b.dbp_term;
    return b;
}

}  // namespace degjoin
