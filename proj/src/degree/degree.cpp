#include "degjoin/degree.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "degjoin/tuple_hash.hpp"

namespace degjoin {

namespace {

/// Dense group id of pi_A(row) for every row, plus the number of groups.
std::pair<std::vector<std::uint32_t>, std::uint32_t> group_rows(const Relation& rel, AttrSet sub) {
    std::vector<std::uint32_t> gid(rel.size());
    if (sub.empty()) return {gid, rel.empty() ? 0u : 1u};
    std::unordered_map<std::vector<Value>, std::uint32_t, TupleHash> ids;
    ids.reserve(rel.size());
    std::vector<Value> key;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        project_row(rel, i, sub, key);
        auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
        gid[i] = it->second;
    }
    return {gid, static_cast<std::uint32_t>(ids.size())};
}

}  // namespace

DegreeStats compute_degrees(const Relation& rel) {
    DegreeStats d;
    d.schema = rel.schema();
    d.arity = rel.arity();
    d.size = rel.size();
    const std::uint32_t subsets = 1u << d.arity;
    d.max_deg.assign(subsets, 0);
    d.row_deg.assign(subsets, {});
    d.proj_deg.assign(std::size_t{subsets} * subsets, 0);

    std::vector<std::vector<std::uint32_t>> gid(subsets);
    std::vector<std::uint32_t> groups(subsets);
    for (std::uint32_t m = 0; m < subsets; ++m) {
        auto [g, n] = group_rows(rel, from_local_mask(d.schema, m));
        gid[m] = std::move(g);
        groups[m] = n;
        std::vector<std::uint32_t> count(n, 0);
        for (auto x : gid[m]) ++count[x];
        d.row_deg[m].resize(rel.size());
        for (std::size_t i = 0; i < rel.size(); ++i) d.row_deg[m][i] = count[gid[m][i]];
        d.max_deg[m] = count.empty() ? 0 : *std::max_element(count.begin(), count.end());
    }
    // d_{pi_B R, A}: number of distinct B-groups sharing one A-group.
    for (std::uint32_t mb = 0; mb < subsets; ++mb) {
        std::vector<std::size_t> rep(groups[mb], SIZE_MAX);
        for (std::size_t i = 0; i < rel.size(); ++i)
            if (rep[gid[mb][i]] == SIZE_MAX) rep[gid[mb][i]] = i;
        for (std::uint32_t ma = mb;; ma = (ma - 1) & mb) {
            std::vector<std::uint32_t> count(groups[ma], 0);
            std::uint32_t best = 0;
            for (std::size_t r : rep) best = std::max(best, ++count[gid[ma][r]]);
            d.proj_deg[(std::size_t{ma} << d.arity) | mb] = best;
            if (ma == 0) break;
        }
    }
    return d;
}

std::map<std::vector<Value>, std::uint64_t> degree_table(const Relation& rel, AttrSet a) {
    std::map<std::vector<Value>, std::uint64_t> out;
    std::vector<Value> key;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        project_row(rel, i, a, key);
        ++out[key];
    }
    return out;
}

RelStats log_stats(const DegreeStats& d) {
    RelStats s(d.schema);
    if (d.size == 0) {
        s.empty = true;
        return s;
    }
    for (std::size_t i = 0; i < d.proj_deg.size(); ++i)
        if (d.proj_deg[i] > 0) s.ld[i] = std::log(static_cast<double>(d.proj_deg[i]));
    return s;
}

RelStats log_stats(const Relation& rel) { return log_stats(compute_degrees(rel)); }

std::vector<RelStats> log_stats(const Query& q) {
    std::vector<RelStats> out;
    for (const auto& r : q.rels) out.push_back(log_stats(r));
    return out;
}

int bucket_of(std::uint64_t d, std::uint64_t L) {
    if (d < 1) throw std::invalid_argument("bucket_of: degree must be >= 1");
    if (L < 2) throw std::invalid_argument("bucket_of: L must be >= 2");
    int l = 0;
    while (d >= L) {
        d /= L;
        ++l;
    }
    return l;
}

std::vector<std::uint8_t> tuple_signature(const DegreeStats& stats, std::size_t row, std::uint64_t L) {
    std::vector<std::uint8_t> sig(stats.row_deg.size());
    for (std::size_t m = 0; m < sig.size(); ++m)
        sig[m] = static_cast<std::uint8_t>(bucket_of(stats.row_deg[m][row], L));
    return sig;
}

std::size_t PartitionedQuery::config_count() const {
    std::size_t n = 1;
    for (const auto& p : parts) n *= p.size();
    return n;
}

std::vector<int> PartitionedQuery::config(std::size_t id) const {
    std::vector<int> c(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        c[i] = static_cast<int>(id % parts[i].size());
        id /= parts[i].size();
    }
    return c;
}

Query PartitionedQuery::config_query(std::size_t id) const {
    auto c = config(id);
    Query q;
    q.names = query.names;
    q.output = query.output;
    for (std::size_t i = 0; i < parts.size(); ++i) q.rels.push_back(parts[i][c[i]].rel);
    return q;
}

std::vector<RelStats> PartitionedQuery::config_stats(std::size_t id) const {
    auto c = config(id);
    std::vector<RelStats> out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(log_stats(parts[i][c[i]].stats));
    return out;
}

std::vector<std::size_t> PartitionedQuery::live_configs() const {
    const std::size_t n = parts.size();
    std::vector<std::size_t> out;
    if (n == 0) {
        out.push_back(0);
        return out;
    }
    for (const auto& p : parts)
        if (p.empty()) return out;
    // compatible[i][j][fi * |parts[j]| + fj] for i < j.
    std::vector<std::vector<std::vector<bool>>> compatible(n, std::vector<std::vector<bool>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            AttrSet common = query.rels[i].schema() & query.rels[j].schema();
            auto& m = compatible[i][j];
            m.assign(parts[i].size() * parts[j].size(), true);
            if (common.empty()) continue;
            std::vector<Relation> pj;
            for (const auto& f : parts[j]) pj.push_back(project(f.rel, common));
            for (std::size_t a = 0; a < parts[i].size(); ++a) {
                Relation pi = project(parts[i][a].rel, common);
                for (std::size_t b = 0; b < parts[j].size(); ++b)
                    m[a * parts[j].size() + b] = !semijoin(pi, pj[b]).empty();
            }
        }
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) {
            std::size_t id = 0;
            for (std::size_t i = n; i-- > 0;) id = id * parts[i].size() + pick[i];
            out.push_back(id);
            return;
        }
        for (std::size_t f = 0; f < parts[k].size(); ++f) {
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) ok = compatible[i][k][pick[i] * parts[k].size() + f];
            if (!ok) continue;
            pick[k] = f;
            rec(k + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

PartitionedQuery partition_catalog(const Query& q, std::uint64_t L) {
    PartitionedQuery pq;
    pq.query = q;
    pq.L = L;
    for (const auto& rel : q.rels) {
        DegreeStats st = compute_degrees(rel);
        std::map<std::vector<std::uint8_t>, RelationBuilder> groups;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            auto sig = tuple_signature(st, i, L);
            auto it = groups.find(sig);
            if (it == groups.end()) it = groups.emplace(sig, RelationBuilder(rel.schema())).first;
            if (rel.arity() == 0)
                it->second.add_unit();
            else
                it->second.add(rel.row(i));
        }
        std::vector<Fragment> frags;
        for (auto& [sig, b] : groups) {
            Fragment f;
            f.signature = sig;
            f.rel = std::move(b).build();
            f.stats = compute_degrees(f.rel);
            frags.push_back(std::move(f));
        }
        pq.base_stats.push_back(std::move(st));
        pq.parts.push_back(std::move(frags));
    }
    return pq;
}

std::vector<std::string> validate_partition(const PartitionedQuery& pq) {
    std::vector<std::string> issues;
    auto report = [&](std::size_t r, std::size_t f, const std::string& what) {
        std::ostringstream os;
        os << "relation " << r << " fragment " << f << ": " << what;
        issues.push_back(os.str());
    };
    for (std::size_t r = 0; r < pq.parts.size(); ++r) {
        const Relation& whole = pq.query.rels[r];
        const DegreeStats& st = pq.base_stats[r];
        std::size_t total = 0;
        Relation seen(whole.schema());
        for (std::size_t f = 0; f < pq.parts[r].size(); ++f) {
            const Fragment& frag = pq.parts[r][f];
            total += frag.rel.size();
            if (!semijoin(frag.rel, seen).empty()) report(r, f, "overlaps an earlier fragment");
            seen = set_union(seen, frag.rel);
            // Every tuple must carry the fragment's signature under the full relation's degrees.
            std::vector<Value> key;
            for (std::size_t i = 0; i < frag.rel.size(); ++i) {
                auto row = frag.rel.row(i);
                if (!whole.contains(row)) {
                    report(r, f, "tuple not in relation");
                    continue;
                }
                // Locate the row in the sorted parent relation.
                std::size_t lo = 0, hi = whole.size();
                while (lo < hi) {
                    std::size_t mid = (lo + hi) / 2;
                    auto m = whole.row(mid);
                    if (std::lexicographical_compare(m.begin(), m.end(), row.begin(), row.end()))
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                if (tuple_signature(st, lo, pq.L) != frag.signature) report(r, f, "tuple signature mismatch");
            }
            // Implicit degree bound: deg(v, pi_A R(c), A') <= L^(j+1-i).
            const std::uint32_t subsets = 1u << frag.stats.arity;
            for (std::uint32_t ma = 0; ma < subsets; ++ma) {
                for (std::uint32_t mp = ma;; mp = (mp - 1) & ma) {
                    int i = frag.signature[ma], j = frag.signature[mp];
                    double limit = std::pow(static_cast<double>(pq.L), j + 1 - i);
                    double actual = static_cast<double>(frag.stats.proj_deg[(std::size_t{mp} << frag.stats.arity) | ma]);
                    if (actual > limit) {
                        std::ostringstream os;
                        os << "implicit degree bound violated for subsets " << mp << "/" << ma << ": " << actual
                           << " > " << limit;
                        report(r, f, os.str());
                    }
                    if (mp == 0) break;
                }
            }
        }
        if (total != whole.size()) report(r, 0, "fragment sizes do not sum to relation size");
    }
    return issues;
}

}  // namespace degjoin
