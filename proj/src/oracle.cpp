#include "oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace chvip {

namespace {

void check_limit(int n, bool long_run) {
    int limit = long_run ? kOracleLongRunLimit : kOracleLimit;
    if (n < 1 || n > limit)
        throw std::invalid_argument("oracle supports 1 <= n <= " + std::to_string(limit) +
                                    (long_run ? "" : " (n=6 needs the long-run flag)"));
}

// Recursive downset enumeration over the nonempty subsets, largest sets
// first. Including a set forces all its nonempty subsets in; excluding it
// forces all supersets out. Forced decisions are applied eagerly and
// undone on backtrack.
struct DownsetEnum {
    int n;
    std::vector<SubsetCode> order;       // nonempty subsets, decreasing size
    std::vector<int> pos;                // subset code -> index in order
    std::vector<signed char> state;      // by order index: 0 undecided, 1 in, -1 out
    std::vector<std::vector<int>> subs;  // proper nonempty subsets, by order index
    std::vector<std::vector<int>> sups;  // proper supersets, by order index
    const std::function<void(const Family&)>& yield;

    DownsetEnum(int n_, const std::function<void(const Family&)>& y) : n(n_), yield(y) {
        SubsetCode full = (SubsetCode{1} << n) - 1;
        for (SubsetCode s = 1; s <= full; ++s) order.push_back(s);
        std::sort(order.begin(), order.end(), [](SubsetCode a, SubsetCode b) {
            int pa = popcount(a), pb = popcount(b);
            return pa != pb ? pa > pb : a < b;
        });
        pos.assign(full + 1, -1);
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
        state.assign(order.size(), 0);
        subs.resize(order.size());
        sups.resize(order.size());
        for (size_t i = 0; i < order.size(); ++i) {
            SubsetCode s = order[i];
            for (SubsetCode t = 1; t <= full; ++t) {
                if (t == s) continue;
                if ((t & s) == t) subs[i].push_back(pos[t]);
                if ((s & t) == s) sups[i].push_back(pos[t]);
            }
        }
    }

    void emit() {
        std::vector<SubsetCode> members;
        for (size_t i = 0; i < order.size(); ++i)
            if (state[i] == 1) members.push_back(order[i]);
        if (members.empty()) {
            yield(Family(n, {}));
            yield(Family(n, {0}));
            return;
        }
        members.push_back(0);
        yield(Family(n, std::move(members)));
    }

    // Sets state[idx] and everything it forces; records changes on trail.
    bool force(int idx, signed char val, std::vector<int>& trail) {
        if (state[idx] == val) return true;
        if (state[idx] != 0) return false;
        state[idx] = val;
        trail.push_back(idx);
        const auto& forced = val == 1 ? subs[idx] : sups[idx];
        for (int j : forced)
            if (!force(j, val, trail)) return false;
        return true;
    }

    void undo(std::vector<int>& trail) {
        for (int idx : trail) state[idx] = 0;
        trail.clear();
    }

    void rec(size_t at) {
        while (at < order.size() && state[at] != 0) ++at;
        if (at == order.size()) {
            emit();
            return;
        }
        for (signed char val : {+1, -1}) {
            std::vector<int> trail;
            if (force(static_cast<int>(at), val, trail)) rec(at + 1);
            undo(trail);
        }
    }
};

struct AntichainEnum {
    int n;
    SubsetCode full;
    std::vector<SubsetCode> chosen;
    const std::function<void(const Family&)>& yield;

    void rec(SubsetCode next) {
        if (chosen.empty()) {
            yield(Family(n, {}));
            yield(Family(n, {0}));
        } else {
            yield(downward_closure(Family(n, chosen)));
        }
        for (SubsetCode s = next; s <= full; ++s) {
            bool comparable = false;
            for (SubsetCode c : chosen) {
                if ((c & s) == c || (c & s) == s) {
                    comparable = true;
                    break;
                }
            }
            if (comparable) continue;
            chosen.push_back(s);
            rec(s + 1);
            chosen.pop_back();
        }
    }
};

// Maximum independent set in the disjointness graph, vertices as a
// uint64_t mask. adj[v] holds the neighbors of v.
struct MisSearch {
    const std::vector<std::uint64_t>& adj;
    int best = 0;
    std::uint64_t best_set = 0;

    // Greedy clique cover of cand; cliques of the disjointness graph are
    // pairwise disjoint families, so the cover size bounds any independent
    // subset of cand.
    int bound(std::uint64_t cand) const {
        int cliques = 0;
        while (cand) {
            int v = __builtin_ctzll(cand);
            std::uint64_t clique_adj = adj[static_cast<size_t>(v)] & cand;
            cand &= ~(std::uint64_t{1} << v);
            ++cliques;
            // Grow the clique greedily inside cand.
            while (clique_adj) {
                int w = __builtin_ctzll(clique_adj);
                cand &= ~(std::uint64_t{1} << w);
                clique_adj &= adj[static_cast<size_t>(w)] & ~((std::uint64_t{1} << (w + 1)) - 1);
            }
        }
        return cliques;
    }

    void rec(std::uint64_t chosen, int size, std::uint64_t cand) {
        if (size > best) {
            best = size;
            best_set = chosen;
        }
        if (!cand || size + bound(cand) <= best) return;
        int v = __builtin_ctzll(cand);
        // Include v.
        rec(chosen | (std::uint64_t{1} << v), size + 1,
            cand & ~(std::uint64_t{1} << v) & ~adj[static_cast<size_t>(v)]);
        // Exclude v.
        rec(chosen, size, cand & ~(std::uint64_t{1} << v));
    }
};

}  // namespace

void enumerate_downsets(int n, bool long_run, const std::function<void(const Family&)>& yield) {
    check_limit(n, long_run);
    DownsetEnum e(n, yield);
    e.rec(0);
}

void enumerate_downsets_by_bases(int n, const std::function<void(const Family&)>& yield) {
    check_limit(n, true);
    AntichainEnum e{n, (SubsetCode{1} << n) - 1, {}, yield};
    e.rec(1);
}

std::pair<int, Family> max_intersecting_subfamily(const Family& f) {
    std::vector<SubsetCode> verts;
    for (SubsetCode s : f.members)
        if (s != 0) verts.push_back(s);
    if (verts.size() > 63) throw std::invalid_argument("family too large for the bitset search");
    std::vector<std::uint64_t> adj(verts.size(), 0);
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if ((verts[i] & verts[j]) == 0) {
                adj[i] |= std::uint64_t{1} << j;
                adj[j] |= std::uint64_t{1} << i;
            }
    MisSearch search{adj};
    std::uint64_t all = verts.empty() ? 0 : (~std::uint64_t{0} >> (64 - verts.size()));
    search.rec(0, 0, all);
    std::vector<SubsetCode> witness;
    for (size_t i = 0; i < verts.size(); ++i)
        if (search.best_set & (std::uint64_t{1} << i)) witness.push_back(verts[i]);
    return {search.best, Family(f.n, std::move(witness))};
}

bool has_star_property(const Family& d) {
    if (!is_downset(d)) throw std::invalid_argument("has_star_property needs a downset");
    return max_star(d).second >= max_intersecting_subfamily(d).first;
}

OracleReport verify_conjecture(int n, bool long_run, const std::function<void(long)>& progress) {
    OracleReport report;
    report.n = n;
    report.max_gap = 0;
    enumerate_downsets(n, long_run, [&](const Family& d) {
        ++report.downsets_checked;
        int gap = max_intersecting_subfamily(d).first - max_star(d).second;
        if (gap > report.max_gap) report.max_gap = gap;
        if (gap > 0 && !report.first_violation) {
            report.all_satisfy = false;
            report.first_violation = d;
        }
        if (progress && report.downsets_checked % 100000 == 0) progress(report.downsets_checked);
    });
    return report;
}

}  // namespace chvip
