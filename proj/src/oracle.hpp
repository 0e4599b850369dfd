#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "setcore.hpp"

namespace chvip {

constexpr int kOracleLimit = 5;
constexpr int kOracleLongRunLimit = 6;

struct OracleReport {
    int n = 0;
    long downsets_checked = 0;
    bool all_satisfy = true;
    std::optional<Family> first_violation;
    int max_gap = 0;  // max over downsets of (max intersecting - max star)
};

// Streams every downset of 2^[n] exactly once, including the empty family
// and {emptyset}. Throws std::invalid_argument above the limit (6 only
// with long_run).
void enumerate_downsets(int n, bool long_run, const std::function<void(const Family&)>& yield);

// Independent enumerator: closes each antichain of nonempty sets downward.
// Exists to cross-check enumerate_downsets; same output as a set.
void enumerate_downsets_by_bases(int n, const std::function<void(const Family&)>& yield);

// Maximum independent set in the disjointness graph on the nonempty
// members of f.
std::pair<int, Family> max_intersecting_subfamily(const Family& f);

// Throws std::invalid_argument unless d is a downset.
bool has_star_property(const Family& d);

OracleReport verify_conjecture(int n, bool long_run = false,
                               const std::function<void(long)>& progress = {});

}  // namespace chvip
