#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chvip {

// A subset of [n] encoded as an n-bit mask: element i is present iff bit
// (i-1) is set. The ground-set size n travels with the Family.
using SubsetCode = std::uint32_t;

constexpr int kMaxGroundSet = 10;
constexpr int kMaxCanonicalGroundSet = 8;

// Ordered, duplicate-free collection of subsets of [n]. Members are kept
// strictly increasing by code so that equality and lexicographic
// comparison are structural.
struct Family {
    int n = 0;
    std::vector<SubsetCode> members;

    Family() = default;
    // Sorts and deduplicates.
    Family(int n_, std::vector<SubsetCode> members_);

    bool operator==(const Family&) const = default;
    auto operator<=>(const Family&) const = default;

    bool contains(SubsetCode s) const;
    bool well_formed() const;
};

// Representatives of isomorphism classes of k-families of m-subsets of [n].
struct IsoClassSet {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<Family> representatives;
};

int popcount(SubsetCode s);

SubsetCode union_of(const Family& f);
bool is_downset(const Family& f);
Family downward_closure(const Family& f);
bool is_intersecting(const Family& f);

// Element of [n] whose star in f is largest, with its size. Ties go to the
// smallest element; a family with no nonempty member reports (1, 0).
std::pair<int, int> max_star(const Family& f);

// Lexicographically smallest image of f over all permutations of [n].
Family canonical_form(const Family& f);

// Image of f under a permutation given as perm[i] = image of element i+1.
Family apply_permutation(const Family& f, const std::vector<int>& perm);

IsoClassSet enumerate_iso_classes(int n, int m, int k);

// Textual family literal: comma-separated sets in braces, e.g. "{1,2},{3}";
// "{}" is the empty set; the empty string is the empty family. Whitespace
// is insignificant.
std::optional<Family> parse_family(const std::string& text, int n);
std::string format_family(const Family& f);

}  // namespace chvip
