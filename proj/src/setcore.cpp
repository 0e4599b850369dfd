#include "setcore.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace chvip {

int popcount(SubsetCode s) {
    return std::popcount(s);
}

Family::Family(int n_, std::vector<SubsetCode> members_) : n(n_), members(std::move(members_)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool Family::contains(SubsetCode s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

bool Family::well_formed() const {
    if (n < 1 || n > kMaxGroundSet) return false;
    SubsetCode full = (SubsetCode(1) << n) - 1;
    SubsetCode prev = 0;
    bool first = true;
    for (SubsetCode s : members) {
        if ((s & ~full) != 0) return false;
        if (!first && s <= prev) return false;
        prev = s;
        first = false;
    }
    return true;
}

SubsetCode union_of(const Family& f) {
    SubsetCode u = 0;
    for (SubsetCode s : f.members) u |= s;
    return u;
}

bool is_downset(const Family& f) {
    for (SubsetCode s : f.members) {
        // enumerate proper subsets of s
        for (SubsetCode t = (s - 1) & s;; t = (t - 1) & s) {
            if (!f.contains(t)) return false;
            if (t == 0) break;
        }
    }
    return true;
}

Family downward_closure(const Family& f) {
    std::set<SubsetCode> out;
    out.insert(0);
    for (SubsetCode s : f.members) {
        for (SubsetCode t = s;; t = (t - 1) & s) {
            out.insert(t);
            if (t == 0) break;
        }
    }
    return Family(f.n, std::vector<SubsetCode>(out.begin(), out.end()));
}

bool is_intersecting(const Family& f) {
    // The empty set intersects nothing, itself included.
    if (f.contains(0)) return false;
    for (size_t i = 0; i < f.members.size(); ++i)
        for (size_t j = i + 1; j < f.members.size(); ++j)
            if ((f.members[i] & f.members[j]) == 0) return false;
    return true;
}

std::pair<int, int> max_star(const Family& f) {
    int best_elem = 1;
    int best = 0;
    for (int i = 1; i <= f.n; ++i) {
        SubsetCode bit = SubsetCode(1) << (i - 1);
        int count = 0;
        for (SubsetCode s : f.members)
            if (s & bit) ++count;
        if (count > best) {
            best = count;
            best_elem = i;
        }
    }
    return {best_elem, best};
}

Family apply_permutation(const Family& f, const std::vector<int>& perm) {
    std::vector<SubsetCode> mapped;
    mapped.reserve(f.members.size());
    for (SubsetCode s : f.members) {
        SubsetCode img = 0;
        for (int i = 1; i <= f.n; ++i)
            if (s & (SubsetCode(1) << (i - 1))) img |= SubsetCode(1) << (perm[i - 1] - 1);
        mapped.push_back(img);
    }
    return Family(f.n, std::move(mapped));
}

Family canonical_form(const Family& f) {
    if (f.n > kMaxCanonicalGroundSet) throw std::invalid_argument("canonical_form: n > 8");
    std::vector<int> perm(f.n);
    std::iota(perm.begin(), perm.end(), 1);
    Family best = f;
    do {
        Family img = apply_permutation(f, perm);
        if (img.members < best.members) best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

IsoClassSet enumerate_iso_classes(int n, int m, int k) {
    if (n < 1 || n > kMaxCanonicalGroundSet || m < 1 || m > n || k < 0)
        throw std::invalid_argument("enumerate_iso_classes: bad parameters");
    std::vector<SubsetCode> msets;
    for (SubsetCode s = 0; s < (SubsetCode(1) << n); ++s)
        if (popcount(s) == m) msets.push_back(s);
    if (k > static_cast<int>(msets.size()))
        throw std::invalid_argument("enumerate_iso_classes: k exceeds C(n,m)");

    IsoClassSet out;
    out.n = n;
    out.m = m;
    out.k = k;
    std::set<Family> seen;
    std::vector<SubsetCode> pick;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(pick.size()) == k) {
            Family canon = canonical_form(Family(n, pick));
            if (seen.insert(canon).second) out.representatives.push_back(std::move(canon));
            return;
        }
        size_t remaining = msets.size() - start;
        if (remaining < k - pick.size()) return;
        for (size_t i = start; i < msets.size(); ++i) {
            pick.push_back(msets[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.representatives.begin(), out.representatives.end());
    return out;
}

std::optional<Family> parse_family(const std::string& text, int n) {
    if (n < 1 || n > kMaxGroundSet) return std::nullopt;
    std::vector<SubsetCode> members;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        if (!first) {
            if (text[i] != ',') return std::nullopt;
            ++i;
            skip_ws();
        }
        first = false;
        if (i >= text.size() || text[i] != '{') return std::nullopt;
        ++i;
        SubsetCode s = 0;
        skip_ws();
        while (i < text.size() && text[i] != '}') {
            int elem = 0;
            if (!(text[i] >= '0' && text[i] <= '9')) return std::nullopt;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                elem = elem * 10 + (text[i] - '0');
                ++i;
            }
            if (elem < 1 || elem > n) return std::nullopt;
            s |= SubsetCode(1) << (elem - 1);
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_ws();
                if (i < text.size() && text[i] == '}') return std::nullopt;
            }
        }
        if (i >= text.size()) return std::nullopt;
        ++i;  // '}'
        members.push_back(s);
        skip_ws();
    }
    Family f(n, members);
    if (f.members.size() != members.size()) return std::nullopt;  // duplicate member
    return f;
}

std::string format_family(const Family& f) {
    std::string out;
    for (size_t j = 0; j < f.members.size(); ++j) {
        if (j) out += ',';
        out += '{';
        bool first = true;
        for (int i = 1; i <= f.n; ++i)
            if (f.members[j] & (SubsetCode(1) << (i - 1))) {
                if (!first) out += ',';
                out += std::to_string(i);
                first = false;
            }
        out += '}';
    }
    return out;
}

}  // namespace chvip
