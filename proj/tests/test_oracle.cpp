#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "bbsolver.hpp"
#include "doctest.h"
#include "modelgen.hpp"
#include "oracle.hpp"

using namespace chvip;

namespace {

std::set<Family> collect_primary(int n) {
    std::set<Family> out;
    enumerate_downsets(n, false, [&](const Family& f) { CHECK(out.insert(f).second); });
    return out;
}

std::set<Family> collect_bases(int n) {
    std::set<Family> out;
    enumerate_downsets_by_bases(n, [&](const Family& f) { CHECK(out.insert(f).second); });
    return out;
}

// Exhaustive scan over all subfamilies; only viable for tiny families.
int brute_force_mis(const Family& f) {
    std::vector<SubsetCode> verts;
    for (SubsetCode s : f.members)
        if (s != 0) verts.push_back(s);
    REQUIRE(verts.size() <= 20);
    int best = 0;
    for (unsigned mask = 0; mask < (1u << verts.size()); ++mask) {
        std::vector<SubsetCode> pick;
        for (size_t i = 0; i < verts.size(); ++i)
            if (mask & (1u << i)) pick.push_back(verts[i]);
        Family g(f.n, pick);
        if (is_intersecting(g) && static_cast<int>(pick.size()) > best) best = static_cast<int>(pick.size());
    }
    return best;
}

Family power_set(int n) {
    std::vector<SubsetCode> all;
    for (SubsetCode s = 0; s < (SubsetCode(1) << n); ++s) all.push_back(s);
    return Family(n, std::move(all));
}

}  // namespace

TEST_CASE("downset counts match the independent antichain enumerator") {
    long expect[] = {0, 3, 6, 20, 168, 7581};
    for (int n = 1; n <= 5; ++n) {
        std::set<Family> primary = collect_primary(n);
        std::set<Family> bases = collect_bases(n);
        CHECK(static_cast<long>(primary.size()) == expect[n]);
        CHECK(primary == bases);  // same families, not just the same count
        for (const Family& f : primary) CHECK(is_downset(f));
    }
}

TEST_CASE("limits are enforced") {
    CHECK_THROWS_AS(enumerate_downsets(6, false, [](const Family&) {}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_downsets(0, false, [](const Family&) {}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_downsets(7, true, [](const Family&) {}), std::invalid_argument);
}

TEST_CASE("maximum intersecting subfamily on known families") {
    auto [size4, wit4] = max_intersecting_subfamily(power_set(4));
    CHECK(size4 == 8);
    CHECK(is_intersecting(wit4));
    auto [size3, wit3] = max_intersecting_subfamily(power_set(3));
    CHECK(size3 == 4);
    CHECK(is_intersecting(wit3));
    auto [size1, wit1] = max_intersecting_subfamily(Family(3, {0, 0b001}));
    CHECK(size1 == 1);
    CHECK(wit1.members == std::vector<SubsetCode>{0b001});
    CHECK(max_intersecting_subfamily(Family(3, {})).first == 0);
    CHECK(max_intersecting_subfamily(Family(3, {0})).first == 0);
}

TEST_CASE("witnesses match brute force on all downsets of [3] and [4]") {
    for (int n = 3; n <= 4; ++n) {
        enumerate_downsets(n, false, [&](const Family& d) {
            auto [size, witness] = max_intersecting_subfamily(d);
            CHECK(size == brute_force_mis(d));
            CHECK(is_intersecting(witness));
            CHECK(static_cast<int>(witness.members.size()) == size);
            for (SubsetCode s : witness.members) CHECK(d.contains(s));
        });
    }
}

TEST_CASE("star property holds on every downset of [3]") {
    enumerate_downsets(3, false, [](const Family& d) { CHECK(has_star_property(d)); });
    CHECK(has_star_property(Family(3, {0})));
    CHECK_THROWS_AS(has_star_property(Family(3, {0b011})), std::invalid_argument);
}

TEST_CASE("verify_conjecture reports") {
    for (int n = 1; n <= 4; ++n) {
        OracleReport rep = verify_conjecture(n);
        CHECK(rep.all_satisfy);
        CHECK(rep.max_gap <= 0);
        CHECK(!rep.first_violation);
    }
    CHECK(verify_conjecture(1).downsets_checked == 3);
    CHECK(verify_conjecture(4).downsets_checked == 168);
}

TEST_CASE("Berge bound: twice the intersecting size never exceeds the downset size") {
    enumerate_downsets(4, false, [](const Family& d) {
        CHECK(2 * max_intersecting_subfamily(d).first <= static_cast<int>(d.members.size()));
    });
    // random sample at n=5
    std::mt19937 rng(3);
    long count = 0;
    enumerate_downsets(5, false, [&](const Family& d) {
        if (++count % 37 != 0) return;
        CHECK(2 * max_intersecting_subfamily(d).first <= static_cast<int>(d.members.size()));
    });
    CHECK(count == 7581);
}

TEST_CASE("Kleitman-Magnanti: small-set maxima are matched by a star") {
    // if some maximum intersecting subfamily holds a set of size <= 2,
    // a star of the same size exists
    enumerate_downsets(4, false, [](const Family& d) {
        auto [size, witness] = max_intersecting_subfamily(d);
        bool has_small = false;
        for (SubsetCode s : witness.members)
            if (popcount(s) <= 2) has_small = true;
        if (has_small) CHECK(max_star(d).second >= size);
    });
}

TEST_CASE("oracle agrees with the IP formulations for n = 2..3") {
    for (int n = 2; n <= 3; ++n) {
        OracleReport rep = verify_conjecture(n);
        SolveResult inf = solve_ip(build_inf(n));
        SolveResult opt = solve_ip(build_opt(n));
        CHECK(rep.all_satisfy == (inf.status == IpStatus::Infeasible));
        REQUIRE(opt.status == IpStatus::Optimal);
        CHECK(rep.all_satisfy == (opt.best_objective == 0));
    }
}
