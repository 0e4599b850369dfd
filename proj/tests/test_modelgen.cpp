#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <optional>

#include "doctest.h"
#include "modelgen.hpp"

using namespace chvip;

namespace {

// Exhaustive 0/1 search over the model's binary variables; an integer z
// variable, when present, is scanned over 0..zmax. Returns the best
// objective, or nothing when infeasible. Independent of the LP machinery.
std::optional<Rational> brute_force(const Model& m, int zmax) {
    int nv = m.var_count();
    int zi = m.z_index();
    std::vector<int> order;  // free binary variables
    std::vector<Rational> x(static_cast<size_t>(nv), Rational(0));
    for (int j = 0; j < nv; ++j) {
        if (j == zi) continue;
        if (m.variables[static_cast<size_t>(j)].fixed())
            x[static_cast<size_t>(j)] = m.variables[static_cast<size_t>(j)].lb;
        else
            order.push_back(j);
    }
    REQUIRE(order.size() <= 22);
    std::optional<Rational> best;
    auto feasible = [&]() {
        for (const auto& v : m.variables) {
            int j = static_cast<int>(&v - m.variables.data());
            if (x[static_cast<size_t>(j)] < v.lb) return false;
            if (v.ub && x[static_cast<size_t>(j)] > *v.ub) return false;
        }
        for (const auto& c : m.constraints) {
            Rational lhs(0);
            for (const Term& t : c.terms) lhs += t.coef * x[static_cast<size_t>(t.var)];
            if (c.sense == Sense::LE && lhs > c.rhs) return false;
            if (c.sense == Sense::GE && lhs < c.rhs) return false;
            if (c.sense == Sense::EQ && lhs != c.rhs) return false;
        }
        return true;
    };
    auto score = [&]() {
        Rational obj(0);
        for (const Term& t : m.objective) obj += t.coef * x[static_cast<size_t>(t.var)];
        if (!best || obj > *best) best = obj;
    };
    std::function<void(size_t)> rec = [&](size_t at) {
        if (at == order.size()) {
            if (zi < 0) {
                if (feasible()) score();
                return;
            }
            for (int z = 0; z <= zmax; ++z) {
                x[static_cast<size_t>(zi)] = z;
                if (feasible()) score();
            }
            x[static_cast<size_t>(zi)] = 0;
            return;
        }
        for (int b = 0; b <= 1; ++b) {
            x[static_cast<size_t>(order[at])] = b;
            rec(at + 1);
        }
        x[static_cast<size_t>(order[at])] = 0;
    };
    rec(0);
    return best;
}

long pow_long(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

TEST_CASE("variable layout") {
    Model m = build_opt(3);
    CHECK(m.var_count() == 15);
    CHECK(m.x_index(1) == 0);
    CHECK(m.x_index(7) == 6);
    CHECK(m.y_index(1) == 7);
    CHECK(m.z_index() == 14);
    CHECK(m.variables[0].name == "x_1");
    CHECK(m.variables[static_cast<size_t>(m.y_index(0b011))].name == "y_12");
    CHECK(m.variables[14].name == "z");
    CHECK(m.variables[14].kind == VarKind::NonnegInteger);
    Model inf = build_inf(3);
    CHECK(inf.z_index() == -1);
    CHECK(inf.var_count() == 14);
}

TEST_CASE("reported sizes for OPT match the pinned table") {
    struct Row {
        int n, vars;
        long ineqs;
    };
    for (Row r : {Row{5, 63, 427}, Row{6, 127, 1336}, Row{7, 255, 4125}, Row{8, 511, 12618}}) {
        ModelStats st = stats(build_opt(r.n));
        CHECK(st.vars == r.vars);
        CHECK(st.ineqs == r.ineqs);
        CHECK(st.fixings == 0);
    }
}

TEST_CASE("constraint family sizes follow the closed forms") {
    for (int n = 1; n <= 6; ++n) {
        long inters = pow_long(3, n) - pow_long(2, n + 1) + 1;  // ordered disjoint pairs, both nonempty
        long gen = pow_long(3, n) - pow_long(2, n);             // pairs S subseteq T, S nonempty
        Model opt = build_opt(n);
        long got_inters = 0, got_gen = 0, got_star = 0;
        for (const auto& c : opt.constraints) {
            if (c.label.rfind("inters_", 0) == 0) ++got_inters;
            if (c.label.rfind("gen_", 0) == 0) ++got_gen;
            if (c.label.rfind("star_", 0) == 0) ++got_star;
        }
        CHECK(got_inters == inters);
        CHECK(got_gen == gen);
        CHECK(got_star == n);
        CHECK(static_cast<long>(opt.constraints.size()) == inters + gen + n);

        Model inf = build_inf(n);
        long downset = 0, contain = 0;
        for (const auto& c : inf.constraints) {
            if (c.label.rfind("downset_", 0) == 0) ++downset;
            if (c.label.rfind("contain_", 0) == 0) ++contain;
        }
        // downset rows: pairs T proper nonempty subset of S
        CHECK(downset == pow_long(3, n) - 2 * pow_long(2, n) + 1);
        CHECK(contain == pow_long(2, n) - 1);
    }
}

TEST_CASE("INF is infeasible on tiny ground sets by brute force") {
    CHECK(!brute_force(build_inf(2), 0));
    CHECK(!brute_force(build_inf(3), 0));
}

TEST_CASE("OPT optimum is zero on tiny ground sets by brute force") {
    for (int n = 1; n <= 3; ++n) {
        auto best = brute_force(build_opt(n), n <= 2 ? 4 : 8);
        REQUIRE(best);
        CHECK(*best == 0);
    }
}

TEST_CASE("RED fixings force the full downset at n=4") {
    // With n=4 the subset fixings cover every x, so the downset is all of
    // 2^[4] with max star 8, and the free y (sizes 3 and 4, pairwise
    // intersecting) peak at 5. Optimum 5 - 8 = -3 by hand; brute force
    // must agree.
    Model red = build_red(4);
    auto best = brute_force(red, 16);
    REQUIRE(best);
    CHECK(*best == -3);
}

TEST_CASE("RED adds the Berge cut and fixings") {
    Model red = build_red(5);
    bool berge = false;
    for (const auto& c : red.constraints)
        if (c.label == "berge") {
            berge = true;
            CHECK(c.sense == Sense::LE);
            CHECK(c.rhs == 0);
            // 2 y_S - sum x_S <= 0 over all nonempty S
            CHECK(c.terms.size() == 62);
        }
    CHECK(berge);
    int fixed_x = 0, fixed_y = 0;
    for (const auto& v : red.variables) {
        if (!v.fixed()) continue;
        if (v.role == VarRole::X) {
            ++fixed_x;
            CHECK(*v.ub == 1);
        }
        if (v.role == VarRole::Y) {
            ++fixed_y;
            CHECK(*v.ub == 0);
        }
    }
    // x: singletons (5) plus nonempty subsets of [4] that are not
    // singletons (11); y: sizes 1 and 2 (5 + 10)
    CHECK(fixed_x == 16);
    CHECK(fixed_y == 15);
    CHECK(stats(red).fixings == 31);
}

TEST_CASE("level fixings") {
    Model base = build_red(5);
    auto fam = parse_family("{1,2,3,4},{1,2,3,5}", 5);
    REQUIRE(fam);
    Model fixed = apply_level_fixings(base, 4, *fam);
    int ones = 0, zeros = 0;
    for (const auto& v : fixed.variables) {
        if (v.role != VarRole::X || popcount(v.subset) != 4) continue;
        REQUIRE(v.fixed());
        if (v.lb == 1) ++ones;
        else ++zeros;
    }
    CHECK(ones == 2);
    CHECK(zeros == 3);

    // conflicting with the base fixings is rejected: k=0 zero-fixes the
    // size-4 set inside [4] that the base fixes to one
    CHECK_THROWS_AS(apply_level_fixings(base, 4, *parse_family("", 5)), std::invalid_argument);
    // member size must equal m
    CHECK_THROWS_AS(apply_level_fixings(base, 4, *parse_family("{1,2}", 5)), std::invalid_argument);
}

TEST_CASE("partition cuts") {
    // set partitions of [n] into 2..n parts: Bell(n) - 1
    long bell[] = {1, 1, 2, 5, 15, 52};
    for (int n = 2; n <= 5; ++n) {
        auto cuts = partition_cuts(n, n);
        CHECK(static_cast<long>(cuts.size()) == bell[n] - 1);
        Model opt = build_opt(n);
        for (const auto& c : cuts) {
            CHECK(c.sense == Sense::LE);
            CHECK(c.rhs == 1);
            SubsetCode covered = 0;
            for (const Term& t : c.terms) {
                const Variable& v = opt.variables[static_cast<size_t>(t.var)];
                CHECK(v.role == VarRole::Y);
                CHECK(t.coef == 1);
                CHECK((covered & v.subset) == 0);  // parts are disjoint
                covered |= v.subset;
            }
            CHECK(covered == (SubsetCode(1) << n) - 1);  // parts cover [n]
        }
    }
    // limiting the part count keeps only coarse partitions
    CHECK(partition_cuts(3, 2).size() == 3);
}

TEST_CASE("emission formats") {
    Model m = build_opt(2);
    std::string cert = emit(m, EmitFormat::CertProblem);
    CHECK(cert.rfind("CERT 1\nVARS 7\n", 0) == 0);
    CHECK(cert.find("OBJ max ") != std::string::npos);
    CHECK(cert.find("CONS ") != std::string::npos);
    std::string readable = emit(m, EmitFormat::Readable);
    CHECK(readable.find("star_1") != std::string::npos);
    CHECK(readable.find("<=") != std::string::npos);
}
