#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "exactlp.hpp"
#include "modelgen.hpp"

using namespace chvip;

namespace {

struct Halfspace {
    std::vector<Rational> a;  // dense row
    Rational rhs;
    Sense sense;
};

std::vector<Halfspace> halfspaces_of(const LpProblem& p) {
    std::vector<Halfspace> hs;
    for (const auto& row : p.rows) {
        Halfspace h{std::vector<Rational>(static_cast<size_t>(p.num_vars), Rational(0)), row.rhs, row.sense};
        for (const Term& t : row.terms) h.a[static_cast<size_t>(t.var)] = t.coef;
        hs.push_back(std::move(h));
    }
    for (int j = 0; j < p.num_vars; ++j) {
        Halfspace lo{std::vector<Rational>(static_cast<size_t>(p.num_vars), Rational(0)), p.lb[j], Sense::GE};
        lo.a[static_cast<size_t>(j)] = 1;
        hs.push_back(std::move(lo));
        if (p.ub[j]) {
            Halfspace up{std::vector<Rational>(static_cast<size_t>(p.num_vars), Rational(0)), *p.ub[j], Sense::LE};
            up.a[static_cast<size_t>(j)] = 1;
            hs.push_back(std::move(up));
        }
    }
    return hs;
}

// Solves the square rational system given by the chosen halfspaces'
// hyperplanes with Gaussian elimination; nothing when singular.
std::optional<std::vector<Rational>> solve_square(const std::vector<Halfspace>& hs, const std::vector<int>& pick, int n) {
    std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n) + 1, Rational(0)));
    for (int i = 0; i < n; ++i) {
        const Halfspace& h = hs[static_cast<size_t>(pick[static_cast<size_t>(i)])];
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = h.a[static_cast<size_t>(j)];
        a[static_cast<size_t>(i)][static_cast<size_t>(n)] = h.rhs;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[static_cast<size_t>(r)][static_cast<size_t>(col)] == 0) continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)] / a[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int c = col; c <= n; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
        }
    }
    std::vector<Rational> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(n)] / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return x;
}

bool satisfies(const LpProblem& p, const std::vector<Halfspace>& hs, const std::vector<Rational>& x) {
    (void)p;
    for (const auto& h : hs) {
        Rational lhs(0);
        for (size_t j = 0; j < x.size(); ++j) lhs += h.a[j] * x[j];
        if (h.sense == Sense::LE && lhs > h.rhs) return false;
        if (h.sense == Sense::GE && lhs < h.rhs) return false;
        if (h.sense == Sense::EQ && lhs != h.rhs) return false;
    }
    return true;
}

// Vertex-enumeration oracle for boxed (hence bounded) LPs: the optimum is
// attained at a basic point defined by n active hyperplanes.
std::optional<Rational> vertex_oracle(const LpProblem& p) {
    std::vector<Halfspace> hs = halfspaces_of(p);
    int n = p.num_vars;
    std::vector<Rational> obj(static_cast<size_t>(n), Rational(0));
    for (const Term& t : p.objective) obj[static_cast<size_t>(t.var)] = t.coef;
    std::optional<Rational> best;
    std::vector<int> pick(static_cast<size_t>(n));
    int total = static_cast<int>(hs.size());
    std::function<void(int, int)> combos = [&](int at, int from) {
        if (at == n) {
            auto x = solve_square(hs, pick, n);
            if (!x || !satisfies(p, hs, *x)) return;
            Rational v(0);
            for (int j = 0; j < n; ++j) v += obj[static_cast<size_t>(j)] * (*x)[static_cast<size_t>(j)];
            if (!best || v > *best) best = v;
            return;
        }
        for (int i = from; i < total; ++i) {
            pick[static_cast<size_t>(at)] = i;
            combos(at + 1, i + 1);
        }
    };
    combos(0, 0);
    return best;
}

LpProblem random_boxed_lp(std::mt19937& rng) {
    std::uniform_int_distribution<int> nvar(1, 4);
    std::uniform_int_distribution<int> nrow(1, 5);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> sense(0, 9);
    auto rat = [&]() {
        Rational q(coef(rng), den(rng));
        q.canonicalize();
        return q;
    };
    LpProblem p;
    p.num_vars = nvar(rng);
    for (int j = 0; j < p.num_vars; ++j) {
        Rational a = rat(), b = rat();
        if (b < a) std::swap(a, b);
        p.lb.push_back(a);
        p.ub.push_back(b);
    }
    for (int j = 0; j < p.num_vars; ++j) {
        Rational c = rat();
        if (c != 0) p.objective.push_back({j, c});
    }
    int rows = nrow(rng);
    for (int i = 0; i < rows; ++i) {
        LpRow row;
        for (int j = 0; j < p.num_vars; ++j) {
            Rational c = rat();
            if (c != 0) row.terms.push_back({j, c});
        }
        if (row.terms.empty()) continue;
        row.rhs = rat();
        int s = sense(rng);
        row.sense = s < 4 ? Sense::LE : s < 8 ? Sense::GE : Sense::EQ;
        p.rows.push_back(std::move(row));
    }
    return p;
}

}  // namespace

TEST_CASE("one-variable examples") {
    LpProblem p;
    p.num_vars = 1;
    p.lb = {Rational(0)};
    p.ub = {std::nullopt};
    p.objective = {{0, Rational(1)}};
    p.rows = {{Sense::LE, Rational(1, 3), {{0, Rational(1)}}}};
    LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.objective == Rational(1, 3));
    CHECK(out.primal[0] == Rational(1, 3));

    // x <= 0 and x >= 1 is infeasible with an exact Farkas witness
    p.rows = {{Sense::LE, Rational(0), {{0, Rational(1)}}},
              {Sense::GE, Rational(1), {{0, Rational(1)}}}};
    out = solve_lp(p);
    REQUIRE(out.status == LpStatus::Infeasible);
    // extraction self-verifies; re-check the aggregation here anyway
    Rational coef = out.farkas_rows[0] + out.farkas_rows[1] + out.farkas_bounds[0];
    Rational rhs = out.farkas_rows[0] * Rational(0) + out.farkas_rows[1] * Rational(1);
    CHECK(coef == 0);
    CHECK(rhs < 0);
    CHECK(out.farkas_rows[0] >= 0);
    CHECK(out.farkas_rows[1] <= 0);

    // unbounded: max x with no upper bound
    p.rows.clear();
    out = solve_lp(p);
    REQUIRE(out.status == LpStatus::Unbounded);
    CHECK(out.ray[0] > 0);
}

TEST_CASE("equality rows") {
    // max x + y, x + y = 1/2, 0 <= x,y <= 1
    LpProblem p;
    p.num_vars = 2;
    p.lb = {Rational(0), Rational(0)};
    p.ub = {Rational(1), Rational(1)};
    p.objective = {{0, Rational(1)}, {1, Rational(1)}};
    p.rows = {{Sense::EQ, Rational(1, 2), {{0, Rational(1)}, {1, Rational(1)}}}};
    LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.objective == Rational(1, 2));
}

TEST_CASE("random boxed LPs agree with vertex enumeration") {
    std::mt19937 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int it = 0; it < 600; ++it) {
        LpProblem p = random_boxed_lp(rng);
        auto truth = vertex_oracle(p);
        LpOutcome out = solve_lp(p);  // extraction self-verifies duals/Farkas
        if (truth) {
            ++optimal;
            REQUIRE_MESSAGE(out.status == LpStatus::Optimal, "iteration " << it);
            CHECK_MESSAGE(out.objective == *truth, "iteration " << it);
        } else {
            ++infeasible;
            REQUIRE_MESSAGE(out.status == LpStatus::Infeasible, "iteration " << it);
        }
    }
    // the generator must exercise both outcomes
    CHECK(optimal > 100);
    CHECK(infeasible > 50);
}

TEST_CASE("warm-started re-solves match fresh solves") {
    std::mt19937 rng(5);
    int checked = 0;
    for (int it = 0; it < 80; ++it) {
        LpProblem p = random_boxed_lp(rng);
        LpSolver warm(p);
        if (warm.solve().status == LpStatus::Infeasible) continue;
        ++checked;
        std::uniform_int_distribution<int> var(0, p.num_vars - 1);
        for (int round = 0; round < 4; ++round) {
            int j = var(rng);
            // tighten to a subinterval, then compare against a cold solve
            Rational lb = p.lb[static_cast<size_t>(j)];
            Rational ub = *p.ub[static_cast<size_t>(j)];
            Rational mid = (lb + ub) / 2;
            LpProblem q = warm.problem();
            q.lb[static_cast<size_t>(j)] = mid;
            warm.set_var_bounds(j, mid, ub);
            LpOutcome a = warm.solve();
            LpOutcome b = solve_lp(q);
            REQUIRE(a.status == b.status);
            if (a.status == LpStatus::Optimal) CHECK(a.objective == b.objective);
            warm.set_var_bounds(j, lb, ub);
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("relaxation of OPT(3) solves with zero duality gap") {
    Model m = build_opt(3);
    LpOutcome out = solve_lp(relaxation_of(m));
    REQUIRE(out.status == LpStatus::Optimal);
    // verify_optimal already asserted the exact zero gap; sanity checks
    CHECK(out.primal.size() == static_cast<size_t>(m.var_count()));
    CHECK(out.objective >= 0);
}

TEST_CASE("input validation") {
    LpProblem p;
    p.num_vars = 1;
    p.lb = {Rational(1)};
    p.ub = {Rational(0)};
    CHECK_THROWS_AS(LpSolver{p}, LpInputError);
    p.ub = {Rational(2)};
    p.rows = {{Sense::LE, Rational(0), {{2, Rational(1)}}}};
    CHECK_THROWS_AS(LpSolver{p}, LpInputError);
    p.rows = {{Sense::LE, Rational(0), {{0, Rational(0)}}}};
    CHECK_THROWS_AS(LpSolver{p}, LpInputError);
}
