#include "bbsolver.hpp"

#include <chrono>
#include <iostream>

namespace chvip {

namespace {

using Clock = std::chrono::steady_clock;

Certificate problem_section(const Model& m) {
    Certificate c;
    c.vars.reserve(m.variables.size());
    for (const auto& v : m.variables) c.vars.push_back({v.name, v.kind, v.lb, v.ub});
    c.objective = m.objective;
    c.constraints.reserve(m.constraints.size());
    for (const auto& row : m.constraints) c.constraints.push_back({row.label, row.sense, row.rhs, row.terms});
    return c;
}

struct Search {
    const Model& model;
    const SolveLimits& limits;
    LpSolver lp;
    Certificate cert;
    bool can_round;

    std::optional<Rational> incumbent;
    std::vector<Rational> incumbent_vec;
    long nodes = 0;
    int depth = 0;
    int next_node_id = 0;
    bool aborted = false;
    std::optional<Rational> abort_bound;
    Clock::time_point deadline;
    bool has_deadline;

    // Active bound provenance per variable: -1 = original bound,
    // otherwise the index of the asm derivation that introduced it.
    std::vector<int> lb_src, ub_src;

    explicit Search(const Model& m, const SolveLimits& lim)
        : model(m), limits(lim), lp(relaxation_of(m)), cert(problem_section(m)) {
        can_round = true;
        for (const auto& t : m.objective)
            if (!is_integral(t.coef)) can_round = false;
        lb_src.assign(m.variables.size(), -1);
        ub_src.assign(m.variables.size(), -1);
        has_deadline = lim.time_seconds > 0;
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(lim.time_seconds));
    }

    bool out_of_budget() {
        if (limits.node_limit >= 0 && nodes >= limits.node_limit) return true;
        if (has_deadline && Clock::now() >= deadline) return true;
        return false;
    }

    void note_abort_bound(const Rational& v) {
        if (!abort_bound || v > *abort_bound) abort_bound = v;
    }

    Ref bound_ref(int var, bool upper) const {
        int src = upper ? ub_src[static_cast<size_t>(var)] : lb_src[static_cast<size_t>(var)];
        if (src >= 0) return Ref{RefKind::Derivation, src};
        return Ref{upper ? RefKind::UpperBound : RefKind::LowerBound, var};
    }

    int emit(Derivation d) {
        cert.derivations.push_back(std::move(d));
        return static_cast<int>(cert.derivations.size()) - 1;
    }

    std::vector<std::pair<Ref, Rational>> dual_refs(const std::vector<Rational>& rows, const std::vector<Rational>& bounds) const {
        std::vector<std::pair<Ref, Rational>> refs;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i] != 0) refs.emplace_back(Ref{RefKind::Constraint, static_cast<int>(i)}, rows[i]);
        for (size_t j = 0; j < bounds.size(); ++j)
            if (bounds[j] != 0) refs.emplace_back(bound_ref(static_cast<int>(j), bounds[j] > 0), bounds[j]);
        return refs;
    }

    int emit_farkas(int id, const LpOutcome& out) {
        Rational rhs = 0;
        for (size_t i = 0; i < out.farkas_rows.size(); ++i) rhs += out.farkas_rows[i] * model.constraints[i].rhs;
        const LpProblem& p = lp.problem();
        for (size_t j = 0; j < out.farkas_bounds.size(); ++j) {
            if (out.farkas_bounds[j] == 0) continue;
            rhs += out.farkas_bounds[j] * (out.farkas_bounds[j] > 0 ? *p.ub[j] : p.lb[j]);
        }
        Derivation d;
        d.stated = {"n" + std::to_string(id) + "_inf", Sense::LE, rhs, {}};
        d.rule = DerRule::Lin;
        d.mults = dual_refs(out.farkas_rows, out.farkas_bounds);
        return emit(std::move(d));
    }

    int emit_bound(int id, const LpOutcome& out, const Rational& rhs, bool round) {
        Derivation d;
        d.stated = {"n" + std::to_string(id) + "_lp", Sense::LE, rhs, model.objective};
        d.rule = round ? DerRule::Rnd : DerRule::Lin;
        d.mults = dual_refs(out.row_duals, out.reduced_costs);
        return emit(std::move(d));
    }

    bool is_integral_point(const std::vector<Rational>& x) const {
        for (const auto& v : x)
            if (!is_integral(v)) return false;
        return true;
    }

    void record_incumbent(const Rational& val, const std::vector<Rational>& x) {
        if (incumbent && val <= *incumbent) return;
        incumbent = val;
        incumbent_vec = x;
        std::vector<Term> sparse;
        for (size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) sparse.push_back({static_cast<int>(j), x[j]});
        cert.solutions.push_back(std::move(sparse));
    }

    int pick_branch_var(const std::vector<Rational>& x) const {
        int best = -1;
        Rational best_dist;
        for (size_t j = 0; j < x.size(); ++j) {
            if (is_integral(x[j])) continue;
            Rational frac = x[j] - rat_floor(x[j]);
            Rational dist = abs(frac - Rational(1, 2));
            if (best < 0 || dist < best_dist) {
                best = static_cast<int>(j);
                best_dist = dist;
            }
        }
        return best;
    }

    // Returns the derivation index proving, under the current assumption
    // set, either a contradiction or an objective upper bound; nullopt on
    // abort.
    std::optional<int> dive() {
        // a pathological input (an objective-irrelevant unbounded integer
        // chain) could otherwise exhaust the stack before any node limit
        if (aborted || out_of_budget() || depth >= 1500) {
            aborted = true;
            return std::nullopt;
        }
        struct DepthGuard {
            int& d;
            explicit DepthGuard(int& d_) : d(d_) { ++d; }
            ~DepthGuard() { --d; }
        } depth_guard(depth);
        int id = next_node_id++;
        ++nodes;
        LpOutcome out = lp.solve();
        if (limits.progress && nodes % 1000 == 0) {
            std::cerr << "nodes " << nodes << " bound " << (out.status == LpStatus::Optimal ? to_string(out.objective) : std::string("-"))
                      << " incumbent " << (incumbent ? to_string(*incumbent) : std::string("-")) << "\n";
        }
        if (out.status == LpStatus::Infeasible) return emit_farkas(id, out);
        if (out.status == LpStatus::Unbounded) throw LpInputError("unbounded relaxation; integer model must bound the objective");
        const Rational& v = out.objective;
        if (is_integral_point(out.primal)) {
            record_incumbent(v, out.primal);
            return emit_bound(id, out, v, false);
        }
        Rational pruned_rhs = can_round ? rat_floor(v) : v;
        if (incumbent && pruned_rhs <= *incumbent) return emit_bound(id, out, pruned_rhs, can_round);
        int j = pick_branch_var(out.primal);
        Rational split = rat_floor(out.primal[static_cast<size_t>(j)]);
        const LpProblem& p = lp.problem();
        Rational old_lb = p.lb[static_cast<size_t>(j)];
        std::optional<Rational> old_ub = p.ub[static_cast<size_t>(j)];

        // Down branch: x_j <= split.
        Derivation down;
        down.stated = {"a" + std::to_string(id) + "_dn", Sense::LE, split, {{j, Rational(1)}}};
        down.rule = DerRule::Asm;
        int a1 = emit(std::move(down));
        int saved_ub_src = ub_src[static_cast<size_t>(j)];
        ub_src[static_cast<size_t>(j)] = a1;
        lp.set_var_bounds(j, old_lb, split);
        std::optional<int> d1 = dive();
        lp.set_var_bounds(j, old_lb, old_ub);
        ub_src[static_cast<size_t>(j)] = saved_ub_src;
        if (!d1) {
            note_abort_bound(v);
            return std::nullopt;
        }

        // Up branch: x_j >= split + 1.
        Derivation up;
        up.stated = {"a" + std::to_string(id) + "_up", Sense::GE, split + 1, {{j, Rational(1)}}};
        up.rule = DerRule::Asm;
        int a2 = emit(std::move(up));
        int saved_lb_src = lb_src[static_cast<size_t>(j)];
        lb_src[static_cast<size_t>(j)] = a2;
        lp.set_var_bounds(j, split + 1, old_ub);
        std::optional<int> d2 = dive();
        lp.set_var_bounds(j, old_lb, old_ub);
        lb_src[static_cast<size_t>(j)] = saved_lb_src;
        if (!d2) {
            note_abort_bound(v);
            return std::nullopt;
        }

        const CertConstraint& s1 = cert.derivations[static_cast<size_t>(*d1)].stated;
        const CertConstraint& s2 = cert.derivations[static_cast<size_t>(*d2)].stated;
        bool abs1 = s1.terms.empty();
        bool abs2 = s2.terms.empty();
        Derivation res;
        res.rule = DerRule::Uns;
        res.uns_ref1 = Ref{RefKind::Derivation, *d1};
        res.uns_aref1 = Ref{RefKind::Derivation, a1};
        res.uns_ref2 = Ref{RefKind::Derivation, *d2};
        res.uns_aref2 = Ref{RefKind::Derivation, a2};
        std::string label = "n" + std::to_string(id) + "_res";
        if (abs1 && abs2)
            res.stated = {label, Sense::LE, std::max(s1.rhs, s2.rhs), {}};
        else if (abs1)
            res.stated = {label, s2.sense, s2.rhs, s2.terms};
        else if (abs2)
            res.stated = {label, s1.sense, s1.rhs, s1.terms};
        else
            res.stated = {label, Sense::LE, std::max(s1.rhs, s2.rhs), model.objective};
        return emit(std::move(res));
    }
};

}  // namespace

SolveResult solve_ip(const Model& m, const SolveLimits& limits) {
    for (const auto& v : m.variables) {
        if (v.kind != VarKind::Binary && v.kind != VarKind::NonnegInteger)
            throw LpInputError("solve_ip requires integer-kind variables");
    }
    Search search(m, limits);
    std::optional<int> root = search.dive();
    SolveResult res;
    res.node_count = search.nodes;
    if (!root) {
        res.status = IpStatus::Limit;
        if (search.incumbent) {
            res.best_solution = search.incumbent_vec;
            res.best_objective = *search.incumbent;
        }
        res.dual_bound = search.abort_bound;
        if (search.incumbent && (!res.dual_bound || *search.incumbent > *res.dual_bound))
            res.dual_bound = search.incumbent;
        return res;
    }
    const CertConstraint& fin = search.cert.derivations[static_cast<size_t>(*root)].stated;
    // A contradiction is 0 <= c with c < 0; with an all-zero objective a
    // genuine bound derivation also has no terms but a nonnegative rhs.
    if (fin.terms.empty() && fin.rhs < 0) {
        res.status = IpStatus::Infeasible;
        search.cert.goal = CertGoal{true, Rational(0), Rational(0)};
    } else {
        if (!search.incumbent) throw LpInternalError("objective bound derived without an incumbent");
        res.status = IpStatus::Optimal;
        res.best_solution = search.incumbent_vec;
        res.best_objective = *search.incumbent;
        res.dual_bound = *search.incumbent;
        search.cert.goal = CertGoal{false, *search.incumbent, *search.incumbent};
    }
    res.certificate = std::move(search.cert);
    return res;
}

}  // namespace chvip
