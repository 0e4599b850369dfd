#include "exactlp.hpp"

#include <algorithm>
#include <utility>

namespace chvip {

namespace {

enum class ColStatus : unsigned char { Basic, AtLower, AtUpper };

constexpr long kIterationCap = 20'000'000;

}  // namespace

struct LpSolver::Impl {
    LpProblem p;
    int nv = 0;      // structural columns
    int m = 0;       // rows = number of slack columns
    int ncols = 0;   // nv + m

    // internal columns: structural 0..nv-1, slack for row i at nv+i with
    // coefficient +1 (s_i = rhs_i - a_i x)
    std::vector<std::vector<Term>> cols;
    std::vector<std::optional<Rational>> lo;
    std::vector<std::optional<Rational>> up;

    std::vector<ColStatus> status;
    std::vector<int> basic;      // basic[i] = column in row i
    std::vector<Rational> val;   // current value per column
    // Binv[j] = column j of the basis inverse, entries (row, value) sorted
    std::vector<std::vector<Term>> Binv;
    bool basis_ready = false;

    // dense workspaces
    std::vector<Rational> work;
    std::vector<char> mark;
    std::vector<int> touched;

    explicit Impl(LpProblem prob) : p(std::move(prob)) {
        validate();
        nv = p.num_vars;
        m = static_cast<int>(p.rows.size());
        ncols = nv + m;
        cols.assign(ncols, {});
        lo.assign(ncols, std::nullopt);
        up.assign(ncols, std::nullopt);
        for (int j = 0; j < nv; ++j) {
            lo[j] = p.lb[j];
            up[j] = p.ub[j];
        }
        for (int i = 0; i < m; ++i) {
            for (const Term& t : p.rows[i].terms) cols[t.var].push_back({i, t.coef});
            cols[nv + i].push_back({i, Rational(1)});
            switch (p.rows[i].sense) {
                case Sense::LE: lo[nv + i] = Rational(0); break;
                case Sense::GE: up[nv + i] = Rational(0); break;
                case Sense::EQ:
                    lo[nv + i] = Rational(0);
                    up[nv + i] = Rational(0);
                    break;
            }
        }
        work.assign(std::max(m, 1), Rational(0));
        mark.assign(std::max(m, 1), 0);
    }

    void validate() const {
        int n = p.num_vars;
        if (n < 0) throw LpInputError("negative variable count");
        if (static_cast<int>(p.lb.size()) != n || static_cast<int>(p.ub.size()) != n)
            throw LpInputError("bound vector length mismatch");
        for (int j = 0; j < n; ++j)
            if (p.ub[j] && p.lb[j] > *p.ub[j]) throw LpInputError("crossed bounds on variable");
        auto check_terms = [&](const std::vector<Term>& ts) {
            int prev = -1;
            for (const Term& t : ts) {
                if (t.var < 0 || t.var >= n) throw LpInputError("term index out of range");
                if (t.var <= prev) throw LpInputError("terms not strictly increasing");
                if (t.coef == 0) throw LpInputError("zero coefficient term");
                prev = t.var;
            }
        };
        check_terms(p.objective);
        for (const auto& r : p.rows) check_terms(r.terms);
    }

    bool fixed(int c) const { return lo[c] && up[c] && *lo[c] == *up[c]; }

    void reset_basis() {
        basic.resize(m);
        status.assign(ncols, ColStatus::AtLower);
        for (int j = 0; j < nv; ++j) status[j] = ColStatus::AtLower;  // lb finite
        for (int i = 0; i < m; ++i) {
            basic[i] = nv + i;
            status[nv + i] = ColStatus::Basic;
        }
        Binv.assign(m, {});
        for (int i = 0; i < m; ++i) Binv[i] = {{i, Rational(1)}};
        basis_ready = true;
    }

    // Re-settle every nonbasic variable onto a bound consistent with its
    // status and recompute the basic values exactly.
    void refresh_values() {
        val.assign(ncols, Rational(0));
        for (int c = 0; c < ncols; ++c) {
            if (status[c] == ColStatus::Basic) continue;
            if (status[c] == ColStatus::AtUpper && up[c]) val[c] = *up[c];
            else if (lo[c]) {
                status[c] = ColStatus::AtLower;
                val[c] = *lo[c];
            } else if (up[c]) {
                status[c] = ColStatus::AtUpper;
                val[c] = *up[c];
            } else {
                val[c] = 0;  // free nonbasic: impossible for our inputs
            }
        }
        // rhs - N x_N, then apply Binv
        std::vector<Rational> resid(m, Rational(0));
        for (int i = 0; i < m; ++i) resid[i] = p.rows[i].rhs;
        for (int c = 0; c < ncols; ++c) {
            if (status[c] == ColStatus::Basic || val[c] == 0) continue;
            for (const Term& t : cols[c]) resid[t.var] -= t.coef * val[c];
        }
        std::vector<Rational> xb(m, Rational(0));
        for (int j = 0; j < m; ++j) {
            if (resid[j] == 0) continue;
            for (const Term& t : Binv[j]) xb[t.var] += t.coef * resid[j];
        }
        for (int i = 0; i < m; ++i) val[basic[i]] = xb[i];
    }

    // w = Binv * cols[q], dense in `work` with `touched` listing nonzeros.
    void ftran(int q) {
        for (int i : touched) {
            work[i] = 0;
            mark[i] = 0;
        }
        touched.clear();
        for (const Term& t : cols[q]) {
            for (const Term& e : Binv[t.var]) {
                if (!mark[e.var]) {
                    mark[e.var] = 1;
                    touched.push_back(e.var);
                    work[e.var] = 0;
                }
                work[e.var] += t.coef * e.coef;
            }
        }
        // drop exact zeros
        std::vector<int> live;
        live.reserve(touched.size());
        for (int i : touched) {
            if (work[i] == 0) mark[i] = 0;
            else live.push_back(i);
        }
        touched.swap(live);
    }

    // y = costs_of_basics^T * Binv
    std::vector<Rational> btran(const std::vector<Rational>& cost) const {
        std::vector<Rational> y(m, Rational(0));
        for (int j = 0; j < m; ++j) {
            Rational acc(0);
            for (const Term& e : Binv[j]) {
                const Rational& cb = cost[basic[e.var]];
                if (cb != 0) acc += cb * e.coef;
            }
            y[j] = std::move(acc);
        }
        return y;
    }

    Rational dot_col(int c, const std::vector<Rational>& y) const {
        Rational acc(0);
        for (const Term& t : cols[c]) acc += y[t.var] * t.coef;
        return acc;
    }

    void pivot_update_binv(int r) {
        // Binv <- E * Binv with eta column from `work`/`touched`, pivot row r
        const Rational piv = work[r];
        for (int j = 0; j < m; ++j) {
            auto& col = Binv[j];
            auto it = std::lower_bound(col.begin(), col.end(), r,
                                       [](const Term& t, int row) { return t.var < row; });
            if (it == col.end() || it->var != r || it->coef == 0) continue;
            Rational alpha = it->coef / piv;
            // merge col with -alpha * w (rows != r); set row r to alpha
            std::vector<Term> out;
            out.reserve(col.size() + touched.size());
            size_t ci = 0;
            std::vector<int> tsorted(touched);
            std::sort(tsorted.begin(), tsorted.end());
            size_t wi = 0;
            while (ci < col.size() || wi < tsorted.size()) {
                int crow = ci < col.size() ? col[ci].var : m;
                int wrow = wi < tsorted.size() ? tsorted[wi] : m;
                if (crow < wrow) {
                    if (crow == r) out.push_back({r, alpha});
                    else out.push_back(col[ci]);
                    ++ci;
                } else if (wrow < crow) {
                    if (wrow != r) {
                        Rational v = -alpha * work[wrow];
                        if (v != 0) out.push_back({wrow, std::move(v)});
                    }
                    ++wi;
                } else {
                    if (crow == r) out.push_back({r, alpha});
                    else {
                        Rational v = col[ci].coef - alpha * work[wrow];
                        if (v != 0) out.push_back({crow, std::move(v)});
                    }
                    ++ci;
                    ++wi;
                }
            }
            col.swap(out);
        }
    }

    Rational infeasibility() const {
        Rational inf(0);
        for (int i = 0; i < m; ++i) {
            int c = basic[i];
            if (lo[c] && val[c] < *lo[c]) inf += *lo[c] - val[c];
            if (up[c] && val[c] > *up[c]) inf += val[c] - *up[c];
        }
        return inf;
    }

    // Phase-1 linearized cost (maximize -infeasibility).
    std::vector<Rational> phase1_cost() const {
        std::vector<Rational> c(ncols, Rational(0));
        for (int i = 0; i < m; ++i) {
            int b = basic[i];
            if (lo[b] && val[b] < *lo[b]) c[b] = 1;
            else if (up[b] && val[b] > *up[b]) c[b] = -1;
        }
        return c;
    }

    std::vector<Rational> phase2_cost() const {
        std::vector<Rational> c(ncols, Rational(0));
        for (const Term& t : p.objective) c[t.var] = t.coef;
        return c;
    }

    struct RatioHit {
        bool blocked = false;
        Rational t;
        int row = -1;           // -1 = entering variable's own opposite bound
        bool to_lower = false;  // leaving variable parks at lower bound
        int colidx = -1;        // Bland tie-break key
    };

    // dir = +1 entering rises from lower bound, -1 falls from upper bound.
    // In phase 1 a violated basic blocks only when approaching its violated
    // bound, where it turns feasible.
    RatioHit ratio_test(int q, int dir, bool phase1) {
        RatioHit hit;
        auto consider = [&](Rational t, int row, bool to_lower, int colidx) {
            if (!hit.blocked || t < hit.t || (t == hit.t && colidx < hit.colidx)) {
                hit.blocked = true;
                hit.t = std::move(t);
                hit.row = row;
                hit.to_lower = to_lower;
                hit.colidx = colidx;
            }
        };
        if (lo[q] && up[q]) consider(*up[q] - *lo[q], -1, false, q);
        for (int i : touched) {
            int c = basic[i];
            const Rational& w = work[i];
            // value of basic c changes by -dir*w per unit step of t
            bool decreasing = (dir > 0) ? (w > 0) : (w < 0);
            Rational rate = (w > 0) ? w : Rational(-w);
            if (decreasing) {
                if (phase1 && up[c] && val[c] > *up[c])
                    consider((val[c] - *up[c]) / rate, i, false, c);
                else if (lo[c] && val[c] >= *lo[c])
                    consider((val[c] - *lo[c]) / rate, i, true, c);
                // below its lower bound and still falling: no block
            } else {
                if (phase1 && lo[c] && val[c] < *lo[c])
                    consider((*lo[c] - val[c]) / rate, i, true, c);
                else if (up[c] && val[c] <= *up[c])
                    consider((*up[c] - val[c]) / rate, i, false, c);
                // above its upper bound and still rising: no block
            }
        }
        return hit;
    }

    // One simplex phase. Returns true when the phase's optimum is reached,
    // false when phase 2 detects unboundedness (ray left in work/touched
    // plus `ray_dir`/`ray_col`).
    int ray_col = -1;
    int ray_dir = 0;

    bool run_phase(bool phase1, long& iters) {
        while (true) {
            if (++iters > kIterationCap) throw LpInternalError("simplex iteration cap exceeded");
            std::vector<Rational> cost = phase1 ? phase1_cost() : phase2_cost();
            if (phase1 && infeasibility() == 0) return true;
            std::vector<Rational> y = btran(cost);
            int q = -1;
            int dir = 0;
            for (int c = 0; c < ncols; ++c) {
                if (status[c] == ColStatus::Basic || fixed(c)) continue;
                Rational d = cost[c] - dot_col(c, y);
                if (status[c] == ColStatus::AtLower && d > 0) {
                    q = c;
                    dir = 1;
                    break;
                }
                if (status[c] == ColStatus::AtUpper && d < 0) {
                    q = c;
                    dir = -1;
                    break;
                }
            }
            if (q < 0) return true;  // phase optimum
            ftran(q);
            RatioHit hit = ratio_test(q, dir, phase1);
            if (!hit.blocked) {
                if (phase1) throw LpInternalError("phase-1 ray with positive infeasibility");
                ray_col = q;
                ray_dir = dir;
                return false;
            }
            // move values
            if (hit.t != 0) {
                val[q] += dir > 0 ? hit.t : -hit.t;
                for (int i : touched) {
                    Rational delta = work[i] * hit.t;
                    val[basic[i]] += dir > 0 ? -delta : delta;
                }
            }
            if (hit.row == -1) {
                status[q] = dir > 0 ? ColStatus::AtUpper : ColStatus::AtLower;
                continue;
            }
            int leave = basic[hit.row];
            // force the leaving value onto its bound exactly
            val[leave] = hit.to_lower ? *lo[leave] : *up[leave];
            pivot_update_binv(hit.row);
            basic[hit.row] = q;
            status[q] = ColStatus::Basic;
            status[leave] = hit.to_lower ? ColStatus::AtLower : ColStatus::AtUpper;
        }
    }

    LpOutcome extract_optimal() {
        LpOutcome out;
        out.status = LpStatus::Optimal;
        out.primal.assign(nv, Rational(0));
        for (int j = 0; j < nv; ++j) out.primal[j] = val[j];
        std::vector<Rational> cost = phase2_cost();
        std::vector<Rational> y = btran(cost);
        out.row_duals = y;
        out.reduced_costs.assign(nv, Rational(0));
        for (int j = 0; j < nv; ++j)
            if (status[j] != ColStatus::Basic) out.reduced_costs[j] = cost[j] - dot_col(j, y);
        Rational obj(0);
        for (const Term& t : p.objective) obj += t.coef * val[t.var];
        out.objective = obj;
        verify_optimal(out);
        return out;
    }

    LpOutcome extract_infeasible() {
        LpOutcome out;
        out.status = LpStatus::Infeasible;
        std::vector<Rational> cost = phase1_cost();
        std::vector<Rational> y = btran(cost);
        out.farkas_rows = y;
        // Bound multiplier is -y*A_j: the reduced cost for nonbasic columns
        // (zero phase-1 cost) and -c1_j for violated basic columns, whose
        // own violated bound closes the aggregation.
        out.farkas_bounds.assign(nv, Rational(0));
        for (int j = 0; j < nv; ++j) out.farkas_bounds[j] = -dot_col(j, y);
        verify_farkas(out);
        return out;
    }

    LpOutcome extract_unbounded() {
        LpOutcome out;
        out.status = LpStatus::Unbounded;
        out.primal.assign(nv, Rational(0));
        for (int j = 0; j < nv; ++j) out.primal[j] = val[j];
        out.ray.assign(nv, Rational(0));
        if (ray_col < nv) out.ray[ray_col] = Rational(ray_dir);
        for (int i : touched) {
            int c = basic[i];
            if (c < nv) out.ray[c] = ray_dir > 0 ? -work[i] : work[i];
        }
        verify_ray(out);
        return out;
    }

    void verify_optimal(const LpOutcome& out) const {
        // primal feasibility
        for (int j = 0; j < nv; ++j) {
            if (out.primal[j] < p.lb[j]) throw LpInternalError("primal below lower bound");
            if (p.ub[j] && out.primal[j] > *p.ub[j]) throw LpInternalError("primal above upper bound");
        }
        for (int i = 0; i < m; ++i) {
            Rational lhs(0);
            for (const Term& t : p.rows[i].terms) lhs += t.coef * out.primal[t.var];
            const auto& r = p.rows[i];
            if ((r.sense == Sense::LE && lhs > r.rhs) || (r.sense == Sense::GE && lhs < r.rhs) ||
                (r.sense == Sense::EQ && lhs != r.rhs))
                throw LpInternalError("primal violates a row");
        }
        // dual signs, aggregation identity, zero gap
        std::vector<Rational> agg(nv, Rational(0));
        Rational rhs_agg(0);
        for (int i = 0; i < m; ++i) {
            const Rational& u = out.row_duals[i];
            if (u == 0) continue;
            if (p.rows[i].sense == Sense::LE && u < 0) throw LpInternalError("negative dual on <= row");
            if (p.rows[i].sense == Sense::GE && u > 0) throw LpInternalError("positive dual on >= row");
            for (const Term& t : p.rows[i].terms) agg[t.var] += u * t.coef;
            rhs_agg += u * p.rows[i].rhs;
        }
        for (int j = 0; j < nv; ++j) {
            const Rational& d = out.reduced_costs[j];
            if (d == 0) continue;
            agg[j] += d;
            if (d > 0) {
                if (!p.ub[j]) throw LpInternalError("upper-bound dual on unbounded variable");
                rhs_agg += d * *p.ub[j];
            } else {
                rhs_agg += d * p.lb[j];
            }
        }
        std::vector<Rational> c(nv, Rational(0));
        for (const Term& t : p.objective) c[t.var] = t.coef;
        for (int j = 0; j < nv; ++j)
            if (agg[j] != c[j]) throw LpInternalError("dual aggregation misses objective");
        if (rhs_agg != out.objective) throw LpInternalError("duality gap nonzero");
    }

    void verify_farkas(const LpOutcome& out) const {
        std::vector<Rational> agg(nv, Rational(0));
        Rational rhs_agg(0);
        for (int i = 0; i < m; ++i) {
            const Rational& u = out.farkas_rows[i];
            if (u == 0) continue;
            if (p.rows[i].sense == Sense::LE && u < 0) throw LpInternalError("farkas sign on <= row");
            if (p.rows[i].sense == Sense::GE && u > 0) throw LpInternalError("farkas sign on >= row");
            for (const Term& t : p.rows[i].terms) agg[t.var] += u * t.coef;
            rhs_agg += u * p.rows[i].rhs;
        }
        for (int j = 0; j < nv; ++j) {
            const Rational& d = out.farkas_bounds[j];
            if (d == 0) continue;
            agg[j] += d;
            if (d > 0) {
                if (!p.ub[j]) throw LpInternalError("farkas upper-bound use on unbounded variable");
                rhs_agg += d * *p.ub[j];
            } else {
                rhs_agg += d * p.lb[j];
            }
        }
        for (int j = 0; j < nv; ++j)
            if (agg[j] != 0) throw LpInternalError("farkas aggregation not zero");
        if (rhs_agg >= 0) throw LpInternalError("farkas aggregation rhs not negative");
    }

    void verify_ray(const LpOutcome& out) const {
        Rational gain(0);
        for (const Term& t : p.objective) gain += t.coef * out.ray[t.var];
        if (gain <= 0) throw LpInternalError("ray does not improve the objective");
        for (int i = 0; i < m; ++i) {
            Rational lhs(0);
            for (const Term& t : p.rows[i].terms) lhs += t.coef * out.ray[t.var];
            const auto& r = p.rows[i];
            if ((r.sense == Sense::LE && lhs > 0) || (r.sense == Sense::GE && lhs < 0) ||
                (r.sense == Sense::EQ && lhs != 0))
                throw LpInternalError("ray violates a row direction");
        }
        for (int j = 0; j < nv; ++j) {
            if (out.ray[j] < 0) throw LpInternalError("ray leaves a lower bound");
            if (p.ub[j] && out.ray[j] > 0) throw LpInternalError("ray leaves an upper bound");
        }
    }

    LpOutcome solve() {
        if (!basis_ready) reset_basis();
        refresh_values();
        long iters = 0;
        run_phase(/*phase1=*/true, iters);
        if (infeasibility() != 0) return extract_infeasible();
        if (!run_phase(/*phase1=*/false, iters)) return extract_unbounded();
        return extract_optimal();
    }
};

LpSolver::LpSolver(LpProblem p) : impl_(std::make_unique<Impl>(std::move(p))) {}
LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

const LpProblem& LpSolver::problem() const {
    return impl_->p;
}

void LpSolver::set_var_bounds(int var, Rational lb, std::optional<Rational> ub) {
    if (var < 0 || var >= impl_->nv) throw LpInputError("variable index out of range");
    if (ub && lb > *ub) throw LpInputError("crossed bounds on variable");
    impl_->p.lb[var] = lb;
    impl_->p.ub[var] = ub;
    impl_->lo[var] = std::move(lb);
    impl_->up[var] = std::move(ub);
}

LpOutcome LpSolver::solve() {
    return impl_->solve();
}

LpOutcome solve_lp(const LpProblem& p) {
    LpSolver s(p);
    return s.solve();
}

LpProblem relaxation_of(const Model& m) {
    LpProblem p;
    p.num_vars = m.var_count();
    p.lb.reserve(p.num_vars);
    p.ub.reserve(p.num_vars);
    for (const auto& v : m.variables) {
        p.lb.push_back(v.lb);
        p.ub.push_back(v.ub);
    }
    p.objective = m.objective;
    p.rows.reserve(m.constraints.size());
    for (const auto& c : m.constraints) p.rows.push_back({c.sense, c.rhs, c.terms});
    return p;
}

}  // namespace chvip
