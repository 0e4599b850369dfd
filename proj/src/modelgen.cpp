#include "modelgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace chvip {

char sense_char(Sense s) {
    switch (s) {
        case Sense::LE: return 'L';
        case Sense::GE: return 'G';
        case Sense::EQ: return 'E';
    }
    return '?';
}

std::string subset_suffix(SubsetCode s) {
    std::string out;
    for (int i = 1; i <= kMaxGroundSet; ++i)
        if (s & (SubsetCode(1) << (i - 1))) out += (i < 10) ? char('0' + i) : 'a';
    return out;
}

std::string var_name(VarRole role, SubsetCode subset) {
    switch (role) {
        case VarRole::X: return "x_" + subset_suffix(subset);
        case VarRole::Y: return "y_" + subset_suffix(subset);
        case VarRole::Z: return "z";
    }
    return "?";
}

int Model::fixing_count() const {
    int c = 0;
    for (const auto& v : variables)
        if (v.fixed()) ++c;
    return c;
}

int Model::x_index(SubsetCode s) const {
    if (s == 0) return -1;
    return static_cast<int>(s) - 1;
}

int Model::y_index(SubsetCode s) const {
    if (s == 0) return -1;
    int count = (1 << n) - 1;
    return count + static_cast<int>(s) - 1;
}

int Model::z_index() const {
    if (variables.empty() || variables.back().role != VarRole::Z) return -1;
    return static_cast<int>(variables.size()) - 1;
}

namespace {

void check_n(int n) {
    if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("ground-set size out of [1,10]");
}

void add_xy_variables(Model& m, int n) {
    SubsetCode count = (SubsetCode(1) << n) - 1;
    for (SubsetCode s = 1; s <= count; ++s)
        m.variables.push_back({VarRole::X, s, VarKind::Binary, Rational(0), Rational(1), var_name(VarRole::X, s)});
    for (SubsetCode s = 1; s <= count; ++s)
        m.variables.push_back({VarRole::Y, s, VarKind::Binary, Rational(0), Rational(1), var_name(VarRole::Y, s)});
}

// All constraints are emitted in normalized <= form with every variable on
// the left-hand side.
void add_intersecting_rows(Model& m, int n) {
    SubsetCode count = (SubsetCode(1) << n) - 1;
    for (SubsetCode t = 1; t <= count; ++t)
        for (SubsetCode s = 1; s <= count; ++s) {
            if ((t & s) != 0) continue;
            LinearConstraint c;
            c.label = "inters_" + subset_suffix(t) + "_" + subset_suffix(s);
            c.sense = Sense::LE;
            c.rhs = 1;
            int it = m.y_index(t), is = m.y_index(s);
            if (it < is) {
                c.terms = {{it, Rational(1)}, {is, Rational(1)}};
            } else {
                c.terms = {{is, Rational(1)}, {it, Rational(1)}};
            }
            m.constraints.push_back(std::move(c));
        }
}

}  // namespace

Model build_inf(int n) {
    check_n(n);
    Model m;
    m.name = "INF(" + std::to_string(n) + ")";
    m.n = n;
    add_xy_variables(m, n);
    SubsetCode count = (SubsetCode(1) << n) - 1;
    for (SubsetCode s = 1; s <= count; ++s) m.objective.push_back({m.x_index(s), Rational(1)});

    // downset rows: x_T <= x_S for every ordered pair with empty != S strict
    // subset of T
    for (SubsetCode t = 1; t <= count; ++t)
        for (SubsetCode s = (t - 1) & t; s != 0; s = (s - 1) & t) {
            LinearConstraint c;
            c.label = "downset_" + subset_suffix(t) + "_" + subset_suffix(s);
            c.sense = Sense::LE;
            c.rhs = 0;
            int it = m.x_index(t), is = m.x_index(s);
            c.terms = {{is, Rational(-1)}, {it, Rational(1)}};
            m.constraints.push_back(std::move(c));
        }
    add_intersecting_rows(m, n);
    for (SubsetCode s = 1; s <= count; ++s) {
        LinearConstraint c;
        c.label = "contain_" + subset_suffix(s);
        c.sense = Sense::LE;
        c.rhs = 0;
        c.terms = {{m.x_index(s), Rational(-1)}, {m.y_index(s), Rational(1)}};
        m.constraints.push_back(std::move(c));
    }
    for (int i = 1; i <= n; ++i) {
        LinearConstraint c;
        c.label = "star_" + std::to_string(i);
        c.sense = Sense::LE;
        c.rhs = -1;
        for (SubsetCode s = 1; s <= count; ++s)
            if (s & (SubsetCode(1) << (i - 1))) c.terms.push_back({m.x_index(s), Rational(1)});
        for (SubsetCode s = 1; s <= count; ++s) c.terms.push_back({m.y_index(s), Rational(-1)});
        m.constraints.push_back(std::move(c));
    }
    return m;
}

Model build_opt(int n) {
    check_n(n);
    Model m;
    m.name = "OPT(" + std::to_string(n) + ")";
    m.n = n;
    add_xy_variables(m, n);
    m.variables.push_back({VarRole::Z, 0, VarKind::NonnegInteger, Rational(0), std::nullopt, "z"});
    SubsetCode count = (SubsetCode(1) << n) - 1;
    for (SubsetCode s = 1; s <= count; ++s) m.objective.push_back({m.y_index(s), Rational(1)});
    m.objective.push_back({m.z_index(), Rational(-1)});

    add_intersecting_rows(m, n);
    for (int i = 1; i <= n; ++i) {
        LinearConstraint c;
        c.label = "star_" + std::to_string(i);
        c.sense = Sense::LE;
        c.rhs = 0;
        for (SubsetCode s = 1; s <= count; ++s)
            if (s & (SubsetCode(1) << (i - 1))) c.terms.push_back({m.x_index(s), Rational(1)});
        c.terms.push_back({m.z_index(), Rational(-1)});
        m.constraints.push_back(std::move(c));
    }
    // generation rows: y_T <= x_S for every ordered pair of nonempty
    // S subset of T, S = T included
    for (SubsetCode t = 1; t <= count; ++t)
        for (SubsetCode s = t;; s = (s - 1) & t) {
            if (s == 0) break;
            LinearConstraint c;
            c.label = "gen_" + subset_suffix(t) + "_" + subset_suffix(s);
            c.sense = Sense::LE;
            c.rhs = 0;
            int ix = m.x_index(s), iy = m.y_index(t);
            c.terms = {{ix, Rational(-1)}, {iy, Rational(1)}};
            m.constraints.push_back(std::move(c));
        }
    return m;
}

Model build_red(int n) {
    if (n < 4) throw std::invalid_argument("build_red requires n >= 4");
    check_n(n);
    Model m = build_opt(n);
    m.name = "RED(" + std::to_string(n) + ")";
    SubsetCode count = (SubsetCode(1) << n) - 1;

    LinearConstraint berge;
    berge.label = "berge";
    berge.sense = Sense::LE;
    berge.rhs = 0;
    for (SubsetCode s = 1; s <= count; ++s) berge.terms.push_back({m.x_index(s), Rational(-1)});
    for (SubsetCode s = 1; s <= count; ++s) berge.terms.push_back({m.y_index(s), Rational(2)});
    m.constraints.push_back(std::move(berge));

    for (SubsetCode s = 1; s <= count; ++s) {
        int size = popcount(s);
        if (size >= 1 && size <= 2) {
            auto& v = m.variables[m.y_index(s)];
            v.lb = 0;
            v.ub = Rational(0);
        }
        if (size == 1 || (s & ~SubsetCode(0xF)) == 0) {
            auto& v = m.variables[m.x_index(s)];
            v.lb = 1;
            v.ub = Rational(1);
        }
    }
    return m;
}

Model apply_level_fixings(const Model& base, int m, const Family& fix_family) {
    int n = base.n;
    if (m < 4 || m > n - 1) throw std::invalid_argument("apply_level_fixings requires 4 <= m <= n-1");
    if (fix_family.n != n) throw std::invalid_argument("fix_family ground set differs from model");
    for (SubsetCode s : fix_family.members)
        if (popcount(s) != m) throw std::invalid_argument("fix_family member of wrong size");
    int k = static_cast<int>(fix_family.members.size());

    Model out = base;
    out.name = "RED(" + std::to_string(n) + ")^{" + std::to_string(k) + "," + std::to_string(m) + "}";
    SubsetCode count = (SubsetCode(1) << n) - 1;

    if (k >= 1) {
        // drop the fixing class x_S = 1 for nonempty S in 2^[4]; the
        // singleton fixings stay
        for (SubsetCode s = 1; s <= count; ++s)
            if ((s & ~SubsetCode(0xF)) == 0 && popcount(s) > 1) {
                auto& v = out.variables[out.x_index(s)];
                v.lb = 0;
                v.ub = Rational(1);
            }
    }

    auto fix = [&](SubsetCode s, int value) {
        auto& v = out.variables[out.x_index(s)];
        if (v.fixed() && v.lb != value)
            throw std::invalid_argument("level fixing conflicts with existing fixing on " + v.name);
        v.lb = value;
        v.ub = Rational(value);
    };
    for (SubsetCode s = 1; s <= count; ++s) {
        int size = popcount(s);
        if (size == m) fix(s, fix_family.contains(s) ? 1 : 0);
        else if (size > m && size <= n - 1) fix(s, 0);
    }
    return out;
}

std::vector<LinearConstraint> partition_cuts(int n, int max_parts) {
    check_n(n);
    if (max_parts < 2 || max_parts > n) throw std::invalid_argument("max_parts out of [2,n]");
    Model ref = build_inf(n);  // for y-variable indices
    std::vector<LinearConstraint> cuts;
    // enumerate set partitions: element 1..n assigned to part <= #parts so far + 1
    std::vector<int> assign(n, 0);
    auto rec = [&](auto&& self, int elem, int parts) -> void {
        if (elem == n) {
            if (parts < 2 || parts > max_parts) return;
            std::vector<SubsetCode> part_codes(parts, 0);
            for (int i = 0; i < n; ++i) part_codes[assign[i]] |= SubsetCode(1) << i;
            LinearConstraint c;
            c.label = "partition";
            for (SubsetCode p : part_codes) c.label += "_" + subset_suffix(p);
            c.sense = Sense::LE;
            c.rhs = 1;
            for (SubsetCode p : part_codes) c.terms.push_back({ref.y_index(p), Rational(1)});
            std::sort(c.terms.begin(), c.terms.end(),
                      [](const Term& a, const Term& b) { return a.var < b.var; });
            cuts.push_back(std::move(c));
            return;
        }
        for (int p = 0; p <= parts; ++p) {
            if (p == max_parts) break;
            assign[elem] = p;
            self(self, elem + 1, p == parts ? parts + 1 : parts);
        }
    };
    assign[0] = 0;
    rec(rec, 1, 1);
    return cuts;
}

ModelStats stats(const Model& m) {
    ModelStats st;
    st.vars = m.var_count();
    st.vars_excluding_z = st.vars - (m.z_index() >= 0 ? 1 : 0);
    st.fixings = m.fixing_count();
    long ub_rows = 0;
    for (const auto& v : m.variables)
        if (v.role == VarRole::X && !v.fixed()) ++ub_rows;
    st.ineqs = static_cast<long>(m.constraints.size()) + ub_rows;
    return st;
}

std::string emit(const Model& m, EmitFormat format) {
    std::string out;
    auto term_str = [&](const std::vector<Term>& terms, bool readable) {
        std::string s;
        if (readable) {
            bool first = true;
            for (const auto& t : terms) {
                if (!first) s += " + ";
                s += to_string(t.coef) + "*" + m.variables[t.var].name;
                first = false;
            }
            if (first) s += "0";
        } else {
            s += std::to_string(terms.size());
            for (const auto& t : terms) s += " " + std::to_string(t.var) + " " + to_string(t.coef);
        }
        return s;
    };
    if (format == EmitFormat::CertProblem) {
        out += "CERT 1\n";
        out += "VARS " + std::to_string(m.var_count()) + "\n";
        for (const auto& v : m.variables) {
            out += v.name;
            out += (v.kind == VarKind::Binary) ? " bin " : " int ";
            out += to_string(v.lb) + " " + (v.ub ? to_string(*v.ub) : "inf") + "\n";
        }
        out += "OBJ max " + term_str(m.objective, false) + "\n";
        out += "CONS " + std::to_string(m.constraints.size()) + "\n";
        for (const auto& c : m.constraints) {
            out += c.label;
            out += ' ';
            out += sense_char(c.sense);
            out += " " + to_string(c.rhs) + " " + term_str(c.terms, false) + "\n";
        }
    } else {
        out += "# " + m.name + "\n";
        out += "# maximize " + term_str(m.objective, true) + "\n";
        for (const auto& v : m.variables) {
            out += "# var " + v.name + " in [" + to_string(v.lb) + ", " + (v.ub ? to_string(*v.ub) : "inf") + "]\n";
        }
        for (const auto& c : m.constraints) {
            const char* rel = c.sense == Sense::LE ? "<=" : (c.sense == Sense::GE ? ">=" : "=");
            out += c.label + ": " + term_str(c.terms, true) + " " + rel + " " + to_string(c.rhs) + "\n";
        }
    }
    return out;
}

}  // namespace chvip
