#include "certcheck.hpp"

#include <algorithm>
#include <sstream>

#include "modelgen.hpp"

namespace chvip {

namespace {

struct Line {
    size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    size_t number = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        Line line{number, {}};
        std::istringstream ls(raw);
        std::string tok;
        while (ls >> tok) line.tokens.push_back(std::move(tok));
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : lines_(tokenize(text)) {}

    Certificate run() {
        Certificate c;
        expect_header();
        parse_vars(c);
        parse_obj(c);
        parse_cons(c);
        if (done()) return c;  // bare problem description
        parse_rtp(c);
        if (!done()) parse_sols(c);
        if (!done()) parse_ders(c);
        if (!done()) fail("trailing content after DERS section");
        return c;
    }

  private:
    std::vector<Line> lines_;
    size_t pos_ = 0;

    bool done() const { return pos_ >= lines_.size(); }

    const Line& next(const char* section) {
        if (done()) throw CertParseError(lines_.empty() ? 0 : lines_.back().number, std::string("unexpected end of file in ") + section);
        return lines_[pos_++];
    }

    [[noreturn]] void fail(const std::string& msg) const {
        size_t ln = pos_ > 0 && pos_ <= lines_.size() ? lines_[pos_ - 1].number : 0;
        throw CertParseError(ln, msg);
    }

    long parse_count(const std::string& tok, const char* what) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            fail(std::string("bad ") + what + " count '" + tok + "'");
        return std::stol(tok);
    }

    Rational parse_rat(const std::string& tok, const char* what) {
        auto q = parse_rational_strict(tok);
        if (!q) fail(std::string("non-canonical rational '") + tok + "' in " + what);
        return *q;
    }

    int parse_varidx(const std::string& tok, int num_vars, const char* what) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            fail(std::string("bad variable index '") + tok + "' in " + what);
        long j = std::stol(tok);
        if (j >= num_vars) fail("variable index " + tok + " out of range in " + what);
        return static_cast<int>(j);
    }

    // Reads `t idx val idx val ...` from tokens[at..); requires strictly
    // increasing indices and nonzero values.
    std::vector<Term> parse_terms(const Line& line, size_t at, int num_vars, const char* what, bool allow_trailing) {
        if (at >= line.tokens.size()) fail(std::string("missing term count in ") + what);
        long t = parse_count(line.tokens[at], what);
        size_t need = at + 1 + 2 * static_cast<size_t>(t);
        if (line.tokens.size() < need || (!allow_trailing && line.tokens.size() != need))
            fail(std::string("term list length mismatch in ") + what);
        std::vector<Term> terms;
        terms.reserve(static_cast<size_t>(t));
        int prev = -1;
        for (long i = 0; i < t; ++i) {
            int j = parse_varidx(line.tokens[at + 1 + 2 * i], num_vars, what);
            if (j <= prev) fail(std::string("variable indices not strictly increasing in ") + what);
            prev = j;
            Rational v = parse_rat(line.tokens[at + 2 + 2 * i], what);
            if (v == 0) fail(std::string("zero coefficient in ") + what);
            terms.push_back({j, std::move(v)});
        }
        return terms;
    }

    Sense parse_sense(const std::string& tok) {
        if (tok == "L") return Sense::LE;
        if (tok == "G") return Sense::GE;
        if (tok == "E") return Sense::EQ;
        fail("bad sense '" + tok + "'");
    }

    Ref parse_ref(const std::string& tok, const Certificate& c, int der_index) {
        RefKind kind;
        size_t plen;
        if (tok.rfind("LB", 0) == 0) {
            kind = RefKind::LowerBound;
            plen = 2;
        } else if (tok.rfind("UB", 0) == 0) {
            kind = RefKind::UpperBound;
            plen = 2;
        } else if (tok.rfind("C", 0) == 0) {
            kind = RefKind::Constraint;
            plen = 1;
        } else if (tok.rfind("D", 0) == 0) {
            kind = RefKind::Derivation;
            plen = 1;
        } else {
            fail("bad reference '" + tok + "'");
        }
        std::string digits = tok.substr(plen);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            fail("bad reference '" + tok + "'");
        long idx = std::stol(digits);
        long limit = 0;
        switch (kind) {
            case RefKind::Constraint: limit = static_cast<long>(c.constraints.size()); break;
            case RefKind::LowerBound:
            case RefKind::UpperBound: limit = static_cast<long>(c.vars.size()); break;
            case RefKind::Derivation: limit = der_index; break;
        }
        if (idx >= limit) fail("reference '" + tok + "' out of range");
        return Ref{kind, static_cast<int>(idx)};
    }

    void expect_header() {
        const Line& l = next("header");
        if (l.tokens.size() != 2 || l.tokens[0] != "CERT" || l.tokens[1] != "1")
            fail("expected 'CERT 1' header");
    }

    void parse_vars(Certificate& c) {
        const Line& h = next("VARS");
        if (h.tokens.size() != 2 || h.tokens[0] != "VARS") fail("expected VARS section");
        long v = parse_count(h.tokens[1], "VARS");
        for (long i = 0; i < v; ++i) {
            const Line& l = next("VARS");
            if (l.tokens.size() != 4) fail("variable line needs name, kind, lb, ub");
            CertVar var;
            var.name = l.tokens[0];
            for (const auto& prev : c.vars)
                if (prev.name == var.name) fail("duplicate variable name '" + var.name + "'");
            if (l.tokens[1] == "bin")
                var.kind = VarKind::Binary;
            else if (l.tokens[1] == "int")
                var.kind = VarKind::NonnegInteger;
            else
                fail("bad variable kind '" + l.tokens[1] + "'");
            var.lb = parse_rat(l.tokens[2], "variable bound");
            if (l.tokens[3] != "inf") var.ub = parse_rat(l.tokens[3], "variable bound");
            c.vars.push_back(std::move(var));
        }
    }

    void parse_obj(Certificate& c) {
        const Line& l = next("OBJ");
        if (l.tokens.size() < 3 || l.tokens[0] != "OBJ" || l.tokens[1] != "max")
            fail("expected 'OBJ max' section");
        c.objective = parse_terms(l, 2, static_cast<int>(c.vars.size()), "OBJ", false);
    }

    void parse_cons(Certificate& c) {
        const Line& h = next("CONS");
        if (h.tokens.size() != 2 || h.tokens[0] != "CONS") fail("expected CONS section");
        long rows = parse_count(h.tokens[1], "CONS");
        for (long i = 0; i < rows; ++i) {
            const Line& l = next("CONS");
            if (l.tokens.size() < 4) fail("constraint line needs label, sense, rhs, terms");
            CertConstraint row;
            row.label = l.tokens[0];
            row.sense = parse_sense(l.tokens[1]);
            row.rhs = parse_rat(l.tokens[2], "CONS");
            row.terms = parse_terms(l, 3, static_cast<int>(c.vars.size()), "CONS", false);
            c.constraints.push_back(std::move(row));
        }
    }

    void parse_rtp(Certificate& c) {
        const Line& l = next("RTP");
        if (l.tokens.empty() || l.tokens[0] != "RTP") fail("expected RTP section");
        CertGoal g;
        if (l.tokens.size() == 2 && l.tokens[1] == "infeas") {
            g.infeasible = true;
        } else if (l.tokens.size() == 4 && l.tokens[1] == "range") {
            g.lb = parse_rat(l.tokens[2], "RTP");
            g.ub = parse_rat(l.tokens[3], "RTP");
        } else {
            fail("RTP must be 'infeas' or 'range <lb> <ub>'");
        }
        c.goal = g;
    }

    void parse_sols(Certificate& c) {
        if (lines_[pos_].tokens[0] != "SOLS") return;
        const Line& h = next("SOLS");
        if (h.tokens.size() != 2) fail("expected SOLS section");
        long s = parse_count(h.tokens[1], "SOLS");
        for (long i = 0; i < s; ++i) {
            const Line& l = next("SOLS");
            c.solutions.push_back(parse_terms(l, 0, static_cast<int>(c.vars.size()), "SOLS", false));
        }
    }

    void parse_ders(Certificate& c) {
        const Line& h = next("DERS");
        if (h.tokens.size() != 2 || h.tokens[0] != "DERS") fail("expected DERS section");
        long d = parse_count(h.tokens[1], "DERS");
        for (long i = 0; i < d; ++i) {
            const Line& l = next("DERS");
            if (l.tokens.size() < 5) fail("derivation line needs label, sense, rhs, terms, rule");
            Derivation der;
            der.stated.label = l.tokens[0];
            der.stated.sense = parse_sense(l.tokens[1]);
            der.stated.rhs = parse_rat(l.tokens[2], "DERS");
            der.stated.terms = parse_terms(l, 3, static_cast<int>(c.vars.size()), "DERS", true);
            size_t at = 4 + 2 * der.stated.terms.size();
            if (at >= l.tokens.size()) fail("missing rule keyword in derivation");
            const std::string& rule = l.tokens[at];
            if (rule == "asm") {
                der.rule = DerRule::Asm;
                if (l.tokens.size() != at + 1) fail("asm takes no arguments");
            } else if (rule == "lin" || rule == "rnd") {
                der.rule = rule == "lin" ? DerRule::Lin : DerRule::Rnd;
                if (l.tokens.size() < at + 2) fail("missing multiplier count in derivation");
                long r = parse_count(l.tokens[at + 1], "DERS");
                if (l.tokens.size() != at + 2 + 2 * static_cast<size_t>(r))
                    fail("multiplier list length mismatch in derivation");
                for (long k = 0; k < r; ++k) {
                    Ref ref = parse_ref(l.tokens[at + 2 + 2 * k], c, static_cast<int>(i));
                    Rational mult = parse_rat(l.tokens[at + 3 + 2 * k], "DERS");
                    der.mults.emplace_back(ref, std::move(mult));
                }
            } else if (rule == "uns") {
                der.rule = DerRule::Uns;
                if (l.tokens.size() != at + 5) fail("uns takes exactly four references");
                der.uns_ref1 = parse_ref(l.tokens[at + 1], c, static_cast<int>(i));
                der.uns_aref1 = parse_ref(l.tokens[at + 2], c, static_cast<int>(i));
                der.uns_ref2 = parse_ref(l.tokens[at + 3], c, static_cast<int>(i));
                der.uns_aref2 = parse_ref(l.tokens[at + 4], c, static_cast<int>(i));
            } else {
                fail("bad rule '" + rule + "'");
            }
            c.derivations.push_back(std::move(der));
        }
    }
};

std::string terms_str(const std::vector<Term>& terms) {
    std::string s = std::to_string(terms.size());
    for (const auto& t : terms) s += " " + std::to_string(t.var) + " " + to_string(t.coef);
    return s;
}

std::string ref_str(const Ref& r) {
    switch (r.kind) {
        case RefKind::Constraint: return "C" + std::to_string(r.index);
        case RefKind::LowerBound: return "LB" + std::to_string(r.index);
        case RefKind::UpperBound: return "UB" + std::to_string(r.index);
        case RefKind::Derivation: return "D" + std::to_string(r.index);
    }
    return {};
}

std::string constraint_str(const CertConstraint& c) {
    std::string s = c.label;
    s += ' ';
    s += sense_char(c.sense);
    s += " " + to_string(c.rhs) + " " + terms_str(c.terms);
    return s;
}

// --- checking helpers -----------------------------------------------------

using AsmSet = std::vector<int>;  // sorted derivation indices

AsmSet asm_union(const AsmSet& a, const AsmSet& b) {
    AsmSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

AsmSet asm_without(const AsmSet& a, int x) {
    AsmSet out;
    for (int v : a)
        if (v != x) out.push_back(v);
    return out;
}

struct Checker {
    const Certificate& c;
    CheckVerdict verdict;
    std::vector<AsmSet> assumptions;

    explicit Checker(const Certificate& cert) : c(cert) {}

    bool refute_der(int idx, const std::string& reason) {
        verdict.ok = false;
        verdict.derivation = idx;
        verdict.reason = "derivation " + std::to_string(idx) + " (" + c.derivations[idx].stated.label + "): " + reason;
        return false;
    }

    bool refute(const std::string& reason) {
        verdict.ok = false;
        verdict.reason = reason;
        return false;
    }

    Rational objective_value(const std::vector<Term>& assignment) const {
        std::vector<Rational> dense(c.vars.size(), Rational(0));
        for (const auto& t : assignment) dense[static_cast<size_t>(t.var)] = t.coef;
        Rational v = 0;
        for (const auto& t : c.objective) v += t.coef * dense[static_cast<size_t>(t.var)];
        return v;
    }

    bool check_solution(int idx) {
        std::vector<Rational> dense(c.vars.size(), Rational(0));
        for (const auto& t : c.solutions[static_cast<size_t>(idx)]) dense[static_cast<size_t>(t.var)] = t.coef;
        for (size_t j = 0; j < c.vars.size(); ++j) {
            const CertVar& v = c.vars[j];
            if (dense[j] < v.lb || (v.ub && dense[j] > *v.ub)) {
                verdict.solution = idx;
                return refute("solution " + std::to_string(idx) + " violates bounds of " + v.name);
            }
            if (!is_integral(dense[j])) {
                verdict.solution = idx;
                return refute("solution " + std::to_string(idx) + " has fractional " + v.name);
            }
        }
        for (size_t i = 0; i < c.constraints.size(); ++i) {
            const CertConstraint& row = c.constraints[i];
            Rational lhs = 0;
            for (const auto& t : row.terms) lhs += t.coef * dense[static_cast<size_t>(t.var)];
            bool sat = row.sense == Sense::LE ? lhs <= row.rhs : row.sense == Sense::GE ? lhs >= row.rhs : lhs == row.rhs;
            if (!sat) {
                verdict.solution = idx;
                return refute("solution " + std::to_string(idx) + " violates constraint " + row.label);
            }
        }
        return true;
    }

    // View of a reference as a constraint for aggregation. Derivation refs
    // are guaranteed earlier by the parser.
    const CertConstraint* resolve(const Ref& r, CertConstraint& scratch, int idx, bool& ok) {
        ok = true;
        switch (r.kind) {
            case RefKind::Constraint:
                return &c.constraints[static_cast<size_t>(r.index)];
            case RefKind::Derivation:
                return &c.derivations[static_cast<size_t>(r.index)].stated;
            case RefKind::LowerBound:
                scratch.sense = Sense::GE;
                scratch.rhs = c.vars[static_cast<size_t>(r.index)].lb;
                scratch.terms = {{r.index, Rational(1)}};
                return &scratch;
            case RefKind::UpperBound: {
                const auto& ub = c.vars[static_cast<size_t>(r.index)].ub;
                if (!ub) {
                    ok = false;
                    return nullptr;
                }
                scratch.sense = Sense::LE;
                scratch.rhs = *ub;
                scratch.terms = {{r.index, Rational(1)}};
                return &scratch;
            }
        }
        ok = false;
        return nullptr;
    }

    // Aggregates the referenced rows; on success fills coefficient/rhs and
    // the union of referenced assumption sets.
    bool aggregate(int idx, std::vector<Rational>& coef, Rational& rhs, AsmSet& asms, int sigma) {
        const Derivation& d = c.derivations[static_cast<size_t>(idx)];
        std::fill(coef.begin(), coef.end(), Rational(0));
        rhs = 0;
        asms.clear();
        for (const auto& [ref, mult] : d.mults) {
            CertConstraint scratch;
            bool ok = true;
            const CertConstraint* row = resolve(ref, scratch, idx, ok);
            if (!ok) return refute_der(idx, "reference " + ref_str(ref) + " has no finite bound");
            Rational eff = sigma * mult;
            if (row->sense == Sense::LE && eff < 0)
                return refute_der(idx, "negative multiplier on <= reference " + ref_str(ref));
            if (row->sense == Sense::GE && eff > 0)
                return refute_der(idx, "positive multiplier on >= reference " + ref_str(ref));
            if (mult == 0) continue;
            for (const auto& t : row->terms) coef[static_cast<size_t>(t.var)] += mult * t.coef;
            rhs += mult * row->rhs;
            if (ref.kind == RefKind::Derivation)
                asms = asm_union(asms, assumptions[static_cast<size_t>(ref.index)]);
        }
        return true;
    }

    bool stated_matches(int idx, const std::vector<Rational>& coef) {
        const CertConstraint& s = c.derivations[static_cast<size_t>(idx)].stated;
        std::vector<Rational> want(c.vars.size(), Rational(0));
        for (const auto& t : s.terms) want[static_cast<size_t>(t.var)] = t.coef;
        for (size_t j = 0; j < c.vars.size(); ++j)
            if (coef[j] != want[j])
                return refute_der(idx, "aggregated coefficient of " + c.vars[j].name + " is " + to_string(coef[j]) + ", stated " + to_string(want[j]));
        return true;
    }

    bool check_lin(int idx, bool round) {
        const Derivation& d = c.derivations[static_cast<size_t>(idx)];
        int sigma;
        if (d.stated.sense == Sense::LE)
            sigma = 1;
        else if (d.stated.sense == Sense::GE)
            sigma = -1;
        else
            return refute_der(idx, "lin/rnd may not state an equation");
        std::vector<Rational> coef(c.vars.size());
        Rational rhs;
        AsmSet asms;
        if (!aggregate(idx, coef, rhs, asms, sigma)) return false;
        if (!stated_matches(idx, coef)) return false;
        if (round) {
            for (const auto& t : d.stated.terms) {
                if (!is_integral(t.coef))
                    return refute_der(idx, "rnd with fractional coefficient on " + c.vars[static_cast<size_t>(t.var)].name);
            }
            rhs = d.stated.sense == Sense::LE ? rat_floor(rhs) : rat_ceil(rhs);
        }
        bool dominated = d.stated.sense == Sense::LE ? rhs <= d.stated.rhs : rhs >= d.stated.rhs;
        if (!dominated)
            return refute_der(idx, "aggregated rhs " + to_string(rhs) + " does not dominate stated rhs " + to_string(d.stated.rhs));
        assumptions[static_cast<size_t>(idx)] = std::move(asms);
        return true;
    }

    static bool is_absurd(const CertConstraint& s) {
        if (!s.terms.empty()) return false;
        return s.sense == Sense::LE ? s.rhs < 0 : s.sense == Sense::GE ? s.rhs > 0 : s.rhs != 0;
    }

    bool dominates(const CertConstraint& a, const CertConstraint& b) {
        if (is_absurd(a)) return true;
        if (a.sense != b.sense || a.terms != b.terms) return false;
        switch (a.sense) {
            case Sense::LE: return a.rhs <= b.rhs;
            case Sense::GE: return a.rhs >= b.rhs;
            case Sense::EQ: return a.rhs == b.rhs;
        }
        return false;
    }

    bool check_uns(int idx) {
        const Derivation& d = c.derivations[static_cast<size_t>(idx)];
        for (const Ref* r : {&d.uns_ref1, &d.uns_aref1, &d.uns_ref2, &d.uns_aref2})
            if (r->kind != RefKind::Derivation) return refute_der(idx, "uns references must be derivations");
        const Derivation& a1 = c.derivations[static_cast<size_t>(d.uns_aref1.index)];
        const Derivation& a2 = c.derivations[static_cast<size_t>(d.uns_aref2.index)];
        if (a1.rule != DerRule::Asm || a2.rule != DerRule::Asm)
            return refute_der(idx, "uns assumption references are not asm derivations");
        // Complementary integer split x_j <= a, x_j >= a+1.
        const CertConstraint& s1 = a1.stated;
        const CertConstraint& s2 = a2.stated;
        bool complementary = s1.terms.size() == 1 && s2.terms.size() == 1 &&
                             s1.terms[0].var == s2.terms[0].var && s1.terms[0].coef == 1 &&
                             s2.terms[0].coef == 1 && s1.sense == Sense::LE &&
                             s2.sense == Sense::GE && is_integral(s1.rhs) &&
                             s2.rhs == s1.rhs + 1;
        if (!complementary) return refute_der(idx, "uns assumptions are not a complementary integer split");
        const Derivation& b1 = c.derivations[static_cast<size_t>(d.uns_ref1.index)];
        const Derivation& b2 = c.derivations[static_cast<size_t>(d.uns_ref2.index)];
        if (!dominates(b1.stated, d.stated))
            return refute_der(idx, "first branch does not dominate the stated constraint");
        if (!dominates(b2.stated, d.stated))
            return refute_der(idx, "second branch does not dominate the stated constraint");
        AsmSet left = asm_without(assumptions[static_cast<size_t>(d.uns_ref1.index)], d.uns_aref1.index);
        AsmSet right = asm_without(assumptions[static_cast<size_t>(d.uns_ref2.index)], d.uns_aref2.index);
        assumptions[static_cast<size_t>(idx)] = asm_union(left, right);
        return true;
    }

    bool check_goal() {
        if (!c.goal) return refute("certificate has no goal");
        if (c.derivations.empty()) return refute("goal stated without derivations");
        int last = static_cast<int>(c.derivations.size()) - 1;
        const CertConstraint& fin = c.derivations[static_cast<size_t>(last)].stated;
        if (!assumptions[static_cast<size_t>(last)].empty())
            return refute_der(last, "final derivation has a nonempty assumption set");
        if (c.goal->infeasible) {
            if (!(fin.terms.empty() && fin.sense == Sense::LE && fin.rhs < 0))
                return refute_der(last, "infeasibility goal needs a final contradiction 0 <= c with c < 0");
            return true;
        }
        if (fin.sense != Sense::LE || fin.terms != c.objective)
            return refute_der(last, "range goal needs a final <= bound on the objective");
        if (fin.rhs > c.goal->ub)
            return refute_der(last, "derived objective bound " + to_string(fin.rhs) + " exceeds stated upper bound " + to_string(c.goal->ub));
        for (const auto& sol : c.solutions)
            if (objective_value(sol) >= c.goal->lb) return true;
        return refute("no listed solution attains the stated lower bound " + to_string(c.goal->lb));
    }

    CheckVerdict run() {
        verdict.ok = true;
        for (int i = 0; i < static_cast<int>(c.solutions.size()); ++i)
            if (!check_solution(i)) return verdict;
        assumptions.assign(c.derivations.size(), {});
        for (int i = 0; i < static_cast<int>(c.derivations.size()); ++i) {
            const Derivation& d = c.derivations[static_cast<size_t>(i)];
            bool ok = true;
            switch (d.rule) {
                case DerRule::Asm: assumptions[static_cast<size_t>(i)] = {i}; break;
                case DerRule::Lin: ok = check_lin(i, false); break;
                case DerRule::Rnd: ok = check_lin(i, true); break;
                case DerRule::Uns: ok = check_uns(i); break;
            }
            if (!ok) return verdict;
        }
        if (!check_goal()) return verdict;
        return verdict;
    }
};

}  // namespace

Certificate parse_certificate(const std::string& text) {
    return Parser(text).run();
}

std::string serialize_certificate(const Certificate& c) {
    std::string out = "CERT 1\n";
    out += "VARS " + std::to_string(c.vars.size()) + "\n";
    for (const auto& v : c.vars) {
        out += v.name;
        out += v.kind == VarKind::Binary ? " bin " : " int ";
        out += to_string(v.lb) + " " + (v.ub ? to_string(*v.ub) : "inf") + "\n";
    }
    out += "OBJ max " + terms_str(c.objective) + "\n";
    out += "CONS " + std::to_string(c.constraints.size()) + "\n";
    for (const auto& row : c.constraints) out += constraint_str(row) + "\n";
    if (!c.goal) return out;
    if (c.goal->infeasible)
        out += "RTP infeas\n";
    else
        out += "RTP range " + to_string(c.goal->lb) + " " + to_string(c.goal->ub) + "\n";
    out += "SOLS " + std::to_string(c.solutions.size()) + "\n";
    for (const auto& sol : c.solutions) out += terms_str(sol) + "\n";
    out += "DERS " + std::to_string(c.derivations.size()) + "\n";
    for (const auto& d : c.derivations) {
        out += constraint_str(d.stated);
        switch (d.rule) {
            case DerRule::Asm:
                out += " asm";
                break;
            case DerRule::Lin:
            case DerRule::Rnd:
                out += d.rule == DerRule::Lin ? " lin " : " rnd ";
                out += std::to_string(d.mults.size());
                for (const auto& [ref, mult] : d.mults) out += " " + ref_str(ref) + " " + to_string(mult);
                break;
            case DerRule::Uns:
                out += " uns " + ref_str(d.uns_ref1) + " " + ref_str(d.uns_aref1) + " " + ref_str(d.uns_ref2) + " " + ref_str(d.uns_aref2);
                break;
        }
        out += "\n";
    }
    return out;
}

CheckVerdict check_certificate(const Certificate& c) {
    return Checker(c).run();
}

std::optional<Formulation> parse_formulation(const std::string& s) {
    if (s == "inf") return Formulation::Inf;
    if (s == "opt") return Formulation::Opt;
    if (s == "red") return Formulation::Red;
    return std::nullopt;
}

VerifyVerdict verify_input(const Certificate& c, const InputSpec& spec) {
    Model m;
    switch (spec.form) {
        case Formulation::Inf: m = build_inf(spec.n); break;
        case Formulation::Opt: m = build_opt(spec.n); break;
        case Formulation::Red: m = build_red(spec.n); break;
    }
    if (spec.m > 0) {
        if (!spec.fix_family) return {false, "level fixing requested without a family"};
        m = apply_level_fixings(m, spec.m, *spec.fix_family);
    }
    auto mismatch = [](const std::string& detail) { return VerifyVerdict{false, detail}; };
    if (static_cast<size_t>(m.var_count()) != c.vars.size())
        return mismatch("variable count: expected " + std::to_string(m.var_count()) + ", certificate has " + std::to_string(c.vars.size()));
    for (size_t j = 0; j < c.vars.size(); ++j) {
        const Variable& want = m.variables[j];
        const CertVar& got = c.vars[j];
        std::string where = "variable " + std::to_string(j) + " (" + want.name + ")";
        if (want.name != got.name) return mismatch(where + ": name is " + got.name);
        if (want.kind != got.kind) return mismatch(where + ": kind differs");
        if (want.lb != got.lb) return mismatch(where + ": lower bound is " + to_string(got.lb) + ", expected " + to_string(want.lb));
        if (want.ub.has_value() != got.ub.has_value() || (want.ub && *want.ub != *got.ub))
            return mismatch(where + ": upper bound differs");
    }
    if (m.objective != c.objective) return mismatch("objective row differs");
    if (m.constraints.size() != c.constraints.size())
        return mismatch("constraint count: expected " + std::to_string(m.constraints.size()) + ", certificate has " + std::to_string(c.constraints.size()));
    for (size_t i = 0; i < m.constraints.size(); ++i) {
        const LinearConstraint& want = m.constraints[i];
        const CertConstraint& got = c.constraints[i];
        std::string where = "row " + std::to_string(i) + " (" + want.label + ")";
        if (want.label != got.label) return mismatch(where + ": label is " + got.label);
        if (want.sense != got.sense) return mismatch(where + ": sense differs");
        if (want.rhs != got.rhs) return mismatch(where + ": rhs is " + to_string(got.rhs) + ", expected " + to_string(want.rhs));
        if (want.terms.size() != got.terms.size()) return mismatch(where + ": term count differs");
        for (size_t k = 0; k < want.terms.size(); ++k) {
            if (want.terms[k].var != got.terms[k].var)
                return mismatch(where + ": column " + std::to_string(got.terms[k].var) + " unexpected");
            if (want.terms[k].coef != got.terms[k].coef)
                return mismatch(where + ": coefficient of " + m.variables[want.terms[k].var].name + " is " + to_string(got.terms[k].coef) + ", expected " + to_string(want.terms[k].coef));
        }
    }
    return {true, {}};
}

}  // namespace chvip
