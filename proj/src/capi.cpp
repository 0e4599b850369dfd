#include "chvip/chvip.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "bbsolver.hpp"
#include "certcheck.hpp"
#include "modelgen.hpp"
#include "oracle.hpp"
#include "setcore.hpp"

using namespace chvip;

struct chv_model {
    Model model;
};

struct chv_result {
    SolveResult result;
};

namespace {

thread_local std::string g_last_error;

chv_status fail(chv_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps exceptions from the C++ core onto status codes.
template <typename Fn>
chv_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const CertParseError& e) {
        return fail(CHV_ERR_PARSE, e.what());
    } catch (const LpInternalError& e) {
        return fail(CHV_ERR_INTERNAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CHV_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CHV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CHV_ERR_INTERNAL, e.what());
    }
}

}  // namespace

extern "C" {

const char* chv_last_error(void) {
    return g_last_error.c_str();
}

void chv_string_free(char* s) {
    delete[] s;
}

chv_status chv_model_create(const char* form, int n, chv_model** out) {
    if (!form || !out) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        auto f = parse_formulation(form);
        if (!f) return fail(CHV_ERR_INVALID, std::string("unknown formulation '") + form + "'");
        Model m;
        switch (*f) {
            case Formulation::Inf: m = build_inf(n); break;
            case Formulation::Opt: m = build_opt(n); break;
            case Formulation::Red: m = build_red(n); break;
        }
        *out = new chv_model{std::move(m)};
        return CHV_OK;
    });
}

chv_status chv_model_apply_level_fixings(chv_model* m, int level, const char* family_literal) {
    if (!m || !family_literal) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        auto fam = parse_family(family_literal, m->model.n);
        if (!fam) return fail(CHV_ERR_PARSE, std::string("bad family literal '") + family_literal + "'");
        m->model = apply_level_fixings(m->model, level, *fam);
        return CHV_OK;
    });
}

chv_status chv_model_stats(const chv_model* m, int* vars, int* vars_excluding_z, long* ineqs, int* fixings) {
    if (!m) return fail(CHV_ERR_INVALID, "null model");
    ModelStats st = stats(m->model);
    if (vars) *vars = st.vars;
    if (vars_excluding_z) *vars_excluding_z = st.vars_excluding_z;
    if (ineqs) *ineqs = st.ineqs;
    if (fixings) *fixings = st.fixings;
    return CHV_OK;
}

chv_status chv_model_emit(const chv_model* m, int readable, char** text) {
    if (!m || !text) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        *text = dup_string(emit(m->model, readable ? EmitFormat::Readable : EmitFormat::CertProblem));
        return CHV_OK;
    });
}

void chv_model_free(chv_model* m) {
    delete m;
}

chv_status chv_solve(const chv_model* m, double time_limit_seconds, long node_limit, int progress, chv_result** out) {
    if (!m || !out) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        SolveLimits limits;
        limits.time_seconds = time_limit_seconds;
        limits.node_limit = node_limit;
        limits.progress = progress != 0;
        *out = new chv_result{solve_ip(m->model, limits)};
        return CHV_OK;
    });
}

chv_solve_status chv_result_status(const chv_result* r) {
    switch (r->result.status) {
        case IpStatus::Optimal: return CHV_SOLVE_OPTIMAL;
        case IpStatus::Infeasible: return CHV_SOLVE_INFEASIBLE;
        case IpStatus::Limit: return CHV_SOLVE_LIMIT;
    }
    return CHV_SOLVE_LIMIT;
}

long chv_result_nodes(const chv_result* r) {
    return r->result.node_count;
}

chv_status chv_result_objective(const chv_result* r, char** value) {
    if (!r || !value) return fail(CHV_ERR_INVALID, "null argument");
    if (!r->result.best_solution) return fail(CHV_ERR_INVALID, "no solution present");
    *value = dup_string(to_string(r->result.best_objective));
    return CHV_OK;
}

chv_status chv_result_dual_bound(const chv_result* r, char** value) {
    if (!r || !value) return fail(CHV_ERR_INVALID, "null argument");
    if (!r->result.dual_bound) return fail(CHV_ERR_INVALID, "no dual bound present");
    *value = dup_string(to_string(*r->result.dual_bound));
    return CHV_OK;
}

chv_status chv_result_certificate(const chv_result* r, char** text) {
    if (!r || !text) return fail(CHV_ERR_INVALID, "null argument");
    if (!r->result.certificate) return fail(CHV_ERR_INVALID, "no certificate present");
    return guarded([&] {
        *text = dup_string(serialize_certificate(*r->result.certificate));
        return CHV_OK;
    });
}

chv_status chv_result_solution(const chv_result* r, char** text) {
    if (!r || !text) return fail(CHV_ERR_INVALID, "null argument");
    if (!r->result.best_solution || !r->result.certificate)
        return fail(CHV_ERR_INVALID, "no solution present");
    const auto& vars = r->result.certificate->vars;
    const auto& x = *r->result.best_solution;
    std::ostringstream out;
    for (size_t j = 0; j < x.size(); ++j)
        if (x[j] != 0) out << vars[j].name << " " << to_string(x[j]) << "\n";
    *text = dup_string(out.str());
    return CHV_OK;
}

void chv_result_free(chv_result* r) {
    delete r;
}

chv_status chv_check_certificate(const char* text, char** reason) {
    if (!text) return fail(CHV_ERR_INVALID, "null certificate text");
    return guarded([&] {
        Certificate c = parse_certificate(text);
        CheckVerdict v = check_certificate(c);
        if (v.ok) return CHV_OK;
        if (reason) *reason = dup_string(v.reason);
        return fail(CHV_ERR_INVALID, v.reason);
    });
}

chv_status chv_verify_input(const char* text, const char* form, int n, int level, const char* family_literal, char** detail) {
    if (!text || !form) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        auto f = parse_formulation(form);
        if (!f) return fail(CHV_ERR_INVALID, std::string("unknown formulation '") + form + "'");
        InputSpec spec;
        spec.form = *f;
        spec.n = n;
        spec.m = level;
        if (level > 0) {
            if (!family_literal) return fail(CHV_ERR_INVALID, "level fixing needs a family literal");
            auto fam = parse_family(family_literal, n);
            if (!fam) return fail(CHV_ERR_PARSE, std::string("bad family literal '") + family_literal + "'");
            spec.fix_family = *fam;
        }
        Certificate c = parse_certificate(text);
        VerifyVerdict v = verify_input(c, spec);
        if (v.match) return CHV_OK;
        if (detail) *detail = dup_string(v.detail);
        return fail(CHV_ERR_INVALID, v.detail);
    });
}

chv_status chv_oracle(int n, int long_run, int progress, int* all_satisfy, char** report) {
    return guarded([&] {
        std::function<void(long)> cb;
        if (progress) cb = [](long count) { std::fprintf(stderr, "downsets %ld\n", count); };
        OracleReport rep = verify_conjecture(n, long_run != 0, cb);
        if (all_satisfy) *all_satisfy = rep.all_satisfy ? 1 : 0;
        if (report) {
            std::ostringstream out;
            out << "n " << rep.n << "\n";
            out << "downsets " << rep.downsets_checked << "\n";
            out << "all_satisfy " << (rep.all_satisfy ? "true" : "false") << "\n";
            out << "max_gap " << rep.max_gap << "\n";
            if (rep.first_violation) out << "first_violation " << format_family(*rep.first_violation) << "\n";
            *report = dup_string(out.str());
        }
        return CHV_OK;
    });
}

chv_status chv_classes(int n, int m, int k, char** text) {
    if (!text) return fail(CHV_ERR_INVALID, "null argument");
    return guarded([&] {
        IsoClassSet classes = enumerate_iso_classes(n, m, k);
        std::ostringstream out;
        for (const Family& f : classes.representatives) out << format_family(f) << "\n";
        *text = dup_string(out.str());
        return CHV_OK;
    });
}

}  // extern "C"
