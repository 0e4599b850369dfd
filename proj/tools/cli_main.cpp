// Command line front end. Talks to the core exclusively through the C
// API in chvip/chvip.h.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chvip/chvip.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string subcommand;
    std::string form = "inf";
    int n = 0;
    int m = 0;
    int k = 0;
    std::string family;
    std::string out;
    std::string cert;
    bool stats = false;
    double time_limit = 43200.0;
    long nodes = -1;
    int workers = 1;
    bool long_run = false;
    bool solve_classes = false;
    bool progress = false;

    void echo() const {
        std::cout << "runconfig subcommand=" << subcommand << " form=" << form << " n=" << n
                  << " m=" << m << " k=" << k << " family=\"" << family << "\" out=" << out
                  << " cert=" << cert << " stats=" << (stats ? 1 : 0)
                  << " time-limit=" << time_limit << " nodes=" << nodes << " workers=" << workers
                  << " long-run=" << (long_run ? 1 : 0) << "\n";
    }
};

std::string owned(char* s) {
    std::string out = s ? s : "";
    chv_string_free(s);
    return out;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return bool(out);
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

chv_model* make_model(const RunConfig& cfg, int& rc) {
    chv_model* model = nullptr;
    if (chv_model_create(cfg.form.c_str(), cfg.n, &model) != CHV_OK) {
        rc = usage_error(chv_last_error());
        return nullptr;
    }
    if (cfg.m > 0) {
        if (chv_model_apply_level_fixings(model, cfg.m, cfg.family.c_str()) != CHV_OK) {
            rc = usage_error(chv_last_error());
            chv_model_free(model);
            return nullptr;
        }
    }
    return model;
}

int run_generate(const RunConfig& cfg) {
    int rc = kExitOk;
    chv_model* model = make_model(cfg, rc);
    if (!model) return rc;
    if (cfg.stats) {
        int vars = 0, fixings = 0;
        long ineqs = 0;
        chv_model_stats(model, &vars, nullptr, &ineqs, &fixings);
        std::cout << "vars=" << vars << " ineqs=" << ineqs;
        if (fixings > 0) std::cout << " fixings=" << fixings;
        std::cout << "\n";
    }
    if (!cfg.out.empty()) {
        char* text = nullptr;
        if (chv_model_emit(model, 0, &text) != CHV_OK) {
            chv_model_free(model);
            return usage_error(chv_last_error());
        }
        if (!write_file(cfg.out, owned(text))) {
            chv_model_free(model);
            return usage_error("cannot write " + cfg.out);
        }
    }
    chv_model_free(model);
    return kExitOk;
}

int report_result(chv_result* result, const std::string& cert_path) {
    chv_solve_status st = chv_result_status(result);
    const char* name = st == CHV_SOLVE_OPTIMAL ? "optimal" : st == CHV_SOLVE_INFEASIBLE ? "infeasible" : "limit";
    std::cout << "status " << name << "\n";
    std::cout << "nodes " << chv_result_nodes(result) << "\n";
    char* s = nullptr;
    if (chv_result_objective(result, &s) == CHV_OK) std::cout << "objective " << owned(s) << "\n";
    s = nullptr;
    if (chv_result_dual_bound(result, &s) == CHV_OK) std::cout << "dual_bound " << owned(s) << "\n";
    if (!cert_path.empty()) {
        s = nullptr;
        if (chv_result_certificate(result, &s) != CHV_OK)
            return usage_error(std::string("no certificate to write: ") + chv_last_error());
        if (!write_file(cert_path, owned(s))) return usage_error("cannot write " + cert_path);
    }
    return st == CHV_SOLVE_LIMIT ? kExitRefuted : kExitOk;
}

int run_solve(const RunConfig& cfg) {
    int rc = kExitOk;
    chv_model* model = make_model(cfg, rc);
    if (!model) return rc;
    chv_result* result = nullptr;
    chv_status st = chv_solve(model, cfg.time_limit, cfg.nodes, cfg.progress ? 1 : 0, &result);
    chv_model_free(model);
    if (st != CHV_OK) return usage_error(chv_last_error());
    rc = report_result(result, cfg.cert);
    chv_result_free(result);
    return rc;
}

int run_check(const RunConfig& cfg) {
    std::string text;
    if (!read_file(cfg.cert, text)) return usage_error("cannot read " + cfg.cert);
    char* reason = nullptr;
    chv_status st = chv_check_certificate(text.c_str(), &reason);
    if (st == CHV_OK) {
        std::cout << "verified\n";
        return kExitOk;
    }
    if (st == CHV_ERR_INVALID) {
        std::cout << "refuted: " << owned(reason) << "\n";
        return kExitRefuted;
    }
    return usage_error(chv_last_error());
}

int run_verify_input(const RunConfig& cfg) {
    std::string text;
    if (!read_file(cfg.cert, text)) return usage_error("cannot read " + cfg.cert);
    char* detail = nullptr;
    chv_status st = chv_verify_input(text.c_str(), cfg.form.c_str(), cfg.n, cfg.m,
                                     cfg.m > 0 ? cfg.family.c_str() : nullptr, &detail);
    if (st == CHV_OK) {
        std::cout << "match\n";
        return kExitOk;
    }
    if (st == CHV_ERR_INVALID) {
        std::cout << "mismatch: " << owned(detail) << "\n";
        return kExitRefuted;
    }
    return usage_error(chv_last_error());
}

int run_oracle(const RunConfig& cfg) {
    int all_satisfy = 0;
    char* report = nullptr;
    chv_status st = chv_oracle(cfg.n, cfg.long_run ? 1 : 0, cfg.progress ? 1 : 0, &all_satisfy, &report);
    if (st != CHV_OK) return usage_error(chv_last_error());
    std::cout << owned(report);
    return all_satisfy ? kExitOk : kExitRefuted;
}

// Solves one RED model with level fixings; used by the classes worker
// pool. Returns a status line, or empty on failure.
std::string solve_class(const RunConfig& cfg, const std::string& family, const std::string& cert_path) {
    chv_model* model = nullptr;
    if (chv_model_create("red", cfg.n, &model) != CHV_OK) return {};
    if (chv_model_apply_level_fixings(model, cfg.m, family.c_str()) != CHV_OK) {
        chv_model_free(model);
        return "class " + family + " error: " + chv_last_error() + "\n";
    }
    chv_result* result = nullptr;
    chv_status st = chv_solve(model, cfg.time_limit, cfg.nodes, 0, &result);
    chv_model_free(model);
    if (st != CHV_OK) return {};
    std::string line = "class " + family;
    char* s = nullptr;
    if (chv_result_objective(result, &s) == CHV_OK)
        line += " objective " + owned(s);
    else
        line += chv_result_status(result) == CHV_SOLVE_INFEASIBLE ? " infeasible" : " limit";
    if (!cert_path.empty()) {
        s = nullptr;
        if (chv_result_certificate(result, &s) == CHV_OK) write_file(cert_path, owned(s));
    }
    chv_result_free(result);
    return line + "\n";
}

int run_classes(const RunConfig& cfg) {
    char* text = nullptr;
    if (chv_classes(cfg.n, cfg.m, cfg.k, &text) != CHV_OK) return usage_error(chv_last_error());
    std::string listing = owned(text);
    std::vector<std::string> families;
    std::istringstream in(listing);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) families.push_back(line);
    std::cout << "classes " << families.size() << "\n";
    for (const auto& f : families) std::cout << f << "\n";
    if (!cfg.solve_classes) return kExitOk;
    std::vector<std::string> outcomes(families.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < families.size(); i = next.fetch_add(1)) {
            std::string cert_path;
            if (!cfg.out.empty()) cert_path = cfg.out + ".class" + std::to_string(i) + ".cert";
            outcomes[i] = solve_class(cfg, families[i], cert_path);
        }
    };
    int nworkers = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int rc = kExitOk;
    for (const auto& o : outcomes) {
        if (o.empty()) rc = kExitRefuted;
        std::cout << o;
    }
    return rc;
}

int run_pipeline(const RunConfig& cfg) {
    int rc = kExitOk;
    chv_model* model = make_model(cfg, rc);
    if (!model) return rc;
    chv_result* result = nullptr;
    chv_status st = chv_solve(model, cfg.time_limit, cfg.nodes, cfg.progress ? 1 : 0, &result);
    chv_model_free(model);
    if (st != CHV_OK) return usage_error(chv_last_error());
    rc = report_result(result, cfg.cert);
    if (chv_result_status(result) == CHV_SOLVE_LIMIT) {
        chv_result_free(result);
        return kExitRefuted;
    }
    char* cert_text = nullptr;
    if (chv_result_certificate(result, &cert_text) != CHV_OK) {
        chv_result_free(result);
        return usage_error(chv_last_error());
    }
    chv_result_free(result);
    std::string text = owned(cert_text);
    char* reason = nullptr;
    if (chv_check_certificate(text.c_str(), &reason) != CHV_OK) {
        std::cout << "refuted: " << owned(reason) << "\n";
        return kExitRefuted;
    }
    std::cout << "verified\n";
    char* detail = nullptr;
    if (chv_verify_input(text.c_str(), cfg.form.c_str(), cfg.n, cfg.m,
                         cfg.m > 0 ? cfg.family.c_str() : nullptr, &detail) != CHV_OK) {
        std::cout << "mismatch: " << owned(detail) << "\n";
        return kExitRefuted;
    }
    std::cout << "match\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact IP toolkit for Chvatal's conjecture on small ground sets"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_model_flags = [&](CLI::App* sub) {
        sub->add_option("--form", cfg.form, "Formulation: inf, opt, or red")->check(CLI::IsMember({"inf", "opt", "red"}));
        sub->add_option("--n", cfg.n, "Ground set size")->required();
        sub->add_option("--m", cfg.m, "Level fixing size m");
        sub->add_option("--family", cfg.family, "Family literal, e.g. \"{1,2},{3}\"");
    };
    auto add_limit_flags = [&](CLI::App* sub) {
        sub->add_option("--time-limit", cfg.time_limit, "Time limit in seconds");
        sub->add_option("--nodes", cfg.nodes, "Node limit, negative for none");
        sub->add_flag("--progress", cfg.progress, "Progress lines on stderr");
    };

    CLI::App* generate = app.add_subcommand("generate", "Emit a model");
    add_model_flags(generate);
    generate->add_option("--out", cfg.out, "Model output path");
    generate->add_flag("--stats", cfg.stats, "Print size statistics");

    CLI::App* solve = app.add_subcommand("solve", "Solve a model exactly");
    add_model_flags(solve);
    add_limit_flags(solve);
    solve->add_option("--cert", cfg.cert, "Certificate output path");

    CLI::App* check = app.add_subcommand("check", "Check a certificate");
    check->add_option("--cert,cert", cfg.cert, "Certificate path")->required();

    CLI::App* verify = app.add_subcommand("verify-input", "Match a certificate against a regenerated model");
    verify->add_option("--cert,cert", cfg.cert, "Certificate path")->required();
    add_model_flags(verify);

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force conjecture check");
    oracle->add_option("--n", cfg.n, "Ground set size")->required();
    oracle->add_flag("--long-run", cfg.long_run, "Allow n=6");
    oracle->add_flag("--progress", cfg.progress, "Progress lines on stderr");

    CLI::App* classes = app.add_subcommand("classes", "Isomorphism classes of k-families of m-sets");
    classes->add_option("--n", cfg.n, "Ground set size")->required();
    classes->add_option("--m", cfg.m, "Member size")->required();
    classes->add_option("--k", cfg.k, "Family size")->required();
    classes->add_flag("--solve", cfg.solve_classes, "Solve one RED model per class");
    classes->add_option("--out", cfg.out, "Certificate path prefix for --solve");
    classes->add_option("--workers", cfg.workers, "Worker pool size for --solve");
    add_limit_flags(classes);

    CLI::App* pipeline = app.add_subcommand("pipeline", "Generate, solve, check, verify-input");
    add_model_flags(pipeline);
    add_limit_flags(pipeline);
    pipeline->add_option("--cert", cfg.cert, "Certificate output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help();
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    cfg.echo();
    try {
        if (sub == generate) return run_generate(cfg);
        if (sub == solve) return run_solve(cfg);
        if (sub == check) return run_check(cfg);
        if (sub == verify) return run_verify_input(cfg);
        if (sub == oracle) return run_oracle(cfg);
        if (sub == classes) return run_classes(cfg);
        if (sub == pipeline) return run_pipeline(cfg);
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    return kExitUsage;
}
