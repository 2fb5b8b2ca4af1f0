// cchain: analyze the commuting chain on finite groups.
//
// Verbs: analyze, sweep, charpoly, export-matrix. Output is deterministic for
// a given command line; exit code 1 for usage/parameter errors, 2 when an
// internal consistency check embedded in the pipeline fails.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cchain/report.hpp"

namespace {

struct CommonArgs {
    std::string family;
    long n = 0, p = 0, q = 0, k = 0;
    std::string file;
    std::string format = "human";
    std::string config_path;
    std::string out_path;
    bool skip_mixing = false;
    bool exact_only = false;
    long t_cap = 0;
    std::vector<std::string> eps;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool need_family = true) {
    auto* fam = cmd->add_option("--family", a.family,
                                "dihedral|heisenberg|affine|gl2|psl2_2k|cyclic|cayley-file");
    if (need_family) fam->required();
    cmd->add_option("--n", a.n, "parameter n (dihedral, cyclic)");
    cmd->add_option("--p", a.p, "parameter p (heisenberg, affine)");
    cmd->add_option("--q", a.q, "parameter q (gl2)");
    cmd->add_option("--k", a.k, "parameter k (psl2_2k)");
    cmd->add_option("--file", a.file, "Cayley table JSON (family cayley-file)");
    cmd->add_option("--format", a.format, "human|json|csv")->default_val("human");
    cmd->add_option("--config", a.config_path, "JSON config file");
    cmd->add_option("--out", a.out_path, "write output to file instead of stdout");
    cmd->add_flag("--skip-mixing", a.skip_mixing, "skip the mixing profile");
    cmd->add_flag("--exact-only", a.exact_only, "force exact arithmetic regardless of size");
    cmd->add_option("--t-cap", a.t_cap, "profile horizon override");
    cmd->add_option("--eps", a.eps, "epsilon values as rationals, e.g. 1/4 1/10");
}

cchain::AnalyzeRequest to_request(const CommonArgs& a) {
    cchain::AnalyzeRequest req;
    req.family = a.family;
    req.config = cchain::load_config(a.config_path);
    if (a.n > 0) req.params["n"] = a.n;
    if (a.p > 0) req.params["p"] = a.p;
    if (a.q > 0) req.params["q"] = a.q;
    if (a.k > 0) req.params["k"] = a.k;
    req.cayley_file = a.file;
    req.skip_mixing = a.skip_mixing;
    req.exact_only = a.exact_only;
    if (a.t_cap > 0) req.config.t_cap = a.t_cap;
    if (!a.eps.empty()) {
        req.config.eps.clear();
        for (const auto& e : a.eps) req.config.eps.push_back(cchain::rat_from_string(e));
    }
    return req;
}

int emit(const cchain::json& rep, const CommonArgs& a) {
    std::string payload;
    if (a.format == "json")
        payload = rep.dump(2) + "\n";
    else if (a.format == "csv")
        payload = cchain::format_csv(rep);
    else
        payload = cchain::format_human(rep);
    if (a.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(a.out_path);
        if (!out) {
            std::cerr << "cannot write " << a.out_path << "\n";
            return 1;
        }
        out << payload;
    }
    return cchain::report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"commuting-chain analyzer for finite groups"};
    app.require_subcommand(1);

    CommonArgs a_an, a_sw, a_cp, a_ex;

    auto* analyze = app.add_subcommand("analyze", "full analysis of one group");
    add_common(analyze, a_an);

    auto* sweep = app.add_subcommand("sweep", "analyze a parameter range and print the trend");
    add_common(sweep, a_sw);
    long sw_from = 0, sw_to = 0, sw_step = 1;
    std::vector<long> sw_values;
    sweep->add_option("--from", sw_from, "range start");
    sweep->add_option("--to", sw_to, "range end (inclusive)");
    sweep->add_option("--step", sw_step, "range step")->default_val(1);
    sweep->add_option("--values", sw_values, "explicit parameter list (overrides range)");

    auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial + verification");
    add_common(charpoly, a_cp);
    long cp_trials = 0;
    bool cp_full = false;
    charpoly->add_option("--trials", cp_trials, "evaluation points (default n+1)");
    charpoly->add_flag("--full-identity", cp_full, "interpolate and compare coefficients (n <= 64)");

    auto* expm = app.add_subcommand("export-matrix", "export the transition or lumped matrix");
    add_common(expm, a_ex);
    std::string ex_kind = "transition";
    expm->add_option("--kind", ex_kind, "transition|lumped")->default_val("transition");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return emit(cchain::run_analyze(to_request(a_an)), a_an);
        if (*sweep) {
            std::vector<long> values = sw_values;
            if (values.empty()) {
                if (sw_from <= 0 || sw_to < sw_from || sw_step <= 0) {
                    std::cerr << "sweep: provide --values or a valid --from/--to/--step range\n";
                    return 1;
                }
                for (long v = sw_from; v <= sw_to; v += sw_step) values.push_back(v);
            }
            return emit(cchain::run_sweep(to_request(a_sw), values), a_sw);
        }
        if (*charpoly) return emit(cchain::run_charpoly(to_request(a_cp), cp_trials, cp_full), a_cp);
        if (*expm) {
            if (ex_kind != "transition" && ex_kind != "lumped") {
                std::cerr << "export-matrix: --kind must be transition or lumped\n";
                return 1;
            }
            CommonArgs a = a_ex;
            cchain::json m = cchain::run_export_matrix(to_request(a_ex), ex_kind);
            if (a.format == "csv") {
                cchain::RatMatrix mat = cchain::matrix_from_json(m);
                std::string payload = cchain::matrix_to_csv(mat);
                if (a.out_path.empty()) {
                    std::cout << payload;
                } else {
                    std::ofstream out(a.out_path);
                    out << payload;
                }
                return 0;
            }
            m["consistency"] = {{"ok", true}};
            return emit(m, a);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
