#pragma once

// Analysis pipeline and report serialization. A report aggregates group
// metadata, census, stationary summary, mixing profile, spectrum with exact
// forms, the characteristic-polynomial verification verdict, bounds, the
// cutoff check and the lambda_star conjecture discrepancies, then validates
// its own internal consistency. JSON field names under "bounds" are a stable
// public contract; everything carries "schema_version": 1.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cchain/bounds.hpp"
#include "cchain/dihedral.hpp"
#include "cchain/spectral.hpp"

namespace cchain {

using json = nlohmann::json;

struct Config {
    long max_order = 6000;       // Cayley-table cap
    int exact_threshold = 256;   // exact arithmetic for chains up to this size
    long t_cap = 0;              // 0 = minorization-scale default
    std::vector<Rat> eps{make_rat(1, 4), make_rat(1, 10)};
    double d_tol = 1e-10;        // float-mode threshold tolerance
    int direct_check_cap = 128;  // full n+1-point charpoly verification up to here
    int direct_spot_trials = 16; // spot verification trials above the cap
    int direct_skip_above = 512; // no direct verification beyond this size
    int phi_star_cap = 16;       // brute-force Cheeger constant in reports up to here
};

inline Config load_config(const std::string& path = "") {
    Config cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config: cannot open " + path);
        json j = json::parse(in);
        if (j.contains("max_order")) cfg.max_order = j["max_order"].get<long>();
        if (j.contains("exact_threshold")) cfg.exact_threshold = j["exact_threshold"].get<int>();
        if (j.contains("t_cap")) cfg.t_cap = j["t_cap"].get<long>();
        if (j.contains("d_tol")) cfg.d_tol = j["d_tol"].get<double>();
        if (j.contains("direct_check_cap")) cfg.direct_check_cap = j["direct_check_cap"].get<int>();
        if (j.contains("direct_skip_above")) cfg.direct_skip_above = j["direct_skip_above"].get<int>();
        if (j.contains("phi_star_cap")) cfg.phi_star_cap = j["phi_star_cap"].get<int>();
        if (j.contains("eps")) {
            cfg.eps.clear();
            for (const auto& e : j["eps"]) cfg.eps.push_back(rat_from_string(e.get<std::string>()));
        }
    }
    if (const char* v = std::getenv("CCHAIN_MAX_ORDER")) cfg.max_order = std::atol(v);
    if (const char* v = std::getenv("CCHAIN_EXACT_THRESHOLD")) cfg.exact_threshold = std::atoi(v);
    if (const char* v = std::getenv("CCHAIN_T_CAP")) cfg.t_cap = std::atol(v);
    return cfg;
}

struct AnalyzeRequest {
    std::string family;                 // dihedral|heisenberg|affine|gl2|psl2_2k|cyclic|cayley-file
    std::map<std::string, long> params; // n / p / q / k
    std::string cayley_file;
    bool skip_mixing = false;
    bool exact_only = false;
    std::string mixing_scope = "full";  // full | lumped
    Config config;
};

inline long request_param(const AnalyzeRequest& req, const std::string& key) {
    auto it = req.params.find(key);
    if (it == req.params.end())
        throw std::invalid_argument("missing parameter --" + key + " for family " + req.family);
    return it->second;
}

inline GroupTable build_group(const AnalyzeRequest& req) {
    const long cap = req.config.max_order;
    auto check_cap = [&](long order) {
        if (order > cap)
            throw std::invalid_argument("group order " + std::to_string(order) +
                                        " exceeds max_order cap " + std::to_string(cap));
    };
    if (req.family == "dihedral") {
        long n = request_param(req, "n");
        check_cap(2 * n);
        return build_dihedral(n);
    }
    if (req.family == "heisenberg") {
        long p = request_param(req, "p");
        check_cap(p * p * p);
        return build_heisenberg(p);
    }
    if (req.family == "affine") {
        long p = request_param(req, "p");
        check_cap(p * (p - 1));
        return build_affine(p);
    }
    if (req.family == "gl2") {
        long q = request_param(req, "q");
        return build_gl2(q, cap);
    }
    if (req.family == "psl2_2k") {
        long k = request_param(req, "k");
        return build_psl2_char2(static_cast<int>(k), cap);
    }
    if (req.family == "cyclic") {
        long n = request_param(req, "n");
        check_cap(n);
        return build_abelian_cyclic(n);
    }
    if (req.family == "cayley-file") {
        std::ifstream in(req.cayley_file);
        if (!in) throw std::invalid_argument("cannot open Cayley file " + req.cayley_file);
        json j = json::parse(in);
        if (j.at("n").get<long>() > cap)
            throw std::invalid_argument("Cayley table exceeds max_order cap");
        return group_from_json(j);
    }
    throw std::invalid_argument("unknown family '" + req.family + "'");
}

namespace detail {

inline json rat_or_null(const std::optional<Rat>& r) {
    return r ? json(rat_to_string(*r)) : json(nullptr);
}

inline std::string group_id(const GroupTable& g) {
    std::string id = g.tag().family;
    for (const auto& [k, v] : g.tag().params) id += "_" + k + std::to_string(v);
    return id;
}

}  // namespace detail

/// Full analysis of one group. Returns the report; consistency issues are
/// collected under "consistency" and flip the exit code to 2.
inline json run_analyze(const AnalyzeRequest& req) {
    const Config& cfg = req.config;
    GroupTable g = build_group(req);
    GroupStructure s = analyze_structure(g);
    const int n = g.order();
    Distribution pi = stationary(g, s);

    std::vector<std::string> issues;
    std::vector<std::string> warnings;

    json rep;
    rep["schema_version"] = 1;
    rep["kind"] = "analysis";

    // --- group block ---
    json jg;
    jg["family"] = g.tag().family;
    jg["params"] = g.tag().params;
    jg["order"] = n;
    jg["center_size"] = s.z;
    jg["class_count"] = s.class_count;
    jg["is_abelian"] = s.is_abelian;
    jg["is_ca"] = s.is_ca;
    if (s.signature) {
        json census = json::array();
        for (auto [size, count] : s.signature->census) census.push_back({size, count});
        jg["census"] = census;
        jg["j_distinct"] = s.signature->j;
        jg["c_star"] = s.signature->c_star;
        jg["c_prime"] = s.signature->c_prime;
    } else {
        jg["census"] = nullptr;
    }
    if (g.tag().family == "dihedral") {
        long dn = g.tag().params.at("n");
        if (dn % 2 == 0) {
            // cross-check the computed even-n census against the stated
            // "1 of size n, n/2 of size 4"; mismatches are reported, not fatal
            std::map<long, long> expected;
            expected[dn] += 1;
            expected[4] += dn / 2;
            std::vector<std::pair<long, long>> exp_vec(expected.begin(), expected.end());
            jg["dihedral_even_census_matches_text"] = verify_census(s, exp_vec);
        }
    }
    rep["group"] = jg;

    // --- stationary / exact chain checks ---
    const bool exact_matrix = n <= cfg.exact_threshold || req.exact_only;
    std::optional<RatMatrix> P;
    if (exact_matrix) P = transition_matrix(g, s);

    json jst;
    Rat pi_min(1);
    for (const Rat& w : pi.w) pi_min = std::min(pi_min, w);
    jst["pi_min"] = rat_to_string(pi_min);
    {
        // class masses are uniform 1/k by construction of pi; re-verified here
        bool uniform = true;
        for (const auto& cls : s.classes) {
            Rat mass(0);
            for (int32_t x : cls) mass += pi.w[x];
            if (mass != make_rat(1, s.class_count)) uniform = false;
        }
        jst["uniform_on_classes"] = uniform;
        if (!uniform) issues.push_back("stationary mass not uniform on classes");
    }
    if (P) {
        bool db = check_detailed_balance(*P, pi);
        jst["detailed_balance_exact"] = db;
        if (!db) issues.push_back("detailed balance fails");
    } else {
        // pi(x)P(x,y) = 1{commute}/(k|G|) is symmetric by construction
        jst["detailed_balance_exact"] = true;
        jst["detailed_balance_note"] = "structural (matrix not materialized at this size)";
    }
    rep["stationary"] = jst;

    if (!s.is_abelian) {
        if (!check_two_step_bound(g, s)) issues.push_back("two-step minorization bound fails");
    }

    // --- lumped chain ---
    RatMatrix lumped = lumped_chain(g, s);
    if (P && n <= cfg.exact_threshold) {
        if (!check_class_start_equality(g, s, *P, lumped, std::min<long>(5, n)))
            issues.push_back("class-start equality (lumped vs full) fails");
    }

    // --- mixing ---
    json jm;
    long t_mix_quarter = -1;
    if (req.skip_mixing) {
        jm["skipped"] = true;
    } else {
        MixingProfile prof;
        if (req.mixing_scope == "lumped") {
            long cap_t = cfg.t_cap > 0 ? cfg.t_cap : std::max<long>(default_t_cap(s), 60);
            prof = mixing_profile_matrix(lumped, lumped_stationary(s), cfg.eps, cap_t,
                    s.class_count <= cfg.exact_threshold ? ArithmeticMode::Exact
                                                         : ArithmeticMode::Floating,
                    cfg.d_tol);
        } else {
            prof = mixing_profile_group(g, s, pi, cfg.eps, cfg.t_cap, cfg.exact_threshold,
                                        cfg.d_tol,
                                        req.exact_only ? std::optional<ArithmeticMode>(
                                                             ArithmeticMode::Exact)
                                                       : std::nullopt);
        }
        jm["skipped"] = false;
        jm["scope"] = req.mixing_scope;
        jm["mode"] = prof.mode == ArithmeticMode::Exact ? "exact" : "float";
        jm["d"] = prof.d;
        if (!prof.d_exact.empty()) {
            json dx = json::array();
            for (const Rat& v : prof.d_exact) dx.push_back(rat_to_string(v));
            jm["d_exact"] = dx;
        }
        json tm;
        for (const auto& [e, t] : prof.t_mix_of) tm[rat_to_string(e)] = t;
        jm["t_mix"] = tm;
        jm["truncated"] = prof.truncated;
        jm["tolerance_flagged"] = prof.tolerance_flagged;
        jm["t_cap"] = prof.t_cap_used;
        t_mix_quarter = prof.t_mix_quarter;
        if (prof.truncated) warnings.push_back("mixing profile truncated at t_cap");
        if (prof.tolerance_flagged)
            warnings.push_back("a float d(t) threshold comparison used the 1e-10 tolerance");
    }
    rep["mixing"] = jm;

    // --- spectrum ---
    std::optional<RatPoly> poly;
    if (s.is_ca && !s.is_abelian) poly = signature_charpoly(*s.signature, n);

    SpectralSummary spec;
    json jsp;
    if (s.is_abelian) {
        // uniform rank-one chain: spectrum is {1, 0^(n-1)} exactly
        spec.dimension = n;
        spec.eigenvalues.push_back({1.0, 1, std::string("1"), Rat(1)});
        if (n > 1) spec.eigenvalues.push_back({0.0, n - 1, std::string("0"), Rat(0)});
        spec.lambda_2 = 0;
        spec.lambda_min = n > 1 ? 0 : 1;
        spec.lambda_star = 0;
        spec.lambda_star_exact = Rat(0);
        spec.gap = 1;
        spec.t_rel = 1;
    } else {
        spec = numeric_spectrum(dense_double_matrix(s), n, pi.to_double(),
                                poly ? &*poly : nullptr);
    }
    {
        json evs = json::array();
        long mult_total = 0;
        for (const auto& e : spec.eigenvalues) {
            evs.push_back({{"value", e.value},
                           {"multiplicity", e.multiplicity},
                           {"exact", e.exact_form ? json(*e.exact_form) : json(nullptr)}});
            mult_total += e.multiplicity;
        }
        if (mult_total != n) issues.push_back("eigenvalue multiplicities do not sum to order");
        jsp["eigenvalues"] = evs;
        jsp["lambda_2"] = spec.lambda_2;
        jsp["lambda_min"] = spec.lambda_min;
        jsp["lambda_star"] = spec.lambda_star;
        jsp["lambda_star_exact"] = detail::rat_or_null(spec.lambda_star_exact);
        jsp["gap"] = spec.gap;
        jsp["gap_exact"] = spec.lambda_star_exact
                               ? json(rat_to_string(Rat(1 - *spec.lambda_star_exact)))
                               : json(nullptr);
        jsp["t_rel"] = spec.t_rel;
    }
    rep["spectrum"] = jsp;

    // --- characteristic polynomial ---
    json jcp;
    if (poly) {
        CharpolyDisplay disp = factor_charpoly(*poly, signature_root_candidates(*s.signature));
        jcp["available"] = true;
        jcp["degree"] = poly->degree();
        jcp["factored"] = disp.text;
        if (P && n <= cfg.direct_check_cap) {
            bool ok = direct_charpoly_check(*P, *poly, n + 1);
            jcp["verified"] = ok;
            jcp["verification_points"] = n + 1;
            if (!ok) issues.push_back("signature charpoly disagrees with det(xI - P)");
        } else if (P && n <= cfg.direct_skip_above) {
            bool ok = direct_charpoly_check(*P, *poly, cfg.direct_spot_trials);
            jcp["verified"] = ok;
            jcp["verification_points"] = cfg.direct_spot_trials;
            if (!ok) issues.push_back("signature charpoly disagrees with det(xI - P)");
        } else {
            jcp["verified"] = nullptr;
            jcp["skipped_reason"] = "matrix too large for exact determinant verification";
        }
        // zero multiplicity must be at least n - j - 1
        long zero_mult = 0;
        for (const auto& e : spec.eigenvalues)
            if (std::fabs(e.value) <= 1e-8) zero_mult = e.multiplicity;
        if (zero_mult < n - s.signature->j - 1)
            issues.push_back("zero eigenvalue multiplicity below n - j - 1");
    } else {
        jcp["available"] = false;
        jcp["reason"] = s.is_abelian ? "abelian group (the signature charpoly needs non-central centralizers)"
                                     : "group is not CA";
    }
    rep["charpoly"] = jcp;

    // --- bounds + cutoff ---
    json jb;
    json jc;
    if (!s.is_abelian && s.is_ca) {
        BoundReport br = build_bound_report(g, s, pi, spec, t_mix_quarter, P ? &*P : nullptr,
                                            cfg.phi_star_cap, issues);
        jb["group_id"] = br.group_id;
        jb["lb_cheeger"] = detail::rat_or_null(br.lb_cheeger);
        jb["lb_cheeger_hypothesis_ok"] = br.lb_cheeger_hypothesis_ok;
        jb["lb_cheeger_chosen_size"] = br.lb_cheeger_chosen_size;
        jb["lb_cheeger_best_size_qualifies"] = br.lb_cheeger_best_size_qualifies;
        jb["lb_eigen"] = br.lb_eigen;
        jb["ub_minorization"] = br.ub_minorization;
        jb["ub_coupling"] = br.ub_coupling ? json(*br.ub_coupling) : json(nullptr);
        jb["ub_eigen"] = br.ub_eigen;
        jb["cutoff_ratio"] = br.cutoff_ratio;
        jb["cutoff_disproved"] = br.cutoff_disproved;
        jb["phi_of_set"] = detail::rat_or_null(br.phi_of_set);
        jb["phi_star_exact"] = detail::rat_or_null(br.phi_star_exact);
        jb["alpha"] = br.alpha ? json(rat_to_double(*br.alpha)) : json(nullptr);
        jb["delta"] = rat_to_string(br.delta);
        jb["t0"] = br.t0;

        CheegerLowerBound lb = lower_bound_cheeger(s, pi);
        CutoffCheck cc = cutoff_check(t_mix_quarter, spec, lb);
        jc["applicable"] = cc.applicable;
        jc["ratio"] = cc.ratio;
        jc["hypothesis_ok"] = cc.hypothesis_ok;
        jc["ratio_within_bound"] = cc.ratio_within_bound;
        jc["disproved"] = cc.disproved;
        jc["one_minus_lambda_star"] = cc.one_minus_lambda_star;
        jc["one_minus_lambda_star_exact"] = detail::rat_or_null(cc.one_minus_lambda_star_exact);
    } else if (s.is_abelian) {
        jb["group_id"] = detail::group_id(g);
        jb["ub_minorization"] = 1;
        jb["ub_minorization_note"] = "abelian: chain mixes in one step";
        jc["applicable"] = false;
        jc["note"] = "abelian chain, t_rel = 1";
    } else {
        jb["group_id"] = detail::group_id(g);
        jb["note"] = "group is not CA; only the minorization bound applies";
        jb["ub_minorization"] = upper_bound_minorization(s, make_rat(1, 4)).value;
        jc["applicable"] = false;
    }
    rep["bounds"] = jb;
    rep["cutoff"] = jc;

    // --- conjecture discrepancies (reported, never asserted) ---
    json jconj = json::array();
    if (g.tag().family == "gl2") {
        long q = g.tag().params.at("q");
        double conj = 1.0 - 1.0 / static_cast<double>(q + 1);
        jconj.push_back({{"name", "gl2_lambda_star"},
                         {"conjectured", conj},
                         {"computed", spec.lambda_star},
                         {"abs_discrepancy", std::fabs(spec.lambda_star - conj)}});
    }
    if (g.tag().family == "psl2_2k") {
        long k = g.tag().params.at("k");
        double conj = 1.0 - 1.0 / static_cast<double>((1L << k) + 1);
        jconj.push_back({{"name", "psl2_lambda_star"},
                         {"conjectured", conj},
                         {"computed", spec.lambda_star},
                         {"abs_discrepancy", std::fabs(spec.lambda_star - conj)}});
    }
    rep["conjectures"] = jconj;

    rep["consistency"] = {{"ok", issues.empty()}, {"issues", issues}, {"warnings", warnings}};
    return rep;
}

inline int report_exit_code(const json& rep) {
    return rep.at("consistency").at("ok").get<bool>() ? 0 : 2;
}

/// Parameter sweep with a trend table supporting the no-cutoff displays.
inline json run_sweep(AnalyzeRequest req, const std::vector<long>& values) {
    json out;
    out["schema_version"] = 1;
    out["kind"] = "sweep";
    out["family"] = req.family;
    json entries = json::array();
    json trend = json::array();
    long max_lumped_t_mix = -1;
    bool all_ok = true;

    std::string key = req.family == "heisenberg" || req.family == "affine" ? "p"
                      : req.family == "gl2"                                ? "q"
                      : req.family == "psl2_2k"                            ? "k"
                                                                           : "n";
    for (long v : values) {
        AnalyzeRequest r = req;
        r.params[key] = v;
        if (req.family == "dihedral" && r.mixing_scope == "full") r.mixing_scope = "lumped";
        json rep = run_analyze(r);
        all_ok = all_ok && rep["consistency"]["ok"].get<bool>();

        json t;
        t["param"] = v;
        t["order"] = rep["group"]["order"];
        t["one_minus_lambda_star"] = rep["spectrum"]["gap"];
        t["one_minus_lambda_star_exact"] = rep["spectrum"]["gap_exact"];
        if (!rep["mixing"].value("skipped", true)) {
            long tm = rep["mixing"]["t_mix"].value("1/4", -1);
            t["t_mix"] = tm;
            if (r.mixing_scope == "lumped" && tm >= 0)
                max_lumped_t_mix = std::max(max_lumped_t_mix, tm);
        }
        if (rep["cutoff"].value("applicable", false)) t["cutoff_ratio"] = rep["cutoff"]["ratio"];
        if (!rep["conjectures"].empty())
            t["conjecture_abs_discrepancy"] = rep["conjectures"][0]["abs_discrepancy"];
        trend.push_back(t);
        entries.push_back(std::move(rep));
    }
    out["entries"] = entries;
    out["trend"] = trend;
    if (max_lumped_t_mix >= 0) out["max_lumped_t_mix"] = max_lumped_t_mix;
    out["consistency"] = {{"ok", all_ok}};
    return out;
}

/// Factored characteristic polynomial plus verification verdict.
inline json run_charpoly(const AnalyzeRequest& req, long trials = 0, bool full_identity = false) {
    GroupTable g = build_group(req);
    GroupStructure s = analyze_structure(g);
    if (s.is_abelian || !s.is_ca || !s.signature)
        throw std::invalid_argument("charpoly: needs a non-abelian CA group");
    RatPoly poly = signature_charpoly(*s.signature, g.order());
    CharpolyDisplay disp = factor_charpoly(poly, signature_root_candidates(*s.signature));
    RatMatrix P = transition_matrix(g, s);
    long points = full_identity ? g.order() + 1 : (trials > 0 ? trials : g.order() + 1);
    bool ok = direct_charpoly_check(P, poly, points, full_identity);

    json out;
    out["schema_version"] = 1;
    out["kind"] = "charpoly";
    out["group_id"] = detail::group_id(g);
    out["degree"] = poly.degree();
    out["factored"] = disp.text;
    out["zero_power"] = disp.zero_power;
    out["verified"] = ok;
    out["verification_points"] = points;
    out["full_identity"] = full_identity;
    out["consistency"] = {{"ok", ok}};
    return out;
}

/// Matrix export: the transition matrix or the lumped chain.
inline json run_export_matrix(const AnalyzeRequest& req, const std::string& kind) {
    GroupTable g = build_group(req);
    GroupStructure s = analyze_structure(g);
    RatMatrix m = kind == "lumped" ? lumped_chain(g, s) : transition_matrix(g, s);
    json out = matrix_to_json(m);
    out["schema_version"] = 1;
    out["kind"] = kind == "lumped" ? "lumped-matrix" : "transition-matrix";
    out["group_id"] = detail::group_id(g);
    return out;
}

// ---------------------------------------------------------------------------
// renderers

inline std::string format_human(const json& rep);

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

inline void human_analysis(std::ostringstream& os, const json& rep) {
    const auto& gj = rep["group"];
    os << "=== commuting chain: " << gj["family"].get<std::string>() << " ";
    for (const auto& [k, v] : gj["params"].items()) os << k << "=" << v.get<long>() << " ";
    os << "===\n";
    os << "order " << gj["order"].get<long>() << ", center " << gj["center_size"].get<long>()
       << ", classes " << gj["class_count"].get<long>() << ", CA "
       << (gj["is_ca"].get<bool>() ? "yes" : "no")
       << (gj["is_abelian"].get<bool>() ? " (abelian)" : "") << "\n";
    if (!gj["census"].is_null()) {
        os << "census:";
        for (const auto& e : gj["census"]) os << " " << e[1].get<long>() << " x size " << e[0].get<long>();
        os << "\n";
    }
    if (gj.contains("dihedral_even_census_matches_text"))
        os << "even-n census matches '1 of size n, n/2 of size 4': "
           << (gj["dihedral_even_census_matches_text"].get<bool>() ? "yes" : "NO (flagged)") << "\n";
    os << "stationary: pi_min " << rep["stationary"]["pi_min"].get<std::string>()
       << ", detailed balance " << (rep["stationary"]["detailed_balance_exact"].get<bool>() ? "exact" : "FAILS")
       << "\n";
    const auto& jm = rep["mixing"];
    if (!jm.value("skipped", true)) {
        os << "mixing (" << jm["mode"].get<std::string>() << "): ";
        for (const auto& [e, t] : jm["t_mix"].items())
            os << "t_mix(" << e << ") = " << t.get<long>() << "  ";
        if (jm["truncated"].get<bool>()) os << "[truncated]";
        os << "\n  d(t): ";
        for (const auto& d : jm["d"]) os << fmt_double(d.get<double>()) << " ";
        os << "\n";
    }
    os << "eigenvalues (value | multiplicity | exact):\n";
    for (const auto& e : rep["spectrum"]["eigenvalues"]) {
        os << "  " << std::setw(14) << fmt_double(e["value"].get<double>()) << " | "
           << std::setw(5) << e["multiplicity"].get<long>() << " | "
           << (e["exact"].is_null() ? "-" : e["exact"].get<std::string>()) << "\n";
    }
    os << "lambda_star " << fmt_double(rep["spectrum"]["lambda_star"].get<double>());
    if (!rep["spectrum"]["lambda_star_exact"].is_null())
        os << " = " << rep["spectrum"]["lambda_star_exact"].get<std::string>();
    os << ", gap " << fmt_double(rep["spectrum"]["gap"].get<double>()) << ", t_rel "
       << fmt_double(rep["spectrum"]["t_rel"].get<double>()) << "\n";
    const auto& jcp = rep["charpoly"];
    if (jcp["available"].get<bool>()) {
        os << "charpoly: " << jcp["factored"].get<std::string>() << "\n";
        if (jcp.contains("verified") && !jcp["verified"].is_null())
            os << "  verified against det(xI - P) at " << jcp["verification_points"].get<long>()
               << " points: " << (jcp["verified"].get<bool>() ? "yes" : "NO") << "\n";
    }
    const auto& jb = rep["bounds"];
    if (jb.contains("lb_cheeger")) {
        os << "bounds: lb_cheeger "
           << (jb["lb_cheeger"].is_null() ? std::string("-") : jb["lb_cheeger"].get<std::string>())
           << ", ub_minorization " << jb["ub_minorization"].get<long>() << ", ub_coupling "
           << (jb["ub_coupling"].is_null() ? std::string("-")
                                           : std::to_string(jb["ub_coupling"].get<long>()))
           << ", eigen sandwich [" << fmt_double(jb["lb_eigen"].get<double>()) << ", "
           << jb["ub_eigen"].get<long>() << "]\n";
        if (!jb["phi_star_exact"].is_null())
            os << "  phi_star (exact brute force) " << jb["phi_star_exact"].get<std::string>() << "\n";
    }
    const auto& jc = rep["cutoff"];
    if (jc.value("applicable", false)) {
        os << "cutoff: ratio " << fmt_double(jc["ratio"].get<double>()) << ", hypothesis "
           << (jc["hypothesis_ok"].get<bool>() ? "ok" : "fails") << ", within bound "
           << (jc["ratio_within_bound"].get<bool>() ? "yes" : "no") << ", disproved "
           << (jc["disproved"].get<bool>() ? "yes" : "no") << ", 1-lambda_star "
           << fmt_double(jc["one_minus_lambda_star"].get<double>()) << "\n";
    }
    for (const auto& cj : rep["conjectures"]) {
        os << "conjecture " << cj["name"].get<std::string>() << ": |lambda_star - conj| = "
           << fmt_double(cj["abs_discrepancy"].get<double>()) << "\n";
    }
    const auto& cons = rep["consistency"];
    if (!cons["ok"].get<bool>()) {
        os << "CONSISTENCY ISSUES:\n";
        for (const auto& i : cons["issues"]) os << "  - " << i.get<std::string>() << "\n";
    }
}

}  // namespace detail

inline std::string format_human(const json& rep) {
    std::ostringstream os;
    const std::string kind = rep.value("kind", "analysis");
    if (kind == "analysis") {
        detail::human_analysis(os, rep);
    } else if (kind == "sweep") {
        os << "=== sweep: " << rep["family"].get<std::string>() << " ===\n";
        os << "param | order | 1-lambda_star | exact | t_mix | cutoff_ratio | conj_disc\n";
        for (const auto& t : rep["trend"]) {
            os << std::setw(5) << t["param"].get<long>() << " | " << std::setw(5)
               << t["order"].get<long>() << " | " << std::setw(13)
               << detail::fmt_double(t["one_minus_lambda_star"].get<double>()) << " | "
               << (t["one_minus_lambda_star_exact"].is_null()
                       ? std::string("-")
                       : t["one_minus_lambda_star_exact"].get<std::string>())
               << " | " << (t.contains("t_mix") ? std::to_string(t["t_mix"].get<long>()) : "-")
               << " | "
               << (t.contains("cutoff_ratio") ? detail::fmt_double(t["cutoff_ratio"].get<double>())
                                              : "-")
               << " | "
               << (t.contains("conjecture_abs_discrepancy")
                       ? detail::fmt_double(t["conjecture_abs_discrepancy"].get<double>())
                       : "-")
               << "\n";
        }
        if (rep.contains("max_lumped_t_mix"))
            os << "max lumped t_mix(1/4) over the sweep: " << rep["max_lumped_t_mix"].get<long>()
               << "\n";
    } else if (kind == "charpoly") {
        os << "charpoly of " << rep["group_id"].get<std::string>() << " (degree "
           << rep["degree"].get<long>() << "):\n  " << rep["factored"].get<std::string>() << "\n"
           << "verified against det(xI - P) at " << rep["verification_points"].get<long>()
           << " points" << (rep["full_identity"].get<bool>() ? " (full identity)" : "") << ": "
           << (rep["verified"].get<bool>() ? "yes" : "NO") << "\n";
    } else {
        os << rep.dump(2) << "\n";
    }
    return os.str();
}

inline std::string format_csv(const json& rep) {
    std::ostringstream os;
    const std::string kind = rep.value("kind", "analysis");
    if (kind == "sweep") {
        os << "param,order,one_minus_lambda_star,one_minus_lambda_star_exact,t_mix,cutoff_ratio,"
              "conjecture_abs_discrepancy\n";
        for (const auto& t : rep["trend"]) {
            os << t["param"].get<long>() << "," << t["order"].get<long>() << ","
               << detail::fmt_double(t["one_minus_lambda_star"].get<double>()) << ","
               << (t["one_minus_lambda_star_exact"].is_null()
                       ? std::string()
                       : t["one_minus_lambda_star_exact"].get<std::string>())
               << "," << (t.contains("t_mix") ? std::to_string(t["t_mix"].get<long>()) : "") << ","
               << (t.contains("cutoff_ratio") ? detail::fmt_double(t["cutoff_ratio"].get<double>())
                                              : "")
               << ","
               << (t.contains("conjecture_abs_discrepancy")
                       ? detail::fmt_double(t["conjecture_abs_discrepancy"].get<double>())
                       : "")
               << "\n";
        }
        return os.str();
    }
    if (kind == "analysis") {
        os << "key,value\n";
        os << "family," << rep["group"]["family"].get<std::string>() << "\n";
        os << "order," << rep["group"]["order"].get<long>() << "\n";
        os << "center_size," << rep["group"]["center_size"].get<long>() << "\n";
        os << "class_count," << rep["group"]["class_count"].get<long>() << "\n";
        os << "is_ca," << rep["group"]["is_ca"].get<bool>() << "\n";
        os << "lambda_star," << detail::fmt_double(rep["spectrum"]["lambda_star"].get<double>()) << "\n";
        os << "gap," << detail::fmt_double(rep["spectrum"]["gap"].get<double>()) << "\n";
        if (!rep["mixing"].value("skipped", true))
            for (const auto& [e, t] : rep["mixing"]["t_mix"].items())
                os << "t_mix(" << e << ")," << t.get<long>() << "\n";
        for (const auto& ej : rep["spectrum"]["eigenvalues"])
            os << "eigenvalue," << detail::fmt_double(ej["value"].get<double>()) << " x"
               << ej["multiplicity"].get<long>() << "\n";
        return os.str();
    }
    return rep.dump(2) + "\n";
}

}  // namespace cchain
