#pragma once

// Mixing-time bounds for the commuting chain: the Cheeger lower bound via
// centralizer sets, the minorization and coupling upper bounds, the
// eigenvalue sandwich, and the no-cutoff ratio check. All formula inputs stay
// exact rationals; log terms are documented double evaluations with guarded
// ceilings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cchain/chain.hpp"
#include "cchain/spectral.hpp"

namespace cchain {

/// Bottleneck ratio Phi(S) = Q(S,S^c) / pi(S), exact.
inline Rat phi_of(const std::vector<int32_t>& set, const RatMatrix& P, const Distribution& pi) {
    const int n = P.rows();
    if (set.empty() || static_cast<int>(set.size()) >= n)
        throw std::invalid_argument("phi_of: S must be a proper nonempty subset");
    std::vector<char> in_set(n, 0);
    for (int32_t x : set) in_set[x] = 1;
    Rat flow(0), mass(0);
    for (int32_t x : set) {
        mass += pi.w[x];
        for (int y = 0; y < n; ++y)
            if (!in_set[y] && P.at(x, y) != 0) flow += pi.w[x] * P.at(x, y);
    }
    if (mass == 0) throw std::invalid_argument("phi_of: pi(S) is zero");
    return Rat(flow / mass);
}

/// Exact Cheeger constant by enumeration of all subsets with pi(S) <= 1/2
/// (gray-code incremental updates; n <= 20).
inline Rat phi_star_bruteforce(const RatMatrix& P, const Distribution& pi, int cap = 20) {
    const int n = P.rows();
    if (n > cap) throw std::invalid_argument("phi_star_bruteforce: state count above cap");
    if (n < 2) throw std::invalid_argument("phi_star_bruteforce: need at least 2 states");

    // scale Q(x,y) = pi(x) P(x,y) and pi to a common integer grid
    Int scale(1);
    for (int x = 0; x < n; ++x) {
        scale = int_lcm(scale, pi.w[x].get_den());
        for (int y = 0; y < n; ++y)
            scale = int_lcm(scale, Rat(pi.w[x] * P.at(x, y)).get_den());
    }
    if (!scale.fits_slong_p()) throw std::runtime_error("phi_star_bruteforce: scale overflow");
    auto to_long = [&](const Rat& r) {
        Rat v = r * Rat(scale);
        v.canonicalize();
        if (v.get_den() != 1 || !v.get_num().fits_slong_p())
            throw std::runtime_error("phi_star_bruteforce: scaled entry not integral");
        return v.get_num().get_si();
    };
    std::vector<long> q(static_cast<std::size_t>(n) * n), pw(n);
    for (int x = 0; x < n; ++x) {
        pw[x] = to_long(pi.w[x]);
        for (int y = 0; y < n; ++y) q[static_cast<std::size_t>(x) * n + y] = to_long(Rat(pi.w[x] * P.at(x, y)));
    }
    const long half = to_long(Rat(1));  // pi(S) <= 1/2 iff 2*mass <= half

    std::vector<char> in_set(n, 0);
    long flow = 0, mass = 0;
    std::optional<Rat> best;
    const std::uint32_t total = 1u << n;
    for (std::uint32_t it = 1; it < total; ++it) {
        int e = __builtin_ctz(it);  // gray-code flip position
        long row_out = 0, col_in = 0;
        if (!in_set[e]) {
            in_set[e] = 1;
            for (int y = 0; y < n; ++y)
                if (!in_set[y]) row_out += q[static_cast<std::size_t>(e) * n + y];
            for (int x = 0; x < n; ++x)
                if (in_set[x] && x != e) col_in += q[static_cast<std::size_t>(x) * n + e];
            flow += row_out - col_in;
            mass += pw[e];
        } else {
            in_set[e] = 0;
            for (int y = 0; y < n; ++y)
                if (!in_set[y] && y != e) row_out += q[static_cast<std::size_t>(e) * n + y];
            for (int x = 0; x < n; ++x)
                if (in_set[x]) col_in += q[static_cast<std::size_t>(x) * n + e];
            flow += col_in - row_out;
            mass -= pw[e];
        }
        if (mass == 0 || 2 * mass > half) continue;
        Rat phi = make_rat(flow, mass);
        if (!best || phi < *best) best = phi;
    }
    if (!best) throw std::runtime_error("phi_star_bruteforce: no admissible subset");
    return *best;
}

/// Cheeger lower bound: selects the largest centralizer whose off-center mass satisfies
/// pi(C \ Z) < 1/2 strictly. (At exactly 1/2 the set is excluded, matching
/// the dihedral treatment, where the big centralizer is rejected.) The value
/// is c_i / (4z).
struct CheegerLowerBound {
    std::optional<Rat> value;
    long chosen_size = 0;
    std::vector<int32_t> chosen_set;      // C_i \ Z
    Rat chosen_mass;                      // pi of the chosen set
    bool best_size_qualifies = false;     // does the largest centralizer qualify?
    bool cstar_hypothesis_ok = false;     // pi(C_star \ Z) <= 1/2 (non-strict, for cutoff)
    Rat cstar_mass;
};

inline CheegerLowerBound lower_bound_cheeger(const GroupStructure& s, const Distribution& pi) {
    if (!s.is_ca || !s.signature)
        throw std::invalid_argument("lower_bound_cheeger: need a non-abelian CA group");
    CheegerLowerBound out;
    std::vector<char> central(s.n, 0);
    for (int32_t x : s.center) central[x] = 1;

    auto off_center_mass = [&](const std::vector<int32_t>& cset) {
        Rat m(0);
        for (int32_t x : cset)
            if (!central[x]) m += pi.w[x];
        return m;
    };

    const Rat half = make_rat(1, 2);
    long best_size = 0;
    std::size_t best_idx = 0;
    bool cstar_seen = false;
    for (std::size_t i = 0; i < s.distinct_centralizers.size(); ++i) {
        long size = static_cast<long>(s.distinct_centralizers[i].size());
        Rat mass = off_center_mass(s.distinct_centralizers[i]);
        if (size > s.signature->c_star)
            throw std::runtime_error("lower_bound_cheeger: census inconsistent");
        if (size == s.signature->c_star && !cstar_seen) {
            cstar_seen = true;
            out.cstar_mass = mass;
            out.cstar_hypothesis_ok = mass <= half;
        }
        if (mass < half && size > best_size) {
            best_size = size;
            best_idx = i;
        }
    }
    out.best_size_qualifies = best_size == s.signature->c_star;
    if (best_size > 0) {
        out.chosen_size = best_size;
        out.value = make_rat(best_size, 4 * s.z);
        for (int32_t x : s.distinct_centralizers[best_idx])
            if (!central[x]) out.chosen_set.push_back(x);
        out.chosen_mass = off_center_mass(s.distinct_centralizers[best_idx]);
    }
    return out;
}

/// Minorization upper bound: t_mix(eps) <= ceil( (2 c_star / z) log(1/eps) + 2 ).
/// Abelian chains mix in one step; the bound is replaced by 1 and flagged.
struct MinorizationUB {
    long value = 0;
    bool abelian = false;
    bool ceil_guarded = false;
};

inline MinorizationUB upper_bound_minorization(const GroupStructure& s, const Rat& eps) {
    MinorizationUB out;
    if (s.is_abelian) {
        out.value = 1;
        out.abelian = true;
        return out;
    }
    long c_star = s.signature ? s.signature->c_star : [&] {
        long m = 0;
        for (int x = 0; x < s.n; ++x)
            if (s.centralizer_size(x) < s.n) m = std::max(m, s.centralizer_size(x));
        return m;
    }();
    double v = 2.0 * static_cast<double>(c_star) / static_cast<double>(s.z) *
                   std::log(1.0 / rat_to_double(eps)) +
               2.0;
    auto gc = guarded_ceil(v);
    out.value = gc.value;
    out.ceil_guarded = gc.guarded;
    return out;
}

/// Coupling upper bound: present only when every non-central centralizer has the
/// same size c; then alpha = min(z/c, c/|G|) and
/// t_mix(eps) <= ceil( (1/alpha) log(1/eps) ) with the discrete metric.
struct CouplingUB {
    std::optional<long> value;
    std::optional<Rat> alpha;
    bool ceil_guarded = false;
};

inline CouplingUB upper_bound_coupling(const GroupStructure& s, long group_order, const Rat& eps) {
    CouplingUB out;
    if (!s.is_ca || !s.signature) return out;
    if (s.signature->census.size() != 1) return out;  // unequal sizes
    long c = s.signature->census.front().first;
    Rat alpha = std::min(make_rat(s.z, c), make_rat(c, group_order));
    out.alpha = alpha;
    auto gc = guarded_ceil(std::log(1.0 / rat_to_double(eps)) / rat_to_double(alpha));
    out.value = gc.value;
    out.ceil_guarded = gc.guarded;
    return out;
}

/// Relaxation-time sandwich: (t_rel - 1) log(1/(2 eps)) <= t_mix(eps)
///                 <= ceil( t_rel log(1/(eps pi_min)) ).
struct EigenSandwich {
    double lower = 0;
    long upper = 0;
    bool ceil_guarded = false;
};

inline EigenSandwich eigen_sandwich(const SpectralSummary& spec, const Rat& pi_min,
                                    const Rat& eps) {
    if (spec.lambda_star >= 1.0)
        throw std::invalid_argument("eigen_sandwich: lambda_star must be below 1");
    EigenSandwich out;
    double t_rel = spec.t_rel;
    double le = std::log(1.0 / (2.0 * rat_to_double(eps)));
    out.lower = std::max(0.0, (t_rel - 1.0) * le);
    auto gc = guarded_ceil(t_rel * std::log(1.0 / (rat_to_double(eps) * rat_to_double(pi_min))));
    out.upper = gc.value;
    out.ceil_guarded = gc.guarded;
    return out;
}

/// No-cutoff ratio arithmetic: the ratio t_mix / (t_rel - 1), the hypothesis
/// pi(C_star \ Z) <= 1/2, and whether the ratio respects the corollary's
/// ceiling (1/lambda_star)(4 log 4 + 4). Whether cutoff is disproved for a
/// family is a sequence statement; per group we report 1 - lambda_star so a
/// sweep can display the trend.
struct CutoffCheck {
    bool applicable = false;   // non-abelian with lambda_star > 0 and t_mix known
    double ratio = 0;
    bool hypothesis_ok = false;
    bool ratio_within_bound = false;
    bool disproved = false;
    double one_minus_lambda_star = 1;
    std::optional<Rat> one_minus_lambda_star_exact;
};

inline CutoffCheck cutoff_check(long t_mix_quarter, const SpectralSummary& spec,
                                const CheegerLowerBound& lb) {
    CutoffCheck out;
    out.one_minus_lambda_star = 1.0 - spec.lambda_star;
    if (spec.lambda_star_exact)
        out.one_minus_lambda_star_exact = Rat(1 - *spec.lambda_star_exact);
    if (t_mix_quarter < 0 || spec.lambda_star <= 0) return out;
    out.applicable = true;
    out.ratio = static_cast<double>(t_mix_quarter) / (spec.t_rel - 1.0);
    out.hypothesis_ok = lb.cstar_hypothesis_ok;
    double ceiling = (4.0 * std::log(4.0) + 4.0) / spec.lambda_star;
    out.ratio_within_bound = out.ratio <= ceiling + 1e-9;
    out.disproved = out.hypothesis_ok && out.ratio_within_bound;
    return out;
}

/// Aggregated bound report for one group; field names are the JSON contract.
struct BoundReport {
    std::string group_id;
    std::optional<Rat> lb_cheeger;
    bool lb_cheeger_hypothesis_ok = false;
    long lb_cheeger_chosen_size = 0;
    bool lb_cheeger_best_size_qualifies = false;
    double lb_eigen = 0;
    long ub_minorization = 0;
    bool ub_minorization_abelian = false;
    std::optional<long> ub_coupling;
    long ub_eigen = 0;
    double cutoff_ratio = 0;
    bool cutoff_disproved = false;
    std::optional<Rat> phi_of_set;        // Phi(C_i \ Z) of the chosen set
    std::optional<Rat> phi_star_exact;    // brute force, small chains only
    std::optional<Rat> alpha;             // coupling rate when defined
    Rat delta;                            // z / c_star
    long t0 = 2;
};

/// Assemble the full bound report for a non-abelian CA group. The exact
/// transition matrix is optional; without it the Phi witnesses are omitted.
/// `issues` collects violated cross-checks: sandwich consistency, the Cheeger
/// witness identity, and the gap sandwich plus mixing lower bound against the
/// exact Cheeger constant.
inline BoundReport build_bound_report(const GroupTable& g, const GroupStructure& s,
                                      const Distribution& pi, const SpectralSummary& spec,
                                      long t_mix_quarter, const RatMatrix* P,
                                      int phi_star_cap, std::vector<std::string>& issues) {
    if (s.is_abelian || !s.is_ca || !s.signature)
        throw std::invalid_argument("build_bound_report: need a non-abelian CA group");
    const Rat quarter = make_rat(1, 4);
    Rat pi_min(1);
    for (const Rat& w : pi.w) pi_min = std::min(pi_min, w);

    CheegerLowerBound lb = lower_bound_cheeger(s, pi);
    MinorizationUB mub = upper_bound_minorization(s, quarter);
    CouplingUB cub = upper_bound_coupling(s, g.order(), quarter);
    EigenSandwich es = eigen_sandwich(spec, pi_min, quarter);
    CutoffCheck cc = cutoff_check(t_mix_quarter, spec, lb);

    BoundReport out;
    out.group_id = g.tag().family;
    for (const auto& [k, v] : g.tag().params) out.group_id += "_" + k + std::to_string(v);
    out.lb_cheeger = lb.value;
    out.lb_cheeger_hypothesis_ok = lb.value.has_value();
    out.lb_cheeger_chosen_size = lb.chosen_size;
    out.lb_cheeger_best_size_qualifies = lb.best_size_qualifies;
    out.lb_eigen = es.lower;
    out.ub_minorization = mub.value;
    out.ub_minorization_abelian = mub.abelian;
    out.ub_coupling = cub.value;
    out.ub_eigen = es.upper;
    out.cutoff_ratio = cc.ratio;
    out.cutoff_disproved = cc.disproved;
    out.alpha = cub.alpha;
    out.delta = make_rat(s.z, s.signature->c_star);

    if (lb.value && P) {
        Rat phi = phi_of(lb.chosen_set, *P, pi);
        out.phi_of_set = phi;
        if (phi != make_rat(s.z, lb.chosen_size))
            issues.push_back("phi(C \\ Z) != z/c for the chosen centralizer");
    }
    if (P && g.order() <= phi_star_cap) {
        Rat ps = phi_star_bruteforce(*P, pi);
        out.phi_star_exact = ps;
        double psd = rat_to_double(ps);
        double gap2 = 1.0 - spec.lambda_2;
        if (!(psd * psd / 2.0 <= gap2 + 1e-9 && gap2 <= 2.0 * psd + 1e-9))
            issues.push_back("gap-Cheeger sandwich violated against exact constant");
        if (t_mix_quarter >= 0 && make_rat(1, 4) / ps > Rat(t_mix_quarter))
            issues.push_back("Cheeger mixing lower bound violated: 1/(4 phi_star) > t_mix");
    }
    if (t_mix_quarter >= 0) {
        if (lb.value && Rat(t_mix_quarter) < *lb.value)
            issues.push_back("computed t_mix below the Cheeger lower bound");
        if (t_mix_quarter > mub.value)
            issues.push_back("computed t_mix above the minorization upper bound");
        if (cub.value && t_mix_quarter > *cub.value)
            issues.push_back("computed t_mix above the coupling upper bound");
    }
    return out;
}

}  // namespace cchain
