#pragma once

// Closed-form spectra of the lumped commuting chain on D_2n conjugacy
// classes, with the eigenfunction bound lemmas and the uniform-mixing check.
//
// Class order follows lumped_chain (classes by smallest member):
//   odd n:  {1}, {r,r^-1}, ..., {r^((n-1)/2),...}, {s,...}
//   even n: {1}, {r,r^-1}, ..., {r^(n/2-1),...}, {r^(n/2)}, {s,sr^2,...}, {sr,...}
// For even n with n/2 even, the extra 1/2-eigenvalue's eigenfunction is
// supported on the two reflection classes, antisymmetric between them, and
// normalized in l2(pi). (The sign convention puts the negative entry on the
// {s,...} class.)

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cchain/chain.hpp"

namespace cchain {

struct DihedralSpectrum {
    bool odd = true;
    long n = 0;
    long m = 0;              // lumped state count
    double c_n = 0, A_n = 0, B_n = 0;
    double lambda_2 = 0;     // (n-1+c_n)/(4n) odd, (n-2+c_n)/(4n) even
    double lambda_m = 0;     // conjugate surd
    bool has_half = false;   // even n with n/2 even
    long zero_multiplicity = 0;
    std::vector<std::pair<double, long>> eigenvalues;  // descending, with multiplicity
    std::vector<double> f1, f2, fm;
    std::vector<double> f_half;  // present iff has_half
};

inline DihedralSpectrum dihedral_closed_form(long n) {
    if (n < 3) throw std::invalid_argument("dihedral_closed_form: n must be >= 3");
    DihedralSpectrum out;
    out.n = n;
    out.odd = (n % 2 == 1);

    if (out.odd) {
        out.m = (n + 3) / 2;
        out.c_n = std::sqrt(static_cast<double>((5 * n - 1) * (n - 1)));
        out.A_n = std::sqrt(static_cast<double>(n) * n * (n + 3) /
                            (5.0 * n * n - n * out.c_n + 4 * n + out.c_n - 1));
        out.B_n = std::sqrt(static_cast<double>(n) * n * (n + 3) /
                            (5.0 * n * n + n * out.c_n + 4 * n - out.c_n - 1));
        out.lambda_2 = (n - 1 + out.c_n) / (4.0 * n);
        out.lambda_m = (n - 1 - out.c_n) / (4.0 * n);

        double alpha = (-(n + 1) / 2.0 + out.c_n / 2.0) / n;
        double beta = (-1.0 - out.c_n / (n - 1)) / n;
        double alpha_m = (-(n + 1) / 2.0 - out.c_n / 2.0) / n;
        double beta_m = (-1.0 + out.c_n / (n - 1)) / n;

        out.f1.assign(out.m, 1.0);
        out.f2.assign(out.m, 0.0);
        out.fm.assign(out.m, 0.0);
        out.f2[0] = out.A_n * alpha;
        out.fm[0] = out.B_n * alpha_m;
        for (long i = 1; i < out.m - 1; ++i) {
            out.f2[i] = out.A_n * beta;
            out.fm[i] = out.B_n * beta_m;
        }
        out.f2[out.m - 1] = out.A_n;
        out.fm[out.m - 1] = out.B_n;
        out.zero_multiplicity = out.m - 3;
    } else {
        out.m = (n + 6) / 2;
        out.c_n = std::sqrt(static_cast<double>((5 * n - 2) * (n - 2)));
        out.A_n = std::sqrt(static_cast<double>(n) * n * (n + 6) /
                            (2.0 * (5.0 * n * n - n * out.c_n + 8 * n + 2 * out.c_n - 4)));
        out.B_n = std::sqrt(static_cast<double>(n) * n * (n + 6) /
                            (2.0 * (5.0 * n * n + n * out.c_n + 8 * n - 2 * out.c_n - 4)));
        out.lambda_2 = (n - 2 + out.c_n) / (4.0 * n);
        out.lambda_m = (n - 2 - out.c_n) / (4.0 * n);
        out.has_half = (n / 2) % 2 == 0;

        double alpha = (-(n + 2) / 2.0 + out.c_n / 2.0) / n;
        double beta = 2.0 * (-1.0 - out.c_n / (n - 2)) / n;
        double alpha_m = (-(n + 2) / 2.0 - out.c_n / 2.0) / n;
        double beta_m = 2.0 * (-1.0 + out.c_n / (n - 2)) / n;

        // class order: {1}, (n-2)/2 rotation pairs, {r^(n/2)}, two reflection classes
        out.f1.assign(out.m, 1.0);
        out.f2.assign(out.m, 0.0);
        out.fm.assign(out.m, 0.0);
        out.f2[0] = out.A_n * alpha;
        out.fm[0] = out.B_n * alpha_m;
        for (long i = 1; i <= (n - 2) / 2; ++i) {
            out.f2[i] = out.A_n * beta;
            out.fm[i] = out.B_n * beta_m;
        }
        out.f2[n / 2] = out.A_n * alpha;
        out.fm[n / 2] = out.B_n * alpha_m;
        out.f2[out.m - 2] = out.A_n;
        out.fm[out.m - 2] = out.B_n;
        out.f2[out.m - 1] = out.A_n;
        out.fm[out.m - 1] = out.B_n;

        if (out.has_half) {
            double h = 0.5 * std::sqrt(static_cast<double>(n + 6));
            out.f_half.assign(out.m, 0.0);
            out.f_half[out.m - 2] = -h;
            out.f_half[out.m - 1] = h;
        }
        out.zero_multiplicity = out.m - 3 - (out.has_half ? 1 : 0);
    }

    out.eigenvalues.push_back({1.0, 1});
    out.eigenvalues.push_back({out.lambda_2, 1});
    if (out.has_half) out.eigenvalues.push_back({0.5, 1});
    if (out.zero_multiplicity > 0) out.eigenvalues.push_back({0.0, out.zero_multiplicity});
    out.eigenvalues.push_back({out.lambda_m, 1});
    return out;
}

/// Residual and normalization checks of the closed-form eigenpairs against
/// the lumped chain built from the actual group.
struct DihedralVerify {
    double max_residual = 0;      // max over eigenpairs of ||P f - lambda f||_inf
    double max_norm_error = 0;    // max | <f,f>_pi - 1 |
    bool ok(double tol = 1e-10) const { return max_residual <= tol && max_norm_error <= tol; }
};

inline DihedralVerify dihedral_verify_eigenpairs(long n) {
    DihedralSpectrum spec = dihedral_closed_form(n);
    GroupTable g = build_dihedral(n);
    GroupStructure s = analyze_structure(g);
    RatMatrix L = lumped_chain(g, s);
    if (L.rows() != spec.m) throw std::runtime_error("dihedral_verify: class count mismatch");

    std::vector<std::vector<double>> Ld(spec.m, std::vector<double>(spec.m));
    for (long i = 0; i < spec.m; ++i)
        for (long j = 0; j < spec.m; ++j) Ld[i][j] = rat_to_double(L.at(static_cast<int>(i), static_cast<int>(j)));

    const double pi_u = 1.0 / static_cast<double>(spec.m);
    DihedralVerify v;
    auto check_pair = [&](const std::vector<double>& f, double lambda, bool normalized) {
        for (long i = 0; i < spec.m; ++i) {
            double acc = 0;
            for (long j = 0; j < spec.m; ++j) acc += Ld[i][j] * f[j];
            v.max_residual = std::max(v.max_residual, std::fabs(acc - lambda * f[i]));
        }
        if (normalized) {
            double norm = 0;
            for (long i = 0; i < spec.m; ++i) norm += pi_u * f[i] * f[i];
            v.max_norm_error = std::max(v.max_norm_error, std::fabs(norm - 1.0));
        }
    };
    check_pair(spec.f1, 1.0, true);
    check_pair(spec.f2, spec.lambda_2, true);
    check_pair(spec.fm, spec.lambda_m, true);
    if (spec.has_half) check_pair(spec.f_half, 0.5, true);
    return v;
}

/// Lemma checks on the closed-form quantities. Odd n uses the odd-n bounds
/// (c_n in [n,3n], A_n,B_n <= sqrt(n), |f/A| <= (sqrt5+1)/2 globally and
/// <= 4/n on rotation-pair classes, lambda_star < (1+sqrt5)/4); even n with
/// n/2 odd uses the even-n set (|c_n| <= 4n, |f/A| <= 1+sqrt5, <= 16/n on
/// the rotation pairs). Non-strict comparisons get 1e-12 slack.
inline bool dihedral_bound_lemmas(long n) {
    const double slack = 1e-12;
    if (n < 3) throw std::invalid_argument("dihedral_bound_lemmas: n must be >= 3");
    DihedralSpectrum spec = dihedral_closed_form(n);
    double golden = (std::sqrt(5.0) + 1.0) / 2.0;

    if (n % 2 == 1) {
        if (!(n <= spec.c_n + slack && spec.c_n <= 3.0 * n + slack)) return false;
        if (!(spec.A_n <= std::sqrt(static_cast<double>(n)) + slack)) return false;
        if (!(spec.B_n <= std::sqrt(static_cast<double>(n)) + slack)) return false;
        for (long i = 0; i < spec.m; ++i) {
            if (std::fabs(spec.f2[i] / spec.A_n) > golden + slack) return false;
            if (std::fabs(spec.fm[i] / spec.B_n) > golden + slack) return false;
        }
        for (long i = 1; i <= spec.m - 2; ++i) {
            if (std::fabs(spec.f2[i] / spec.A_n) > 4.0 / n + slack) return false;
            if (std::fabs(spec.fm[i] / spec.B_n) > 4.0 / n + slack) return false;
        }
        double lambda_star = std::max(spec.lambda_2, std::fabs(spec.lambda_m));
        return lambda_star < (1.0 + std::sqrt(5.0)) / 4.0;
    }

    if ((n / 2) % 2 == 0)
        throw std::invalid_argument("dihedral_bound_lemmas: even lemma needs n/2 odd");
    if (!(std::fabs(spec.c_n) <= 4.0 * n + slack)) return false;
    if (!(spec.A_n <= std::sqrt(static_cast<double>(n)) + slack)) return false;
    if (!(spec.B_n <= std::sqrt(static_cast<double>(n)) + slack)) return false;
    for (long i = 0; i < spec.m; ++i) {
        if (std::fabs(spec.f2[i] / spec.A_n) > 1.0 + std::sqrt(5.0) + slack) return false;
        if (std::fabs(spec.fm[i] / spec.B_n) > 1.0 + std::sqrt(5.0) + slack) return false;
    }
    // interior bounds cover the rotation-pair classes (indices 1..(n-2)/2)
    for (long i = 1; i <= (n - 2) / 2; ++i) {
        if (std::fabs(spec.f2[i] / spec.A_n) > 16.0 / n + slack) return false;
        if (std::fabs(spec.fm[i] / spec.B_n) > 16.0 / n + slack) return false;
    }
    double lambda_star = std::max(spec.lambda_2, std::fabs(spec.lambda_m));
    return lambda_star < (1.0 + std::sqrt(5.0)) / 4.0;
}

/// Uniform-mixing check: lumped d(t) <= C lambda_2^t for t <= t_max, with
/// C = 4((sqrt5+1)/2)^2 for odd n and C = 10(sqrt5+1)^2 for even n (n/2 odd).
struct DihedralMixingEntry {
    long n = 0;
    bool inequality_ok = false;
    long t_mix_quarter = -1;
};

struct DihedralMixingReport {
    std::vector<DihedralMixingEntry> entries;
    long max_t_mix = -1;
    bool all_ok = true;
};

inline DihedralMixingReport dihedral_constant_mixing_check(const std::vector<long>& n_list,
                                                           long t_max) {
    DihedralMixingReport rep;
    for (long n : n_list) {
        if (n % 2 == 0 && (n / 2) % 2 == 0)
            throw std::invalid_argument("dihedral_constant_mixing_check: even n needs n/2 odd");
        DihedralSpectrum spec = dihedral_closed_form(n);
        GroupTable g = build_dihedral(n);
        GroupStructure s = analyze_structure(g);
        RatMatrix L = lumped_chain(g, s);
        Distribution lpi = lumped_stationary(s);
        MixingProfile prof = mixing_profile_matrix(L, lpi, {make_rat(1, 4)}, t_max,
                                                   ArithmeticMode::Floating, 1e-10,
                                                   /*full_horizon=*/true);
        double root5 = std::sqrt(5.0);
        double C = n % 2 == 1 ? 4.0 * std::pow((root5 + 1.0) / 2.0, 2) : 10.0 * std::pow(root5 + 1.0, 2);
        DihedralMixingEntry e;
        e.n = n;
        e.inequality_ok = true;
        for (std::size_t t = 0; t < prof.d.size(); ++t)
            if (prof.d[t] > C * std::pow(spec.lambda_2, static_cast<double>(t)) + 1e-10) {
                e.inequality_ok = false;
                break;
            }
        e.t_mix_quarter = prof.t_mix_quarter;
        rep.all_ok = rep.all_ok && e.inequality_ok && e.t_mix_quarter >= 0;
        rep.max_t_mix = std::max(rep.max_t_mix, e.t_mix_quarter);
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace cchain
