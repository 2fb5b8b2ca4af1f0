#include <catch2/catch.hpp>

#include "cchain/bounds.hpp"

#include <cmath>

using namespace cchain;

TEST_CASE("phi of centralizer sets", "[bounds]") {
    // H_3(3): phi(C \ Z) = z/c = 1/3
    auto g = build_heisenberg(3);
    auto s = analyze_structure(g);
    auto P = transition_matrix(g, s);
    auto pi = stationary(g, s);
    std::vector<char> central(g.order(), 0);
    for (int32_t x : s.center) central[x] = 1;
    for (const auto& cset : s.distinct_centralizers) {
        std::vector<int32_t> off;
        for (int32_t x : cset)
            if (!central[x]) off.push_back(x);
        REQUIRE(phi_of(off, P, pi) == make_rat(s.z, static_cast<long>(cset.size())));
    }
    // abelian Z/4, half the states: phi = 1/2
    auto z4 = build_abelian_cyclic(4);
    auto z4s = analyze_structure(z4);
    REQUIRE(phi_of({0, 1}, transition_matrix(z4, z4s), stationary(z4, z4s)) == make_rat(1, 2));
    REQUIRE_THROWS_AS(phi_of({}, P, pi), std::invalid_argument);
}

TEST_CASE("brute-force Cheeger constant", "[bounds]") {
    auto z4 = build_abelian_cyclic(4);
    auto z4s = analyze_structure(z4);
    REQUIRE(phi_star_bruteforce(transition_matrix(z4, z4s), stationary(z4, z4s)) ==
            make_rat(1, 2));

    // D_6: phi_star is at most z/c for each admissible centralizer set
    auto d = build_dihedral(3);
    auto ds = analyze_structure(d);
    auto dP = transition_matrix(d, ds);
    auto dpi = stationary(d, ds);
    Rat ps = phi_star_bruteforce(dP, dpi);
    REQUIRE(ps == make_rat(1, 3));
    for (const auto& cset : ds.distinct_centralizers) {
        Rat mass(0);
        std::vector<int32_t> off;
        for (int32_t x : cset)
            if (x != 0) { off.push_back(x); mass += dpi.w[x]; }
        if (mass <= make_rat(1, 2)) REQUIRE(ps <= make_rat(ds.z, static_cast<long>(cset.size())));
    }
    REQUIRE_THROWS_AS(phi_star_bruteforce(RatMatrix::identity(21),
                                          Distribution{std::vector<Rat>(21, make_rat(1, 21))}),
                      std::invalid_argument);
}

TEST_CASE("gap-Cheeger sandwich against exact constants", "[bounds]") {
    for (auto make : {+[] { return build_dihedral(3); }, +[] { return build_dihedral(5); },
                      +[] { return build_dihedral(6); }, +[] { return build_affine(3); },
                      +[] { return build_abelian_cyclic(8); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto pi = stationary(g, s);
        Rat ps = phi_star_bruteforce(P, pi);
        auto poly = s.signature ? std::optional<RatPoly>(signature_charpoly(*s.signature, g.order()))
                                : std::nullopt;
        auto spec = numeric_spectrum(dense_double_matrix(s), g.order(), pi.to_double(),
                                     poly ? &*poly : nullptr);
        double psd = rat_to_double(ps);
        double gap2 = 1.0 - spec.lambda_2;
        INFO(g.tag().family << " order " << g.order());
        REQUIRE(psd * psd / 2.0 <= gap2 + 1e-9);
        REQUIRE(gap2 <= 2.0 * psd + 1e-9);
    }
}

TEST_CASE("Cheeger lower bound selection", "[bounds]") {
    // H_3(p): bound p/4, hypothesis holds
    for (long p : {3L, 5L}) {
        auto s = analyze_structure(build_heisenberg(p));
        auto pi = stationary(build_heisenberg(p), s);
        auto lb = lower_bound_cheeger(s, pi);
        REQUIRE(lb.value == make_rat(p, 4));  // c/4z = p^2/4p
        REQUIRE(lb.chosen_mass == make_rat(p - 1, p * p + p - 1));
        REQUIRE(lb.cstar_hypothesis_ok);
        REQUIRE(lb.best_size_qualifies);
    }
    // GL(2,3): bound (q+1)/4 via the size q^2-1 centralizer
    auto gl = build_gl2(3);
    auto gls = analyze_structure(gl);
    auto glb = lower_bound_cheeger(gls, stationary(gl, gls));
    REQUIRE(glb.value == make_rat(4, 4));
    REQUIRE(glb.chosen_size == 8);
    // D_10: the size-5 set sits exactly at mass 1/2 and is excluded; the
    // size-2 sets give the trivial bound 1/2
    auto d = build_dihedral(5);
    auto ds = analyze_structure(d);
    auto dlb = lower_bound_cheeger(ds, stationary(d, ds));
    REQUIRE(dlb.chosen_size == 2);
    REQUIRE(dlb.value == make_rat(1, 2));
    REQUIRE_FALSE(dlb.best_size_qualifies);
    REQUIRE(dlb.cstar_mass == make_rat(1, 2));
    REQUIRE(dlb.cstar_hypothesis_ok);  // non-strict reading, used by the cutoff check
}

TEST_CASE("minorization upper bound", "[bounds]") {
    auto hs = analyze_structure(build_heisenberg(3));
    REQUIRE(upper_bound_minorization(hs, make_rat(1, 4)).value == 11);  // ceil(6 log 4 + 2)
    auto gls = analyze_structure(build_gl2(3));
    REQUIRE(upper_bound_minorization(gls, make_rat(1, 4)).value == 14);  // ceil((q+1) log 16 + 2)
    auto abs_ = analyze_structure(build_abelian_cyclic(6));
    auto ab = upper_bound_minorization(abs_, make_rat(1, 4));
    REQUIRE(ab.value == 1);
    REQUIRE(ab.abelian);
    // rapid mixing: the bound never exceeds 2|G| log(1/eps) + 3
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(9); },
                      +[] { return build_gl2(3); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        long b = upper_bound_minorization(s, make_rat(1, 4)).value;
        REQUIRE(b <= static_cast<long>(2 * g.order() * std::log(4.0) + 3));
    }
}

TEST_CASE("coupling upper bound", "[bounds]") {
    auto hs = analyze_structure(build_heisenberg(3));
    auto cub = upper_bound_coupling(hs, 27, make_rat(1, 4));
    REQUIRE(cub.value == 5);  // ceil(p log 4), alpha = 1/p
    REQUIRE(cub.alpha == make_rat(1, 3));
    auto as_ = analyze_structure(build_affine(5));
    REQUIRE_FALSE(upper_bound_coupling(as_, 20, make_rat(1, 4)).value.has_value());
    auto ds = analyze_structure(build_dihedral(5));
    REQUIRE_FALSE(upper_bound_coupling(ds, 10, make_rat(1, 4)).value.has_value());
}

TEST_CASE("eigen sandwich", "[bounds]") {
    // H_3(p): lb = (p-1) log(1/2eps), ub = ceil(p log((p^3+p^2-p)/eps))
    for (long p : {3L, 5L}) {
        auto g = build_heisenberg(p);
        auto s = analyze_structure(g);
        auto pi = stationary(g, s);
        auto poly = signature_charpoly(*s.signature, g.order());
        auto spec = numeric_spectrum(dense_double_matrix(s), g.order(), pi.to_double(), &poly);
        Rat pi_min = *std::min_element(pi.w.begin(), pi.w.end());
        auto es = eigen_sandwich(spec, pi_min, make_rat(1, 4));
        REQUIRE(es.lower == Approx((p - 1) * std::log(2.0)).epsilon(1e-6));
        double expect_ub = p * std::log(4.0 * (p * p * p + p * p - p));
        REQUIRE(es.upper == static_cast<long>(std::ceil(expect_ub - 1e-9)));
    }
    // abelian: t_rel = 1, lower bound 0
    SpectralSummary triv;
    triv.lambda_star = 0;
    triv.t_rel = 1;
    triv.gap = 1;
    REQUIRE(eigen_sandwich(triv, make_rat(1, 6), make_rat(1, 4)).lower == 0.0);
}

TEST_CASE("minorization decay and coupling decay along profiles", "[bounds]") {
    // d(t) <= (1 - z/c_star)^floor(t/2) and, for equal centralizers,
    // d(t) <= e^(-alpha t)
    auto g = build_heisenberg(3);
    auto s = analyze_structure(g);
    auto pi = stationary(g, s);
    auto prof = mixing_profile_group(g, s, pi, {make_rat(1, 100)});
    double delta = 3.0 / 9.0;
    double alpha = 1.0 / 3.0;
    for (std::size_t t = 0; t < prof.d.size(); ++t) {
        REQUIRE(prof.d[t] <= std::pow(1.0 - delta, std::floor(t / 2.0)) + 1e-12);
        REQUIRE(prof.d[t] <= std::exp(-alpha * static_cast<double>(t)) + 1e-12);
    }
}

TEST_CASE("assembled bound report", "[bounds]") {
    auto g = build_dihedral(3);  // D_6: small enough for the exact Cheeger constant
    auto s = analyze_structure(g);
    auto pi = stationary(g, s);
    auto P = transition_matrix(g, s);
    auto poly = signature_charpoly(*s.signature, 6);
    auto spec = numeric_spectrum(dense_double_matrix(s), 6, pi.to_double(), &poly);
    auto prof = mixing_profile_group(g, s, pi, {});
    std::vector<std::string> issues;
    auto br = build_bound_report(g, s, pi, spec, prof.t_mix_quarter, &P, 16, issues);
    REQUIRE(issues.empty());
    REQUIRE(br.group_id == "dihedral_n3");
    REQUIRE(br.lb_cheeger == make_rat(3, 4));       // the size-3 rotation centralizer
    REQUIRE(br.phi_of_set == make_rat(1, 3));       // z/c for the chosen set
    REQUIRE(br.phi_star_exact == make_rat(1, 3));
    REQUIRE(br.delta == make_rat(1, 3));            // z/c_star
    REQUIRE(br.t0 == 2);
    REQUIRE_FALSE(br.ub_coupling.has_value());      // sizes 3 and 2 differ
    REQUIRE(br.ub_minorization >= prof.t_mix_quarter);
    // without the matrix the Phi fields stay absent
    std::vector<std::string> issues2;
    auto br2 = build_bound_report(g, s, pi, spec, prof.t_mix_quarter, nullptr, 16, issues2);
    REQUIRE_FALSE(br2.phi_of_set.has_value());
    REQUIRE_FALSE(br2.phi_star_exact.has_value());
    auto ab = build_abelian_cyclic(4);
    auto abs_ = analyze_structure(ab);
    auto abpi = stationary(ab, abs_);
    std::vector<std::string> issues3;
    REQUIRE_THROWS_AS(build_bound_report(ab, abs_, abpi, spec, 1, nullptr, 16, issues3),
                      std::invalid_argument);
}

TEST_CASE("cutoff check", "[bounds]") {
    for (long p : {3L, 5L, 7L}) {
        auto g = build_heisenberg(p);
        auto s = analyze_structure(g);
        auto pi = stationary(g, s);
        auto poly = signature_charpoly(*s.signature, g.order());
        auto spec = numeric_spectrum(dense_double_matrix(s), g.order(), pi.to_double(), &poly);
        auto prof = mixing_profile_group(g, s, pi, {});
        auto lb = lower_bound_cheeger(s, pi);
        auto cc = cutoff_check(prof.t_mix_quarter, spec, lb);
        REQUIRE(cc.applicable);
        REQUIRE(cc.hypothesis_ok);
        REQUIRE(cc.ratio_within_bound);
        REQUIRE(cc.disproved);
        // 1 - lambda_star = 1/p exactly
        REQUIRE(cc.one_minus_lambda_star_exact == make_rat(1, p));
    }
    // PSL(2,4): pi(C* \ Z) = 1/(4^k - 1) = 1/15
    auto psl = build_psl2_char2(2);
    auto psls = analyze_structure(psl);
    auto plb = lower_bound_cheeger(psls, stationary(psl, psls));
    REQUIRE(plb.cstar_mass == make_rat(1, 15));
    REQUIRE(plb.cstar_hypothesis_ok);
    // abelian: not applicable
    SpectralSummary triv;
    triv.lambda_star = 0;
    triv.t_rel = 1;
    CheegerLowerBound none;
    REQUIRE_FALSE(cutoff_check(1, triv, none).applicable);
}
