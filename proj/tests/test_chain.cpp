#include <catch2/catch.hpp>

#include "cchain/chain.hpp"
#include "test_util.hpp"

using namespace cchain;

TEST_CASE("transition matrix shapes and rows", "[chain]") {
    // abelian Z/4: every row uniform
    auto z4 = build_abelian_cyclic(4);
    auto z4s = analyze_structure(z4);
    auto P4 = transition_matrix(z4, z4s);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) REQUIRE(P4.at(x, y) == make_rat(1, 4));

    // H_3(3): a non-central row has exactly 9 entries of 1/9
    auto h = build_heisenberg(3);
    auto hs = analyze_structure(h);
    auto Ph = transition_matrix(h, hs);
    REQUIRE(Ph.is_row_stochastic());
    int noncentral = -1;
    for (int x = 0; x < 27; ++x)
        if (hs.centralizer_size(x) != 27) { noncentral = x; break; }
    int nonzero = 0;
    for (int y = 0; y < 27; ++y)
        if (Ph.at(noncentral, y) != 0) {
            REQUIRE(Ph.at(noncentral, y) == make_rat(1, 9));
            ++nonzero;
        }
    REQUIRE(nonzero == 9);

    // D_6: row of s is 1/2 on {1, s}
    auto d = build_dihedral(3);
    auto ds = analyze_structure(d);
    auto Pd = transition_matrix(d, ds);
    for (int y = 0; y < 6; ++y) {
        if (y == 0 || y == 3) REQUIRE(Pd.at(3, y) == make_rat(1, 2));
        else REQUIRE(Pd.at(3, y) == 0);
    }
    for (int x = 0; x < 6; ++x) REQUIRE(Pd.at(x, x) > 0);
}

TEST_CASE("stationary distribution", "[chain]") {
    auto z5 = build_abelian_cyclic(5);
    auto z5s = analyze_structure(z5);
    auto pi5 = stationary(z5, z5s);
    for (const Rat& w : pi5.w) REQUIRE(w == make_rat(1, 5));

    auto h = build_heisenberg(3);
    auto hs = analyze_structure(h);
    auto pih = stationary(h, hs);
    for (int x = 0; x < 27; ++x)
        if (hs.centralizer_size(x) != 27) REQUIRE(pih.w[x] == make_rat(1, 33));
    // each class carries total mass 1/k
    for (const auto& cls : hs.classes) {
        Rat mass(0);
        for (int32_t x : cls) mass += pih.w[x];
        REQUIRE(mass == make_rat(1, 11));
    }
}

TEST_CASE("detailed balance with negative control", "[chain]") {
    for (auto make : {+[] { return build_dihedral(5); }, +[] { return build_heisenberg(3); },
                      +[] { return build_abelian_cyclic(6); }, +[] { return build_affine(5); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto pi = stationary(g, s);
        REQUIRE(check_detailed_balance(P, pi));
        // perturb one off-diagonal entry
        RatMatrix bad = P;
        int x = 0, y = 1;
        bad.at(x, y) += make_rat(1, 1000);
        REQUIRE_FALSE(check_detailed_balance(bad, pi));
    }
}

TEST_CASE("tv distance basics", "[chain]") {
    std::vector<Rat> mu{make_rat(1, 2), make_rat(1, 2)};
    REQUIRE(tv_distance(mu, mu) == 0);
    std::vector<Rat> delta{Rat(1), Rat(0), Rat(0), Rat(0)};
    std::vector<Rat> unif(4, make_rat(1, 4));
    REQUIRE(tv_distance(delta, unif) == make_rat(3, 4));
    REQUIRE_THROWS_AS(tv_distance(delta, mu), std::invalid_argument);
    // Z/2 mixes in one step
    auto z2 = build_abelian_cyclic(2);
    auto z2s = analyze_structure(z2);
    auto P = transition_matrix(z2, z2s);
    auto pi = stationary(z2, z2s);
    std::vector<Rat> muk{Rat(1), Rat(0)};
    REQUIRE(tv_distance(P.apply_left(muk), pi.w) == 0);
}

TEST_CASE("mixing profile against the full-power oracle", "[chain]") {
    // oracle: d(t) from every start state via exact matrix powers
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(5); },
                      +[] { return build_affine(5); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto pi = stationary(g, s);
        auto oracle = testutil::naive_d_profile(P, pi, 5);
        auto prof = mixing_profile_group(g, s, pi, {make_rat(1, 1000000)}, 5);
        REQUIRE(prof.mode == ArithmeticMode::Exact);
        for (std::size_t t = 0; t < prof.d_exact.size() && t < oracle.size(); ++t)
            REQUIRE(prof.d_exact[t] == oracle[t]);
    }
}

TEST_CASE("mixing times: frozen values", "[chain]") {
    // abelian Z/5 mixes in one step
    auto z5 = build_abelian_cyclic(5);
    auto z5s = analyze_structure(z5);
    auto prof5 = mixing_profile_group(z5, z5s, stationary(z5, z5s), {});
    REQUIRE(prof5.t_mix_quarter == 1);
    REQUIRE(prof5.d_exact[1] == 0);

    // H_3(3): t_mix(1/4) = 3 (computed value, inside the sandwich [p/4, ceil(p log 4)])
    auto h = build_heisenberg(3);
    auto hs = analyze_structure(h);
    auto profh = mixing_profile_group(h, hs, stationary(h, hs), {});
    REQUIRE(profh.t_mix_quarter == 3);
    REQUIRE(profh.d_exact[1] == make_rat(6, 11));
    REQUIRE(Rat(4 * profh.t_mix_quarter) >= Rat(3));        // p/4 <= t_mix
    REQUIRE(profh.t_mix_quarter <= 5);                      // ceil(3 log 4)
    // monotone non-increasing comes for free from the profile assertion;
    // spot-check anyway
    for (std::size_t t = 1; t < profh.d_exact.size(); ++t)
        REQUIRE(profh.d_exact[t] <= profh.d_exact[t - 1]);
}

TEST_CASE("float mode agrees with exact mode", "[chain]") {
    auto g = build_gl2(3);
    auto s = analyze_structure(g);
    auto pi = stationary(g, s);
    auto exact = mixing_profile_group(g, s, pi, {});
    auto fl = mixing_profile_group(g, s, pi, {}, 0, 256, 1e-10, ArithmeticMode::Floating);
    REQUIRE(exact.mode == ArithmeticMode::Exact);
    REQUIRE(fl.mode == ArithmeticMode::Floating);
    REQUIRE(fl.t_mix_quarter == exact.t_mix_quarter);
    for (std::size_t t = 0; t < std::min(exact.d.size(), fl.d.size()); ++t)
        REQUIRE(fl.d[t] == Approx(exact.d[t]).margin(1e-12));
}

TEST_CASE("conjugation symmetry licenses class representatives", "[chain]") {
    // P^t rows of conjugate elements are equidistant from pi
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(5); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto pi = stationary(g, s);
        // P(x,y) = P(gxg^-1, gyg^-1) exactly
        for (int x = 0; x < g.order(); x += 3)
            for (int y = 0; y < g.order(); y += 2)
                for (int c = 0; c < g.order(); c += 5)
                    REQUIRE(P.at(x, y) == P.at(g.conjugate(c, x), g.conjugate(c, y)));
        RatMatrix power = RatMatrix::identity(g.order());
        for (long t = 1; t <= 5; ++t) {
            power = power * P;
            for (const auto& cls : s.classes) {
                std::vector<Rat> ref;
                for (int y = 0; y < g.order(); ++y) ref.push_back(power.at(cls.front(), y));
                Rat ref_tv = tv_distance(ref, pi.w);
                for (int32_t x : cls) {
                    std::vector<Rat> row;
                    for (int y = 0; y < g.order(); ++y) row.push_back(power.at(x, y));
                    REQUIRE(tv_distance(row, pi.w) == ref_tv);
                }
            }
        }
    }
}

TEST_CASE("lumped chain of D_6 matches the known 3x3 matrix", "[chain]") {
    auto g = build_dihedral(3);
    auto s = analyze_structure(g);
    auto L = lumped_chain(g, s);
    RatMatrix expect(3, 3);
    expect.at(0, 0) = make_rat(1, 6);
    expect.at(0, 1) = make_rat(1, 3);
    expect.at(0, 2) = make_rat(1, 2);
    expect.at(1, 0) = make_rat(1, 3);
    expect.at(1, 1) = make_rat(2, 3);
    expect.at(1, 2) = 0;
    expect.at(2, 0) = make_rat(1, 2);
    expect.at(2, 1) = 0;
    expect.at(2, 2) = make_rat(1, 2);
    REQUIRE(L == expect);
}

TEST_CASE("lumped chain of an abelian group equals the full chain", "[chain]") {
    auto g = build_abelian_cyclic(5);
    auto s = analyze_structure(g);
    REQUIRE(lumped_chain(g, s) == transition_matrix(g, s));
}

TEST_CASE("lumped stationary is uniform on classes", "[chain]") {
    auto g = build_heisenberg(3);
    auto s = analyze_structure(g);
    auto L = lumped_chain(g, s);
    REQUIRE(L.rows() == 11);
    auto lpi = lumped_stationary(s);
    auto pushed = L.apply_left(lpi.w);
    REQUIRE(pushed == lpi.w);
}

TEST_CASE("class-start equality (lumped vs full), exact", "[chain]") {
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(5); },
                      +[] { return build_gl2(3); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto L = lumped_chain(g, s);
        long t_max = g.order() <= 30 ? 10 : 5;
        REQUIRE(check_class_start_equality(g, s, P, L, t_max));
    }
}

TEST_CASE("synthetic CA chain matches group chains up to relabeling", "[chain]") {
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(5); },
                      +[] { return build_dihedral(6); }, +[] { return build_affine(5); },
                      +[] { return build_gl2(3); }, +[] { return build_psl2_char2(2); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        auto P = transition_matrix(g, s);
        auto bp = canonical_block_permutation(s);
        auto syn = synthetic_ca_chain(s.z, bp.sizes);
        REQUIRE(syn.rows() == g.order());
        for (int i = 0; i < g.order(); ++i)
            for (int j = 0; j < g.order(); ++j)
                REQUIRE(syn.at(i, j) == P.at(bp.perm[i], bp.perm[j]));
    }
    // D_10 signature spelled out: z=1, one centralizer of size 5, five of size 2
    auto d = build_dihedral(5);
    auto ds = analyze_structure(d);
    auto bp = canonical_block_permutation(ds);
    REQUIRE(bp.sizes == std::vector<long>{5, 2, 2, 2, 2, 2});
}

TEST_CASE("synthetic CA chain rejects bad signatures", "[chain]") {
    REQUIRE_THROWS_AS(synthetic_ca_chain(0, {4}), std::invalid_argument);
    REQUIRE_THROWS_AS(synthetic_ca_chain(2, {3}), std::invalid_argument);   // c < 2z
    REQUIRE_THROWS_AS(synthetic_ca_chain(1, {7}), std::invalid_argument);   // c = n, abelian
    REQUIRE_THROWS_AS(synthetic_ca_chain(1, {}), std::invalid_argument);
    // a legitimate signature passes
    REQUIRE_NOTHROW(synthetic_ca_chain(1, {5, 2, 2, 2, 2, 2}));
}

TEST_CASE("two-step minorization bound holds exactly", "[chain]") {
    for (auto make : {+[] { return build_heisenberg(3); }, +[] { return build_dihedral(6); },
                      +[] { return build_affine(5); }, +[] { return build_gl2(3); }}) {
        auto g = make();
        auto s = analyze_structure(g);
        REQUIRE(check_two_step_bound(g, s));
    }
    auto ab = build_abelian_cyclic(4);
    auto abs_ = analyze_structure(ab);
    REQUIRE_THROWS_AS(check_two_step_bound(ab, abs_), std::invalid_argument);
}
