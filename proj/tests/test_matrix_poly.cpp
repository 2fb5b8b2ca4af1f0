#include <catch2/catch.hpp>

#include "cchain/matrix.hpp"
#include "cchain/polynomial.hpp"
#include "test_util.hpp"

#include <random>

using namespace cchain;

TEST_CASE("rational helpers", "[rational]") {
    REQUIRE(make_rat(2, 4) == make_rat(1, 2));
    REQUIRE(make_rat(1, -2) == make_rat(-1, 2));
    REQUIRE(rat_to_string(make_rat(3, 4)) == "3/4");
    REQUIRE(rat_to_string(make_rat(5, 1)) == "5");
    REQUIRE(rat_from_string("6/8") == make_rat(3, 4));
    REQUIRE(rat_from_string("-7") == make_rat(-7));
    REQUIRE_THROWS_AS(make_rat(1, 0), std::domain_error);

    auto r = rational_reconstruct(2.0 / 3.0, Int(100));
    REQUIRE(r.has_value());
    REQUIRE(*r == make_rat(2, 3));
    auto r2 = rational_reconstruct(-0.8, Int(100));
    REQUIRE(*r2 == make_rat(-4, 5));
    REQUIRE_FALSE(rational_reconstruct(0.123456789012, Int(3)).has_value());

    REQUIRE(guarded_ceil(2.3).value == 3);
    REQUIRE_FALSE(guarded_ceil(2.3).guarded);
    REQUIRE(guarded_ceil(3.0 + 5e-13).value == 3);
    REQUIRE(guarded_ceil(3.0 + 5e-13).guarded);
}

TEST_CASE("Bareiss determinant vs Laplace oracle", "[matrix]") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            RatMatrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) = make_rat(num(rng), den(rng));
            REQUIRE(det_exact(m) == testutil::laplace_det(m));
        }
    // singular case with a needed pivot swap
    RatMatrix z(3, 3);
    z.at(0, 1) = 1;
    z.at(1, 0) = 1;
    z.at(2, 2) = 0;
    REQUIRE(det_exact(z) == 0);
}

TEST_CASE("charpoly evaluation at a point", "[matrix]") {
    RatMatrix m(2, 2);
    m.at(0, 0) = make_rat(1, 2);
    m.at(0, 1) = make_rat(1, 2);
    m.at(1, 0) = make_rat(1, 3);
    m.at(1, 1) = make_rat(2, 3);
    // det(xI - M) = x^2 - (7/6)x + (1/3 - 1/6) = x^2 - 7/6 x + 1/6
    for (long x0 : {0L, 1L, 2L, -3L}) {
        Rat x(x0);
        Rat expect = x * x - make_rat(7, 6) * x + make_rat(1, 6);
        REQUIRE(charpoly_eval_at(m, x) == expect);
    }
}

TEST_CASE("matrix JSON and CSV round trip", "[matrix]") {
    RatMatrix m(2, 3);
    m.at(0, 0) = make_rat(1, 3);
    m.at(1, 2) = make_rat(-5, 7);
    auto j = matrix_to_json(m);
    REQUIRE(matrix_from_json(j) == m);
    REQUIRE(j["entries"][0][0].get<std::string>() == "1/3");
    auto csv = matrix_to_csv(m);
    REQUIRE(csv == "1/3,0,0\n0,0,-5/7\n");
}

TEST_CASE("polynomial arithmetic", "[poly]") {
    RatPoly a({Rat(1), Rat(2)});           // 1 + 2x
    RatPoly b({Rat(0), Rat(0), Rat(3)});   // 3x^2
    REQUIRE((a * b).degree() == 3);
    REQUIRE((a + b).eval(Rat(2)) == Rat(1 + 4 + 12));
    REQUIRE((a * b).eval(Rat(2)) == Rat(5 * 12));
    REQUIRE(a.to_string() == "2*x + 1");
    REQUIRE((a - a).is_zero());

    RatPoly p({Rat(-6), Rat(11), Rat(-6), Rat(1)});  // (x-1)(x-2)(x-3)
    REQUIRE(p.eval(Rat(2)) == 0);
    auto q = p.deflate(Rat(2));
    REQUIRE(q.eval(Rat(1)) == 0);
    REQUIRE(q.eval(Rat(3)) == 0);
    REQUIRE_THROWS_AS(p.deflate(Rat(5)), std::domain_error);

    RatPoly withzeros({Rat(0), Rat(0), Rat(4), Rat(2)});
    REQUIRE(withzeros.zero_root_multiplicity() == 2);
    REQUIRE(withzeros.without_zero_roots().coeffs() == std::vector<Rat>{Rat(4), Rat(2)});
    REQUIRE(withzeros.shifted(1).zero_root_multiplicity() == 3);
    REQUIRE(withzeros.monic().leading() == 1);
}

TEST_CASE("exact interpolation recovers polynomials", "[poly]") {
    RatPoly p({make_rat(1, 3), Rat(-2), Rat(0), Rat(5)});
    std::vector<Rat> xs, ys;
    for (long i = 0; i <= p.degree(); ++i) {
        xs.push_back(Rat(i - 1));
        ys.push_back(p.eval(xs.back()));
    }
    REQUIRE(interpolate_poly(xs, ys) == p);
    REQUIRE_THROWS_AS(interpolate_poly({Rat(1), Rat(1)}, {Rat(0), Rat(0)}),
                      std::invalid_argument);
}
