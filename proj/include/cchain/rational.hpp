#pragma once

// Exact arbitrary-precision integer/rational scalars (GMP-backed) plus the
// small numeric helpers shared across the library.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cchain {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical "num/den" string ("den" omitted when it is 1).
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int int_pow(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

/// Ceiling of a double with a 1e-12 guard: values that sit within 1e-12 of an
/// integer are snapped to it instead of being pushed up a full step, and the
/// snap is reported so callers can surface it.
struct GuardedCeil {
    long value = 0;
    bool guarded = false;
};

inline GuardedCeil guarded_ceil(double x) {
    double nearest = std::round(x);
    if (std::fabs(x - nearest) <= 1e-12)
        return {static_cast<long>(nearest), true};
    return {static_cast<long>(std::ceil(x)), false};
}

/// Smallest-denominator rational within `tol` of x (continued fractions),
/// subject to a denominator cap. Returns nullopt when no convergent fits.
inline std::optional<Rat> rational_reconstruct(double x, const Int& max_den,
                                               double tol = 1e-9) {
    if (!std::isfinite(x)) return std::nullopt;
    bool neg = x < 0;
    const double target = neg ? -x : x;

    Int h0 = 1, h1 = static_cast<long>(std::floor(target));
    Int k0 = 0, k1 = 1;
    double rem = target - std::floor(target);
    for (int iter = 0; iter < 64; ++iter) {
        if (k1 > max_den) return std::nullopt;
        if (std::fabs(Rat(h1, k1).get_d() - target) <= tol) {
            Rat out = make_rat(h1, k1);
            return neg ? Rat(-out) : out;
        }
        if (rem < 1e-15) return std::nullopt;
        double inv = 1.0 / rem;
        double a_d = std::floor(inv);
        if (a_d > 9e18) return std::nullopt;
        Int a = static_cast<long>(a_d);
        rem = inv - a_d;
        Int h2 = a * h1 + h0;
        Int k2 = a * k1 + k0;
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
    }
    return std::nullopt;
}

}  // namespace cchain
