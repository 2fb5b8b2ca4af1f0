#pragma once

// GF(p^k) arithmetic in the polynomial-basis representation. The modulus is
// the lexicographically smallest monic irreducible of degree k over GF(p),
// comparing coefficients low degree first, so every build of the same field
// is identical. Elements are canonical coefficient vectors; an integer index
// (base-p digits) doubles as a compact handle for table-driven callers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cchain {

using FieldElement = std::vector<int>;  // length k, entries in [0, p)

namespace detail {

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// polynomial arithmetic over GF(p), dense low-to-high, trailing zeros trimmed
inline std::vector<int> poly_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> poly_mul_modp(const std::vector<int>& a, const std::vector<int>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<int>((out[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    return poly_trim(std::move(out));
}

// remainder of a mod b, b nonzero
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, long p) {
    a = poly_trim(std::move(a));
    auto inv_mod_p = [p](long v) {
        long r = 1, base = ((v % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    long lead_inv = inv_mod_p(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        long factor = static_cast<long>(a.back()) * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            long v = (a[i + shift] - factor * b[i]) % p;
            a[i + shift] = static_cast<int>((v + p) % p);
        }
        a = poly_trim(std::move(a));
    }
    return a;
}

}  // namespace detail

struct FieldSpec {
    long p = 0;
    int k = 0;
    long q = 0;                 // p^k
    std::vector<int> modulus;   // monic, degree k, low-to-high, length k+1

    // cached tables (always built; fields are capped small)
    std::vector<int32_t> mul_table;  // q*q
    std::vector<int32_t> inv_table;  // q, entry 0 unused
};

inline long field_index(const FieldSpec& f, const FieldElement& a) {
    long idx = 0;
    for (int i = f.k - 1; i >= 0; --i) idx = idx * f.p + a[i];
    return idx;
}

inline FieldElement field_element(const FieldSpec& f, long idx) {
    FieldElement a(f.k, 0);
    for (int i = 0; i < f.k; ++i) {
        a[i] = static_cast<int>(idx % f.p);
        idx /= f.p;
    }
    return a;
}

inline FieldElement field_zero(const FieldSpec& f) { return FieldElement(f.k, 0); }
inline FieldElement field_one(const FieldSpec& f) {
    FieldElement a(f.k, 0);
    a[0] = 1;
    return a;
}

inline FieldElement field_add(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
    FieldElement out(f.k);
    for (int i = 0; i < f.k; ++i) out[i] = static_cast<int>((a[i] + b[i]) % f.p);
    return out;
}

inline FieldElement field_neg(const FieldSpec& f, const FieldElement& a) {
    FieldElement out(f.k);
    for (int i = 0; i < f.k; ++i) out[i] = static_cast<int>((f.p - a[i]) % f.p);
    return out;
}

inline FieldElement field_sub(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
    return field_add(f, a, field_neg(f, b));
}

inline FieldElement field_mul(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
    if (!f.mul_table.empty())
        return field_element(f, f.mul_table[field_index(f, a) * f.q + field_index(f, b)]);
    auto prod = detail::poly_mod(detail::poly_mul_modp(a, b, f.p), f.modulus, f.p);
    prod.resize(f.k, 0);
    return prod;
}

inline bool field_is_zero(const FieldElement& a) {
    return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

inline FieldElement field_inv(const FieldSpec& f, const FieldElement& a) {
    if (field_is_zero(a)) throw std::domain_error("field_inv: division by zero");
    if (!f.inv_table.empty()) return field_element(f, f.inv_table[field_index(f, a)]);
    // a^(q-2) by square and multiply
    FieldElement acc = field_one(f), base = a;
    long e = f.q - 2;
    while (e) {
        if (e & 1) acc = field_mul(f, acc, base);
        base = field_mul(f, base, base);
        e >>= 1;
    }
    return acc;
}

inline std::vector<FieldElement> field_enumerate(const FieldSpec& f) {
    std::vector<FieldElement> out;
    out.reserve(f.q);
    for (long i = 0; i < f.q; ++i) out.push_back(field_element(f, i));
    return out;
}

inline std::string field_label(const FieldSpec& f, const FieldElement& a) {
    if (f.k == 1) return std::to_string(a[0]);
    std::string s;
    for (int i = f.k - 1; i >= 0; --i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(a[i]);
        } else {
            if (a[i] != 1) s += std::to_string(a[i]);
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

/// Irreducibility over GF(p) by trial division against every monic polynomial
/// of degree 1..deg/2. Exhaustive and only used at construction time.
inline bool poly_is_irreducible(const std::vector<int>& poly, long p) {
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg < 1) return false;
    for (int d = 1; d <= deg / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long lo = 0; lo < count; ++lo) {
            std::vector<int> divisor(d + 1, 0);
            long rest = lo;
            for (int i = 0; i < d; ++i) {
                divisor[i] = static_cast<int>(rest % p);
                rest /= p;
            }
            divisor[d] = 1;
            if (detail::poly_mod(poly, divisor, p).empty()) return false;
        }
    }
    return true;
}

/// Build GF(p^k). Default order cap matches the library-wide desk scale.
inline FieldSpec field_make(long p, int k, long order_cap = 1024) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field_make: p must be prime");
    if (k < 1) throw std::invalid_argument("field_make: k must be >= 1");
    long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > order_cap) throw std::invalid_argument("field_make: p^k exceeds order cap");
    }

    FieldSpec f;
    f.p = p;
    f.k = k;
    f.q = q;

    if (k == 1) {
        f.modulus = {0, 1};  // plain mod-p arithmetic
    } else {
        // lexicographically smallest monic irreducible, low-degree coefficients
        // compared first (c0 is the most significant key)
        long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long lo = 0; lo < count; ++lo) {
            std::vector<int> cand(k + 1, 0);
            long rest = lo;
            for (int i = k - 1; i >= 0; --i) {
                cand[i] = static_cast<int>(rest % p);
                rest /= p;
            }
            cand[k] = 1;
            if (poly_is_irreducible(cand, p)) {
                f.modulus = cand;
                break;
            }
        }
        if (f.modulus.empty()) throw std::runtime_error("field_make: no irreducible found");
    }

    f.mul_table.assign(static_cast<std::size_t>(q) * q, 0);
    FieldSpec plain = f;              // table-free copy drives the fill
    plain.mul_table.clear();
    plain.inv_table.clear();
    for (long i = 0; i < q; ++i)
        for (long j = 0; j < q; ++j)
            f.mul_table[i * q + j] = static_cast<int32_t>(
                field_index(plain, field_mul(plain, field_element(plain, i), field_element(plain, j))));
    f.inv_table.assign(q, 0);
    for (long i = 1; i < q; ++i)
        f.inv_table[i] = static_cast<int32_t>(field_index(plain, field_inv(plain, field_element(plain, i))));
    return f;
}

}  // namespace cchain
