#pragma once

// Finite groups as dense indexed Cayley tables. Index 0 is always the
// identity; each family constructor fixes a deterministic enumeration so
// matrices, spectra and reports reproduce bit-for-bit across runs.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cchain/finite_field.hpp"

namespace cchain {

struct FamilyTag {
    std::string family;               // "dihedral", "heisenberg", ...
    std::map<std::string, long> params;
};

class GroupTable {
public:
    GroupTable() = default;

    /// Wrap a multiplication table; validates the group axioms.
    /// Associativity is exhaustive for n <= 200 and sampled (1e5 triples,
    /// fixed seed) above that.
    static GroupTable from_mul(std::vector<int32_t> mul, std::vector<std::string> labels,
                               FamilyTag tag) {
        GroupTable g;
        const std::size_t nn = mul.size();
        int n = static_cast<int>(labels.size());
        if (n < 1 || nn != static_cast<std::size_t>(n) * n)
            throw std::invalid_argument("GroupTable: table shape mismatch");
        g.n_ = n;
        g.mul_ = std::move(mul);
        g.labels_ = std::move(labels);
        g.tag_ = std::move(tag);

        for (std::size_t i = 0; i < nn; ++i)
            if (g.mul_[i] < 0 || g.mul_[i] >= n)
                throw std::invalid_argument("GroupTable: entry out of range");

        // identity must sit at index 0
        for (int x = 0; x < n; ++x)
            if (g.mul(0, x) != x || g.mul(x, 0) != x)
                throw std::invalid_argument("GroupTable: index 0 is not the identity");

        g.inv_.assign(n, -1);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (g.mul(x, y) == 0) {
                    if (g.mul(y, x) != 0)
                        throw std::invalid_argument("GroupTable: one-sided inverse");
                    g.inv_[x] = y;
                    break;
                }
        for (int x = 0; x < n; ++x)
            if (g.inv_[x] < 0) throw std::invalid_argument("GroupTable: missing inverse");

        auto check = [&](int a, int b, int c) {
            if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                throw std::invalid_argument("GroupTable: associativity fails");
        };
        if (n <= 200) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) check(a, b, c);
        } else {
            std::mt19937 rng(0x5eedu);
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int t = 0; t < 100000; ++t) check(pick(rng), pick(rng), pick(rng));
        }
        return g;
    }

    int order() const { return n_; }
    int mul(int x, int y) const { return mul_[static_cast<std::size_t>(x) * n_ + y]; }
    int inv(int x) const { return inv_[x]; }
    int conjugate(int g, int x) const { return mul(mul(g, x), inv_[g]); }
    bool commutes(int x, int y) const { return mul(x, y) == mul(y, x); }
    const std::string& label(int x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const FamilyTag& tag() const { return tag_; }

private:
    int n_ = 0;
    std::vector<int32_t> mul_;
    std::vector<int32_t> inv_;
    std::vector<std::string> labels_;
    FamilyTag tag_;
};

namespace detail {

inline bool is_odd_prime(long p) { return p % 2 == 1 && is_prime(p); }

}  // namespace detail

/// Cyclic group Z/nZ. Degenerate-case fixture; n >= 1.
inline GroupTable build_abelian_cyclic(long n) {
    if (n < 1) throw std::invalid_argument("build_abelian_cyclic: n must be >= 1");
    std::vector<int32_t> mul(static_cast<std::size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (long a = 0; a < n; ++a) {
        labels[a] = "g^" + std::to_string(a);
        for (long b = 0; b < n; ++b) mul[a * n + b] = static_cast<int32_t>((a + b) % n);
    }
    labels[0] = "1";
    return GroupTable::from_mul(std::move(mul), std::move(labels),
                                {"cyclic", {{"n", n}}});
}

/// Dihedral group of order 2n with r^n = s^2 = (sr)^2 = 1.
/// Elements: 1, r, ..., r^(n-1), s, sr, ..., sr^(n-1).
inline GroupTable build_dihedral(long n) {
    if (n < 3) throw std::invalid_argument("build_dihedral: n must be >= 3");
    const long order = 2 * n;
    std::vector<int32_t> mul(static_cast<std::size_t>(order) * order);
    std::vector<std::string> labels(order);
    auto idx = [n](long flip, long rot) { return flip * n + rot; };
    for (long i = 0; i < n; ++i) {
        labels[idx(0, i)] = i == 0 ? "1" : (i == 1 ? "r" : "r^" + std::to_string(i));
        labels[idx(1, i)] = i == 0 ? "s" : (i == 1 ? "sr" : "sr^" + std::to_string(i));
    }
    // r^i s = s r^(-i), hence (s^a r^i)(s^b r^j) = s^(a+b) r^(j + (-1)^b i)
    for (long a = 0; a < 2; ++a)
        for (long i = 0; i < n; ++i)
            for (long b = 0; b < 2; ++b)
                for (long j = 0; j < n; ++j) {
                    long rot = b == 0 ? (i + j) % n : ((j - i) % n + n) % n;
                    mul[idx(a, i) * order + idx(b, j)] = static_cast<int32_t>(idx((a + b) % 2, rot));
                }
    return GroupTable::from_mul(std::move(mul), std::move(labels),
                                {"dihedral", {{"n", n}}});
}

/// Heisenberg group H_3(p), order p^3, elements (a,b,c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
inline GroupTable build_heisenberg(long p) {
    if (!detail::is_odd_prime(p)) throw std::invalid_argument("build_heisenberg: p must be an odd prime");
    const long order = p * p * p;
    std::vector<int32_t> mul(static_cast<std::size_t>(order) * order);
    std::vector<std::string> labels(order);
    auto idx = [p](long a, long b, long c) { return (a * p + b) * p + c; };
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                labels[idx(a, b, c)] = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                       std::to_string(c) + ")";
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c) {
                long row = idx(a, b, c);
                for (long a2 = 0; a2 < p; ++a2)
                    for (long b2 = 0; b2 < p; ++b2)
                        for (long c2 = 0; c2 < p; ++c2)
                            mul[row * order + idx(a2, b2, c2)] = static_cast<int32_t>(
                                idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p));
            }
    return GroupTable::from_mul(std::move(mul), std::move(labels),
                                {"heisenberg", {{"p", p}}});
}

/// Affine group A(p) of order p(p-1): pairs (a,b), a != 0, with
/// (a,b)(a',b') = (aa', ab'+b). Identity (1,0) first.
inline GroupTable build_affine(long p) {
    if (p < 3 || !detail::is_prime(p)) throw std::invalid_argument("build_affine: p must be a prime >= 3");
    const long order = p * (p - 1);
    std::vector<int32_t> mul(static_cast<std::size_t>(order) * order);
    std::vector<std::string> labels(order);
    auto idx = [p](long a, long b) { return (a - 1) * p + b; };
    for (long a = 1; a < p; ++a)
        for (long b = 0; b < p; ++b)
            labels[idx(a, b)] = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    for (long a = 1; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long a2 = 1; a2 < p; ++a2)
                for (long b2 = 0; b2 < p; ++b2)
                    mul[idx(a, b) * order + idx(a2, b2)] =
                        static_cast<int32_t>(idx(a * a2 % p, (a * b2 + b) % p));
    return GroupTable::from_mul(std::move(mul), std::move(labels),
                                {"affine", {{"p", p}}});
}

namespace detail {

// shared enumeration for the 2x2 matrix groups: identity first, then the
// remaining admissible matrices in lexicographic (a,b,c,d) order
inline GroupTable build_matrix_group_2x2(const FieldSpec& f, bool det_one_only,
                                         long order_cap, FamilyTag tag) {
    const long q = f.q;
    auto det_idx = [&](long a, long b, long c, long d) {
        FieldElement ad = field_mul(f, field_element(f, a), field_element(f, d));
        FieldElement bc = field_mul(f, field_element(f, b), field_element(f, c));
        return field_index(f, field_sub(f, ad, bc));
    };
    const long one = field_index(f, field_one(f));

    std::vector<std::array<long, 4>> elems;
    elems.push_back({one, 0, 0, one});
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
            for (long c = 0; c < q; ++c)
                for (long d = 0; d < q; ++d) {
                    if (a == one && b == 0 && c == 0 && d == one) continue;
                    long det = det_idx(a, b, c, d);
                    if (det_one_only ? det == one : det != 0)
                        elems.push_back({a, b, c, d});
                }
    const long order = static_cast<long>(elems.size());
    if (order > order_cap)
        throw std::invalid_argument("matrix group order exceeds cap (" + std::to_string(order) +
                                    " > " + std::to_string(order_cap) + ")");

    std::vector<int32_t> key_to_index(q * q * q * q, -1);
    auto key = [q](const std::array<long, 4>& m) { return ((m[0] * q + m[1]) * q + m[2]) * q + m[3]; };
    for (long i = 0; i < order; ++i) key_to_index[key(elems[i])] = static_cast<int32_t>(i);

    std::vector<int32_t> mul(static_cast<std::size_t>(order) * order);
    for (long i = 0; i < order; ++i) {
        const auto& m = elems[i];
        FieldElement a = field_element(f, m[0]), b = field_element(f, m[1]),
                     c = field_element(f, m[2]), d = field_element(f, m[3]);
        for (long j = 0; j < order; ++j) {
            const auto& w = elems[j];
            FieldElement e = field_element(f, w[0]), g = field_element(f, w[1]),
                         h = field_element(f, w[2]), k2 = field_element(f, w[3]);
            std::array<long, 4> prod = {
                field_index(f, field_add(f, field_mul(f, a, e), field_mul(f, b, h))),
                field_index(f, field_add(f, field_mul(f, a, g), field_mul(f, b, k2))),
                field_index(f, field_add(f, field_mul(f, c, e), field_mul(f, d, h))),
                field_index(f, field_add(f, field_mul(f, c, g), field_mul(f, d, k2)))};
            mul[i * order + j] = key_to_index[key(prod)];
        }
    }

    std::vector<std::string> labels(order);
    for (long i = 0; i < order; ++i) {
        const auto& m = elems[i];
        labels[i] = "[[" + field_label(f, field_element(f, m[0])) + "," +
                    field_label(f, field_element(f, m[1])) + "],[" +
                    field_label(f, field_element(f, m[2])) + "," +
                    field_label(f, field_element(f, m[3])) + "]]";
    }
    return GroupTable::from_mul(std::move(mul), std::move(labels), std::move(tag));
}

}  // namespace detail

/// GL(2,q) for q an odd prime power; order (q^2-1)(q^2-q).
inline GroupTable build_gl2(long q, long order_cap = 6000) {
    long rest = q, base = 0;
    int k = 0;
    for (long d = 2; d <= rest; ++d) {
        if (rest % d == 0) {
            base = d;
            while (rest % d == 0) { rest /= d; ++k; }
            break;
        }
    }
    if (rest != 1 || base == 0) throw std::invalid_argument("build_gl2: q must be a prime power");
    if (base == 2) throw std::invalid_argument("build_gl2: q must be odd");
    FieldSpec f = field_make(base, k);
    return detail::build_matrix_group_2x2(f, /*det_one_only=*/false, order_cap,
                                          {"gl2", {{"q", q}}});
}

/// PSL(2,2^k) for k >= 2. In characteristic 2 the scalar subgroup of
/// SL(2,2^k) is trivial (x^2 = 1 forces x = 1), so PSL(2,2^k) = SL(2,2^k)
/// and the table is built directly as SL(2, GF(2^k)).
inline GroupTable build_psl2_char2(int k, long order_cap = 6000) {
    if (k < 2) throw std::invalid_argument("build_psl2_char2: k must be >= 2");
    FieldSpec f = field_make(2, k);
    return detail::build_matrix_group_2x2(f, /*det_one_only=*/true, order_cap,
                                          {"psl2_2k", {{"k", k}}});
}

/// JSON Cayley-table format: {"n": int, "mul": [[int]], "labels": [string]}.
/// Labels are optional; identity must be index 0.
inline GroupTable group_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("group_from_json: n must be >= 1");
    const auto& rows = j.at("mul");
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("group_from_json: mul row count != n");
    std::vector<int32_t> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows.at(i).size()) != n)
            throw std::invalid_argument("group_from_json: mul column count != n");
        for (int c = 0; c < n; ++c) mul[static_cast<std::size_t>(i) * n + c] = rows.at(i).at(c).get<int32_t>();
    }
    std::vector<std::string> labels(n);
    if (j.contains("labels")) {
        for (int i = 0; i < n; ++i) labels[i] = j.at("labels").at(i).get<std::string>();
    } else {
        for (int i = 0; i < n; ++i) labels[i] = "g" + std::to_string(i);
    }
    return GroupTable::from_mul(std::move(mul), std::move(labels), {"cayley-file", {}});
}

inline nlohmann::json group_to_json(const GroupTable& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < g.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < g.order(); ++c) row.push_back(g.mul(i, c));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n", g.order()}, {"mul", std::move(rows)}, {"labels", g.labels()}};
}

}  // namespace cchain
