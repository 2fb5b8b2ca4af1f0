#pragma once

// The commuting chain on a finite group: P(x,y) = 1/|C_x| when x and y
// commute, else 0. Stationary distribution, exact total-variation decay and
// mixing times, the lumped chain on conjugacy classes, and the synthetic
// block-form chain built from a CA signature alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cchain/matrix.hpp"
#include "cchain/structure.hpp"

namespace cchain {

/// Exact probability vector plus a derived double view.
struct Distribution {
    std::vector<Rat> w;

    std::vector<double> to_double() const {
        std::vector<double> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = rat_to_double(w[i]);
        return out;
    }
};

/// Dense exact transition matrix of the commuting chain.
inline RatMatrix transition_matrix(const GroupTable& g, const GroupStructure& s) {
    const int n = g.order();
    RatMatrix P(n, n);
    if (s.is_abelian) {
        Rat u = make_rat(1, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) P.at(x, y) = u;
        return P;
    }
    for (int x = 0; x < n; ++x) {
        Rat u = make_rat(1, s.centralizer_size(x));
        for (int32_t y : s.centralizer(x)) P.at(x, y) = u;
    }
    for (int x = 0; x < n; ++x)
        if (P.at(x, x) == 0) throw std::runtime_error("transition_matrix: P(x,x) must be positive");
    return P;
}

/// pi(x) = 1 / (k |x^G|), verified stationary (pi P = pi) exactly.
inline Distribution stationary(const GroupTable& g, const GroupStructure& s) {
    const int n = g.order();
    Distribution pi;
    pi.w.resize(n);
    for (int x = 0; x < n; ++x)
        pi.w[x] = make_rat(1, s.class_count * static_cast<long>(s.classes[s.class_of[x]].size()));
    Rat total(0);
    for (const Rat& v : pi.w) total += v;
    if (total != 1) throw std::runtime_error("stationary: mass is not 1");

    // (pi P)(y) = sum_{x in C_y} pi(x)/|C_x|
    for (int y = 0; y < n; ++y) {
        Rat acc(0);
        if (s.is_abelian) {
            for (int x = 0; x < n; ++x) acc += pi.w[x] / n;
        } else {
            for (int32_t x : s.centralizer(y)) acc += pi.w[x] / s.centralizer_size(x);
        }
        if (acc != pi.w[y]) throw std::runtime_error("stationary: pi P != pi");
    }
    return pi;
}

/// Exact detailed balance: pi(x)P(x,y) == pi(y)P(y,x) for all pairs.
inline bool check_detailed_balance(const RatMatrix& P, const Distribution& pi) {
    const int n = P.rows();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (pi.w[x] * P.at(x, y) != pi.w[y] * P.at(y, x)) return false;
    return true;
}

inline Rat tv_distance(const std::vector<Rat>& mu, const std::vector<Rat>& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: length mismatch");
    Rat acc(0);
    for (std::size_t i = 0; i < mu.size(); ++i) acc += rat_abs(mu[i] - nu[i]);
    return Rat(acc / 2);
}

inline double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: length mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += std::fabs(mu[i] - nu[i]);
    return acc / 2;
}

enum class ArithmeticMode { Exact, Floating };

struct MixingProfile {
    ArithmeticMode mode = ArithmeticMode::Exact;
    std::vector<Rat> d_exact;             // exact mode only; d_exact[t] = d(t)
    std::vector<double> d;                // always populated
    long t_mix_quarter = -1;              // -1 when truncated before 1/4
    std::vector<std::pair<Rat, long>> t_mix_of;  // per requested epsilon; -1 if truncated
    bool truncated = false;
    bool tolerance_flagged = false;       // some float comparison landed within 1e-10 of eps
    long t_cap_used = 0;
};

namespace detail {

// one chain step v' = vP using centralizer adjacency (scatter form)
template <typename Scalar>
void chain_step(const GroupStructure& s, const std::vector<Scalar>& v, std::vector<Scalar>& out,
                const std::vector<Scalar>& inv_csize) {
    std::fill(out.begin(), out.end(), Scalar(0));
    const int n = s.n;
    for (int x = 0; x < n; ++x) {
        if (v[x] == Scalar(0)) continue;
        Scalar share = v[x] * inv_csize[x];
        for (int32_t y : s.centralizer(x)) out[y] += share;
    }
}

inline void finalize_profile(MixingProfile& prof, const std::vector<Rat>& eps, double d_tol) {
    auto leq = [&](std::size_t t, const Rat& e) {
        if (prof.mode == ArithmeticMode::Exact) return prof.d_exact[t] <= e;
        double ed = rat_to_double(e);
        if (prof.d[t] <= ed) return true;
        if (prof.d[t] <= ed + d_tol) {
            prof.tolerance_flagged = true;
            return true;
        }
        return false;
    };
    for (const Rat& e : eps) {
        long hit = -1;
        for (std::size_t t = 0; t < prof.d.size(); ++t)
            if (leq(t, e)) {
                hit = static_cast<long>(t);
                break;
            }
        prof.t_mix_of.push_back({e, hit});
        if (hit < 0) prof.truncated = true;
    }
    // t_mix(1/4) is the headline convention whether or not 1/4 was requested
    for (std::size_t t = 0; t < prof.d.size(); ++t)
        if (leq(t, make_rat(1, 4))) {
            prof.t_mix_quarter = static_cast<long>(t);
            break;
        }
    // d(t) must be non-increasing
    for (std::size_t t = 1; t < prof.d.size(); ++t) {
        bool ok = prof.mode == ArithmeticMode::Exact ? prof.d_exact[t] <= prof.d_exact[t - 1]
                                                     : prof.d[t] <= prof.d[t - 1] + 1e-12;
        if (!ok) throw std::runtime_error("mixing_profile: d(t) not monotone");
    }
}

}  // namespace detail

/// Default horizon: the minorization bound scale 10 (c_star/z) ln 4.
inline long default_t_cap(const GroupStructure& s) {
    if (s.is_abelian || !s.signature) return 4;
    double v = 10.0 * (static_cast<double>(s.signature->c_star) / static_cast<double>(s.z)) *
               std::log(4.0);
    return static_cast<long>(std::ceil(v));
}

/// d(t) profile of the commuting chain on a group. One representative per
/// conjugacy class is evolved; conjugation symmetry (P^t(x,.) and
/// P^t(gxg^-1,.) are equidistant from pi) makes the per-class maximum equal
/// to the global maximum. Exact rationals for n <= exact_threshold, doubles
/// above, with the documented 1e-10 threshold tolerance.
inline MixingProfile mixing_profile_group(const GroupTable& g, const GroupStructure& s,
                                          const Distribution& pi, std::vector<Rat> eps,
                                          long t_cap = 0, int exact_threshold = 256,
                                          double d_tol = 1e-10,
                                          std::optional<ArithmeticMode> force_mode = {}) {
    const int n = g.order();
    if (eps.empty()) eps = {make_rat(1, 4), make_rat(1, 10)};
    Rat min_eps = *std::min_element(eps.begin(), eps.end());
    if (t_cap <= 0) t_cap = default_t_cap(s);

    MixingProfile prof;
    prof.mode = force_mode.value_or(n <= exact_threshold ? ArithmeticMode::Exact
                                                         : ArithmeticMode::Floating);
    prof.t_cap_used = t_cap;

    // d(0) = 1 - pi_min over class representatives = 1 - pi_min globally
    Rat d0(0);
    for (const auto& cls : s.classes) d0 = std::max(d0, Rat(1 - pi.w[cls.front()]));

    if (s.is_abelian) {
        // P is the uniform matrix: one step reaches stationarity exactly
        prof.d_exact = {d0, Rat(0)};
        prof.d = {rat_to_double(d0), 0.0};
        if (prof.mode == ArithmeticMode::Floating) prof.d_exact.clear();
        detail::finalize_profile(prof, eps, d_tol);
        return prof;
    }

    std::vector<int> reps;
    reps.reserve(s.classes.size());
    for (const auto& cls : s.classes) reps.push_back(cls.front());

    if (prof.mode == ArithmeticMode::Exact) {
        std::vector<Rat> inv_csize(n);
        for (int x = 0; x < n; ++x) inv_csize[x] = make_rat(1, s.centralizer_size(x));
        std::vector<std::vector<Rat>> rows(reps.size(), std::vector<Rat>(n, Rat(0)));
        for (std::size_t i = 0; i < reps.size(); ++i) rows[i][reps[i]] = 1;
        std::vector<Rat> scratch(n);

        prof.d_exact.push_back(d0);
        prof.d.push_back(rat_to_double(d0));
        for (long t = 1; t <= t_cap; ++t) {
            Rat dmax(0);
            for (auto& row : rows) {
                detail::chain_step<Rat>(s, row, scratch, inv_csize);
                row.swap(scratch);
                dmax = std::max(dmax, tv_distance(row, pi.w));
            }
            prof.d_exact.push_back(dmax);
            prof.d.push_back(rat_to_double(dmax));
            if (dmax <= min_eps) break;
        }
    } else {
        std::vector<double> inv_csize(n);
        for (int x = 0; x < n; ++x) inv_csize[x] = 1.0 / static_cast<double>(s.centralizer_size(x));
        std::vector<double> pid = pi.to_double();
        std::vector<std::vector<double>> rows(reps.size(), std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < reps.size(); ++i) rows[i][reps[i]] = 1.0;
        std::vector<double> scratch(n);

        prof.d.push_back(rat_to_double(d0));
        double min_eps_d = rat_to_double(min_eps);
        for (long t = 1; t <= t_cap; ++t) {
            double dmax = 0;
            for (auto& row : rows) {
                detail::chain_step<double>(s, row, scratch, inv_csize);
                row.swap(scratch);
                dmax = std::max(dmax, tv_distance(row, pid));
            }
            prof.d.push_back(dmax);
            if (dmax <= min_eps_d + d_tol) break;
        }
    }
    detail::finalize_profile(prof, eps, d_tol);
    return prof;
}

/// d(t) profile for an arbitrary stochastic matrix (used for lumped and
/// synthetic chains). All states act as their own representatives.
inline MixingProfile mixing_profile_matrix(const RatMatrix& P, const Distribution& pi,
                                           std::vector<Rat> eps, long t_cap,
                                           ArithmeticMode mode = ArithmeticMode::Exact,
                                           double d_tol = 1e-10, bool full_horizon = false) {
    const int n = P.rows();
    if (eps.empty()) eps = {make_rat(1, 4), make_rat(1, 10)};
    Rat min_eps = *std::min_element(eps.begin(), eps.end());
    if (t_cap <= 0) throw std::invalid_argument("mixing_profile_matrix: t_cap must be >= 1");

    MixingProfile prof;
    prof.mode = mode;
    prof.t_cap_used = t_cap;

    Rat d0(0);
    for (int x = 0; x < n; ++x) d0 = std::max(d0, Rat(1 - pi.w[x]));

    if (mode == ArithmeticMode::Exact) {
        std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i) rows[i][i] = 1;
        prof.d_exact.push_back(d0);
        prof.d.push_back(rat_to_double(d0));
        for (long t = 1; t <= t_cap; ++t) {
            Rat dmax(0);
            for (auto& row : rows) {
                row = P.apply_left(row);
                dmax = std::max(dmax, tv_distance(row, pi.w));
            }
            prof.d_exact.push_back(dmax);
            prof.d.push_back(rat_to_double(dmax));
            if (!full_horizon && dmax <= min_eps) break;
        }
    } else {
        std::vector<double> pid = pi.to_double();
        std::vector<std::vector<double>> pd(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) pd[i][c] = rat_to_double(P.at(i, c));
        std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
        std::vector<double> scratch(n);
        prof.d.push_back(rat_to_double(d0));
        double min_eps_d = rat_to_double(min_eps);
        for (long t = 1; t <= t_cap; ++t) {
            double dmax = 0;
            for (auto& row : rows) {
                std::fill(scratch.begin(), scratch.end(), 0.0);
                for (int x = 0; x < n; ++x) {
                    if (row[x] == 0.0) continue;
                    for (int y = 0; y < n; ++y) scratch[y] += row[x] * pd[x][y];
                }
                row.swap(scratch);
                dmax = std::max(dmax, tv_distance(row, pid));
            }
            prof.d.push_back(dmax);
            if (!full_horizon && dmax <= min_eps_d + d_tol) break;
        }
    }
    detail::finalize_profile(prof, eps, d_tol);
    return prof;
}

/// Lumped chain on conjugacy classes:
/// P~(O1,O2) = sum_{y in O2} sum_{x in O1} P(x,y) / |O1|.
/// Row-stochastic with uniform stationary distribution 1/k; both verified.
inline RatMatrix lumped_chain(const GroupTable& g, const GroupStructure& s) {
    const int n = g.order();
    const int k = static_cast<int>(s.class_count);
    RatMatrix L(k, k);
    for (int k1 = 0; k1 < k; ++k1) {
        const auto& cls = s.classes[k1];
        for (int32_t x : cls) {
            if (s.is_abelian) {
                // C_x = G; scatter 1/(n |O1|) over every class weighted by size
                for (int k2 = 0; k2 < k; ++k2)
                    L.at(k1, k2) += make_rat(static_cast<long>(s.classes[k2].size()),
                                             static_cast<long>(n) * static_cast<long>(cls.size()));
            } else {
                Rat share = make_rat(1, s.centralizer_size(x) * static_cast<long>(cls.size()));
                for (int32_t y : s.centralizer(x)) L.at(k1, s.class_of[y]) += share;
            }
        }
    }
    if (!L.is_row_stochastic()) throw std::runtime_error("lumped_chain: not row-stochastic");
    // uniform 1/k is stationary
    Rat u = make_rat(1, k);
    for (int c = 0; c < k; ++c) {
        Rat acc(0);
        for (int r = 0; r < k; ++r) acc += u * L.at(r, c);
        if (acc != u) throw std::runtime_error("lumped_chain: uniform not stationary");
    }
    return L;
}

inline Distribution lumped_stationary(const GroupStructure& s) {
    Distribution pi;
    pi.w.assign(s.class_count, make_rat(1, s.class_count));
    return pi;
}

/// Class-start distance identity, exact: for every class K and 1 <= t <= t_max,
/// || mu_K P^t - pi || == || P~^t(K,.) - pi~ ||.
inline bool check_class_start_equality(const GroupTable& g, const GroupStructure& s,
                                       const RatMatrix& P, const RatMatrix& lumped,
                                       long t_max) {
    const int n = g.order();
    const int k = static_cast<int>(s.class_count);
    Distribution pi = stationary(g, s);
    Distribution lpi = lumped_stationary(s);
    for (int kc = 0; kc < k; ++kc) {
        std::vector<Rat> full(n, Rat(0));
        Rat u = make_rat(1, static_cast<long>(s.classes[kc].size()));
        for (int32_t x : s.classes[kc]) full[x] = u;
        std::vector<Rat> lump(k, Rat(0));
        lump[kc] = 1;
        for (long t = 1; t <= t_max; ++t) {
            full = P.apply_left(full);
            lump = lumped.apply_left(lump);
            if (tv_distance(full, pi.w) != tv_distance(lump, lpi.w)) return false;
        }
    }
    return true;
}

/// The block-form chain of a CA signature, built with no group behind it:
/// states 0..z-1 are central, then one block of size c_i - z per centralizer.
/// W and V rows are uniform 1/n; block rows put 1/c_i on the center and on
/// their own block.
inline RatMatrix synthetic_ca_chain(long z, const std::vector<long>& sizes) {
    if (z < 1) throw std::invalid_argument("synthetic_ca_chain: z must be >= 1");
    long n = z;
    for (long c : sizes) {
        if (c < 2 * z)
            throw std::invalid_argument("synthetic_ca_chain: centralizer size below 2z");
        n += c - z;
    }
    if (sizes.empty()) throw std::invalid_argument("synthetic_ca_chain: no centralizers");
    for (long c : sizes)
        if (c == n)
            throw std::invalid_argument(
                "synthetic_ca_chain: centralizer equals the whole group (abelian)");

    RatMatrix P(static_cast<int>(n), static_cast<int>(n));
    Rat un = make_rat(1, n);
    for (long x = 0; x < z; ++x)
        for (long y = 0; y < n; ++y) P.at(static_cast<int>(x), static_cast<int>(y)) = un;
    long base = z;
    for (long c : sizes) {
        Rat uc = make_rat(1, c);
        for (long x = base; x < base + (c - z); ++x) {
            for (long y = 0; y < z; ++y) P.at(static_cast<int>(x), static_cast<int>(y)) = uc;
            for (long y = base; y < base + (c - z); ++y)
                P.at(static_cast<int>(x), static_cast<int>(y)) = uc;
        }
        base += c - z;
    }
    if (!P.is_row_stochastic()) throw std::runtime_error("synthetic_ca_chain: not stochastic");
    return P;
}

/// State order that aligns a CA group's chain with its synthetic block form:
/// center first (ascending), then each distinct centralizer's non-central
/// members (ascending), blocks in distinct-centralizer order. Returns the
/// permutation old_index = perm[new_index] and the block sizes in order.
struct BlockPermutation {
    std::vector<int32_t> perm;
    std::vector<long> sizes;
};

inline BlockPermutation canonical_block_permutation(const GroupStructure& s) {
    if (!s.is_ca || !s.signature)
        throw std::invalid_argument("canonical_block_permutation: need a non-abelian CA group");
    BlockPermutation out;
    std::vector<char> central(s.n, 0);
    for (int32_t x : s.center) central[x] = 1;
    out.perm.insert(out.perm.end(), s.center.begin(), s.center.end());
    for (const auto& cset : s.distinct_centralizers) {
        out.sizes.push_back(static_cast<long>(cset.size()));
        for (int32_t x : cset)
            if (!central[x]) out.perm.push_back(x);
    }
    if (static_cast<int>(out.perm.size()) != s.n)
        throw std::runtime_error("canonical_block_permutation: blocks do not partition G");
    return out;
}

/// Two-step minorization inequality: P^2(x,y) >= z / (|G| c_star) for every
/// pair, exactly.
/// Integer arithmetic throughout: with L = lcm of centralizer sizes,
/// P^2(x,y) * c_x * L = sum_{g in C_x cap C_y} L / c_g.
inline bool check_two_step_bound(const GroupTable& g, const GroupStructure& s) {
    if (s.is_abelian) throw std::invalid_argument("check_two_step_bound: non-abelian only");
    const int n = g.order();
    long L = 1;
    auto lcm_long = [](long a, long b) { return a / std::gcd(a, b) * b; };
    for (int x = 0; x < n; ++x) L = lcm_long(L, s.centralizer_size(x));
    const long c_star = s.signature ? s.signature->c_star : [&] {
        long m = 0;
        for (int x = 0; x < n; ++x)
            if (s.centralizer_size(x) < n) m = std::max(m, s.centralizer_size(x));
        return m;
    }();

    std::vector<long> acc(n);
    for (int x = 0; x < n; ++x) {
        std::fill(acc.begin(), acc.end(), 0L);
        for (int32_t mid : s.centralizer(x)) {
            long w = L / s.centralizer_size(mid);
            if (s.centralizer_size(mid) == n) {
                for (int y = 0; y < n; ++y) acc[y] += w;
            } else {
                for (int32_t y : s.centralizer(mid)) acc[y] += w;
            }
        }
        // acc[y] = P^2(x,y) * c_x * L; require acc[y] * n * c_star >= z * c_x * L
        long threshold_rhs = s.z * s.centralizer_size(x) * L;
        for (int y = 0; y < n; ++y)
            if (acc[y] * static_cast<long>(n) * c_star < threshold_rhs) return false;
    }
    return true;
}

}  // namespace cchain
