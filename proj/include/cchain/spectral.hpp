#pragma once

// Spectral analysis of the commuting chain. The characteristic polynomial
// comes from the CA-signature closed form
//
//   lambda^(n-j-1) * ( (z/n)(1 + sum_k (c_k - z)/(c_k(lambda-1)+z)) - lambda )
//                  * prod_i (lambda - (c_i - z)/c_i)
//
// with the middle factor's denominators cleared against the product term, and
// is verified independently against det(lambda I - P) by exact polynomial
// identity testing. Numeric eigenvalues are computed from the pi-symmetrized
// matrix; closed-form dihedral spectra cover the lumped chains.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cchain/chain.hpp"
#include "cchain/polynomial.hpp"

namespace cchain {

/// Characteristic polynomial of the commuting chain from the CA signature
/// alone, canonicalized monic (equal to det(lambda I - P)).
inline RatPoly signature_charpoly(const CASignature& sig, long group_order) {
    if (sig.j < 1 || sig.sizes.empty())
        throw std::invalid_argument("signature_charpoly: abelian signature rejected");
    if (sig.group_order() != group_order)
        throw std::invalid_argument("signature_charpoly: group order inconsistent with signature");
    const long n = group_order;
    const long j = sig.j;
    const long z = sig.z;

    // D_k(x) = c_k (x - 1) + z
    std::vector<RatPoly> d;
    d.reserve(sig.sizes.size());
    for (long c : sig.sizes) d.push_back(RatPoly::linear(Rat(long(c)), Rat(long(z - c))));

    // prefix/suffix products for the sum of partial products
    const std::size_t m = d.size();
    std::vector<RatPoly> pre(m + 1), suf(m + 1);
    pre[0] = RatPoly::constant(Rat(1));
    for (std::size_t i = 0; i < m; ++i) pre[i + 1] = pre[i] * d[i];
    suf[m] = RatPoly::constant(Rat(1));
    for (std::size_t i = m; i-- > 0;) suf[i] = d[i] * suf[i + 1];

    RatPoly all = pre[m];
    RatPoly sum;
    for (std::size_t k = 0; k < m; ++k)
        sum = sum + (pre[k] * suf[k + 1]) * Rat(long(sig.sizes[k] - z));

    // N(x) = (z/n)(all + sum) - x * all, degree j+1
    RatPoly N = (all + sum) * make_rat(z, n) - RatPoly::x() * all;
    if (N.degree() != j + 1) throw std::runtime_error("signature_charpoly: unexpected middle degree");

    RatPoly poly = N.shifted(static_cast<std::size_t>(n - j - 1)).monic();
    if (poly.degree() != n) throw std::runtime_error("signature_charpoly: degree mismatch");

    // guard against spurious roots from the clearing step: the original
    // rational expression and the cleared polynomial must agree up to a
    // constant sign at non-pole points
    std::optional<Rat> ratio;
    for (long x0 : {2, 3, 5}) {
        Rat x(x0);
        Rat middle = make_rat(z, n);
        Rat inner(1);
        for (long c : sig.sizes) inner += make_rat(c - z, 1) / (Rat(long(c)) * (x - 1) + z);
        middle *= inner;
        middle -= x;
        Rat orig = middle;
        for (long c : sig.sizes) orig *= x - make_rat(c - z, c);
        for (long e = 0; e < n - j - 1; ++e) orig *= x;
        Rat here = orig / poly.eval(x);
        if (!ratio) ratio = here;
        else if (*ratio != here)
            throw std::runtime_error("signature_charpoly: cleared polynomial disagrees with rational form");
    }
    if (*ratio != 1 && *ratio != -1)
        throw std::runtime_error("signature_charpoly: non-unit ratio to rational form");
    return poly;
}

/// Exact polynomial identity test of `poly` against det(lambda I - P).
/// Evaluation points are 0, 1, -1, 2, -2, ...; since both sides have degree n
/// and poly is checked monic, n+1 matching points prove the identity. The
/// default trial count is min(n+1, 64); `full_identity` interpolates
/// det(lambda I - P) from n+1 points and compares coefficients (n <= 64).
inline bool direct_charpoly_check(const RatMatrix& P, const RatPoly& poly, long trials = 0,
                                  bool full_identity = false) {
    const int n = P.rows();
    if (P.cols() != n) throw std::invalid_argument("direct_charpoly_check: non-square");
    if (poly.degree() != n) return false;
    if (poly.leading() != 1) return false;

    auto point = [](long i) -> Rat {
        // 0, 1, -1, 2, -2, ...
        long k = (i + 1) / 2;
        return Rat(i % 2 == 1 ? k : -k);
    };

    if (full_identity) {
        if (n > 64)
            throw std::invalid_argument("direct_charpoly_check: full identity mode needs n <= 64");
        std::vector<Rat> xs, ys;
        for (long i = 0; i <= n; ++i) {
            xs.push_back(point(i));
            ys.push_back(charpoly_eval_at(P, xs.back()));
        }
        return interpolate_poly(xs, ys) == poly;
    }

    if (trials <= 0) trials = std::min<long>(n + 1, 64);
    for (long i = 0; i < trials; ++i) {
        Rat x = point(i);
        if (charpoly_eval_at(P, x) != poly.eval(x)) return false;
    }
    return true;
}

struct EigenvalueGroup {
    double value = 0;
    long multiplicity = 0;
    std::optional<std::string> exact_form;  // "p/q" or "(a+sqrt(D))/b"
    std::optional<Rat> exact_rat;           // set when the exact form is rational
};

struct SpectralSummary {
    std::vector<EigenvalueGroup> eigenvalues;  // descending by value
    double lambda_2 = 0;
    double lambda_min = 0;
    double lambda_star = 0;
    std::optional<Rat> lambda_star_exact;
    double t_rel = 1;
    double gap = 1;
    long dimension = 0;
};

namespace detail {

// rational roots of `poly` located from numeric seeds (plus explicit
// candidates such as the (c_i - z)/c_i factors) and verified exactly
inline std::vector<std::pair<Rat, long>> exact_rational_roots(
    const RatPoly& poly, const std::vector<double>& seeds, const Int& den_cap,
    const std::vector<Rat>& extra_candidates = {}) {
    std::vector<std::pair<Rat, long>> out;
    RatPoly rest = poly;
    std::size_t zeros = rest.zero_root_multiplicity();
    if (zeros > 0) {
        out.push_back({Rat(0), static_cast<long>(zeros)});
        rest = rest.without_zero_roots();
    }
    // every candidate is verified by exact evaluation, so seeds may be loose;
    // the wider tolerances recover multiple roots that numeric root finders
    // only locate to ~eps^(1/m)
    std::vector<Rat> candidates{Rat(1)};
    for (const Rat& c : extra_candidates)
        if (c != 0) candidates.push_back(c);
    for (double v : seeds)
        for (double tol : {1e-9, 1e-6, 1e-4})
            if (auto r = rational_reconstruct(v, den_cap, tol); r && *r != 0)
                candidates.push_back(*r);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rat& cand : candidates) {
        long mult = 0;
        while (rest.degree() >= 1 && rest.eval(cand) == 0) {
            rest = rest.deflate(cand);
            ++mult;
        }
        if (mult > 0) out.push_back({cand, mult});
    }
    return out;
}

// residual factor after exact removal of x^k and the given rational roots
inline RatPoly residual_factor(const RatPoly& poly, const std::vector<std::pair<Rat, long>>& roots) {
    RatPoly rest = poly;
    for (const auto& [root, mult] : roots)
        for (long i = 0; i < mult; ++i)
            rest = root == 0 ? RatPoly(std::vector<Rat>(rest.coeffs().begin() + 1, rest.coeffs().end()))
                             : rest.deflate(root);
    return rest;
}

inline std::string surd_string(const Int& a, const Int& d, const Int& b, bool plus) {
    std::ostringstream os;
    os << "(" << a.get_str() << (plus ? "+" : "-") << "sqrt(" << d.get_str() << "))/" << b.get_str();
    return os.str();
}

}  // namespace detail

/// Numeric spectrum of a reversible chain. P is symmetrized by the
/// pi-weighted similarity transform D^(1/2) P D^(-1/2), guaranteeing a real
/// spectrum; eigenvalues are grouped into multiplicities at 1e-8 and, when a
/// characteristic polynomial is supplied, matched to exact rational roots
/// (verified by exact evaluation) or to quadratic-surd roots of the residual
/// factor at 1e-9.
inline SpectralSummary numeric_spectrum(const std::vector<double>& P_dense, int n,
                                        const std::vector<double>& pi,
                                        const RatPoly* charpoly = nullptr,
                                        double group_tol = 1e-8, double match_tol = 1e-9) {
    if (static_cast<int>(pi.size()) != n)
        throw std::invalid_argument("numeric_spectrum: pi length mismatch");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (std::fabs(pi[x] * P_dense[static_cast<std::size_t>(x) * n + y] -
                          pi[y] * P_dense[static_cast<std::size_t>(y) * n + x]) > 1e-12)
                throw std::invalid_argument("numeric_spectrum: chain is not reversible");

    Eigen::MatrixXd S(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            S(x, y) = std::sqrt(pi[x] / pi[y]) * P_dense[static_cast<std::size_t>(x) * n + y];
    Eigen::MatrixXd sym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numeric_spectrum: eigensolver failed");

    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(ev.rbegin(), ev.rend());

    SpectralSummary out;
    out.dimension = n;
    for (double v : ev) {
        if (!out.eigenvalues.empty() && std::fabs(out.eigenvalues.back().value - v) <= group_tol) {
            // running mean keeps the group value stable
            auto& grp = out.eigenvalues.back();
            grp.value = (grp.value * grp.multiplicity + v) / (grp.multiplicity + 1);
            ++grp.multiplicity;
        } else {
            out.eigenvalues.push_back({v, 1, std::nullopt, std::nullopt});
        }
    }

    if (std::fabs(out.eigenvalues.front().value - 1.0) > 1e-9)
        throw std::runtime_error("numeric_spectrum: top eigenvalue is not 1");
    if (out.eigenvalues.front().multiplicity != 1)
        throw std::runtime_error("numeric_spectrum: eigenvalue 1 is not simple");

    // exact-form attachment
    Int den_cap = Int(n) * Int(n);
    std::vector<std::pair<Rat, long>> rational_roots;
    RatPoly residual;
    if (charpoly) {
        std::vector<double> seeds;
        for (const auto& e : out.eigenvalues) seeds.push_back(e.value);
        rational_roots = detail::exact_rational_roots(*charpoly, seeds, den_cap);
        residual = detail::residual_factor(*charpoly, rational_roots);
    }
    for (auto& grp : out.eigenvalues) {
        bool attached = false;
        if (charpoly) {
            for (const auto& [root, mult] : rational_roots)
                if (std::fabs(rat_to_double(root) - grp.value) <= match_tol) {
                    grp.exact_rat = root;
                    grp.exact_form = rat_to_string(root);
                    attached = true;
                    break;
                }
            if (!attached && residual.degree() == 2) {
                // integer-cleared u x^2 + v x + w; roots (-v +- sqrt(v^2-4uw)) / 2u
                Int l(1);
                for (const Rat& c : residual.coeffs()) l = int_lcm(l, c.get_den());
                Int u = Int(residual.coeff(2) * l), v = Int(residual.coeff(1) * l),
                    w = Int(residual.coeff(0) * l);
                Int disc = v * v - 4 * u * w;
                if (disc >= 0) {
                    double sq = std::sqrt(disc.get_d());
                    double denz = 2.0 * u.get_d();
                    double rplus = (-v.get_d() + sq) / denz;
                    double rminus = (-v.get_d() - sq) / denz;
                    if (std::fabs(rplus - grp.value) <= match_tol) {
                        grp.exact_form = detail::surd_string(-v, disc, 2 * u, true);
                        attached = true;
                    } else if (std::fabs(rminus - grp.value) <= match_tol) {
                        grp.exact_form = detail::surd_string(-v, disc, 2 * u, false);
                        attached = true;
                    }
                }
            }
        } else {
            if (auto r = rational_reconstruct(grp.value, den_cap, match_tol)) {
                grp.exact_rat = *r;
                grp.exact_form = rat_to_string(*r);
            }
        }
    }

    out.lambda_min = out.eigenvalues.back().value;
    if (out.eigenvalues.size() >= 2) {
        out.lambda_2 = out.eigenvalues[1].value;
        const auto& second = out.eigenvalues[1];
        const auto& last = out.eigenvalues.back();
        if (second.value >= std::fabs(last.value)) {
            out.lambda_star = second.value;
            out.lambda_star_exact = second.exact_rat;
        } else {
            out.lambda_star = std::fabs(last.value);
            if (last.exact_rat) out.lambda_star_exact = rat_abs(*last.exact_rat);
        }
    } else {
        out.lambda_2 = 0;
        out.lambda_star = 0;  // trivial one-state chain
        out.lambda_star_exact = Rat(0);
    }
    if (out.lambda_star >= 1.0)
        throw std::runtime_error("numeric_spectrum: lambda_star at 1 (reducible or periodic?)");
    out.gap = 1.0 - out.lambda_star;
    out.t_rel = 1.0 / out.gap;
    return out;
}

inline std::vector<double> dense_double_matrix(const RatMatrix& P) {
    std::vector<double> out(static_cast<std::size_t>(P.rows()) * P.cols());
    for (int i = 0; i < P.rows(); ++i)
        for (int j = 0; j < P.cols(); ++j)
            out[static_cast<std::size_t>(i) * P.cols() + j] = rat_to_double(P.at(i, j));
    return out;
}

/// Transition matrix of the commuting chain as a dense double array, built
/// from the structure without materializing exact rationals.
inline std::vector<double> dense_double_matrix(const GroupStructure& s) {
    const int n = s.n;
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int x = 0; x < n; ++x) {
        double share = 1.0 / static_cast<double>(s.centralizer_size(x));
        if (s.is_abelian) {
            for (int y = 0; y < n; ++y) out[static_cast<std::size_t>(x) * n + y] = share;
        } else {
            for (int32_t y : s.centralizer(x)) out[static_cast<std::size_t>(x) * n + y] = share;
        }
    }
    return out;
}

/// Numeric real roots of a polynomial via the companion matrix. Multiple
/// real roots surface as conjugate pairs with tiny imaginary parts, so the
/// imaginary cutoff is a parameter; root-candidate seeding passes a loose one
/// (candidates get verified exactly downstream).
inline std::vector<double> poly_real_roots(const RatPoly& poly, double imag_tol = 1e-9) {
    long deg = poly.degree();
    if (deg < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    Rat lead = poly.leading();
    for (long i = 0; i < deg; ++i) {
        comp(i, deg - 1) = -rat_to_double(Rat(poly.coeff(i) / lead));
        if (i > 0) comp(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
    std::vector<double> out;
    for (long i = 0; i < deg; ++i)
        if (std::fabs(solver.eigenvalues()[i].imag()) < imag_tol)
            out.push_back(solver.eigenvalues()[i].real());
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// The rational eigenvalue candidates a CA signature contributes: the block
/// factors (c_i - z)/c_i.
inline std::vector<Rat> signature_root_candidates(const CASignature& sig) {
    std::vector<Rat> out;
    out.reserve(sig.sizes.size());
    for (long c : sig.sizes) out.push_back(make_rat(c - sig.z, c));
    return out;
}

/// Factored display of a characteristic polynomial: lambda power, exact
/// rational roots with multiplicity, and the irreducible residual printed as
/// an integer polynomial over a rational scale.
struct CharpolyDisplay {
    long zero_power = 0;
    std::vector<std::pair<Rat, long>> roots;  // descending by value
    RatPoly residual;                          // possibly constant 1
    std::string text;
};

inline CharpolyDisplay factor_charpoly(const RatPoly& poly,
                                       const std::vector<Rat>& extra_candidates = {}) {
    CharpolyDisplay out;
    std::vector<double> seeds = poly_real_roots(poly.without_zero_roots(), 1e-3);
    Int den_cap = int_pow(Int(10), 9);
    auto roots = detail::exact_rational_roots(poly, seeds, den_cap, extra_candidates);
    for (const auto& [root, mult] : roots) {
        if (root == 0) out.zero_power = mult;
        else out.roots.push_back({root, mult});
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    out.residual = detail::residual_factor(poly, roots);

    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " * ";
        first = false;
    };
    if (out.zero_power > 0) {
        sep();
        os << "x^" << out.zero_power;
    }
    for (const auto& [root, mult] : out.roots) {
        sep();
        os << "(x" << (root < 0 ? " + " : " - ") << rat_to_string(rat_abs(root)) << ")";
        if (mult > 1) os << "^" << mult;
    }
    if (out.residual.degree() >= 1) {
        // print with cleared denominators and the scale outside
        Int l(1);
        for (const Rat& c : out.residual.coeffs()) l = int_lcm(l, c.get_den());
        RatPoly scaled = out.residual * Rat(l);
        sep();
        os << "(" << scaled.to_string() << ")";
        if (l != 1) os << " / " << l.get_str();
    } else if (!out.residual.is_zero() && out.residual.coeff(0) != 1) {
        sep();
        os << rat_to_string(out.residual.coeff(0));
    }
    out.text = os.str();
    return out;
}

}  // namespace cchain
