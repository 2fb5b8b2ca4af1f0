#pragma once

// Dense univariate polynomials over exact rationals. Coefficients are stored
// low degree first; the zero polynomial has an empty coefficient vector.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cchain/rational.hpp"

namespace cchain {

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly constant(const Rat& v) { return RatPoly(std::vector<Rat>{v}); }
    /// The monomial x.
    static RatPoly x() { return RatPoly({Rat(0), Rat(1)}); }
    /// a*x + b
    static RatPoly linear(const Rat& a, const Rat& b) { return RatPoly({b, a}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const {
        if (c_.empty()) throw std::domain_error("RatPoly::leading: zero polynomial");
        return c_.back();
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + rat_to_double(*it);
        return acc;
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return RatPoly(std::move(out));
    }

    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
        return RatPoly(std::move(out));
    }

    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(out));
    }

    friend RatPoly operator*(const RatPoly& a, const Rat& s) {
        std::vector<Rat> out = a.c_;
        for (auto& v : out) v *= s;
        return RatPoly(std::move(out));
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

    /// Multiply by x^k.
    RatPoly shifted(std::size_t k) const {
        if (is_zero()) return RatPoly();
        std::vector<Rat> out(k, Rat(0));
        out.insert(out.end(), c_.begin(), c_.end());
        return RatPoly(std::move(out));
    }

    RatPoly monic() const {
        if (is_zero()) throw std::domain_error("RatPoly::monic: zero polynomial");
        Rat inv = Rat(1) / leading();
        return *this * inv;
    }

    /// Exact division by (x - root). Throws unless root is an exact root.
    RatPoly deflate(const Rat& root) const {
        if (is_zero()) throw std::domain_error("RatPoly::deflate: zero polynomial");
        std::vector<Rat> out(c_.size() - 1, Rat(0));
        Rat carry(0);
        for (std::size_t i = c_.size(); i-- > 1;) {
            carry = c_[i] + carry * root;
            out[i - 1] = carry;
        }
        Rat rem = c_[0] + carry * root;
        if (rem != 0) throw std::domain_error("RatPoly::deflate: not a root");
        return RatPoly(std::move(out));
    }

    /// Number of trailing zero coefficients, i.e. the multiplicity of root 0.
    std::size_t zero_root_multiplicity() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return c_.empty() ? 0 : k;
    }

    /// Drop x^k from a polynomial divisible by it.
    RatPoly without_zero_roots() const {
        std::size_t k = zero_root_multiplicity();
        return RatPoly(std::vector<Rat>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            Rat v = c_[i];
            if (first) {
                if (v < 0) { os << "-"; v = -v; }
            } else {
                os << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            if (i == 0 || v != 1) os << rat_to_string(v);
            if (i > 0) {
                if (v != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

/// Exact Newton interpolation through (xs[i], ys[i]) with distinct xs.
inline RatPoly interpolate_poly(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("interpolate_poly: bad point count");
    const std::size_t n = xs.size();
    // divided differences
    std::vector<Rat> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            Rat denom = xs[i] - xs[i - level];
            if (denom == 0) throw std::invalid_argument("interpolate_poly: repeated x");
            dd[i] = (dd[i] - dd[i - 1]) / denom;
            if (i == level) break;
        }
    RatPoly acc = RatPoly::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;)
        acc = acc * RatPoly::linear(Rat(1), Rat(-xs[i])) + RatPoly::constant(dd[i]);
    return acc;
}

}  // namespace cchain
