#pragma once

// Dense matrices over exact rationals, fraction-free (Bareiss) determinants,
// and JSON/CSV export with "num/den" entries.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cchain/rational.hpp"

namespace cchain {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rat(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("RatMatrix: negative dims");
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix::mul: shape mismatch");
        RatMatrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Rat& w = o.at(k, j);
                    if (w != 0) out.at(i, j) += v * w;
                }
            }
        return out;
    }

    /// Row vector times matrix.
    std::vector<Rat> apply_left(const std::vector<Rat>& v) const {
        if (static_cast<int>(v.size()) != rows_)
            throw std::invalid_argument("RatMatrix::apply_left: shape mismatch");
        std::vector<Rat> out(cols_, Rat(0));
        for (int i = 0; i < rows_; ++i) {
            if (v[i] == 0) continue;
            for (int j = 0; j < cols_; ++j) {
                const Rat& w = at(i, j);
                if (w != 0) out[j] += v[i] * w;
            }
        }
        return out;
    }

    bool is_row_stochastic() const {
        for (int i = 0; i < rows_; ++i) {
            Rat sum(0);
            for (int j = 0; j < cols_; ++j) {
                if (at(i, j) < 0) return false;
                sum += at(i, j);
            }
            if (sum != 1) return false;
        }
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Determinant of an integer matrix by Bareiss one-step fraction-free
/// elimination (all divisions exact). Destroys its argument.
inline Int det_bareiss_int(std::vector<Int>& m, int n) {
    auto at = [&](int r, int c) -> Int& { return m[static_cast<std::size_t>(r) * n + c]; };
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (at(r, k) != 0) { swap_row = r; break; }
            if (swap_row < 0) return Int(0);
            for (int c = k; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = num;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    Int det = at(n - 1, n - 1);
    return sign < 0 ? Int(-det) : det;
}

/// Exact determinant of a rational matrix: each row is scaled to integers by
/// the LCM of its denominators, then the integer Bareiss pass runs.
inline Rat det_exact(const RatMatrix& mat) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("det_exact: non-square");
    const int n = mat.rows();
    if (n == 0) return Rat(1);
    std::vector<Int> m(static_cast<std::size_t>(n) * n);
    Int scale(1);
    for (int i = 0; i < n; ++i) {
        Int l(1);
        for (int j = 0; j < n; ++j) l = int_lcm(l, mat.at(i, j).get_den());
        for (int j = 0; j < n; ++j) {
            Rat v = mat.at(i, j) * Rat(l);
            v.canonicalize();
            if (v.get_den() != 1) throw std::runtime_error("det_exact: row scaling failed");
            m[static_cast<std::size_t>(i) * n + j] = v.get_num();
        }
        scale *= l;
    }
    return make_rat(det_bareiss_int(m, n), scale);
}

/// det(xI - M), evaluated exactly at a rational point.
inline Rat charpoly_eval_at(const RatMatrix& mat, const Rat& x) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("charpoly_eval_at: non-square");
    RatMatrix shifted(mat.rows(), mat.cols());
    for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j)
            shifted.at(i, j) = (i == j ? x - mat.at(i, j) : Rat(-mat.at(i, j)));
    return det_exact(shifted);
}

inline nlohmann::json matrix_to_json(const RatMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline RatMatrix matrix_from_json(const nlohmann::json& j) {
    RatMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& rows = j.at("entries");
    for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < m.cols(); ++c)
            m.at(i, c) = rat_from_string(rows.at(i).at(c).get<std::string>());
    return m;
}

inline std::string matrix_to_csv(const RatMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << rat_to_string(m.at(i, j));
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace cchain
