#pragma once

// Shared fixtures and independent oracles for the test suite. The oracles
// deliberately avoid the library's optimized paths: d(t) by full matrix
// powers over every start state, determinants by Laplace expansion, S_4 from
// raw permutation composition.

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "cchain/chain.hpp"
#include "cchain/matrix.hpp"

namespace testutil {

using cchain::Distribution;
using cchain::Rat;
using cchain::RatMatrix;

/// S_4 as a Cayley-table JSON fixture: all 24 permutations of {0,1,2,3} in
/// lexicographic order (identity first), composed as (a*b)(i) = a(b(i)).
inline nlohmann::json s4_json() {
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int n = static_cast<int>(perms.size());
    auto index_of = [&](const std::array<int, 4>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    nlohmann::json mul = nlohmann::json::array();
    for (int a = 0; a < n; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < n; ++b) {
            std::array<int, 4> c;
            for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];
            row.push_back(index_of(c));
        }
        mul.push_back(row);
    }
    return nlohmann::json{{"n", n}, {"mul", mul}};
}

/// d(t) by full matrix powers, max over every start state. Independent of
/// the class-representative scatter evolution in mixing_profile.
inline std::vector<Rat> naive_d_profile(const RatMatrix& P, const Distribution& pi, long t_max) {
    std::vector<Rat> out;
    RatMatrix power = RatMatrix::identity(P.rows());
    for (long t = 0; t <= t_max; ++t) {
        Rat dmax(0);
        for (int x = 0; x < P.rows(); ++x) {
            std::vector<Rat> row(P.cols());
            for (int y = 0; y < P.cols(); ++y) row[y] = power.at(x, y);
            dmax = std::max(dmax, cchain::tv_distance(row, pi.w));
        }
        out.push_back(dmax);
        if (t < t_max) power = power * P;
    }
    return out;
}

/// Laplace-expansion determinant, exponential and tiny on purpose.
inline Rat laplace_det(const RatMatrix& m) {
    const int n = m.rows();
    if (n == 1) return m.at(0, 0);
    Rat acc(0);
    for (int c = 0; c < n; ++c) {
        if (m.at(0, c) == 0) continue;
        RatMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int jj = 0; jj < n; ++jj) {
                if (jj == c) continue;
                minor.at(i - 1, cc++) = m.at(i, jj);
            }
        }
        Rat term = m.at(0, c) * laplace_det(minor);
        acc += (c % 2 == 0) ? term : Rat(-term);
    }
    return acc;
}

}  // namespace testutil
