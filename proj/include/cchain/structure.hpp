#pragma once

// Commuting structure of a finite group: center, centralizers, conjugacy
// classes, CA detection and the CA signature (center size plus the census of
// distinct non-central centralizers). The signature determines the commuting
// chain's transition matrix up to a relabeling of states.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cchain/group.hpp"

namespace cchain {

struct CASignature {
    long z = 0;                                   // center size
    std::vector<std::pair<long, long>> census;    // (centralizer size, distinct count), ascending size
    long j = 0;                                   // number of distinct non-central centralizers
    long c_star = 0;                              // max size
    long c_prime = 0;                             // min size
    std::vector<long> sizes;                      // all j sizes, in block (distinct-set) order

    long group_order() const {
        long n = z;
        for (long c : sizes) n += c - z;
        return n;
    }
};

struct GroupStructure {
    int n = 0;
    std::vector<int32_t> center;                      // sorted
    long z = 0;
    bool is_abelian = false;
    std::vector<std::vector<int32_t>> centralizers;   // per element, sorted; empty when abelian
    std::vector<std::vector<int32_t>> classes;        // ordered by smallest member
    std::vector<int32_t> class_of;
    long class_count = 0;
    bool is_ca = false;
    // distinct non-central centralizers, ordered by the smallest element that
    // owns them; empty for abelian groups
    std::vector<std::vector<int32_t>> distinct_centralizers;
    std::optional<CASignature> signature;             // present iff is_ca and non-abelian

    /// Per-element centralizer set. Not stored for abelian groups (every set
    /// is all of G); chain code special-cases that branch.
    const std::vector<int32_t>& centralizer(int x) const {
        if (is_abelian)
            throw std::logic_error("GroupStructure::centralizer: abelian group, sets not stored");
        return centralizers[x];
    }

    long centralizer_size(int x) const {
        return is_abelian ? n : static_cast<long>(centralizers[x].size());
    }
};

/// Full commuting-structure pass; CA detection uses the abelian-centralizer
/// criterion (equivalent to transitivity of commuting off the center).
inline GroupStructure analyze_structure(const GroupTable& g) {
    GroupStructure s;
    const int n = g.order();
    s.n = n;

    std::vector<std::vector<int32_t>> cents(n);
    for (int x = 0; x < n; ++x) {
        auto& cx = cents[x];
        cx.reserve(16);
        for (int y = 0; y < n; ++y)
            if (g.commutes(x, y)) cx.push_back(y);
    }
    for (int x = 0; x < n; ++x)
        if (static_cast<int>(cents[x].size()) == n) s.center.push_back(x);
    s.z = static_cast<long>(s.center.size());
    s.is_abelian = (s.z == n);
    if (!s.is_abelian) s.centralizers = std::move(cents);

    // conjugacy classes, ordered by smallest member
    s.class_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (s.class_of[x] >= 0) continue;
        std::vector<int32_t> orbit;
        std::vector<char> seen(n, 0);
        for (int c = 0; c < n; ++c) {
            int y = g.conjugate(c, x);
            if (!seen[y]) {
                seen[y] = 1;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        int32_t id = static_cast<int32_t>(s.classes.size());
        for (int32_t y : orbit) s.class_of[y] = id;
        s.classes.push_back(std::move(orbit));
    }
    s.class_count = static_cast<long>(s.classes.size());

    // orbit-stabilizer sanity: |C_x| * |x^G| = |G|
    for (int x = 0; x < n; ++x)
        if (s.centralizer_size(x) * static_cast<long>(s.classes[s.class_of[x]].size()) != n)
            throw std::runtime_error("analyze_structure: orbit-stabilizer violated");

    if (s.is_abelian) {
        s.is_ca = true;  // vacuously; no signature
        return s;
    }

    // distinct non-central centralizers, keyed by set, ordered by owner
    std::map<std::vector<int32_t>, int> first_owner;
    for (int x = 0; x < n; ++x) {
        if (s.centralizer_size(x) == n) continue;
        auto it = first_owner.find(s.centralizers[x]);
        if (it == first_owner.end()) first_owner.emplace(s.centralizers[x], x);
    }
    std::vector<std::pair<int, const std::vector<int32_t>*>> owned;
    owned.reserve(first_owner.size());
    for (const auto& [set, owner] : first_owner) owned.push_back({owner, &set});
    std::sort(owned.begin(), owned.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [owner, set] : owned) s.distinct_centralizers.push_back(*set);

    s.is_ca = true;
    for (const auto& cset : s.distinct_centralizers) {
        for (std::size_t i = 0; i < cset.size() && s.is_ca; ++i)
            for (std::size_t k = i + 1; k < cset.size(); ++k)
                if (!g.commutes(cset[i], cset[k])) {
                    s.is_ca = false;
                    break;
                }
        if (!s.is_ca) break;
    }

    if (s.is_ca) {
        CASignature sig;
        sig.z = s.z;
        sig.j = static_cast<long>(s.distinct_centralizers.size());
        std::map<long, long> by_size;
        for (const auto& cset : s.distinct_centralizers) {
            sig.sizes.push_back(static_cast<long>(cset.size()));
            ++by_size[static_cast<long>(cset.size())];
        }
        for (const auto& [size, count] : by_size) sig.census.push_back({size, count});
        sig.c_star = sig.census.back().first;
        sig.c_prime = sig.census.front().first;
        // CA partition of G \ Z
        long covered = sig.z;
        for (long c : sig.sizes) covered += c - sig.z;
        if (covered != n)
            throw std::runtime_error("analyze_structure: CA partition identity violated");
        s.signature = std::move(sig);
    }
    return s;
}

/// Compare the distinct-centralizer census against an expected multiset of
/// (size, count) pairs. Requires a CA structure.
inline bool verify_census(const GroupStructure& s,
                          std::vector<std::pair<long, long>> expected) {
    if (!s.is_ca) throw std::invalid_argument("verify_census: structure is not CA");
    if (!s.signature) return expected.empty();
    std::sort(expected.begin(), expected.end());
    return expected == s.signature->census;
}

}  // namespace cchain
