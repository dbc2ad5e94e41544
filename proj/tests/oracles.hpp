#pragma once

// Brute-force reference computations. Nothing here calls into the elimination,
// combination search or planner code it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "batchkit/batch_code.hpp"

namespace batchkit::oracle {

using Grid = std::vector<std::vector<Elem>>;

inline Grid grid_of(const Matrix& a) {
    Grid g(a.rows(), std::vector<Elem>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) g[r][c] = a.at(r, c);
    return g;
}

/// y_c = sum_r x_r g[r][c] mod q, one dot product per column.
inline std::vector<Elem> encode(const Grid& g, const std::vector<Elem>& x, std::uint32_t q) {
    std::vector<Elem> y(g.front().size(), 0);
    for (std::size_t c = 0; c < y.size(); ++c) {
        std::uint64_t acc = 0;
        for (std::size_t r = 0; r < g.size(); ++r) acc += static_cast<std::uint64_t>(x[r]) * g[r][c];
        y[c] = static_cast<Elem>(acc % q);
    }
    return y;
}

/// Calls f on every vector in [0, q)^len.
inline void for_each_vector(std::size_t len, std::uint32_t q, const std::function<void(const std::vector<Elem>&)>& f) {
    std::vector<Elem> v(len, 0);
    for (;;) {
        f(v);
        std::size_t i = 0;
        while (i < len && v[i] == q - 1) v[i++] = 0;
        if (i == len) return;
        ++v[i];
    }
}

/// Rank as the size of the largest row subset with no nontrivial vanishing
/// combination.
inline std::size_t rank(const Grid& g, std::uint32_t q) {
    const std::size_t n = g.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::vector<Elem>> rows;
        for (std::size_t r = 0; r < n; ++r)
            if (mask >> r & 1) rows.push_back(g[r]);
        bool independent = true;
        for_each_vector(rows.size(), q, [&](const std::vector<Elem>& coef) {
            if (!independent || std::all_of(coef.begin(), coef.end(), [](Elem e) { return e == 0; })) return;
            bool zero = true;
            for (std::size_t c = 0; c < rows.front().size() && zero; ++c) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < rows.size(); ++k) acc += static_cast<std::uint64_t>(coef[k]) * rows[k][c];
                zero = acc % q == 0;
            }
            if (zero) independent = false;
        });
        if (independent) best = std::max(best, rows.size());
    }
    return best;
}

inline std::size_t min_distance(const Grid& g, std::uint32_t q) {
    std::size_t best = SIZE_MAX;
    for_each_vector(g.size(), q, [&](const std::vector<Elem>& x) {
        if (std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; })) return;
        auto y = encode(g, x, q);
        best = std::min(best, static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [](Elem e) { return e; })));
    });
    return best;
}

struct Solution {
    std::vector<std::size_t> support;
    std::vector<Elem> coeffs;
};

/// Every (support, all-nonzero coefficients) pair combining to target, over
/// every column subset.
inline std::vector<Solution> all_solutions(const Grid& g, const std::vector<Elem>& target, std::uint32_t q) {
    const std::size_t cols = g.front().size();
    std::vector<Solution> out;
    for (std::uint32_t mask = 1; mask < (1u << cols); ++mask) {
        std::vector<std::size_t> sup;
        for (std::size_t c = 0; c < cols; ++c)
            if (mask >> c & 1) sup.push_back(c);
        for_each_vector(sup.size(), q - 1, [&](const std::vector<Elem>& shifted) {
            std::vector<Elem> coef(shifted.size());
            for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = shifted[k] + 1;  // 1..q-1
            for (std::size_t r = 0; r < g.size(); ++r) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < sup.size(); ++k) acc += static_cast<std::uint64_t>(coef[k]) * g[r][sup[k]];
                if (acc % q != target[r]) return;
            }
            out.push_back({sup, coef});
        });
    }
    return out;
}

/// Supports from all_solutions that strictly contain no other solution's
/// support, sorted by size then lexicographically.
inline std::vector<Solution> minimal_solutions(const Grid& g, const std::vector<Elem>& target, std::uint32_t q) {
    auto all = all_solutions(g, target, q);
    auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<Solution> out;
    for (const auto& s : all) {
        bool minimal = std::none_of(all.begin(), all.end(), [&](const Solution& o) {
            return o.support.size() < s.support.size() && subset(o.support, s.support);
        });
        if (minimal) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
        return a.support < b.support;
    });
    return out;
}

/// Binary, singleton buckets, t = 1: can the request be covered by pairwise
/// disjoint column subsets, the r-th summing to e_{request[r]}? Tries every
/// subset for every slot.
inline bool binary_plan_exists(const Grid& g, const std::vector<std::size_t>& request) {
    const std::size_t cols = g.front().size(), n = g.size();
    std::vector<std::uint32_t> colbits(cols, 0);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (g[r][c]) colbits[c] |= 1u << r;
    std::vector<std::uint32_t> sum(1u << cols, 0);
    for (std::uint32_t mask = 1; mask < (1u << cols); ++mask) {
        std::uint32_t s = 0;
        for (std::size_t c = 0; c < cols; ++c)
            if (mask >> c & 1) s ^= colbits[c];
        sum[mask] = s;
    }
    std::function<bool(std::size_t, std::uint32_t)> go = [&](std::size_t slot, std::uint32_t used) {
        if (slot == request.size()) return true;
        const std::uint32_t want = 1u << request[slot];
        for (std::uint32_t mask = 1; mask < (1u << cols); ++mask)
            if (!(mask & used) && sum[mask] == want && go(slot + 1, used | mask)) return true;
        return false;
    };
    return go(0, 0);
}

}  // namespace batchkit::oracle
