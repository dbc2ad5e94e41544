#pragma once

#include <vector>

#include "batchkit/batch_code.hpp"

namespace batchkit::testing {

inline const PrimeField gf2{2};

inline Matrix binary(const std::vector<std::vector<Elem>>& rows) { return Matrix::from_rows(gf2, rows); }

inline Vector vec(const PrimeField& f, std::vector<Elem> e) { return Vector(f, std::move(e)); }
inline Vector bvec(std::vector<Elem> e) { return Vector(gf2, std::move(e)); }

/// Converts 1-based indices (as written in the literature) to 0-based.
inline std::vector<std::size_t> zb(std::vector<std::size_t> one_based) {
    for (auto& i : one_based) --i;
    return one_based;
}

inline BatchRequest req(std::vector<std::size_t> one_based) { return BatchRequest(zb(std::move(one_based))); }

/// Two-layer subcube code, 4 x 9.
inline Matrix two_layer_matrix() {
    return binary({{1, 0, 1, 0, 0, 0, 1, 0, 1},
                   {0, 1, 1, 0, 0, 0, 0, 1, 1},
                   {0, 0, 0, 1, 0, 1, 1, 0, 1},
                   {0, 0, 0, 0, 1, 1, 0, 1, 1}});
}

/// Generator of the [4, 3, 2] even-weight code.
inline Matrix even_weight_matrix() { return binary({{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}); }

inline Matrix subcube_matrix() { return binary({{1, 0, 1}, {0, 1, 1}}); }

inline LinearBatchCode two_layer_code() { return LinearBatchCode::with_singleton_buckets(two_layer_matrix()); }
inline LinearBatchCode even_weight_code() { return LinearBatchCode::with_singleton_buckets(even_weight_matrix()); }
inline LinearBatchCode small_subcube_code() { return LinearBatchCode::with_singleton_buckets(subcube_matrix()); }
inline LinearBatchCode identity_code(std::size_t n, const PrimeField& f = gf2) {
    return LinearBatchCode::with_singleton_buckets(Matrix::identity(f, n));
}

inline std::vector<std::vector<std::size_t>> supports_1based(const std::vector<RecoverySet>& sets) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : sets) {
        auto sup = s.support();
        for (auto& c : sup) ++c;
        out.push_back(sup);
    }
    return out;
}

}  // namespace batchkit::testing
