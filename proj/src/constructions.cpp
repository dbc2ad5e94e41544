#include "batchkit/constructions.hpp"

#include <algorithm>
#include <string>

namespace batchkit {

namespace {

void require_same_field(const LinearBatchCode& a, const LinearBatchCode& b) {
    if (a.field() != b.field())
        throw DimensionError("codes over F_" + std::to_string(a.field().q()) + " and F_" +
                             std::to_string(b.field().q()) + " cannot be combined");
}

void require_simple(const LinearBatchCode& c, const char* what) {
    if (!c.is_simple())
        throw PreconditionError(std::string(what) + " needs singleton buckets and t = 1");
}

std::optional<std::size_t> claim_or_certify(const LinearBatchCode& c) {
    if (c.claimed_m()) return c.claimed_m();
    return certify_max_m(c);
}

}  // namespace

LinearBatchCode subcube_code(std::size_t n, std::size_t t, const PrimeField& field) {
    if (n == 0 || n % 2 != 0) throw PreconditionError("subcube code needs a positive even n");
    const std::size_t half = n / 2;
    if (t < 1 || t > half) throw PreconditionError("subcube code needs 1 <= t <= n/2");

    auto g = std::vector<std::vector<Elem>>(n, std::vector<Elem>(n + half, 0));
    for (std::size_t j = 0; j < half; ++j) {
        g[j][j] = 1;
        g[half + j][half + j] = 1;
        g[j][n + j] = 1;
        g[half + j][n + j] = 1;
    }
    std::vector<Bucket> buckets(3);
    for (std::size_t j = 0; j < half; ++j) {
        buckets[0].push_back(j);
        buckets[1].push_back(half + j);
        buckets[2].push_back(n + j);
    }
    LinearBatchCode code(Matrix::from_rows(field, g), std::move(buckets), t);
    code.set_claimed_m(2);
    return code;
}

LinearBatchCode concat_codes(const LinearBatchCode& c1, const LinearBatchCode& c2) {
    require_same_field(c1, c2);
    require_simple(c1, "concat");
    require_simple(c2, "concat");
    if (c1.n() != c2.n())
        throw DimensionError("concat needs equal n, got " + std::to_string(c1.n()) + " and " +
                             std::to_string(c2.n()));
    const auto& g1 = c1.generator();
    const auto& g2 = c2.generator();
    const std::size_t cols = g1.cols() + g2.cols();
    std::vector<Elem> data;
    data.reserve(c1.n() * cols);
    for (std::size_t r = 0; r < c1.n(); ++r) {
        auto a = g1.row(r), b = g2.row(r);
        data.insert(data.end(), a.begin(), a.end());
        data.insert(data.end(), b.begin(), b.end());
    }
    auto code = LinearBatchCode::with_singleton_buckets(Matrix(c1.field(), c1.n(), cols, std::move(data)));
    if (c1.claimed_m() && c2.claimed_m()) code.set_claimed_m(*c1.claimed_m() + *c2.claimed_m());
    return code;
}

LinearBatchCode direct_sum(const LinearBatchCode& c1, const LinearBatchCode& c2) {
    require_same_field(c1, c2);
    require_simple(c1, "direct_sum");
    require_simple(c2, "direct_sum");
    const auto& g1 = c1.generator();
    const auto& g2 = c2.generator();
    const std::size_t rows = g1.rows() + g2.rows(), cols = g1.cols() + g2.cols();
    std::vector<Elem> data(rows * cols, 0);
    for (std::size_t r = 0; r < g1.rows(); ++r)
        for (std::size_t c = 0; c < g1.cols(); ++c) data[r * cols + c] = g1.at(r, c);
    for (std::size_t r = 0; r < g2.rows(); ++r)
        for (std::size_t c = 0; c < g2.cols(); ++c) data[(g1.rows() + r) * cols + g1.cols() + c] = g2.at(r, c);
    auto code = LinearBatchCode::with_singleton_buckets(Matrix(c1.field(), rows, cols, std::move(data)));
    if (c1.claimed_m() && c2.claimed_m()) code.set_claimed_m(std::min(*c1.claimed_m(), *c2.claimed_m()));
    return code;
}

LinearBatchCode extend_one(const LinearBatchCode& c, const Vector& bottom_left) {
    require_simple(c, "extend_one");
    if (bottom_left.field() != c.field()) throw DimensionError("bottom-left block field differs from code field");
    if (bottom_left.size() != c.length())
        throw DimensionError("bottom-left block has length " + std::to_string(bottom_left.size()) +
                             ", code has M=" + std::to_string(c.length()));
    const std::size_t m = claim_or_certify(c).value_or(0);
    if (m == 0) throw PreconditionError("extend_one needs a code with m >= 1");

    const auto& g = c.generator();
    const std::size_t rows = g.rows() + 1, cols = g.cols() + m;
    std::vector<Elem> data(rows * cols, 0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t col = 0; col < g.cols(); ++col) data[r * cols + col] = g.at(r, col);
    for (std::size_t col = 0; col < g.cols(); ++col) data[g.rows() * cols + col] = bottom_left[col];
    for (std::size_t col = g.cols(); col < cols; ++col) data[g.rows() * cols + col] = 1;
    auto code = LinearBatchCode::with_singleton_buckets(Matrix(c.field(), rows, cols, std::move(data)));
    code.set_claimed_m(m);
    return code;
}

LinearBatchCode extend_one(const LinearBatchCode& c) {
    return extend_one(c, Vector::zeros(c.field(), c.length()));
}

LinearBatchCode compose(const LinearBatchCode& outer, const LinearBatchCode& inner) {
    require_same_field(outer, inner);
    if (outer.budget() != 1 || inner.budget() != 1) throw PreconditionError("compose needs t = 1 on both codes");
    const std::size_t n2 = inner.n();
    for (std::size_t b = 0; b < outer.bucket_count(); ++b)
        if (outer.buckets()[b].size() != n2)
            throw DimensionError("outer bucket " + std::to_string(b + 1) + " holds " +
                                 std::to_string(outer.buckets()[b].size()) + " symbols, inner code has n=" +
                                 std::to_string(n2));

    const auto& g1 = outer.generator();
    const auto& g2 = inner.generator();
    const std::size_t n1 = g1.rows(), n_inner = g2.cols();
    const std::size_t cols = outer.bucket_count() * n_inner;
    std::vector<Elem> data(n1 * cols, 0);
    std::vector<Bucket> buckets;
    for (std::size_t b = 0; b < outer.bucket_count(); ++b) {
        const Matrix block = multiply(g1.select_columns(outer.buckets()[b]), g2);
        const std::size_t base = b * n_inner;
        for (std::size_t r = 0; r < n1; ++r)
            for (std::size_t c = 0; c < n_inner; ++c) data[r * cols + base + c] = block.at(r, c);
        for (const auto& ib : inner.buckets()) {
            Bucket nb;
            for (std::size_t c : ib) nb.push_back(base + c);
            buckets.push_back(std::move(nb));
        }
    }
    LinearBatchCode code(Matrix(outer.field(), n1, cols, std::move(data)), std::move(buckets), 1);
    if (outer.claimed_m() && inner.claimed_m()) code.set_claimed_m(*outer.claimed_m() * *inner.claimed_m());
    return code;
}

}  // namespace batchkit
