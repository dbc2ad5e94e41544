#include "batchkit/linalg.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace batchkit {

namespace {

void check_canonical(const PrimeField& f, std::span<const Elem> entries) {
    for (Elem e : entries)
        if (!f.contains(e))
            throw FieldError("entry " + std::to_string(e) + " is not a canonical residue mod " +
                             std::to_string(f.q()));
}

// Advances a strictly increasing k-subset of [0, n) to its lexicographic
// successor; returns false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::uint64_t mask_of(std::span<const std::size_t> cols) {
    std::uint64_t m = 0;
    for (std::size_t c : cols) m |= std::uint64_t{1} << c;
    return m;
}

bool contains_found(std::uint64_t s, const std::vector<std::uint64_t>& found) {
    return std::any_of(found.begin(), found.end(),
                       [s](std::uint64_t f) { return (s & f) == f; });
}

void check_combination_args(const Matrix& a, const Vector& target, std::size_t max_support) {
    if (target.field() != a.field()) throw DimensionError("target field differs from matrix field");
    if (target.size() != a.rows())
        throw DimensionError("target length " + std::to_string(target.size()) +
                             " != matrix rows " + std::to_string(a.rows()));
    if (max_support > a.cols())
        throw DimensionError("max_support exceeds number of columns");
    if (a.cols() > 64) throw GuardError("combination search supports at most 64 columns");
}

std::vector<Combination> combinations_binary(const Matrix& a, const Vector& target,
                                             std::size_t max_support) {
    std::vector<std::uint64_t> col_bits(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.at(r, c)) col_bits[c] |= std::uint64_t{1} << r;
    std::uint64_t want = 0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (target[r]) want |= std::uint64_t{1} << r;

    std::vector<Combination> out;
    std::vector<std::uint64_t> found;
    for (std::size_t k = 1; k <= max_support; ++k) {
        std::vector<std::size_t> s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = i;
        do {
            std::uint64_t smask = mask_of(s);
            if (contains_found(smask, found)) continue;
            std::uint64_t acc = 0;
            for (std::size_t c : s) acc ^= col_bits[c];
            if (acc == want) {
                found.push_back(smask);
                out.push_back({s, std::vector<Elem>(k, 1)});
            }
        } while (next_combination(s, a.cols()));
    }
    return out;
}

}  // namespace

Vector::Vector(PrimeField field, std::vector<Elem> entries)
    : field_(field), entries_(std::move(entries)) {
    check_canonical(field_, entries_);
}

Vector Vector::zeros(PrimeField field, std::size_t length) {
    return Vector(field, std::vector<Elem>(length, 0));
}

Vector Vector::unit(PrimeField field, std::size_t length, std::size_t index) {
    if (index >= length) throw DimensionError("unit vector index out of range");
    std::vector<Elem> e(length, 0);
    e[index] = 1;
    return Vector(field, std::move(e));
}

bool Vector::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](Elem e) { return e == 0; });
}

std::size_t hamming_weight(const Vector& v) noexcept {
    return static_cast<std::size_t>(
        std::count_if(v.entries().begin(), v.entries().end(), [](Elem e) { return e != 0; }));
}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Elem> row_major)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix must have at least one row and column");
    if (data_.size() != rows_ * cols_)
        throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                             std::to_string(rows_ * cols_));
    check_canonical(field_, data_);
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<Elem>>& rows) {
    if (rows.empty()) throw DimensionError("matrix must have at least one row");
    const std::size_t cols = rows.front().size();
    std::vector<Elem> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionError("ragged matrix rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(field, rows.size(), cols, std::move(data));
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    std::vector<Elem> data(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1;
    return Matrix(field, n, n, std::move(data));
}

Matrix Matrix::zeros(PrimeField field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols, std::vector<Elem>(rows * cols, 0));
}

Vector Matrix::column(std::size_t c) const {
    if (c >= cols_) throw DimensionError("column index out of range");
    std::vector<Elem> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return Vector(field_, std::move(v));
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
    std::vector<Elem> data;
    data.reserve(rows_ * cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c : cols) {
            if (c >= cols_) throw DimensionError("column index out of range");
            data.push_back(at(r, c));
        }
    return Matrix(field_, rows_, cols.size(), std::move(data));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw DimensionError("matrix fields differ");
    if (a.cols() != b.rows())
        throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const auto& f = a.field();
    std::vector<Elem> out(a.rows() * b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out[i * b.cols() + j] = f.add(out[i * b.cols() + j], f.mul(aik, b.at(k, j)));
        }
    return Matrix(f, a.rows(), b.cols(), std::move(out));
}

Vector mat_vec_encode(const Matrix& g, const Vector& x) {
    if (x.field() != g.field()) throw DimensionError("message field differs from generator field");
    if (x.size() != g.rows())
        throw DimensionError("message length " + std::to_string(x.size()) + " != generator rows " +
                             std::to_string(g.rows()));
    const auto& f = g.field();
    std::vector<Elem> y(g.cols(), 0);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        if (x[r] == 0) continue;
        auto row = g.row(r);
        for (std::size_t c = 0; c < g.cols(); ++c) y[c] = f.add(y[c], f.mul(x[r], row[c]));
    }
    return Vector(f, std::move(y));
}

std::size_t rank(const Matrix& a) {
    const auto& f = a.field();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<Elem> m(a.data().begin(), a.data().end());
    auto at = [&](std::size_t r, std::size_t c) -> Elem& { return m[r * cols + c]; };

    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rk;
        while (piv < rows && at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rk)
            for (std::size_t k = 0; k < cols; ++k) std::swap(at(piv, k), at(rk, k));
        const Elem inv = f.inv(at(rk, c));
        for (std::size_t k = c; k < cols; ++k) at(rk, k) = f.mul(at(rk, k), inv);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            const Elem factor = at(r, c);
            if (factor == 0) continue;
            for (std::size_t k = c; k < cols; ++k) at(r, k) = f.sub(at(r, k), f.mul(factor, at(rk, k)));
        }
        ++rk;
    }
    return rk;
}

std::vector<std::size_t> row_weights(const Matrix& a) {
    std::vector<std::size_t> w(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        w[r] = static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](Elem e) { return e != 0; }));
    }
    return w;
}

std::size_t min_distance(const Matrix& a) {
    if (rank(a) != a.rows())
        throw PreconditionError("min_distance requires a full row rank generator");
    const std::uint64_t q = a.field().q();
    std::uint64_t messages = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        messages *= q;
        if (messages > min_distance_message_cap)
            throw GuardError("min_distance would enumerate more than 2^24 messages");
    }

    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t best = std::numeric_limits<std::size_t>::max();

    if (a.field().is_binary()) {
        // Gray-code walk: each step toggles one generator row into the codeword.
        const std::size_t words = (cols + 63) / 64;
        std::vector<std::uint64_t> packed(rows * words, 0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (a.at(r, c)) packed[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
        std::vector<std::uint64_t> cw(words, 0);
        for (std::uint64_t i = 1; i < messages; ++i) {
            const auto r = static_cast<std::size_t>(std::countr_zero(i));
            std::size_t w = 0;
            for (std::size_t k = 0; k < words; ++k) {
                cw[k] ^= packed[r * words + k];
                w += static_cast<std::size_t>(std::popcount(cw[k]));
            }
            best = std::min(best, w);
        }
        return best;
    }

    // Odometer over messages; the codeword is updated by adding one row per
    // digit increment and subtracting (q-1) copies on carry.
    const auto& f = a.field();
    std::vector<Elem> x(rows, 0), cw(cols, 0);
    for (std::uint64_t i = 1; i < messages; ++i) {
        std::size_t r = 0;
        while (x[r] == q - 1) {
            x[r] = 0;
            auto row = a.row(r);
            for (std::size_t c = 0; c < cols; ++c) cw[c] = f.sub(cw[c], f.mul(static_cast<Elem>(q - 1), row[c]));
            ++r;
        }
        ++x[r];
        auto row = a.row(r);
        for (std::size_t c = 0; c < cols; ++c) cw[c] = f.add(cw[c], row[c]);
        const auto w = static_cast<std::size_t>(std::count_if(cw.begin(), cw.end(), [](Elem e) { return e != 0; }));
        best = std::min(best, w);
    }
    return best;
}

std::vector<Combination> combinations_equal_to(const Matrix& a, const Vector& target,
                                               std::size_t max_support) {
    check_combination_args(a, target, max_support);
    if (target.is_zero()) return {};
    if (a.field().is_binary() && a.rows() <= 64) return combinations_binary(a, target, max_support);
    return detail::combinations_equal_to_generic(a, target, max_support);
}

namespace detail {

bool solve_independent(const Matrix& a, std::span<const std::size_t> cols, const Vector& target,
                       std::vector<Elem>& coeffs) {
    const auto& f = a.field();
    const std::size_t rows = a.rows(), k = cols.size(), width = k + 1;
    std::vector<Elem> m(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < k; ++j) m[r * width + j] = a.at(r, cols[j]);
        m[r * width + k] = target[r];
    }
    auto at = [&](std::size_t r, std::size_t c) -> Elem& { return m[r * width + c]; };

    // Reduced row echelon form; every one of the k columns must carry a pivot.
    std::size_t rk = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = rk;
        while (piv < rows && at(piv, c) == 0) ++piv;
        if (piv == rows) return false;
        if (piv != rk)
            for (std::size_t j = 0; j < width; ++j) std::swap(at(piv, j), at(rk, j));
        const Elem inv = f.inv(at(rk, c));
        for (std::size_t j = c; j < width; ++j) at(rk, j) = f.mul(at(rk, j), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rk) continue;
            const Elem factor = at(r, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < width; ++j) at(r, j) = f.sub(at(r, j), f.mul(factor, at(rk, j)));
        }
        ++rk;
    }
    for (std::size_t r = rk; r < rows; ++r)
        if (at(r, k) != 0) return false;
    coeffs.assign(k, 0);
    for (std::size_t j = 0; j < k; ++j) coeffs[j] = at(j, k);
    return true;
}

std::vector<Combination> combinations_equal_to_generic(const Matrix& a, const Vector& target,
                                                       std::size_t max_support) {
    check_combination_args(a, target, max_support);
    if (target.is_zero()) return {};
    std::vector<Combination> out;
    std::vector<std::uint64_t> found;
    std::vector<Elem> coeffs;
    for (std::size_t k = 1; k <= max_support; ++k) {
        std::vector<std::size_t> s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = i;
        do {
            const std::uint64_t smask = mask_of(s);
            if (contains_found(smask, found)) continue;
            // Skipping supersets of found supports leaves only candidate sets
            // whose solution, if any, is unique and minimal.
            if (!solve_independent(a, s, target, coeffs)) continue;
            if (std::any_of(coeffs.begin(), coeffs.end(), [](Elem e) { return e == 0; })) continue;
            found.push_back(smask);
            out.push_back({s, coeffs});
        } while (next_combination(s, a.cols()));
    }
    return out;
}

}  // namespace detail

}  // namespace batchkit
