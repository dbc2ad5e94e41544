#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "batchkit/errors.hpp"
#include "batchkit/field.hpp"

namespace batchkit {

/// Dense row vector over F_q.
class Vector {
public:
    Vector(PrimeField field, std::vector<Elem> entries);

    static Vector zeros(PrimeField field, std::size_t length);
    static Vector unit(PrimeField field, std::size_t length, std::size_t index);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return entries_.size(); }
    Elem operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Elem> entries() const noexcept { return entries_; }

    bool is_zero() const noexcept;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    PrimeField field_;
    std::vector<Elem> entries_;
};

std::size_t hamming_weight(const Vector& v) noexcept;

/// Dense row-major matrix over F_q with at least one row and one column.
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Elem> row_major);

    static Matrix from_rows(PrimeField field, const std::vector<std::vector<Elem>>& rows);
    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix zeros(PrimeField field, std::size_t rows, std::size_t cols);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const {
        return std::span<const Elem>(data_).subspan(r * cols_, cols_);
    }
    Vector column(std::size_t c) const;
    std::span<const Elem> data() const noexcept { return data_; }

    /// Columns selected in the given order.
    Matrix select_columns(std::span<const std::size_t> cols) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

/// Matrix product over F_q.
Matrix multiply(const Matrix& a, const Matrix& b);

/// y = xG.
Vector mat_vec_encode(const Matrix& g, const Vector& x);

std::size_t rank(const Matrix& a);

/// Hamming weight of every row.
std::vector<std::size_t> row_weights(const Matrix& a);

/// Largest q^rows that min_distance will enumerate.
inline constexpr std::uint64_t min_distance_message_cap = std::uint64_t{1} << 24;

/// Minimum Hamming weight of xA over all nonzero x, by exhaustive enumeration.
/// Throws PreconditionError if A does not have full row rank and GuardError if
/// q^rows exceeds min_distance_message_cap.
std::size_t min_distance(const Matrix& a);

/// A linear combination of columns: sum of coeffs[k] * A^[support[k]].
struct Combination {
    std::vector<std::size_t> support;  // strictly increasing, 0-based
    std::vector<Elem> coeffs;          // all nonzero

    friend bool operator==(const Combination&, const Combination&) = default;
};

/// All minimal-support combinations of columns of A that equal target, with
/// at most max_support columns and every coefficient nonzero.
///
/// Minimal support means no returned support strictly contains another
/// solution's support. A minimal support always indexes linearly independent
/// columns, so its coefficients are unique. Output is ordered by support size,
/// then lexicographically by support. A zero target yields an empty list.
/// Requires A.cols() <= 64.
std::vector<Combination> combinations_equal_to(const Matrix& a, const Vector& target,
                                               std::size_t max_support);

namespace detail {

/// Field-generic path of combinations_equal_to (no bit packing). Exposed so
/// tests can check the binary fast path against it.
std::vector<Combination> combinations_equal_to_generic(const Matrix& a, const Vector& target,
                                                       std::size_t max_support);

/// Solves A_S * alpha = target for the columns S when they are linearly
/// independent; returns false if the columns are dependent or the system is
/// inconsistent.
bool solve_independent(const Matrix& a, std::span<const std::size_t> cols, const Vector& target,
                       std::vector<Elem>& coeffs);

}  // namespace detail

}  // namespace batchkit
