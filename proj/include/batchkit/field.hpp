#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace batchkit {

/// Element of a prime field, stored as its canonical residue in [0, q-1].
using Elem = std::uint32_t;

/// Raised when an element is not a canonical residue, or on division by zero.
class FieldError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class FieldOp { add, sub, mul };

/// Arithmetic context for F_q with q a small prime.
///
/// Only prime fields are supported. The modulus is bounded so that a product
/// of two residues fits in 64 bits with room to spare.
class PrimeField {
public:
    static constexpr std::uint32_t max_modulus = 1u << 16;

    explicit PrimeField(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }
    bool is_binary() const noexcept { return q_ == 2; }
    bool contains(Elem a) const noexcept { return a < q_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem mul(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem inv(Elem a) const;
    Elem apply(FieldOp op, Elem a, Elem b) const;

    /// Reduces an arbitrary integer to its canonical residue.
    Elem reduce(std::int64_t v) const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    void check(Elem a) const;

    std::uint32_t q_;
};

bool is_prime(std::uint32_t v) noexcept;

}  // namespace batchkit
