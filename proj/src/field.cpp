#include "batchkit/field.hpp"

namespace batchkit {

bool is_prime(std::uint32_t v) noexcept {
    if (v < 2) return false;
    for (std::uint32_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q))
        throw FieldError("field modulus " + std::to_string(q) + " is not prime");
    if (q > max_modulus)
        throw FieldError("field modulus " + std::to_string(q) + " exceeds supported range");
}

void PrimeField::check(Elem a) const {
    if (a >= q_)
        throw FieldError("element " + std::to_string(a) + " is not a canonical residue mod " +
                         std::to_string(q_));
}

Elem PrimeField::add(Elem a, Elem b) const {
    check(a);
    check(b);
    Elem s = a + b;
    return s >= q_ ? s - q_ : s;
}

Elem PrimeField::sub(Elem a, Elem b) const {
    check(a);
    check(b);
    return a >= b ? a - b : a + q_ - b;
}

Elem PrimeField::mul(Elem a, Elem b) const {
    check(a);
    check(b);
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
}

Elem PrimeField::neg(Elem a) const { return sub(0, a); }

Elem PrimeField::inv(Elem a) const {
    check(a);
    if (a == 0) throw FieldError("division by zero in F_" + std::to_string(q_));
    // Extended Euclid on (a, q).
    std::int64_t r0 = q_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        std::int64_t r2 = r0 - quot * r1;
        std::int64_t s2 = s0 - quot * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    return reduce(s0);
}

Elem PrimeField::apply(FieldOp op, Elem a, Elem b) const {
    switch (op) {
        case FieldOp::add: return add(a, b);
        case FieldOp::sub: return sub(a, b);
        case FieldOp::mul: return mul(a, b);
    }
    throw FieldError("unknown field operation");
}

Elem PrimeField::reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return static_cast<Elem>(r);
}

}  // namespace batchkit
