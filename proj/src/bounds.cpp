#include "batchkit/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "batchkit/errors.hpp"

namespace batchkit {

namespace {

void check_params(std::size_t M, std::size_t n, std::size_t m) {
    if (M < 1 || n < 1 || m < 1) throw PreconditionError("bounds need M, n, m >= 1");
    if (n > M) throw PreconditionError("bounds need n <= M");
}

BigInt pow2(std::size_t e) {
    BigInt v = 1;
    v <<= e;
    return v;
}

BoundOutcome exact(const BigInt& capacity, const BigInt& demand) {
    return capacity >= demand ? BoundOutcome::satisfied : BoundOutcome::violated;
}

FiniteBound sphere_packing(std::size_t M, std::size_t n, std::size_t m) {
    BigInt volume = 0, term = 1;  // term = C(M, i)
    const std::size_t radius = (m - 1) / 2;
    for (std::size_t i = 0; i <= radius && i <= M; ++i) {
        volume += term;
        term = term * (M - i) / (i + 1);
    }
    BigInt cap = pow2(M - n);
    return {"sphere-packing", cap, volume, exact(cap, volume)};
}

FiniteBound plotkin(std::size_t M, std::size_t n, std::size_t m) {
    // m <= M 2^{n-1} / (2^n - 1), cross-multiplied.
    BigInt cap = BigInt(M) * pow2(n - 1);
    BigInt demand = BigInt(m) * (pow2(n) - 1);
    return {"plotkin", cap, demand, exact(cap, demand)};
}

FiniteBound griesmer(std::size_t M, std::size_t n, std::size_t m) {
    BigInt demand = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt d = pow2(i);
        demand += (BigInt(m) + d - 1) / d;
    }
    BigInt cap = M;
    return {"griesmer", cap, demand, exact(cap, demand)};
}

AsymptoticBound advisory(std::string name, double rate, std::optional<double> cap) {
    if (!cap) return {std::move(name), rate, std::nullopt, BoundOutcome::not_applicable};
    const auto outcome =
        rate <= *cap + advisory_tolerance ? BoundOutcome::advisory_satisfied : BoundOutcome::advisory_violated;
    return {std::move(name), rate, cap, outcome};
}

}  // namespace

std::string to_string(BoundOutcome o) {
    switch (o) {
        case BoundOutcome::satisfied: return "satisfied";
        case BoundOutcome::violated: return "violated";
        case BoundOutcome::advisory_satisfied: return "advisory-satisfied";
        case BoundOutcome::advisory_violated: return "advisory-violated";
        case BoundOutcome::not_applicable: return "not-applicable";
    }
    return "unknown";
}

bool BoundReport::finite_satisfied() const {
    for (const auto& b : finite)
        if (b.outcome != BoundOutcome::satisfied) return false;
    return true;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy needs 0 <= x <= 1");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

BoundReport check_finite_bounds(std::size_t M, std::size_t n, std::size_t m) {
    check_params(M, n, m);
    BoundReport r{M, n, m, {}, {}};
    r.finite = {sphere_packing(M, n, m), plotkin(M, n, m), griesmer(M, n, m)};
    return r;
}

BoundReport check_asymptotic_bounds(std::size_t M, std::size_t n, std::size_t m) {
    check_params(M, n, m);
    BoundReport r{M, n, m, {}, {}};
    const double Md = static_cast<double>(M), md = static_cast<double>(m);
    const double rate = static_cast<double>(n) / Md;

    std::optional<double> eb;
    if (2 * m <= M) eb = 1.0 - binary_entropy(0.5 * (1.0 - std::sqrt(1.0 - 2.0 * md / Md)));
    r.asymptotic.push_back(advisory("elias-bassalygo", rate, eb));

    std::optional<double> mrrw;
    if (m <= M) mrrw = binary_entropy(0.5 - std::sqrt(md * (Md - md)) / Md);
    r.asymptotic.push_back(advisory("mrrw", rate, mrrw));
    return r;
}

BoundReport check_bounds(std::size_t M, std::size_t n, std::size_t m) {
    auto r = check_finite_bounds(M, n, m);
    r.asymptotic = check_asymptotic_bounds(M, n, m).asymptotic;
    return r;
}

std::size_t max_m_by_finite_bounds(std::size_t M, std::size_t n) {
    check_params(M, n, 1);
    // Every finite bound is monotone in m and Griesmer alone forces m <= M.
    std::size_t best = 0;
    for (std::size_t m = 1; m <= M; ++m) {
        if (!check_finite_bounds(M, n, m).finite_satisfied()) break;
        best = m;
    }
    return best;
}

}  // namespace batchkit
