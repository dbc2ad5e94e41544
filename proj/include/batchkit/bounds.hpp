#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace batchkit {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundOutcome { satisfied, violated, advisory_satisfied, advisory_violated, not_applicable };

std::string to_string(BoundOutcome o);

/// An exact bound in the form capacity >= demand.
struct FiniteBound {
    std::string name;
    BigInt capacity;
    BigInt demand;
    BoundOutcome outcome;

    BigInt slack() const { return capacity - demand; }
};

/// An asymptotic rate bound n/M <= cap, evaluated without its o(1) term.
struct AsymptoticBound {
    std::string name;
    double rate;
    std::optional<double> cap;  // unset when not applicable
    BoundOutcome outcome;

    std::optional<double> slack() const {
        if (!cap) return std::nullopt;
        return *cap - rate;
    }
};

struct BoundReport {
    std::size_t M, n, m;
    std::vector<FiniteBound> finite;
    std::vector<AsymptoticBound> asymptotic;

    /// True when every finite bound is satisfied (advisory results ignored).
    bool finite_satisfied() const;
};

/// Absolute tolerance on evaluated right-hand sides of the advisory bounds.
inline constexpr double advisory_tolerance = 1e-9;

/// H2(x) = -x log2 x - (1-x) log2(1-x), with H2(0) = H2(1) = 0.
double binary_entropy(double x);

/// Sphere-packing, Plotkin and Griesmer bounds for a binary [M, n, m] code,
/// in exact integer arithmetic.
BoundReport check_finite_bounds(std::size_t M, std::size_t n, std::size_t m);

/// Elias-Bassalygo and MRRW rate bounds with the o(1) term dropped. Results
/// are advisory: short valid codes can exceed them.
BoundReport check_asymptotic_bounds(std::size_t M, std::size_t n, std::size_t m);

/// Both of the above in one report.
BoundReport check_bounds(std::size_t M, std::size_t n, std::size_t m);

/// Largest m passing all three finite bounds. Any binary [M, n, m] batch
/// code has m at most this.
std::size_t max_m_by_finite_bounds(std::size_t M, std::size_t n);

}  // namespace batchkit
