#include <gtest/gtest.h>

#include "batchkit/bounds.hpp"
#include "batchkit/errors.hpp"

using namespace batchkit;

namespace {

const FiniteBound& bound(const BoundReport& r, const std::string& name) {
    for (const auto& b : r.finite)
        if (b.name == name) return b;
    throw std::runtime_error("no bound " + name);
}

const AsymptoticBound& advisory(const BoundReport& r, const std::string& name) {
    for (const auto& b : r.asymptotic)
        if (b.name == name) return b;
    throw std::runtime_error("no bound " + name);
}

}  // namespace

TEST(BinaryEntropy, Values) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.11), 0.4999, 1e-3);
    EXPECT_NEAR(binary_entropy(0.11), 0.499915958165, 1e-9);
    EXPECT_THROW(binary_entropy(-0.1), std::domain_error);
    EXPECT_THROW(binary_entropy(1.5), std::domain_error);
}

TEST(BinaryEntropy, Symmetric) {
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        EXPECT_NEAR(binary_entropy(x), binary_entropy(1.0 - x), 1e-12) << x;
    }
}

TEST(FiniteBounds, NineFourFour) {
    const auto r = check_finite_bounds(9, 4, 4);
    EXPECT_TRUE(r.finite_satisfied());
    const auto& sp = bound(r, "sphere-packing");
    EXPECT_EQ(sp.capacity, 32);
    EXPECT_EQ(sp.demand, 10);
    EXPECT_EQ(sp.slack(), 22);
    const auto& pl = bound(r, "plotkin");
    EXPECT_EQ(pl.capacity, 72);
    EXPECT_EQ(pl.demand, 60);
    const auto& gr = bound(r, "griesmer");
    EXPECT_EQ(gr.capacity, 9);
    EXPECT_EQ(gr.demand, 8);
    EXPECT_TRUE(r.asymptotic.empty());
}

TEST(FiniteBounds, ThreeTwoTwoIsTight) {
    const auto r = check_finite_bounds(3, 2, 2);
    EXPECT_TRUE(r.finite_satisfied());
    EXPECT_EQ(bound(r, "plotkin").slack(), 0);
    EXPECT_EQ(bound(r, "plotkin").capacity, 6);
    EXPECT_EQ(bound(r, "griesmer").slack(), 0);
    EXPECT_EQ(bound(r, "griesmer").demand, 3);
}

TEST(FiniteBounds, GriesmerViolation) {
    const auto r = check_finite_bounds(3, 2, 3);
    EXPECT_FALSE(r.finite_satisfied());
    EXPECT_EQ(bound(r, "griesmer").outcome, BoundOutcome::violated);
    EXPECT_EQ(bound(r, "griesmer").demand, 5);
}

TEST(FiniteBounds, ExactForLongCodes) {
    // 2^190 is far outside 64-bit range.
    const auto r = check_finite_bounds(200, 10, 21);
    const auto& sp = bound(r, "sphere-packing");
    BigInt expect = 1;
    expect <<= 190;
    EXPECT_EQ(sp.capacity, expect);
}

TEST(FiniteBounds, DomainErrors) {
    EXPECT_THROW(check_finite_bounds(3, 4, 1), PreconditionError);
    EXPECT_THROW(check_finite_bounds(3, 2, 0), PreconditionError);
}

TEST(AsymptoticBounds, Examples) {
    const auto a = check_asymptotic_bounds(9, 4, 4);
    const auto& eb = advisory(a, "elias-bassalygo");
    EXPECT_NEAR(eb.rate, 4.0 / 9.0, 1e-12);
    ASSERT_TRUE(eb.cap);
    EXPECT_NEAR(*eb.cap, 0.08170416594551044, 1e-9);
    EXPECT_EQ(eb.outcome, BoundOutcome::advisory_violated);
    EXPECT_NEAR(*advisory(a, "mrrw").cap, 0.030266036888717096, 1e-9);

    const auto b = check_asymptotic_bounds(100, 4, 4);
    EXPECT_EQ(advisory(b, "elias-bassalygo").outcome, BoundOutcome::advisory_satisfied);
    EXPECT_EQ(advisory(b, "mrrw").outcome, BoundOutcome::advisory_satisfied);
    EXPECT_NEAR(*advisory(b, "elias-bassalygo").cap, 0.8562253307140817, 1e-9);
    EXPECT_NEAR(*advisory(b, "mrrw").cap, 0.8861744230260671, 1e-9);

    const auto c = check_asymptotic_bounds(10, 2, 6);
    EXPECT_EQ(advisory(c, "elias-bassalygo").outcome, BoundOutcome::not_applicable);
    EXPECT_FALSE(advisory(c, "elias-bassalygo").cap);
    EXPECT_NEAR(*advisory(c, "mrrw").cap, 0.08146891501435435, 1e-9);
    EXPECT_EQ(advisory(c, "mrrw").outcome, BoundOutcome::advisory_violated);
}

TEST(MaxMByFiniteBounds, Examples) {
    EXPECT_EQ(max_m_by_finite_bounds(9, 4), 4u);
    EXPECT_EQ(max_m_by_finite_bounds(3, 2), 2u);
    EXPECT_EQ(max_m_by_finite_bounds(4, 4), 1u);
}

TEST(MaxMByFiniteBounds, Monotone) {
    for (std::size_t M = 1; M <= 24; ++M)
        for (std::size_t n = 1; n <= M; ++n) {
            const auto best = max_m_by_finite_bounds(M, n);
            for (std::size_t m = 1; m <= M; ++m)
                EXPECT_EQ(check_finite_bounds(M, n, m).finite_satisfied(), m <= best) << M << " " << n << " " << m;
        }
}
