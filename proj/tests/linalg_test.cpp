#include <gtest/gtest.h>

#include <random>

#include "batchkit/linalg.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace batchkit;
using namespace batchkit::testing;

namespace {

std::vector<Combination> from_oracle(const std::vector<oracle::Solution>& sols) {
    std::vector<Combination> out;
    for (const auto& s : sols) out.push_back({s.support, s.coeffs});
    return out;
}

Matrix random_matrix(std::mt19937_64& rng, const PrimeField& f, std::size_t rows, std::size_t cols) {
    std::vector<Elem> d(rows * cols);
    for (auto& e : d) e = static_cast<Elem>(rng() % f.q());
    return Matrix(f, rows, cols, std::move(d));
}

}  // namespace

TEST(Encode, Examples) {
    EXPECT_EQ(mat_vec_encode(two_layer_matrix(), bvec({0, 0, 0, 0})), Vector::zeros(gf2, 9));
    EXPECT_EQ(mat_vec_encode(subcube_matrix(), bvec({1, 1})), bvec({1, 1, 0}));
    EXPECT_EQ(mat_vec_encode(two_layer_matrix(), bvec({1, 0, 1, 1})), bvec({1, 0, 1, 1, 1, 0, 0, 1, 1}));
}

TEST(Encode, MatchesDotProductOracle) {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        PrimeField f(q);
        for (int trial = 0; trial < 50; ++trial) {
            auto g = random_matrix(rng, f, 1 + rng() % 5, 1 + rng() % 7);
            std::vector<Elem> x(g.rows());
            for (auto& e : x) e = static_cast<Elem>(rng() % q);
            auto y = mat_vec_encode(g, Vector(f, x));
            auto expect = oracle::encode(oracle::grid_of(g), x, q);
            EXPECT_EQ(std::vector<Elem>(y.entries().begin(), y.entries().end()), expect);
        }
    }
}

TEST(Encode, DimensionMismatch) {
    EXPECT_THROW(mat_vec_encode(two_layer_matrix(), bvec({1, 0, 1})), DimensionError);
    EXPECT_THROW(mat_vec_encode(two_layer_matrix(), vec(PrimeField(3), {1, 0, 1, 1})), DimensionError);
}

TEST(MatrixFq, RejectsBadShapesAndEntries) {
    EXPECT_THROW(Matrix(gf2, 0, 3, {}), DimensionError);
    EXPECT_THROW(Matrix(gf2, 2, 2, {1, 0, 1}), DimensionError);
    EXPECT_THROW(Matrix(gf2, 1, 2, {1, 2}), FieldError);
    EXPECT_THROW(binary({{1, 0}, {1}}), DimensionError);
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(two_layer_matrix()), 4u);
    EXPECT_EQ(rank(Matrix::zeros(gf2, 3, 5)), 0u);
    EXPECT_EQ(rank(even_weight_matrix()), 3u);
}

TEST(Rank, MatchesIndependentSubsetOracleOnAllSmallMatrices) {
    // Every 1..3 x 1..3 matrix over F_2 and F_3, plus random 4x4 ones.
    for (std::uint32_t q : {2u, 3u}) {
        PrimeField f(q);
        for (std::size_t rows = 1; rows <= 3; ++rows)
            for (std::size_t cols = 1; cols <= 3; ++cols)
                oracle::for_each_vector(rows * cols, q, [&](const std::vector<Elem>& d) {
                    Matrix a(f, rows, cols, d);
                    ASSERT_EQ(rank(a), oracle::rank(oracle::grid_of(a), q));
                });
        std::mt19937_64 rng(q);
        for (int i = 0; i < 300; ++i) {
            auto a = random_matrix(rng, f, 4, 4);
            ASSERT_EQ(rank(a), oracle::rank(oracle::grid_of(a), q));
        }
    }
}

TEST(RowWeights, Examples) {
    EXPECT_EQ(row_weights(two_layer_matrix()), (std::vector<std::size_t>{4, 4, 4, 4}));
    EXPECT_EQ(row_weights(Matrix::identity(gf2, 3)), (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_EQ(row_weights(even_weight_matrix()), (std::vector<std::size_t>{4, 2, 2}));
}

TEST(MinDistance, Examples) {
    EXPECT_EQ(min_distance(even_weight_matrix()), 2u);
    EXPECT_EQ(min_distance(two_layer_matrix()), 4u);
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(min_distance(Matrix::identity(gf2, n)), 1u);
}

TEST(MinDistance, Errors) {
    EXPECT_THROW(min_distance(binary({{1, 1, 0}, {1, 1, 0}})), PreconditionError);
    std::vector<Elem> d(25 * 25, 0);
    for (std::size_t i = 0; i < 25; ++i) d[i * 25 + i] = 1;
    EXPECT_THROW(min_distance(Matrix(gf2, 25, 25, d)), GuardError);
}

TEST(MinDistance, MatchesEnumerationOracle) {
    std::mt19937_64 rng(5);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        PrimeField f(q);
        int checked = 0;
        while (checked < 60) {
            auto a = random_matrix(rng, f, 1 + rng() % 3, 2 + rng() % 5);
            if (rank(a) != a.rows()) continue;
            ++checked;
            ASSERT_EQ(min_distance(a), oracle::min_distance(oracle::grid_of(a), q));
            if (q == 2) {
                auto w = row_weights(a);
                EXPECT_LE(min_distance(a), *std::min_element(w.begin(), w.end()));
            }
        }
    }
}

TEST(CombinationsEqualTo, Examples) {
    auto e = [](std::size_t n, std::size_t i) { return Vector::unit(gf2, n, i); };
    EXPECT_EQ(combinations_equal_to(even_weight_matrix(), e(3, 0), 4),
              (std::vector<Combination>{{{0}, {1}}, {{1, 2, 3}, {1, 1, 1}}}));
    EXPECT_EQ(combinations_equal_to(Matrix::identity(gf2, 3), e(3, 1), 3), (std::vector<Combination>{{{1}, {1}}}));
    EXPECT_EQ(combinations_equal_to(subcube_matrix(), e(2, 0), 3),
              (std::vector<Combination>{{{0}, {1}}, {{1, 2}, {1, 1}}}));
}

TEST(CombinationsEqualTo, SupportCapAndEdgeCases) {
    auto e1 = Vector::unit(gf2, 3, 0);
    EXPECT_EQ(combinations_equal_to(even_weight_matrix(), e1, 2), (std::vector<Combination>{{{0}, {1}}}));
    EXPECT_TRUE(combinations_equal_to(even_weight_matrix(), Vector::zeros(gf2, 3), 4).empty());
    EXPECT_THROW(combinations_equal_to(even_weight_matrix(), Vector::unit(gf2, 4, 0), 4), DimensionError);
    EXPECT_THROW(combinations_equal_to(even_weight_matrix(), e1, 5), DimensionError);
}

TEST(CombinationsEqualTo, NonbinaryCoefficients) {
    // Columns (1,1), (0,1), (2,0) over F_3.
    PrimeField f3(3);
    Matrix a = Matrix::from_rows(f3, {{1, 0, 2}, {1, 1, 0}});
    auto got = combinations_equal_to(a, Vector::unit(f3, 2, 0), 3);
    // (2,0) * 2 = (1,0); (1,1) + 2*(0,1) = (1,0).
    EXPECT_EQ(got, (std::vector<Combination>{{{2}, {2}}, {{0, 1}, {1, 2}}}));
}

TEST(CombinationsEqualTo, MatchesBruteForceOracle) {
    std::mt19937_64 rng(17);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        PrimeField f(q);
        for (int trial = 0; trial < 120; ++trial) {
            const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % (q == 5 ? 5 : 6);
            auto a = random_matrix(rng, f, rows, cols);
            auto target = Vector::unit(f, rows, rng() % rows);
            auto want = from_oracle(oracle::minimal_solutions(oracle::grid_of(a), std::vector<Elem>(target.entries().begin(), target.entries().end()), q));
            auto got = combinations_equal_to(a, target, cols);
            ASSERT_EQ(got, want);
            ASSERT_EQ(detail::combinations_equal_to_generic(a, target, cols), want);
        }
    }
}

TEST(CombinationsEqualTo, SolutionsRecheckAndAreSupersetFree) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        PrimeField f(trial % 2 ? 3 : 2);
        auto a = random_matrix(rng, f, 2 + rng() % 3, 3 + rng() % 6);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            auto target = Vector::unit(f, a.rows(), i);
            auto sols = combinations_equal_to(a, target, a.cols());
            for (const auto& s : sols) {
                std::vector<Elem> acc(a.rows(), 0);
                for (std::size_t k = 0; k < s.support.size(); ++k) {
                    ASSERT_NE(s.coeffs[k], 0u);
                    for (std::size_t r = 0; r < a.rows(); ++r)
                        acc[r] = f.add(acc[r], f.mul(s.coeffs[k], a.at(r, s.support[k])));
                }
                ASSERT_EQ(Vector(f, acc), target);
            }
            for (const auto& s : sols)
                for (const auto& o : sols)
                    if (&s != &o)
                        ASSERT_FALSE(std::includes(s.support.begin(), s.support.end(), o.support.begin(), o.support.end()));
        }
    }
}
