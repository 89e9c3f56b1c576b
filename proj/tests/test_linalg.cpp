#include "biortho/linalg.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace biortho {
namespace {

using testing::mat;
using testing::unit;
using namespace std::complex_literals;

const Complex I1 = 1i;

TEST(Adjoint, ConjugatesScalar) {
    const ComplexMatrix m = adjoint(mat({{I1}}));
    EXPECT_EQ(m(0, 0), -I1);
}

TEST(Adjoint, TransposesRealMatrix) {
    EXPECT_EQ(adjoint(mat({{0, 1}, {0, 0}})), mat({{0, 0}, {1, 0}}));
}

TEST(Adjoint, HermitianIsFixed) {
    const ComplexMatrix h = mat({{2, 1.0 - I1}, {1.0 + I1, -3}});
    EXPECT_EQ(adjoint(h), h);
}

TEST(Adjoint, IsInvolution) {
    std::mt19937_64 rng(1);
    const ComplexMatrix m = testing::random_matrix(rng, 3, 5);
    EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(Tolerance, RejectsNonPositive) {
    EXPECT_THROW((Tolerance{0.0, 1e-8, 1e-8}.validate()), InvalidArgument);
    EXPECT_THROW((Tolerance{1e-10, -1.0, 1e-8}.validate()), InvalidArgument);
    EXPECT_THROW((Tolerance{1e-10, 1e-8, std::numeric_limits<double>::quiet_NaN()}.validate()), InvalidArgument);
    EXPECT_NO_THROW(Tolerance{}.validate());
}

TEST(Nullspace, Identity) { EXPECT_EQ(nullspace(ComplexMatrix::Identity(3, 3)).dim(), 0); }

TEST(Nullspace, Zero) { EXPECT_EQ(nullspace(ComplexMatrix::Zero(2, 2)).dim(), 2); }

TEST(Nullspace, NilpotentJordanBlock) {
    const Subspace k = nullspace(mat({{0, 1}, {0, 0}}));
    ASSERT_EQ(k.dim(), 1);
    EXPECT_NEAR(subspace_angle(k, Subspace::span(unit(2, 0))), 0.0, 1e-14);
}

TEST(Nullspace, RejectsNonFinite) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(nullspace(m), InvalidArgument);
}

TEST(Nullspace, RejectsEmpty) { EXPECT_THROW(nullspace(ComplexMatrix(0, 0)), InvalidArgument); }

TEST(Nullspace, AnnihilatedAndOrthonormal) {
    std::mt19937_64 rng(7);
    // rank-3 product in C^{6x6}
    const ComplexMatrix m = testing::random_matrix(rng, 6, 3) * testing::random_matrix(rng, 3, 6);
    const Subspace k = nullspace(m);
    ASSERT_EQ(k.dim(), 3);
    EXPECT_LE((m * k.basis()).norm(), 1e-10 * m.norm());
    EXPECT_LE(k.orthonormality_defect(), 1e-12);
}

TEST(RangeSpace, Identity) { EXPECT_EQ(range_space(ComplexMatrix::Identity(3, 3)).dim(), 3); }

TEST(RangeSpace, NilpotentJordanBlock) {
    const Subspace r = range_space(mat({{0, 1}, {0, 0}}));
    ASSERT_EQ(r.dim(), 1);
    EXPECT_NEAR(subspace_angle(r, Subspace::span(unit(2, 0))), 0.0, 1e-14);
}

TEST(RangeSpace, RankOneOuterProduct) {
    const ComplexVector u = testing::vec({1.0, 2.0 * I1, -1.0});
    const ComplexVector v = testing::vec({0.5, 1.0, I1});
    const Subspace r = range_space(u * v.adjoint());
    ASSERT_EQ(r.dim(), 1);
    EXPECT_NEAR(subspace_angle(r, Subspace::span(u)), 0.0, 1e-14);
}

TEST(RankNullity, HoldsOnRandomLowRank) {
    std::mt19937_64 rng(3);
    for (Index r = 0; r <= 5; ++r) {
        const ComplexMatrix m = r == 0 ? ComplexMatrix::Zero(5, 7)
                                       : ComplexMatrix(testing::random_matrix(rng, 5, r) * testing::random_matrix(rng, r, 7));
        EXPECT_EQ(range_space(m).dim() + nullspace(m).dim(), 7);
        if (r > 0) EXPECT_EQ(numerical_rank(m), testing::qr_rank(m));
    }
}

TEST(SubspaceAngle, SameLine) {
    EXPECT_DOUBLE_EQ(subspace_angle(Subspace::span(unit(2, 0)), Subspace::span(unit(2, 0))), 0.0);
}

TEST(SubspaceAngle, OrthogonalLines) {
    EXPECT_NEAR(subspace_angle(Subspace::span(unit(2, 0)), Subspace::span(unit(2, 1))), std::numbers::pi / 2, 1e-15);
}

TEST(SubspaceAngle, DiagonalLine) {
    const ComplexVector d = testing::vec({1.0, 1.0}) / std::sqrt(2.0);
    // closed form: the angle between e1 and (e1 + e2)/sqrt(2) is arccos(1/sqrt(2))
    EXPECT_NEAR(subspace_angle(Subspace::span(unit(2, 0)), Subspace::span(d)), std::numbers::pi / 4, 1e-15);
}

TEST(SubspaceAngle, SymmetricAndPhaseInvariant) {
    std::mt19937_64 rng(9);
    const ComplexMatrix a = testing::random_matrix(rng, 5, 2);
    const ComplexMatrix b = testing::random_matrix(rng, 5, 2);
    const Subspace sa = Subspace::span(a);
    const Subspace sb = Subspace::span(b);
    EXPECT_NEAR(subspace_angle(sa, sb), subspace_angle(sb, sa), 1e-14);
    EXPECT_NEAR(subspace_angle(sa, Subspace::span(Complex(0, 1) * a)), 0.0, 1e-7);
}

TEST(SubspaceAngle, UnequalDimensionsGiveRightAngle) {
    const Subspace line = Subspace::span(unit(3, 0));
    const Subspace plane = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
    EXPECT_NEAR(subspace_angle(line, plane), std::numbers::pi / 2, 1e-15);
}

TEST(SubspaceAngle, AmbientMismatchThrows) {
    EXPECT_THROW(subspace_angle(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST(OrthogonalComplement, DimensionsAddUp) {
    std::mt19937_64 rng(4);
    const Subspace s = Subspace::span(testing::random_matrix(rng, 6, 2));
    const Subspace c = orthogonal_complement(s);
    EXPECT_EQ(c.dim(), 4);
    EXPECT_LE((s.basis().adjoint() * c.basis()).norm(), 1e-13);
    EXPECT_EQ(orthogonal_complement(Subspace::full(3)).dim(), 0);
}

TEST(ConditionNumber, Identity) { EXPECT_NEAR(condition_number(ComplexMatrix::Identity(4, 4)), 1.0, 1e-14); }

TEST(ConditionNumber, Diagonal) { EXPECT_NEAR(condition_number(testing::diag({2, 1})), 2.0, 1e-14); }

TEST(ConditionNumber, NearSingularIsInfinite) {
    // sigma_min of [[1,1],[0,1e-12]] is about 7e-13, below 1e-10 * sigma_max * 2
    EXPECT_TRUE(std::isinf(condition_number(mat({{1, 1}, {0, 1e-12}}))));
}

TEST(ConditionNumber, MatchesHermitianOracle) {
    std::mt19937_64 rng(12);
    const ComplexMatrix m = testing::random_matrix(rng, 5, 5);
    const double smin = testing::sigma_min_oracle(m);
    const double smax = std::sqrt(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m.adjoint() * m).eigenvalues()(4));
    EXPECT_NEAR(condition_number(m), smax / smin, 1e-8 * smax / smin);
}

TEST(KernelChain, NilpotentStaircase) {
    ComplexMatrix n = ComplexMatrix::Zero(4, 4);
    n(0, 1) = n(1, 2) = n(2, 3) = 1.0;
    const KernelChain chain = kernel_chain(n);
    EXPECT_EQ(chain.dims, (std::vector<Index>{1, 2, 3, 4}));
    EXPECT_EQ(chain.space.dim(), 4);
}

TEST(KernelChain, InvertibleIsEmpty) {
    const KernelChain chain = kernel_chain(ComplexMatrix::Identity(3, 3));
    EXPECT_EQ(chain.space.dim(), 0);
}

}  // namespace
}  // namespace biortho
