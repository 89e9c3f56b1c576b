#include "biortho/conditions.hpp"
#include "biortho/gallery.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace biortho {
namespace {

using testing::mat;
using namespace std::complex_literals;
using enum ConditionId;

TEST(SigmaSet, HermitianIsEmpty) {
    const ComplexMatrix h = mat({{2, 1.0 - 1i, 0}, {1.0 + 1i, 0, 3i}, {0, -3i, -1}});
    EXPECT_TRUE(sigma_set(h, point_spectrum(h)).empty());
}

TEST(SigmaSet, UpperTriangularBothClusters) {
    const ComplexMatrix a = mat({{1, 1}, {0, 2}});
    EXPECT_EQ(sigma_set(a, point_spectrum(a)), (std::vector<std::size_t>{0, 1}));
}

TEST(SigmaSet, RotationIsNormal) {
    const ComplexMatrix a = mat({{0, 1}, {-1, 0}});
    EXPECT_TRUE(sigma_set(a, point_spectrum(a)).empty());
}

TEST(ResidualIdentity, Identity) {
    const ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    EXPECT_NEAR(residual_identity_check(a, point_spectrum(a)), 0.0, 1e-15);
}

TEST(ResidualIdentity, JordanTwo) {
    const ComplexMatrix a = mat({{0, 1}, {0, 0}});
    EXPECT_NEAR(residual_identity_check(a, point_spectrum(a)), 0.0, 1e-15);
}

TEST(ResidualIdentity, RandomGaussian) {
    std::mt19937_64 rng(6);
    const ComplexMatrix a = testing::random_matrix(rng, 6, 6);
    EXPECT_LE(residual_identity_check(a, point_spectrum(a)), 1e-8);
}

TEST(CheckConditions, NormalDiagonal) {
    const DiagnosisReport r = check_conditions(testing::diag({1, 1i, -1}));
    for (auto id : kAllConditions) EXPECT_NE(r.status(id), Status::Fail) << to_string(id);
    for (const auto& [key, status] : r.normality.properties) EXPECT_EQ(status, Status::Pass) << key;
    EXPECT_TRUE(r.normality.is_normal);
    EXPECT_TRUE(r.biorthonormal_basis_exists);
    EXPECT_TRUE(r.sigma_set.empty());
    EXPECT_NEAR(r.kappa_v, 1.0, 1e-12);
}

TEST(CheckConditions, JordanTwo) {
    const DiagnosisReport r = check_conditions(mat({{0, 1}, {0, 0}}));
    EXPECT_EQ(r.status(C1), Status::Pass);
    EXPECT_EQ(r.status(C2), Status::Fail);
    EXPECT_EQ(r.status(C3), Status::Pass);
    EXPECT_EQ(r.status(C4), Status::Fail);
    EXPECT_EQ(r.status(C2p), Status::Vacuous);
    EXPECT_EQ(r.status(C3p), Status::Pass);
    EXPECT_EQ(r.status(C4p), Status::Pass);
    EXPECT_FALSE(r.diagonalizable);
    EXPECT_FALSE(r.biorthonormal_basis_exists);
    EXPECT_TRUE(std::isinf(r.kappa_v));
    EXPECT_EQ(r.spans.eigen_span_dim, 1);
    EXPECT_EQ(r.verdict(C2).witnesses, (std::vector<std::size_t>{0}));
}

TEST(CheckConditions, UpperTriangular) {
    const DiagnosisReport r = check_conditions(mat({{1, 1}, {0, 2}}));
    for (auto id : kAllConditions) EXPECT_EQ(r.status(id), Status::Pass) << to_string(id);
    EXPECT_FALSE(r.normality.is_normal);
    EXPECT_EQ(r.normality.properties.at('a'), Status::Fail);
    EXPECT_GT(r.normality.commutator_norm, 0.1);
    EXPECT_TRUE(r.biorthonormal_basis_exists);
    EXPECT_TRUE(r.diagonalizable);
}

TEST(CheckConditions, RejectsBadInput) {
    EXPECT_THROW(check_conditions(ComplexMatrix::Zero(2, 3)), InvalidArgument);
    EXPECT_THROW(check_conditions(ComplexMatrix::Identity(2, 2), Tolerance{-1, 1e-8, 1e-8}), InvalidArgument);
}

TEST(CheckConditions, OneVerdictPerCondition) {
    const DiagnosisReport r = check_conditions(testing::diag({1, 2}));
    ASSERT_EQ(r.verdicts.size(), kAllConditions.size());
    for (std::size_t i = 0; i < kAllConditions.size(); ++i) EXPECT_EQ(r.verdicts[i].id, kAllConditions[i]);
    EXPECT_EQ(r.notes.size(), 3u);
}

TEST(CheckConditions, BasisExistsIffC2AndC4) {
    // in finite dimensions the existence of the basis is exactly C2 + C4 passing
    std::vector<ComplexMatrix> cases = {mat({{0, 1}, {0, 0}}), mat({{1, 1}, {0, 2}}), testing::diag({3, 3})};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cases.push_back(generate({"block_jordan", 5, {{"kappa", 10.0}}, {}, seed}));
    }
    for (const auto& a : cases) {
        const DiagnosisReport r = check_conditions(a);
        const bool expected = r.status(C2) != Status::Fail && r.status(C4) == Status::Pass;
        EXPECT_EQ(r.biorthonormal_basis_exists, expected);
        EXPECT_EQ(r.diagonalizable, r.status(C4) == Status::Pass);
        EXPECT_EQ(r.biorthonormal_basis_exists, std::isfinite(r.kappa_v));
    }
}

TEST(Strings, RoundTrip) {
    for (auto id : kAllConditions) EXPECT_EQ(condition_from_string(to_string(id)), id);
    for (auto s : {Status::Pass, Status::Fail, Status::Vacuous}) EXPECT_EQ(status_from_string(to_string(s)), s);
    EXPECT_FALSE(condition_from_string("C9").has_value());
    EXPECT_FALSE(status_from_string("MAYBE").has_value());
}

}  // namespace
}  // namespace biortho
