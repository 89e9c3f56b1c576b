// Seeded property checks across the gallery.

#include "biortho/conditions.hpp"
#include "biortho/gallery.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace biortho {
namespace {

using enum ConditionId;

class RandomMatrix : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomMatrix, FiniteDimensionalInvariants) {
    const std::uint64_t seed = GetParam();
    const ComplexMatrix a = generate({"random_gaussian", 2 + seed % 7, {}, {}, seed});
    const DiagnosisReport r = check_conditions(a);
    EXPECT_EQ(r.status(C1), Status::Pass);
    EXPECT_EQ(r.status(C3), Status::Pass);
    EXPECT_EQ(r.status(C3p), Status::Pass);
    EXPECT_EQ(r.status(C4p), Status::Pass);
    EXPECT_NE(r.status(C2p), Status::Fail);
    EXPECT_LE(r.residual_identity_angle, 1e-7);
    EXPECT_TRUE(r.biorthonormal_basis_exists);
}

TEST_P(RandomMatrix, BiorthonormalityResidual) {
    const std::uint64_t seed = GetParam();
    const Index n = 2 + static_cast<Index>(seed % 7);
    const ComplexMatrix a = generate({"random_gaussian", static_cast<std::size_t>(n), {}, {}, seed});
    const PointSpectrum ps = point_spectrum(a);
    const BiorthonormalSystem sys = biorthonormalize(a, ps);
    const double kappa = condition_number(eigvec_matrix(ps));
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    EXPECT_LE((sys.gram() - id).cwiseAbs().maxCoeff(), 1e-8 * kappa);
    EXPECT_LE((resolution_of_identity(sys) - id).norm(), 1e-8 * kappa);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomMatrix, ::testing::Range<std::uint64_t>(0, 40));

TEST(Adjoint, DiagnosisIsSymmetricUnderAdjoint) {
    // swapping A and A^H exchanges the roles of left and right; verdicts are unchanged
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix a = generate({"block_jordan", 5, {{"kappa", 10.0}}, {}, seed});
        const DiagnosisReport r = check_conditions(a);
        const DiagnosisReport s = check_conditions(a.adjoint());
        for (auto id : kAllConditions) EXPECT_EQ(r.status(id), s.status(id)) << to_string(id) << " seed " << seed;
    }
}

TEST(Similarity, UnitarySimilarityPreservesVerdicts) {
    ComplexGaussian rng(77);
    const ComplexMatrix u = haar_unitary(rng, 4);
    for (const ComplexMatrix& a : {testing::mat({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}}),
                                   testing::mat({{1, 1, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 1}, {0, 0, 0, 4}})}) {
        const DiagnosisReport r = check_conditions(a);
        const DiagnosisReport s = check_conditions(u * a * u.adjoint());
        for (auto id : kAllConditions) EXPECT_EQ(r.status(id), s.status(id)) << to_string(id);
        EXPECT_EQ(r.sigma_set, s.sigma_set);
    }
}

TEST(Scaling, VerdictsInvariantUnderScaling) {
    const ComplexMatrix a = generate({"block_jordan", 6, {{"kappa", 10.0}}, {}, 2});
    const DiagnosisReport r = check_conditions(a);
    for (double c : {1e-3, 1e3}) {
        const DiagnosisReport s = check_conditions(c * a);
        for (auto id : kAllConditions) EXPECT_EQ(r.status(id), s.status(id)) << to_string(id) << " c=" << c;
    }
}

}  // namespace
}  // namespace biortho
