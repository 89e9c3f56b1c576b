#include "biortho/gallery.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace biortho {
namespace {

using testing::mat;

TEST(Generate, JordanTwo) {
    EXPECT_EQ(generate({"jordan", 2, {{"lambda", 0.0}}, {2}, 0}), mat({{0, 1}, {0, 0}}));
}

TEST(Generate, JordanBlocksOnDiagonal) {
    const ComplexMatrix m = generate({"jordan", 4, {{"lambda", Complex(1, 2)}}, {3, 1}, 0});
    ComplexMatrix expected = Complex(1, 2) * ComplexMatrix::Identity(4, 4);
    expected(0, 1) = expected(1, 2) = 1.0;
    EXPECT_EQ(m, expected);
}

TEST(Generate, JordanSegreMustMatchSize) {
    EXPECT_THROW(generate({"jordan", 3, {}, {2}, 0}), GalleryError);
}

TEST(Generate, PtDimerEigenvalues) {
    const ComplexMatrix h = generate({"pt_dimer", 2, {{"a", 0.6}, {"b", 1.0}}, {}, 0});
    EXPECT_EQ(h, mat({{Complex(0, 0.6), 1}, {1, Complex(0, -0.6)}}));
    const auto v = point_spectrum(h).values();
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NEAR(std::abs(v[0] + 0.8), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v[1] - 0.8), 0.0, 1e-12);
}

TEST(Generate, PtDimerNeedsParameters) {
    EXPECT_THROW(generate({"pt_dimer", 2, {{"a", 0.6}}, {}, 0}), GalleryError);
    EXPECT_THROW(generate({"pt_dimer", 3, {{"a", 0.6}, {"b", 1.0}}, {}, 0}), GalleryError);
}

TEST(Generate, EpFamilyRejectsNegativeT) {
    EXPECT_THROW(generate({"ep_family", 2, {{"t", -0.1}}, {}, 0}), GalleryError);
}

TEST(Generate, ShiftTruncIsNilpotent) {
    const ComplexMatrix a = generate({"shift_trunc", 4, {}, {}, 0});
    const PointSpectrum ps = point_spectrum(a);
    ASSERT_EQ(ps.clusters.size(), 1u);
    EXPECT_EQ(ps.clusters[0].algebraic_multiplicity, 4u);
    EXPECT_EQ(ps.clusters[0].geometric_multiplicity, 1u);
    ComplexMatrix p = a;
    for (int k = 1; k < 4; ++k) p = p * a;
    EXPECT_EQ(p, ComplexMatrix::Zero(4, 4));
}

TEST(Generate, WeightedShiftWeights) {
    const ComplexMatrix a = generate({"weighted_shift_trunc", 4, {{"decay", 2.0}}, {}, 0});
    EXPECT_DOUBLE_EQ(a(0, 1).real(), 1.0);
    EXPECT_DOUBLE_EQ(a(1, 2).real(), 0.25);
    EXPECT_NEAR(a(2, 3).real(), 1.0 / 9.0, 1e-16);
}

TEST(Generate, DiagIsScaledRootsOfUnity) {
    const ComplexMatrix a = generate({"diag", 4, {{"scale", 2.0}}, {}, 0});
    for (Index k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(a(k, k)), 2.0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 1) - Complex(0, 2)), 0.0, 1e-15);
}

TEST(Generate, SeededFamiliesAreReproducible) {
    for (const char* name : {"random_gaussian", "random_normal", "block_jordan"}) {
        const FamilySpec spec{name, 6, {}, {}, 42};
        EXPECT_EQ(generate(spec), generate(spec)) << name;
        FamilySpec other = spec;
        other.seed = 43;
        EXPECT_NE(generate(spec), generate(other)) << name;
    }
}

TEST(Generate, RandomNormalCommutes) {
    const ComplexMatrix a = generate({"random_normal", 8, {}, {}, 3});
    EXPECT_LE((a * a.adjoint() - a.adjoint() * a).norm(), 1e-12 * a.squaredNorm());
}

TEST(Generate, UnknownFamily) { EXPECT_THROW(generate({"no_such", 2, {}, {}, 0}), GalleryError); }

TEST(Generate, EveryListedFamilyBuilds) {
    for (auto name : family_names()) {
        FamilySpec spec{std::string(name), 2, {}, {}, 1};
        if (name == "pt_dimer") spec.params = {{"a", 0.5}, {"b", 1.0}};
        if (name == "ep_family") spec.params = {{"t", 0.5}};
        if (name == "jordan") spec.segre = {2};
        EXPECT_NO_THROW(generate(spec)) << name;
    }
}

TEST(SeededSimilarity, ConditionNumberAndInverse) {
    const auto [p, p_inv] = seeded_similarity(6, 100.0, 9);
    EXPECT_NEAR(condition_number(p), 100.0, 1e-8);
    EXPECT_LE((p * p_inv - ComplexMatrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(BlockJordan, ExplicitStructureSurvivesSimilarity) {
    const ComplexMatrix a = generate({"block_jordan", 5, {{"lambda", 0.5}, {"kappa", 1e3}}, {3, 2}, 4});
    const PointSpectrum ps = point_spectrum(a);
    ASSERT_EQ(ps.clusters.size(), 1u);
    EXPECT_EQ(ps.clusters[0].algebraic_multiplicity, 5u);
    EXPECT_EQ(root_space(a, ps.clusters[0]).segre, (std::vector<std::size_t>{3, 2}));
}

TEST(TruncationStudy, ShiftTruncDecreases) {
    const TruncationStudy s = truncation_study({"shift_trunc", 1, {}, {}, 0}, {4, 8, 16}, {0.5});
    ASSERT_EQ(s.rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        const double oracle = testing::shift_sigma_min_oracle(static_cast<Index>(s.sizes[i]), 0.5);
        EXPECT_NEAR(s.rows[i].sigma_min[0], oracle, 1e-8 * oracle);
        if (i > 0) EXPECT_LT(s.rows[i].sigma_min[0], s.rows[i - 1].sigma_min[0]);
        EXPECT_FALSE(s.rows[i].biorthonormal_basis_exists);
    }
}

TEST(TruncationStudy, DiagFarProbeIsDistanceToSpectrum) {
    const TruncationStudy s = truncation_study({"diag", 1, {}, {}, 0}, {2, 4, 8}, {Complex(9, 0)});
    for (const auto& row : s.rows) EXPECT_NEAR(row.sigma_min[0], 8.0, 1e-12);
}

TEST(TruncationStudy, EpOverlapShrinks) {
    double previous = 2.0;
    for (double t : {1.0, 0.1, 0.01}) {
        const TruncationStudy s = truncation_study({"ep_family", 2, {{"t", t}}, {}, 0}, {2}, {});
        const double overlap = s.rows[0].self_orthogonality;
        EXPECT_NEAR(overlap, std::sqrt(t * (2.0 - t)), 1e-6);
        EXPECT_LT(overlap, previous);
        previous = overlap;
    }
}

TEST(TruncationStudy, ValidatesArguments) {
    const FamilySpec f{"shift_trunc", 1, {}, {}, 0};
    EXPECT_THROW(truncation_study(f, {}, {0.5}), GalleryError);
    EXPECT_THROW(truncation_study(f, {8, 4}, {0.5}), GalleryError);
    EXPECT_THROW(truncation_study(f, {4}, {Complex(std::nan(""), 0)}), GalleryError);
}

}  // namespace
}  // namespace biortho
