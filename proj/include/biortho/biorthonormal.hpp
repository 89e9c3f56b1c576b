#pragma once

// Sector-wise biorthonormal systems {psi_i, chi_i} with (chi_j, psi_i) = delta_ij,
// skew-linkage tests, expansions and resolutions of the identity.
//
// Inner products are conjugate-linear in the first argument: (x, y) = x^H y.

#include "biortho/linalg.hpp"
#include "biortho/spectral.hpp"

#include <Eigen/LU>

#include <string>
#include <vector>

namespace biortho {

/// Some cluster has m^(a) > m^(g).
class NotDiagonalizable : public Error {
public:
    NotDiagonalizable(std::size_t cluster_index, std::size_t algebraic, std::size_t geometric)
        : Error("cluster " + std::to_string(cluster_index) + " is not semi-simple (m_a = " +
                std::to_string(algebraic) + ", m_g = " + std::to_string(geometric) + ")"),
          cluster_index_(cluster_index) {}
    std::size_t cluster_index() const { return cluster_index_; }

private:
    std::size_t cluster_index_;
};

/// A sector's right and left eigenspaces are not skewly linked.
class SkewLinkFailure : public Error {
public:
    SkewLinkFailure(std::size_t cluster_index, double self_orthogonality)
        : Error("cluster " + std::to_string(cluster_index) +
                ": right and left eigenspaces are not skewly linked (self-orthogonality " +
                std::to_string(self_orthogonality) + ")"),
          cluster_index_(cluster_index),
          self_orthogonality_(self_orthogonality) {}
    std::size_t cluster_index() const { return cluster_index_; }
    double self_orthogonality() const { return self_orthogonality_; }

private:
    std::size_t cluster_index_;
    double self_orthogonality_;
};

class IncompleteSystem : public Error {
public:
    using Error::Error;
};

struct SkewLinkVerdict {
    std::size_t cluster_index = 0;
    bool linked = false;
    std::size_t defect_dim = 0;
    double self_orthogonality = 0.0;  ///< smallest singular value of the cross-Gram of orthonormal bases
};

/// L1 # L2 iff L1 n L2^perp = L1^perp n L2 = {0}. With orthonormal bases the
/// cross-Gram C = B2^H B1 must be square and nonsingular.
inline SkewLinkVerdict skew_link_check(const Subspace& s1, const Subspace& s2, const Tolerance& tol = {},
                                       std::size_t cluster_index = 0) {
    if (s1.ambient_dim() != s2.ambient_dim()) {
        throw DimensionMismatch("skew_link_check: ambient dimensions " + std::to_string(s1.ambient_dim()) +
                                " and " + std::to_string(s2.ambient_dim()) + " differ");
    }
    SkewLinkVerdict v;
    v.cluster_index = cluster_index;
    const Index k1 = s1.dim();
    const Index k2 = s2.dim();
    if (k1 == 0 && k2 == 0) {
        v.linked = true;
        v.self_orthogonality = 1.0;
        return v;
    }
    Index rank = 0;
    double smallest = 0.0;
    if (k1 > 0 && k2 > 0) {
        const ComplexMatrix cross = s2.basis().adjoint() * s1.basis();
        const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(cross).singularValues();
        const double cut = tol.rank_eps * static_cast<double>(k1);
        while (rank < sv.size() && sv(rank) > cut) ++rank;
        smallest = sv(sv.size() - 1);
    }
    v.defect_dim = static_cast<std::size_t>(k1 - rank);
    v.self_orthogonality = k1 == k2 ? smallest : 0.0;
    v.linked = k1 == k2 && smallest > tol.rank_eps * static_cast<double>(k1);
    return v;
}

/// m^(g)(A, lambda) == m^(g)(A^H, conj(lambda)).
inline bool multiplicity_match(const EigenvalueCluster& c) { return c.right_kernel.dim() == c.left_kernel.dim(); }

struct BiorthonormalPair {
    ComplexVector psi;
    ComplexVector chi;
    std::size_t cluster_index = 0;
};

struct BiorthonormalSystem {
    Index ambient_dim = 0;
    std::vector<BiorthonormalPair> pairs;
    double gram_residual = 0.0;  ///< ||G - I||_F, G_ji = (chi_j, psi_i)
    bool complete = false;

    static BiorthonormalSystem from_pairs(Index ambient_dim, std::vector<BiorthonormalPair> pairs) {
        BiorthonormalSystem sys;
        sys.ambient_dim = ambient_dim;
        for (const auto& p : pairs) {
            if (p.psi.size() != ambient_dim || p.chi.size() != ambient_dim) {
                throw DimensionMismatch("biorthonormal pair has wrong length");
            }
        }
        sys.pairs = std::move(pairs);
        sys.complete = static_cast<Index>(sys.pairs.size()) == ambient_dim;
        const Index k = static_cast<Index>(sys.pairs.size());
        sys.gram_residual = k == 0 ? 0.0 : (sys.gram() - ComplexMatrix::Identity(k, k)).norm();
        return sys;
    }

    ComplexMatrix psi_matrix() const {
        ComplexMatrix m(ambient_dim, static_cast<Index>(pairs.size()));
        for (std::size_t i = 0; i < pairs.size(); ++i) m.col(static_cast<Index>(i)) = pairs[i].psi;
        return m;
    }
    ComplexMatrix chi_matrix() const {
        ComplexMatrix m(ambient_dim, static_cast<Index>(pairs.size()));
        for (std::size_t i = 0; i < pairs.size(); ++i) m.col(static_cast<Index>(i)) = pairs[i].chi;
        return m;
    }
    /// G_ji = (chi_j, psi_i)
    ComplexMatrix gram() const { return chi_matrix().adjoint() * psi_matrix(); }

    /// The same system with the roles of psi and chi exchanged.
    BiorthonormalSystem swapped() const {
        std::vector<BiorthonormalPair> flipped;
        flipped.reserve(pairs.size());
        for (const auto& p : pairs) flipped.push_back({p.chi, p.psi, p.cluster_index});
        return from_pairs(ambient_dim, std::move(flipped));
    }
};

/// Builds (chi_j, psi_i) = delta_ij sector by sector. Within a sector with
/// orthonormal right basis Psi and left basis X, chi = X G^(-H) where G = X^H Psi.
/// Cross-sector biorthogonality is inherited, not enforced.
inline BiorthonormalSystem biorthonormalize(const ComplexMatrix& a, const PointSpectrum& ps,
                                            const Tolerance& tol = {}) {
    require_square(a);
    if (ps.ambient_dim != a.rows()) throw DimensionMismatch("biorthonormalize: spectrum does not match matrix");

    std::vector<BiorthonormalPair> pairs;
    for (std::size_t idx = 0; idx < ps.clusters.size(); ++idx) {
        const EigenvalueCluster& c = ps.clusters[idx];
        const SkewLinkVerdict verdict = skew_link_check(c.right_kernel, c.left_kernel, tol, idx);
        if (!verdict.linked) throw SkewLinkFailure(idx, verdict.self_orthogonality);
        if (!c.semi_simple) throw NotDiagonalizable(idx, c.algebraic_multiplicity, c.geometric_multiplicity);

        const ComplexMatrix& psi = c.right_kernel.basis();
        const ComplexMatrix& left = c.left_kernel.basis();
        const ComplexMatrix gram = left.adjoint() * psi;
        const Index k = gram.rows();
        const ComplexMatrix chi = left * gram.adjoint().partialPivLu().solve(ComplexMatrix::Identity(k, k));
        for (Index i = 0; i < k; ++i) pairs.push_back({psi.col(i), chi.col(i), idx});
    }
    return BiorthonormalSystem::from_pairs(a.rows(), std::move(pairs));
}

/// Coefficients A_i = (chi_i, f) of f = sum_i A_i psi_i.
inline std::vector<Complex> expand(const BiorthonormalSystem& sys, const ComplexVector& f) {
    if (f.size() != sys.ambient_dim) {
        throw DimensionMismatch("expand: vector length " + std::to_string(f.size()) + " does not match ambient dimension " +
                                std::to_string(sys.ambient_dim));
    }
    if (!sys.complete) {
        throw IncompleteSystem("expand: system has " + std::to_string(sys.pairs.size()) + " pairs in dimension " +
                               std::to_string(sys.ambient_dim) + "; expansion is only valid on the eigenvector span");
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(sys.pairs.size());
    for (const auto& p : sys.pairs) coeffs.push_back(p.chi.dot(f));  // dot() conjugates its left operand
    return coeffs;
}

/// sum_i psi_i chi_i^H. The identity for complete systems, an oblique projector otherwise.
inline ComplexMatrix resolution_of_identity(const BiorthonormalSystem& sys) {
    return sys.psi_matrix() * sys.chi_matrix().adjoint();
}

}  // namespace biortho
