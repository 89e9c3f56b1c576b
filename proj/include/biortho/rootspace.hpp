#pragma once

// Root subspaces S_lambda(A) = union_k Ker((A - lambda I)^k), their Weyr
// staircase and Segre characteristic, and the eigen/root spans of a matrix.

#include "biortho/linalg.hpp"
#include "biortho/spectral.hpp"

#include <string>
#include <vector>

namespace biortho {

class RootSpaceInconsistency : public Error {
public:
    using Error::Error;
};

struct RootSpace {
    Complex eigenvalue;
    std::vector<std::size_t> staircase;  ///< d_k = dim Ker((A - lambda I)^k), k = 1..height
    std::size_t height = 0;
    Subspace space;
    std::vector<std::size_t> segre;      ///< Jordan block sizes, descending
};

/// Conjugate partition of the Weyr characteristic d_k - d_(k-1).
inline std::vector<std::size_t> segre_from_staircase(const std::vector<std::size_t>& staircase) {
    std::vector<std::size_t> weyr;
    std::size_t previous = 0;
    for (auto d : staircase) {
        weyr.push_back(d >= previous ? d - previous : 0);
        previous = d;
    }
    std::vector<std::size_t> segre;
    const std::size_t blocks = weyr.empty() ? 0 : weyr.front();
    for (std::size_t j = 1; j <= blocks; ++j) {
        std::size_t size = 0;
        for (auto w : weyr) size += w >= j ? 1 : 0;
        segre.push_back(size);
    }
    return segre;
}

/// Root space at an arbitrary shift, without a multiplicity cross-check.
inline RootSpace root_space_at(const ComplexMatrix& a, Complex lambda, const Tolerance& tol = {}) {
    require_square(a);
    const ComplexMatrix shifted = a - lambda * ComplexMatrix::Identity(a.rows(), a.cols());
    KernelChain chain = kernel_chain(shifted, tol, operator_norm(a));
    RootSpace rs;
    rs.eigenvalue = lambda;
    for (auto d : chain.dims) rs.staircase.push_back(static_cast<std::size_t>(d));
    rs.height = rs.staircase.size();
    rs.space = std::move(chain.space);
    rs.segre = segre_from_staircase(rs.staircase);
    return rs;
}

/// Root space of a clustered eigenvalue. Throws RootSpaceInconsistency when
/// the stabilized kernel dimension disagrees with the cluster's m^(a).
inline RootSpace root_space(const ComplexMatrix& a, const EigenvalueCluster& cluster, const Tolerance& tol = {}) {
    RootSpace rs = root_space_at(a, cluster.value, tol);
    if (rs.space.dim() != static_cast<Index>(cluster.algebraic_multiplicity)) {
        throw RootSpaceInconsistency("root space at lambda = (" + std::to_string(cluster.value.real()) + ", " +
                                     std::to_string(cluster.value.imag()) + ") has dimension " +
                                     std::to_string(rs.space.dim()) + " but the cluster holds " +
                                     std::to_string(cluster.algebraic_multiplicity) + " eigenvalues");
    }
    return rs;
}

/// Dimensions of the eigenvector span E_0 and the root-vector span E.
/// Closure is a no-op in finite dimensions.
struct SpanReport {
    Index eigen_span_dim = 0;
    Index root_span_dim = 0;
    Index ambient_dim = 0;
};

inline SpanReport span_report(const ComplexMatrix& a, const PointSpectrum& ps, const std::vector<RootSpace>& roots,
                              const Tolerance& tol = {}) {
    SpanReport out;
    out.ambient_dim = a.rows();
    out.eigen_span_dim = numerical_rank(eigvec_matrix(ps), tol);

    Index total = 0;
    for (const auto& r : roots) total += r.space.dim();
    ComplexMatrix stacked(a.rows(), total);
    Index col = 0;
    for (const auto& r : roots) {
        stacked.middleCols(col, r.space.dim()) = r.space.basis();
        col += r.space.dim();
    }
    out.root_span_dim = numerical_rank(stacked, tol);
    return out;
}

inline SpanReport span_report(const ComplexMatrix& a, const Tolerance& tol = {}) {
    const PointSpectrum ps = point_spectrum(a, tol);
    std::vector<RootSpace> roots;
    for (const auto& c : ps.clusters) roots.push_back(root_space(a, c, tol));
    return span_report(a, ps, roots, tol);
}

}  // namespace biortho
