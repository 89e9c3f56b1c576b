#pragma once

// Clustered point spectrum of a square matrix together with right kernels
// Ker(A - lambda I) and left kernels Ker(A^H - conj(lambda) I).

#include "biortho/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace biortho {

class EigenIterationError : public Error {
public:
    using Error::Error;
};

struct EigenvalueCluster {
    Complex value;                       ///< centroid of the member eigenvalues
    std::size_t algebraic_multiplicity;  ///< number of raw eigenvalues in the cluster
    std::size_t geometric_multiplicity;  ///< dim Ker(A - value I)
    bool semi_simple;
    Subspace right_kernel;
    Subspace left_kernel;
    std::vector<Complex> members;        ///< raw eigenvalues, sorted
};

struct PointSpectrum {
    Index ambient_dim = 0;
    double spectral_scale = 1.0;  ///< max(1, max |lambda|)
    std::vector<EigenvalueCluster> clusters;

    std::vector<Complex> values() const {
        std::vector<Complex> out;
        out.reserve(clusters.size());
        for (const auto& c : clusters) out.push_back(c.value);
        return out;
    }
};

namespace detail {

inline bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline Complex centroid(const std::vector<Complex>& pts) {
    Complex sum{0.0, 0.0};
    for (const auto& p : pts) sum += p;
    return sum / static_cast<double>(pts.size());
}

/// Connected components of `groups` when two groups are linked whenever some
/// pair of their members lies within `radius`. Components are returned in
/// order of their smallest group index.
inline std::vector<std::vector<std::size_t>> linkage_components(const std::vector<std::vector<Complex>>& groups,
                                                                double radius) {
    const std::size_t g = groups.size();
    std::vector<std::size_t> parent(g);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            if (find(i) == find(j)) continue;
            bool close = false;
            for (const auto& p : groups[i]) {
                for (const auto& q : groups[j]) {
                    if (std::abs(p - q) <= radius) {
                        close = true;
                        break;
                    }
                }
                if (close) break;
            }
            if (close) parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<long> slot(g, -1);
    for (std::size_t i = 0; i < g; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return comps;
}

/// Largest merge radius, relative to the spectral scale, tried when
/// reassembling eigenvalues scattered by a perturbed Jordan block.
inline constexpr double kMaxMergeRadius = 0.25;
inline constexpr double kMergeRadiusStep = 4.0;

}  // namespace detail

/// Eigenvalues of a with multiplicity, sorted lexicographically by (Re, Im).
inline std::vector<Complex> raw_eigenvalues(const ComplexMatrix& a) {
    require_square(a);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw EigenIterationError("eigenvalue iteration failed to converge for a " + std::to_string(a.rows()) +
                                  "x" + std::to_string(a.rows()) + " matrix");
    }
    std::vector<Complex> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
    std::sort(vals.begin(), vals.end(), detail::lex_less);
    return vals;
}

/// Groups raw eigenvalues into clusters.
///
/// Stage one is single linkage with radius cluster_eps * scale. A defective
/// eigenvalue of index p is scattered by rounding over a circle of radius
/// about eps^(1/p), far outside that radius, so stage two grows the radius
/// geometrically and accepts a merged group only when the kernel chain of
/// (A - mean I) stabilizes at exactly the group size.
inline std::vector<std::vector<Complex>> cluster_eigenvalues(const ComplexMatrix& a,
                                                             const std::vector<Complex>& raw,
                                                             const Tolerance& tol) {
    double scale = 1.0;
    for (const auto& v : raw) scale = std::max(scale, std::abs(v));

    std::vector<std::vector<Complex>> groups;
    for (const auto& v : raw) groups.push_back({v});

    auto regroup = [&](const std::vector<std::vector<std::size_t>>& comps, auto&& accept) {
        std::vector<std::vector<Complex>> next;
        for (const auto& comp : comps) {
            if (comp.size() == 1) {
                next.push_back(groups[comp.front()]);
                continue;
            }
            std::vector<Complex> merged;
            for (auto idx : comp) merged.insert(merged.end(), groups[idx].begin(), groups[idx].end());
            std::sort(merged.begin(), merged.end(), detail::lex_less);
            if (accept(merged)) {
                next.push_back(std::move(merged));
            } else {
                for (auto idx : comp) next.push_back(groups[idx]);
            }
        }
        groups = std::move(next);
    };

    const double norm_a = operator_norm(a);
    const double base = tol.cluster_eps * scale;
    regroup(detail::linkage_components(groups, base), [](const auto&) { return true; });

    const auto consistent = [&](const std::vector<Complex>& members) {
        const Complex mu = detail::centroid(members);
        const ComplexMatrix shifted = a - mu * ComplexMatrix::Identity(a.rows(), a.cols());
        const KernelChain chain = kernel_chain(shifted, tol, norm_a);
        return chain.space.dim() == static_cast<Index>(members.size());
    };
    for (double radius = base * detail::kMergeRadiusStep; radius <= detail::kMaxMergeRadius * scale;
         radius *= detail::kMergeRadiusStep) {
        if (groups.size() < 2) break;
        regroup(detail::linkage_components(groups, radius), consistent);
    }

    std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) {
        return detail::lex_less(detail::centroid(x), detail::centroid(y));
    });
    return groups;
}

/// Clustered point spectrum with right and left kernels per cluster. Kernels of
/// A - lambda I use a rank cutoff scaled by max(||A - lambda I||_2, ||A||_2).
inline PointSpectrum point_spectrum(const ComplexMatrix& a, const Tolerance& tol = {}) {
    tol.validate();
    require_square(a);
    const Index n = a.rows();
    const std::vector<Complex> raw = raw_eigenvalues(a);

    PointSpectrum ps;
    ps.ambient_dim = n;
    for (const auto& v : raw) ps.spectral_scale = std::max(ps.spectral_scale, std::abs(v));

    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const double norm_a = operator_norm(a);
    for (auto& members : cluster_eigenvalues(a, raw, tol)) {
        const Complex mu = detail::centroid(members);
        const ComplexMatrix shifted = a - mu * eye;
        EigenvalueCluster c{mu, members.size(), 0, false, nullspace(shifted, tol, norm_a),
                            nullspace(shifted.adjoint(), tol, norm_a), std::move(members)};
        c.geometric_multiplicity = static_cast<std::size_t>(c.right_kernel.dim());
        c.semi_simple = c.algebraic_multiplicity == c.geometric_multiplicity;
        ps.clusters.push_back(std::move(c));
    }
    return ps;
}

/// Point spectrum of A^H, computed from scratch rather than by conjugation.
inline PointSpectrum adjoint_point_spectrum(const ComplexMatrix& a, const Tolerance& tol = {}) {
    return point_spectrum(adjoint(a), tol);
}

/// n x K matrix of all right eigenvectors (unit columns, cluster order), K = sum of m^(g).
inline ComplexMatrix eigvec_matrix(const PointSpectrum& ps) {
    Index k = 0;
    for (const auto& c : ps.clusters) k += c.right_kernel.dim();
    ComplexMatrix v(ps.ambient_dim, k);
    Index col = 0;
    for (const auto& c : ps.clusters) {
        v.middleCols(col, c.right_kernel.dim()) = c.right_kernel.basis();
        col += c.right_kernel.dim();
    }
    return v;
}

/// Hausdorff distance between two finite point sets in C (infinite if exactly one is empty).
inline double hausdorff_distance(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.empty() && y.empty()) return 0.0;
    if (x.empty() || y.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(x, y), directed(y, x));
}

}  // namespace biortho
