#pragma once

// Dense complex-matrix primitives with explicit tolerance policies.
//
// Every rank decision in the library goes through the singular-value cutoff
// implemented here, so the kernel/range/condition-number routines agree with
// each other for a given Tolerance.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biortho {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Tolerance policy shared by all rank, clustering and verification decisions.
struct Tolerance {
    double rank_eps = 1e-10;     ///< relative singular-value cutoff
    double cluster_eps = 1e-8;   ///< eigenvalue grouping radius, relative to the spectral scale
    double residual_eps = 1e-8;  ///< verification threshold

    void validate() const {
        auto check = [](double v, const char* name) {
            if (!(v > 0.0 && v < 1.0)) {
                throw InvalidArgument(std::string("tolerance ") + name + " must lie in (0, 1)");
            }
        };
        check(rank_eps, "rank_eps");
        check(cluster_eps, "cluster_eps");
        check(residual_eps, "residual_eps");
    }

    friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

inline void require_valid(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw InvalidArgument("matrix must have at least one row and one column");
    }
    if (!m.allFinite()) {
        throw InvalidArgument("matrix entries must be finite");
    }
}

inline void require_square(const ComplexMatrix& m) {
    require_valid(m);
    if (m.rows() != m.cols()) {
        throw InvalidArgument("matrix must be square, got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
    }
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

namespace detail {

/// Rotates v so that its first significant component is real and positive.
/// Components below `cutoff * max|v_i|` count as zero.
inline void normalize_phase(Eigen::Ref<ComplexVector> v, double cutoff) {
    const double biggest = v.cwiseAbs().maxCoeff();
    if (biggest == 0.0) return;
    for (Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > cutoff * biggest) {
            v *= std::conj(v(i)) / mag;
            v(i) = Complex(mag, 0.0);
            return;
        }
    }
}

inline void normalize_columns(ComplexMatrix& basis, double cutoff) {
    for (Index j = 0; j < basis.cols(); ++j) {
        auto col = basis.col(j);
        const double nrm = col.norm();
        if (nrm > 0.0) col /= nrm;
        normalize_phase(col, cutoff);
    }
}

inline Eigen::VectorXd singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    return Eigen::BDCSVD<ComplexMatrix>(m).singularValues();
}

inline double max_singular_value(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

}  // namespace detail

/// Spectral norm ||m||_2.
inline double operator_norm(const ComplexMatrix& m) { return detail::max_singular_value(m); }

/// A subspace of C^n stored through an orthonormal basis (n x k).
class Subspace {
public:
    explicit Subspace(Index ambient_dim = 0) : basis_(ambient_dim, 0) {}

    /// Wraps a basis whose columns are already orthonormal.
    static Subspace from_orthonormal(ComplexMatrix basis) {
        Subspace s;
        s.basis_ = std::move(basis);
        return s;
    }

    /// Orthonormalizes an arbitrary spanning set, dropping numerically dependent directions.
    static Subspace span(const ComplexMatrix& vectors, const Tolerance& tol = {});

    static Subspace full(Index n) { return from_orthonormal(ComplexMatrix::Identity(n, n)); }

    Index ambient_dim() const { return basis_.rows(); }
    Index dim() const { return basis_.cols(); }
    const ComplexMatrix& basis() const { return basis_; }

    /// ||B^H B - I||_F
    double orthonormality_defect() const {
        if (dim() == 0) return 0.0;
        return (basis_.adjoint() * basis_ - ComplexMatrix::Identity(dim(), dim())).norm();
    }

    ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

private:
    ComplexMatrix basis_;
};

namespace detail {

struct SplitSpaces {
    Subspace range;
    Subspace kernel;
};

/// Numerical range and kernel of m, treating singular values <= threshold as zero.
inline SplitSpaces split_at(const ComplexMatrix& m, double threshold, double phase_cutoff) {
    const Index rows = m.rows();
    const Index cols = m.cols();
    if (rows == 0) {
        return {Subspace(0), Subspace::full(cols)};
    }
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > threshold) ++rank;

    ComplexMatrix range = svd.matrixU().leftCols(rank);
    ComplexMatrix kernel = svd.matrixV().rightCols(cols - rank);
    normalize_columns(range, phase_cutoff);
    normalize_columns(kernel, phase_cutoff);
    return {Subspace::from_orthonormal(std::move(range)), Subspace::from_orthonormal(std::move(kernel))};
}

/// rank_eps * max(sigma_max(m), scale_floor) * max(rows, cols). A positive floor
/// is used for shifted operators A - lambda I, whose own norm can sit at the
/// rounding level of A when A is close to lambda I.
inline double rank_threshold(const ComplexMatrix& m, const Tolerance& tol, double scale_floor = 0.0) {
    const double smax = std::max(max_singular_value(m), scale_floor);
    return tol.rank_eps * smax * static_cast<double>(std::max(m.rows(), m.cols()));
}

}  // namespace detail

/// Numerical kernel: singular values <= rank_eps * sigma_max * max(rows, cols) count as zero.
/// `scale_floor` raises sigma_max in the cutoff (see detail::rank_threshold).
inline Subspace nullspace(const ComplexMatrix& m, const Tolerance& tol = {}, double scale_floor = 0.0) {
    require_valid(m);
    return detail::split_at(m, detail::rank_threshold(m, tol, scale_floor), tol.residual_eps).kernel;
}

/// Numerical column space under the same cutoff as nullspace().
inline Subspace range_space(const ComplexMatrix& m, const Tolerance& tol = {}, double scale_floor = 0.0) {
    require_valid(m);
    return detail::split_at(m, detail::rank_threshold(m, tol, scale_floor), tol.residual_eps).range;
}

inline Index numerical_rank(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (m.size() == 0) return 0;
    const Eigen::VectorXd sv = detail::singular_values(m);
    const double cut = tol.rank_eps * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    return rank;
}

inline Subspace Subspace::span(const ComplexMatrix& vectors, const Tolerance& tol) {
    if (vectors.cols() == 0) return Subspace(vectors.rows());
    return range_space(vectors, tol);
}

/// Orthonormal basis of the orthogonal complement of s.
inline Subspace orthogonal_complement(const Subspace& s) {
    const Index n = s.ambient_dim();
    const Index k = s.dim();
    if (k == 0) return Subspace::full(n);
    if (k == n) return Subspace(n);
    Eigen::HouseholderQR<ComplexMatrix> qr(s.basis());
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    return Subspace::from_orthonormal(q.rightCols(n - k));
}

/// Largest principal angle in [0, pi/2]. Subspaces of different dimension are
/// pi/2 apart, since the larger one contains a direction orthogonal to the smaller.
inline double subspace_angle(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim()) {
        throw DimensionMismatch("subspace_angle: ambient dimensions " + std::to_string(s1.ambient_dim()) +
                                " and " + std::to_string(s2.ambient_dim()) + " differ");
    }
    if (s1.dim() != s2.dim()) return std::numbers::pi / 2.0;
    if (s1.dim() == 0) return 0.0;
    const ComplexMatrix& b1 = s1.basis();
    const ComplexMatrix& b2 = s2.basis();
    // sine form keeps small angles accurate
    const double sin12 = detail::max_singular_value(b2 - b1 * (b1.adjoint() * b2));
    const double sin21 = detail::max_singular_value(b1 - b2 * (b2.adjoint() * b1));
    return std::asin(std::min(1.0, std::max(sin12, sin21)));
}

/// sigma_max / sigma_min, or +infinity when sigma_min <= rank_eps * sigma_max * n.
inline double condition_number(const ComplexMatrix& m, const Tolerance& tol = {}) {
    require_square(m);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smin <= tol.rank_eps * smax * static_cast<double>(m.rows())) {
        return std::numeric_limits<double>::infinity();
    }
    return smax / smin;
}

/// Nested kernels Ker(M) c Ker(M^2) c ... computed without forming powers:
/// Ker(M^k) is the kernel of P_k M, where P_k projects onto the orthogonal
/// complement of Ker(M^(k-1)). Every rank decision uses the fixed cutoff
/// rank_eps * sigma_max(M) * n.
struct KernelChain {
    std::vector<Index> dims;  ///< d_1 < d_2 < ... < d_p (stabilized)
    Subspace space;           ///< Ker(M^p)
};

inline KernelChain kernel_chain(const ComplexMatrix& m, const Tolerance& tol = {}, double scale_floor = 0.0) {
    require_square(m);
    const Index n = m.rows();
    const double threshold = detail::rank_threshold(m, tol, scale_floor);

    KernelChain chain{{}, Subspace(n)};
    for (Index step = 0; step < n; ++step) {
        const Subspace complement = orthogonal_complement(chain.space);
        const ComplexMatrix projected = complement.basis().adjoint() * m;
        Subspace next = detail::split_at(projected, threshold, tol.residual_eps).kernel;
        const Index previous = chain.space.dim();
        if (next.dim() <= previous) break;
        chain.dims.push_back(next.dim());
        chain.space = std::move(next);
        if (chain.space.dim() == n) break;
    }
    return chain;
}

}  // namespace biortho
