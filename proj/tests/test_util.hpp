#pragma once

#include "biortho/linalg.hpp"

#include <Eigen/Dense>

#include <initializer_list>
#include <random>

namespace biortho::testing {

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (const auto& r : rows) {
        Index j = 0;
        for (const auto& v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline ComplexVector vec(std::initializer_list<Complex> xs) {
    ComplexVector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return v;
}

inline ComplexMatrix diag(std::initializer_list<Complex> xs) { return vec(xs).asDiagonal(); }

inline ComplexVector unit(Index n, Index k) {
    ComplexVector v = ComplexVector::Zero(n);
    v(k) = 1.0;
    return v;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
    }
    return m;
}

// Oracle: smallest singular value from the Hermitian eigenproblem of M^H M.
inline double sigma_min_oracle(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(0)));
}

// Oracle: sigma_min(S_n - z I) for the truncated shift, from the explicit
// inverse -(1/z) sum_k (S/z)^k, so tiny values keep full relative accuracy.
inline double shift_sigma_min_oracle(Index n, double z) {
    ComplexMatrix inv = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) inv(i, j) = -std::pow(z, -static_cast<double>(j - i + 1));
    }
    return 1.0 / Eigen::JacobiSVD<ComplexMatrix>(inv).singularValues()(0);
}

// Oracle: rank from a column-pivoted QR, independent of the SVD path.
inline Index qr_rank(const ComplexMatrix& m, double threshold = 1e-9) {
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
    qr.setThreshold(threshold);
    return qr.rank();
}

}  // namespace biortho::testing
