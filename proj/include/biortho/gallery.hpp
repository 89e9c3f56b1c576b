#pragma once

// Deterministic generators for named operator families and the truncation
// study harness.
//
// Random families draw from std::mt19937_64 (whose output sequence is fixed by
// the standard) and turn pairs of raw 64-bit words into standard complex
// Gaussians with the Box-Muller transform below, so a seed pins the matrix.

#include "biortho/conditions.hpp"
#include "biortho/linalg.hpp"

#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace biortho {

class GalleryError : public Error {
public:
    using Error::Error;
};

struct JordanBlock {
    Complex eigenvalue;
    std::size_t size = 1;

    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// A named family member. Parameters used per family:
///   jordan                 lambda, segre (block sizes summing to size)
///   diag                   scale r: entries r * exp(2 pi i k / size)
///   random_gaussian        seed
///   random_normal          seed
///   pt_dimer               a, b: [[i a, b], [b, -i a]], size 2
///   ep_family              b, t >= 0: pt_dimer with a = b (1 - t), size 2
///   shift_trunc            none: ones on the superdiagonal
///   weighted_shift_trunc   decay p: superdiagonal weights (k + 1)^(-p), k = 0..size-2
///   block_jordan           kappa, seed; optional lambda + segre, otherwise a seeded structure
struct FamilySpec {
    std::string name;
    std::size_t size = 1;
    std::map<std::string, Complex> params;
    std::vector<std::size_t> segre;
    std::uint64_t seed = 0;

    double real_param(const std::string& key, double fallback) const {
        auto it = params.find(key);
        if (it == params.end()) return fallback;
        if (it->second.imag() != 0.0) throw GalleryError("parameter " + key + " must be real");
        return it->second.real();
    }
    Complex complex_param(const std::string& key, Complex fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

inline const std::vector<std::string_view>& family_names() {
    static const std::vector<std::string_view> names = {
        "jordan",      "diag",     "random_gaussian",      "random_normal", "pt_dimer",
        "ep_family",   "shift_trunc", "weighted_shift_trunc", "block_jordan"};
    return names;
}

/// Standard complex Gaussian samples: (x + i y) / sqrt(2) with x, y ~ N(0, 1).
class ComplexGaussian {
public:
    explicit ComplexGaussian(std::uint64_t seed) : engine_(seed) {}

    Complex operator()() {
        constexpr double two_pow_minus_53 = 1.0 / 9007199254740992.0;
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * two_pow_minus_53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * two_pow_minus_53;        // [0, 1)
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return Complex(radius * std::cos(angle), radius * std::sin(angle)) / std::numbers::sqrt2;
    }

    ComplexMatrix matrix(Index rows, Index cols) {
        ComplexMatrix m(rows, cols);
        for (Index j = 0; j < cols; ++j) {
            for (Index i = 0; i < rows; ++i) m(i, j) = (*this)();
        }
        return m;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

/// Haar unitary: QR of a complex Gaussian matrix with R's diagonal made positive.
inline ComplexMatrix haar_unitary(ComplexGaussian& rng, Index n) {
    const ComplexMatrix g = rng.matrix(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

inline ComplexMatrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size;
    ComplexMatrix j = ComplexMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
    Index offset = 0;
    for (const auto& b : blocks) {
        for (Index k = 0; k < static_cast<Index>(b.size); ++k) {
            j(offset + k, offset + k) = b.eigenvalue;
            if (k + 1 < static_cast<Index>(b.size)) j(offset + k, offset + k + 1) = 1.0;
        }
        offset += static_cast<Index>(b.size);
    }
    return j;
}

namespace detail {

inline constexpr double kLatticeSpacing = 0.75;
inline constexpr std::size_t kMaxSeededBlock = 8;

inline std::vector<JordanBlock> blocks_from_segre(Complex lambda, const std::vector<std::size_t>& segre,
                                                  std::size_t size) {
    std::vector<std::size_t> sizes = segre.empty() ? std::vector<std::size_t>{size} : segre;
    std::size_t total = 0;
    for (auto s : sizes) {
        if (s == 0) throw GalleryError("segre entries must be positive");
        total += s;
    }
    if (total != size) {
        throw GalleryError("segre sizes sum to " + std::to_string(total) + " but size is " + std::to_string(size));
    }
    std::vector<JordanBlock> blocks;
    for (auto s : sizes) blocks.push_back({lambda, s});
    return blocks;
}

/// Seeded Jordan structure: block sizes drawn uniformly from what remains
/// (capped at kMaxSeededBlock), eigenvalues picked from a 5x5 lattice with
/// spacing 0.75, so distinct eigenvalues are at least 0.75 apart.
inline std::vector<JordanBlock> seeded_blocks(std::size_t size, std::uint64_t seed) {
    ComplexGaussian rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> sizes;
    std::size_t remaining = size;
    while (remaining > 0) {
        const std::size_t cap = std::min(remaining, kMaxSeededBlock);
        const std::size_t s = 1 + static_cast<std::size_t>(rng.below(cap));
        sizes.push_back(s);
        remaining -= s;
    }
    const std::size_t distinct = 1 + static_cast<std::size_t>(rng.below(sizes.size()));
    std::vector<Complex> lattice;
    for (int p = -2; p <= 2; ++p) {
        for (int q = -2; q <= 2; ++q) lattice.emplace_back(kLatticeSpacing * p, kLatticeSpacing * q);
    }
    std::vector<Complex> chosen;
    for (std::size_t k = 0; k < distinct; ++k) {
        const std::size_t pick = static_cast<std::size_t>(rng.below(lattice.size()));
        chosen.push_back(lattice[pick]);
        lattice.erase(lattice.begin() + static_cast<long>(pick));
    }
    std::vector<JordanBlock> blocks;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t which = i < distinct ? i : static_cast<std::size_t>(rng.below(distinct));
        blocks.push_back({chosen[which], sizes[i]});
    }
    return blocks;
}

inline void require_size(const FamilySpec& spec, std::size_t expected) {
    if (spec.size != expected) {
        throw GalleryError(spec.name + " requires size " + std::to_string(expected) + ", got " +
                           std::to_string(spec.size));
    }
}

inline ComplexMatrix pt_dimer(double a, double b) {
    ComplexMatrix h(2, 2);
    h << Complex(0.0, a), Complex(b, 0.0), Complex(b, 0.0), Complex(0.0, -a);
    return h;
}

}  // namespace detail

/// Jordan blocks of a jordan or block_jordan spec, in assembly order.
inline std::vector<JordanBlock> jordan_structure(const FamilySpec& spec) {
    if (spec.name != "jordan" && spec.name != "block_jordan") {
        throw GalleryError("family " + spec.name + " has no prescribed Jordan structure");
    }
    if (spec.name == "block_jordan" && spec.segre.empty() && !spec.params.contains("lambda")) {
        return detail::seeded_blocks(spec.size, spec.seed);
    }
    return detail::blocks_from_segre(spec.complex_param("lambda", 0.0), spec.segre, spec.size);
}

/// Similarity U diag(s) W^H with s log-spaced in [1, kappa]; returns (P, P^-1).
inline std::pair<ComplexMatrix, ComplexMatrix> seeded_similarity(Index n, double kappa, std::uint64_t seed) {
    ComplexGaussian rng(seed);
    const ComplexMatrix u = haar_unitary(rng, n);
    const ComplexMatrix w = haar_unitary(rng, n);
    Eigen::VectorXd s(n);
    for (Index k = 0; k < n; ++k) {
        const double frac = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        s(k) = std::pow(kappa, frac);
    }
    ComplexMatrix p = u * s.cast<Complex>().asDiagonal() * w.adjoint();
    ComplexMatrix p_inv = w * s.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
    return {std::move(p), std::move(p_inv)};
}

inline ComplexMatrix generate(const FamilySpec& spec) {
    if (spec.size < 1) throw GalleryError("size must be at least 1");
    const Index n = static_cast<Index>(spec.size);
    const std::string& name = spec.name;

    if (name == "jordan") {
        return jordan_matrix(jordan_structure(spec));
    }
    if (name == "diag") {
        const double r = spec.real_param("scale", 1.0);
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        for (Index k = 0; k < n; ++k) {
            d(k, k) = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        }
        return d;
    }
    if (name == "random_gaussian") {
        ComplexGaussian rng(spec.seed);
        return rng.matrix(n, n);
    }
    if (name == "random_normal") {
        ComplexGaussian rng(spec.seed);
        const ComplexMatrix u = haar_unitary(rng, n);
        ComplexVector lambda(n);
        for (Index k = 0; k < n; ++k) lambda(k) = rng();
        return u * lambda.asDiagonal() * u.adjoint();
    }
    if (name == "pt_dimer") {
        detail::require_size(spec, 2);
        if (!spec.params.contains("a") || !spec.params.contains("b")) {
            throw GalleryError("pt_dimer requires parameters a and b");
        }
        return detail::pt_dimer(spec.real_param("a", 0.0), spec.real_param("b", 0.0));
    }
    if (name == "ep_family") {
        detail::require_size(spec, 2);
        if (!spec.params.contains("t")) throw GalleryError("ep_family requires parameter t");
        const double t = spec.real_param("t", 0.0);
        if (!(t >= 0.0)) throw GalleryError("ep_family requires t >= 0");
        const double b = spec.real_param("b", 1.0);
        return detail::pt_dimer(b * (1.0 - t), b);
    }
    if (name == "shift_trunc" || name == "weighted_shift_trunc") {
        const double decay = name == "shift_trunc" ? 0.0 : spec.real_param("decay", 1.0);
        ComplexMatrix s = ComplexMatrix::Zero(n, n);
        for (Index k = 0; k + 1 < n; ++k) s(k, k + 1) = std::pow(static_cast<double>(k + 1), -decay);
        return s;
    }
    if (name == "block_jordan") {
        const double kappa = spec.real_param("kappa", 10.0);
        if (!(kappa >= 1.0)) throw GalleryError("block_jordan requires kappa >= 1");
        const ComplexMatrix j = jordan_matrix(jordan_structure(spec));
        const auto [p, p_inv] = seeded_similarity(n, kappa, spec.seed);
        return p * j * p_inv;
    }
    throw GalleryError("unknown family '" + name + "'");
}

struct StudyRow {
    std::size_t size = 0;
    double kappa_v = 0.0;
    std::vector<double> sigma_min;  ///< sigma_min(A - z I), one per probe point
    double self_orthogonality = 1.0;
    bool biorthonormal_basis_exists = false;
    std::string verdict_summary;     ///< "C1:PASS C2:FAIL ..."
};

struct TruncationStudy {
    FamilySpec family;
    std::vector<std::size_t> sizes;
    std::vector<Complex> probe_grid;
    std::vector<StudyRow> rows;  ///< one per size, in size order
};

inline double sigma_min_shifted(const ComplexMatrix& a, Complex z) {
    const Eigen::VectorXd sv = detail::singular_values(a - z * ComplexMatrix::Identity(a.rows(), a.cols()));
    return sv(sv.size() - 1);
}

inline std::string verdict_summary(const DiagnosisReport& rep) {
    std::string out;
    for (const auto& v : rep.verdicts) {
        if (!out.empty()) out += ' ';
        out += std::string(to_string(v.id)) + ":" + std::string(to_string(v.status));
    }
    return out;
}

/// Diagnoses the family at each size and probes sigma_min(A_n - z I) on the grid.
/// Trends are recorded, not enforced.
inline TruncationStudy truncation_study(const FamilySpec& family, const std::vector<std::size_t>& sizes,
                                        const std::vector<Complex>& probe_grid, const Tolerance& tol = {}) {
    if (sizes.empty()) throw GalleryError("truncation_study needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) throw GalleryError("truncation_study sizes must be strictly increasing");
    }
    for (const auto& z : probe_grid) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw GalleryError("probe points must be finite");
    }
    TruncationStudy study{family, sizes, probe_grid, {}};
    for (auto size : sizes) {
        FamilySpec spec = family;
        spec.size = size;
        try {
            const ComplexMatrix a = generate(spec);
            const DiagnosisReport rep = check_conditions(a, tol);
            StudyRow row;
            row.size = size;
            row.kappa_v = rep.kappa_v;
            for (const auto& z : probe_grid) row.sigma_min.push_back(sigma_min_shifted(a, z));
            row.self_orthogonality = rep.min_self_orthogonality();
            row.biorthonormal_basis_exists = rep.biorthonormal_basis_exists;
            row.verdict_summary = verdict_summary(rep);
            study.rows.push_back(std::move(row));
        } catch (const Error& e) {
            throw Error("size " + std::to_string(size) + ": " + e.what());
        }
    }
    return study;
}

}  // namespace biortho
