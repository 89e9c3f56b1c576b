#pragma once

// Full diagnosis of a square matrix: the eigenvector-level conditions C1-C4,
// the root-vector conditions C2'-C4', the normal-operator property suite and
// the finite-dimensional residual-spectrum identity
//     closure(R(A - lambda I)) (+) Ker(A^H - conj(lambda) I) = C^n.

#include "biortho/biorthonormal.hpp"
#include "biortho/linalg.hpp"
#include "biortho/rootspace.hpp"
#include "biortho/spectral.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace biortho {

enum class ConditionId { C1, C2, C3, C4, C2p, C3p, C4p };
enum class Status { Pass, Fail, Vacuous };

inline constexpr std::array<ConditionId, 7> kAllConditions = {ConditionId::C1,  ConditionId::C2,  ConditionId::C3,
                                                              ConditionId::C4,  ConditionId::C2p, ConditionId::C3p,
                                                              ConditionId::C4p};

inline std::string_view to_string(ConditionId id) {
    switch (id) {
        case ConditionId::C1: return "C1";
        case ConditionId::C2: return "C2";
        case ConditionId::C3: return "C3";
        case ConditionId::C4: return "C4";
        case ConditionId::C2p: return "C2p";
        case ConditionId::C3p: return "C3p";
        case ConditionId::C4p: return "C4p";
    }
    return "?";
}

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Vacuous: return "VACUOUS";
    }
    return "?";
}

inline std::optional<ConditionId> condition_from_string(std::string_view s) {
    for (auto id : kAllConditions) {
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

inline std::optional<Status> status_from_string(std::string_view s) {
    for (auto st : {Status::Pass, Status::Fail, Status::Vacuous}) {
        if (to_string(st) == s) return st;
    }
    return std::nullopt;
}

struct ConditionVerdict {
    ConditionId id;
    Status status;
    std::string detail;
    std::vector<std::size_t> witnesses;

    friend bool operator==(const ConditionVerdict&, const ConditionVerdict&) = default;
};

/// Normal-operator properties:
///   a: eigenspaces of distinct eigenvalues are orthogonal
///   b: every eigenvalue is semi-simple
///   c: sigma_p(A^H) = conj(sigma_p(A)) (the residual spectrum is empty)
///   d: the eigenvectors of A and A^H are complete
///   e: Ker(A - lambda I) = Ker(A^H - conj(lambda) I) for every eigenvalue
struct NormalityReport {
    bool is_normal = false;
    double commutator_norm = 0.0;        ///< ||A^H A - A A^H||_F / ||A||_F^2
    double max_eigenspace_overlap = 0.0; ///< max ||B_i^H B_j||_2 over distinct clusters
    double max_kernel_angle = 0.0;       ///< max angle between right and left kernels
    std::map<char, Status> properties;
};

struct DiagnosisReport {
    Index ambient_dim = 0;
    PointSpectrum spectrum;
    std::vector<RootSpace> root_spaces;          ///< S_lambda(A), one per cluster
    std::vector<SkewLinkVerdict> eigen_links;    ///< right vs left eigenspace, every cluster
    std::vector<SkewLinkVerdict> root_links;     ///< S_lambda(A) vs S_conj(lambda)(A^H), every cluster
    std::vector<std::size_t> sigma_set;          ///< eigenvector-level Sigma(A)
    std::vector<std::size_t> root_sigma_set;     ///< root-level Sigma(A)
    SpanReport spans;
    SpanReport adjoint_spans;
    std::vector<ConditionVerdict> verdicts;
    NormalityReport normality;
    double kappa_v = 0.0;
    bool diagonalizable = false;
    bool biorthonormal_basis_exists = false;
    double residual_identity_angle = 0.0;
    std::vector<std::string> notes;

    const ConditionVerdict& verdict(ConditionId id) const {
        for (const auto& v : verdicts) {
            if (v.id == id) return v;
        }
        throw Error("report has no verdict for " + std::string(to_string(id)));
    }
    Status status(ConditionId id) const { return verdict(id).status; }

    double min_self_orthogonality() const {
        double best = 1.0;
        for (const auto& l : eigen_links) best = std::min(best, l.self_orthogonality);
        return best;
    }
};

namespace detail {

inline ComplexMatrix shifted(const ComplexMatrix& a, Complex lambda) {
    return a - lambda * ComplexMatrix::Identity(a.rows(), a.cols());
}

inline double sector_threshold(const Tolerance& tol) { return 10.0 * tol.residual_eps; }

inline std::string join_indices(const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? ", " : "") << idx[i];
    os << "}";
    return os.str();
}

}  // namespace detail

/// Clusters whose right and left eigenspaces differ.
inline std::vector<std::size_t> sigma_set(const ComplexMatrix& a, const PointSpectrum& ps, const Tolerance& tol = {}) {
    require_square(a);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ps.clusters.size(); ++i) {
        const auto& c = ps.clusters[i];
        if (c.right_kernel.dim() != c.left_kernel.dim() ||
            subspace_angle(c.right_kernel, c.left_kernel) > detail::sector_threshold(tol)) {
            out.push_back(i);
        }
    }
    return out;
}

/// Max over clusters of the angle between R(A - lambda I)^perp and Ker(A^H - conj(lambda) I).
/// The complement is taken from the range basis, the kernel from a separate SVD of the adjoint.
inline double residual_identity_check(const ComplexMatrix& a, const PointSpectrum& ps, const Tolerance& tol = {}) {
    require_square(a);
    double worst = 0.0;
    const double norm_a = operator_norm(a);
    for (const auto& c : ps.clusters) {
        const ComplexMatrix m = detail::shifted(a, c.value);
        const Subspace range_perp = orthogonal_complement(range_space(m, tol, norm_a));
        const Subspace adjoint_kernel = nullspace(m.adjoint(), tol, norm_a);
        worst = std::max(worst, subspace_angle(range_perp, adjoint_kernel));
    }
    return worst;
}

inline NormalityReport normality_suite(const ComplexMatrix& a, const PointSpectrum& ps,
                                       const std::vector<std::size_t>& sigma, Status c1, bool eigen_complete,
                                       const Tolerance& tol) {
    NormalityReport rep;
    const double fro = a.norm();
    const ComplexMatrix ah = a.adjoint();
    rep.commutator_norm = fro == 0.0 ? 0.0 : (ah * a - a * ah).norm() / (fro * fro);
    rep.is_normal = rep.commutator_norm <= tol.residual_eps;

    for (std::size_t i = 0; i < ps.clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.clusters.size(); ++j) {
            const auto& bi = ps.clusters[i].right_kernel.basis();
            const auto& bj = ps.clusters[j].right_kernel.basis();
            if (bi.cols() == 0 || bj.cols() == 0) continue;
            rep.max_eigenspace_overlap =
                std::max(rep.max_eigenspace_overlap, detail::max_singular_value(bi.adjoint() * bj));
        }
        rep.max_kernel_angle = std::max(rep.max_kernel_angle,
                                        subspace_angle(ps.clusters[i].right_kernel, ps.clusters[i].left_kernel));
    }
    bool all_semi_simple = true;
    for (const auto& c : ps.clusters) all_semi_simple = all_semi_simple && c.semi_simple;

    const auto verdict = [](bool ok) { return ok ? Status::Pass : Status::Fail; };
    rep.properties['a'] = verdict(rep.max_eigenspace_overlap <= detail::sector_threshold(tol));
    rep.properties['b'] = verdict(all_semi_simple);
    rep.properties['c'] = verdict(c1 == Status::Pass);
    rep.properties['d'] = verdict(eigen_complete);
    rep.properties['e'] = verdict(sigma.empty());
    return rep;
}

/// Runs every check and assembles one report. Errors from the eigenvalue
/// iteration or the root-space cross-check propagate; no partial report is returned.
inline DiagnosisReport check_conditions(const ComplexMatrix& a, const Tolerance& tol = {}) {
    tol.validate();
    require_square(a);
    const Index n = a.rows();
    const ComplexMatrix ah = adjoint(a);

    DiagnosisReport rep;
    rep.ambient_dim = n;
    rep.spectrum = point_spectrum(a, tol);
    const PointSpectrum adjoint_spectrum = adjoint_point_spectrum(a, tol);
    const auto& clusters = rep.spectrum.clusters;

    std::vector<RootSpace> adjoint_roots;
    for (const auto& c : clusters) {
        rep.root_spaces.push_back(root_space(a, c, tol));
        adjoint_roots.push_back(root_space_at(ah, std::conj(c.value), tol));
    }
    std::vector<RootSpace> adjoint_own_roots;
    for (const auto& c : adjoint_spectrum.clusters) adjoint_own_roots.push_back(root_space(ah, c, tol));

    for (std::size_t i = 0; i < clusters.size(); ++i) {
        rep.eigen_links.push_back(skew_link_check(clusters[i].right_kernel, clusters[i].left_kernel, tol, i));
        rep.root_links.push_back(skew_link_check(rep.root_spaces[i].space, adjoint_roots[i].space, tol, i));
    }
    rep.sigma_set = sigma_set(a, rep.spectrum, tol);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto& s = rep.root_spaces[i].space;
        const auto& t = adjoint_roots[i].space;
        if (s.dim() != t.dim() || subspace_angle(s, t) > detail::sector_threshold(tol)) rep.root_sigma_set.push_back(i);
    }

    rep.spans = span_report(a, rep.spectrum, rep.root_spaces, tol);
    rep.adjoint_spans = span_report(ah, adjoint_spectrum, adjoint_own_roots, tol);

    // C1: conjugate match of two independently computed point spectra.
    {
        std::vector<Complex> conj_adjoint;
        for (const auto& v : adjoint_spectrum.values()) conj_adjoint.push_back(std::conj(v));
        const double dist = hausdorff_distance(rep.spectrum.values(), conj_adjoint);
        const bool ok = dist <= tol.cluster_eps * rep.spectrum.spectral_scale &&
                        clusters.size() == adjoint_spectrum.clusters.size();
        std::ostringstream os;
        os << "Hausdorff distance between sigma_p(A) and conj(sigma_p(A^H)) is " << dist << " ("
           << clusters.size() << " vs " << adjoint_spectrum.clusters.size() << " clusters)";
        rep.verdicts.push_back({ConditionId::C1, ok ? Status::Pass : Status::Fail, os.str(), {}});
    }

    const auto sector_condition = [&](ConditionId id, const std::vector<std::size_t>& sigma,
                                      const std::vector<SkewLinkVerdict>& links, const char* what) {
        if (sigma.empty()) {
            rep.verdicts.push_back({id, Status::Vacuous,
                                    std::string("Sigma is empty: every ") + what +
                                        " of A coincides with its partner for A^H",
                                    {}});
            return;
        }
        std::vector<std::size_t> failing;
        double worst = 1.0;
        for (auto i : sigma) {
            worst = std::min(worst, links[i].self_orthogonality);
            if (!links[i].linked) failing.push_back(i);
        }
        std::ostringstream os;
        if (failing.empty()) {
            os << "every " << what << " pair in Sigma = " << detail::join_indices(sigma)
               << " is skewly linked; min self-orthogonality " << worst;
            rep.verdicts.push_back({id, Status::Pass, os.str(), sigma});
        } else {
            os << what << " pairs not skewly linked in clusters " << detail::join_indices(failing)
               << "; min self-orthogonality " << worst;
            rep.verdicts.push_back({id, Status::Fail, os.str(), failing});
        }
    };

    // C3 and C3' are evaluated on every cluster; outside Sigma they hold trivially.
    const auto multiplicity_condition = [&](ConditionId id, auto&& left_dim, auto&& right_dim, const char* what) {
        std::vector<std::size_t> failing;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (left_dim(i) != right_dim(i)) failing.push_back(i);
        }
        std::ostringstream os;
        if (failing.empty()) {
            os << what << " multiplicities of A and A^H agree on all " << clusters.size() << " clusters";
            rep.verdicts.push_back({id, Status::Pass, os.str(), {}});
        } else {
            os << what << " multiplicities differ in clusters " << detail::join_indices(failing);
            rep.verdicts.push_back({id, Status::Fail, os.str(), failing});
        }
    };

    const auto span_condition = [&](ConditionId id, Index dim_a, Index dim_ah, const char* what) {
        const bool ok = dim_a == n && dim_ah == n;
        std::ostringstream os;
        os << what << " span dimension " << dim_a << " for A and " << dim_ah << " for A^H in C^" << n;
        rep.verdicts.push_back({id, ok ? Status::Pass : Status::Fail, os.str(), {}});
    };

    sector_condition(ConditionId::C2, rep.sigma_set, rep.eigen_links, "eigenspace");
    multiplicity_condition(
        ConditionId::C3, [&](std::size_t i) { return clusters[i].right_kernel.dim(); },
        [&](std::size_t i) { return clusters[i].left_kernel.dim(); }, "geometric");
    span_condition(ConditionId::C4, rep.spans.eigen_span_dim, rep.adjoint_spans.eigen_span_dim, "eigenvector");
    sector_condition(ConditionId::C2p, rep.root_sigma_set, rep.root_links, "root space");
    multiplicity_condition(
        ConditionId::C3p, [&](std::size_t i) { return rep.root_spaces[i].space.dim(); },
        [&](std::size_t i) { return adjoint_roots[i].space.dim(); }, "algebraic");
    span_condition(ConditionId::C4p, rep.spans.root_span_dim, rep.adjoint_spans.root_span_dim, "root-vector");

    rep.diagonalizable = std::all_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.semi_simple; });
    const ComplexMatrix v = eigvec_matrix(rep.spectrum);
    rep.kappa_v = v.cols() == n ? condition_number(v, tol) : std::numeric_limits<double>::infinity();

    try {
        (void)biorthonormalize(a, rep.spectrum, tol);
        rep.biorthonormal_basis_exists = true;
    } catch (const SkewLinkFailure&) {
        rep.biorthonormal_basis_exists = false;
    } catch (const NotDiagonalizable&) {
        rep.biorthonormal_basis_exists = false;
    }

    rep.residual_identity_angle = residual_identity_check(a, rep.spectrum, tol);
    rep.normality = normality_suite(a, rep.spectrum, rep.sigma_set, rep.status(ConditionId::C1),
                                    rep.status(ConditionId::C4) == Status::Pass, tol);

    rep.notes = {
        "sigma_r(A) is empty in finite dimensions",
        "closures of the eigenvector and root-vector spans are no-ops in finite dimensions",
        "the condensation-point proviso for completeness of normal operators is moot in finite dimensions",
    };
    return rep;
}

}  // namespace biortho
