#pragma once

// JSON serialization of diagnosis reports.
//
// Complex numbers are [re, im]; matrices are arrays of columns. Non-finite
// reals (the +infinity kappa sentinel) are written as null and read back as
// +infinity. Objects use nlohmann::json's sorted keys and numbers use its
// shortest round-trip formatting, so equal reports serialize to equal bytes.

#include "biortho/conditions.hpp"
#include "biortho/linalg.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace biortho {

inline constexpr const char* kSchemaVersion = "1.0";

struct ReportDocument {
    std::string schema_version = kSchemaVersion;
    std::string input_digest;
    Tolerance tolerance;
    DiagnosisReport report;
    std::map<std::string, double> timings;  ///< phase -> milliseconds; empty unless requested
};

namespace json_detail {

using nlohmann::json;

inline json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
inline double real(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline json complex(Complex z) { return json::array({z.real(), z.imag()}); }
inline Complex complex(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json matrix(const ComplexMatrix& m) {
    json cols = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
        json col = json::array();
        for (Index i = 0; i < m.rows(); ++i) col.push_back(complex(m(i, j)));
        cols.push_back(std::move(col));
    }
    return cols;
}
inline ComplexMatrix matrix(const json& j, Index rows) {
    ComplexMatrix m(rows, static_cast<Index>(j.size()));
    for (Index c = 0; c < m.cols(); ++c) {
        const json& col = j.at(static_cast<std::size_t>(c));
        if (static_cast<Index>(col.size()) != rows) throw Error("report JSON: basis column has wrong length");
        for (Index r = 0; r < rows; ++r) m(r, c) = complex(col.at(static_cast<std::size_t>(r)));
    }
    return m;
}

inline json link(const SkewLinkVerdict& v) {
    return {{"cluster_index", v.cluster_index},
            {"linked", v.linked},
            {"defect_dim", v.defect_dim},
            {"self_orthogonality", real(v.self_orthogonality)}};
}
inline SkewLinkVerdict link(const json& j) {
    return {j.at("cluster_index").get<std::size_t>(), j.at("linked").get<bool>(), j.at("defect_dim").get<std::size_t>(),
            real(j.at("self_orthogonality"))};
}

inline json spans(const SpanReport& s) {
    return {{"eigen_span_dim", s.eigen_span_dim}, {"root_span_dim", s.root_span_dim}, {"ambient_dim", s.ambient_dim}};
}
inline SpanReport spans(const json& j) {
    return {j.at("eigen_span_dim").get<Index>(), j.at("root_span_dim").get<Index>(), j.at("ambient_dim").get<Index>()};
}

}  // namespace json_detail

inline nlohmann::json to_json(const ReportDocument& doc) {
    using nlohmann::json;
    namespace jd = json_detail;
    const DiagnosisReport& r = doc.report;

    json clusters = json::array();
    for (std::size_t i = 0; i < r.spectrum.clusters.size(); ++i) {
        const auto& c = r.spectrum.clusters[i];
        const auto& root = r.root_spaces.at(i);
        json members = json::array();
        for (const auto& m : c.members) members.push_back(jd::complex(m));
        clusters.push_back({
            {"value", jd::complex(c.value)},
            {"algebraic_multiplicity", c.algebraic_multiplicity},
            {"geometric_multiplicity", c.geometric_multiplicity},
            {"semi_simple", c.semi_simple},
            {"members", members},
            {"right_kernel", jd::matrix(c.right_kernel.basis())},
            {"left_kernel", jd::matrix(c.left_kernel.basis())},
            {"root_space",
             {{"eigenvalue", jd::complex(root.eigenvalue)},
              {"staircase", root.staircase},
              {"height", root.height},
              {"segre", root.segre},
              {"basis", jd::matrix(root.space.basis())}}},
            {"eigen_link", jd::link(r.eigen_links.at(i))},
            {"root_link", jd::link(r.root_links.at(i))},
        });
    }

    json conditions = json::array();
    for (const auto& v : r.verdicts) {
        conditions.push_back({{"id", std::string(to_string(v.id))},
                              {"status", std::string(to_string(v.status))},
                              {"detail", v.detail},
                              {"witnesses", v.witnesses}});
    }

    json properties = json::object();
    for (const auto& [key, status] : r.normality.properties) properties[std::string(1, key)] = std::string(to_string(status));

    json timings = json::object();
    for (const auto& [phase, ms] : doc.timings) timings[phase] = jd::real(ms);

    return {
        {"schema_version", doc.schema_version},
        {"input_digest", doc.input_digest},
        {"tolerance",
         {{"rank_eps", doc.tolerance.rank_eps},
          {"cluster_eps", doc.tolerance.cluster_eps},
          {"residual_eps", doc.tolerance.residual_eps}}},
        {"ambient_dim", r.ambient_dim},
        {"spectrum", {{"spectral_scale", jd::real(r.spectrum.spectral_scale)}, {"clusters", clusters}}},
        {"sigma_set", r.sigma_set},
        {"root_sigma_set", r.root_sigma_set},
        {"spans", {{"A", jd::spans(r.spans)}, {"adjoint", jd::spans(r.adjoint_spans)}}},
        {"conditions", conditions},
        {"normality",
         {{"is_normal", r.normality.is_normal},
          {"commutator_norm", jd::real(r.normality.commutator_norm)},
          {"max_eigenspace_overlap", jd::real(r.normality.max_eigenspace_overlap)},
          {"max_kernel_angle", jd::real(r.normality.max_kernel_angle)},
          {"properties", properties}}},
        {"kappa_v", jd::real(r.kappa_v)},
        {"diagonalizable", r.diagonalizable},
        {"biorthonormal_basis_exists", r.biorthonormal_basis_exists},
        {"residual_identity_angle", jd::real(r.residual_identity_angle)},
        {"notes", r.notes},
        {"timings", timings},
    };
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
    namespace jd = json_detail;
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    if (doc.schema_version != kSchemaVersion) throw Error("unsupported report schema version " + doc.schema_version);
    doc.input_digest = j.at("input_digest").get<std::string>();
    const auto& tol = j.at("tolerance");
    doc.tolerance = {tol.at("rank_eps").get<double>(), tol.at("cluster_eps").get<double>(),
                     tol.at("residual_eps").get<double>()};

    DiagnosisReport& r = doc.report;
    r.ambient_dim = j.at("ambient_dim").get<Index>();
    const Index n = r.ambient_dim;
    r.spectrum.ambient_dim = n;
    r.spectrum.spectral_scale = jd::real(j.at("spectrum").at("spectral_scale"));
    for (const auto& c : j.at("spectrum").at("clusters")) {
        EigenvalueCluster cluster{jd::complex(c.at("value")),
                                  c.at("algebraic_multiplicity").get<std::size_t>(),
                                  c.at("geometric_multiplicity").get<std::size_t>(),
                                  c.at("semi_simple").get<bool>(),
                                  Subspace::from_orthonormal(jd::matrix(c.at("right_kernel"), n)),
                                  Subspace::from_orthonormal(jd::matrix(c.at("left_kernel"), n)),
                                  {}};
        for (const auto& m : c.at("members")) cluster.members.push_back(jd::complex(m));
        r.spectrum.clusters.push_back(std::move(cluster));

        const auto& rs = c.at("root_space");
        RootSpace root;
        root.eigenvalue = jd::complex(rs.at("eigenvalue"));
        root.staircase = rs.at("staircase").get<std::vector<std::size_t>>();
        root.height = rs.at("height").get<std::size_t>();
        root.segre = rs.at("segre").get<std::vector<std::size_t>>();
        root.space = Subspace::from_orthonormal(jd::matrix(rs.at("basis"), n));
        r.root_spaces.push_back(std::move(root));

        r.eigen_links.push_back(jd::link(c.at("eigen_link")));
        r.root_links.push_back(jd::link(c.at("root_link")));
    }
    r.sigma_set = j.at("sigma_set").get<std::vector<std::size_t>>();
    r.root_sigma_set = j.at("root_sigma_set").get<std::vector<std::size_t>>();
    r.spans = jd::spans(j.at("spans").at("A"));
    r.adjoint_spans = jd::spans(j.at("spans").at("adjoint"));
    for (const auto& v : j.at("conditions")) {
        const auto id = condition_from_string(v.at("id").get<std::string>());
        const auto status = status_from_string(v.at("status").get<std::string>());
        if (!id || !status) throw Error("report JSON: unknown condition id or status");
        r.verdicts.push_back(
            {*id, *status, v.at("detail").get<std::string>(), v.at("witnesses").get<std::vector<std::size_t>>()});
    }
    const auto& nj = j.at("normality");
    r.normality.is_normal = nj.at("is_normal").get<bool>();
    r.normality.commutator_norm = jd::real(nj.at("commutator_norm"));
    r.normality.max_eigenspace_overlap = jd::real(nj.at("max_eigenspace_overlap"));
    r.normality.max_kernel_angle = jd::real(nj.at("max_kernel_angle"));
    for (const auto& [key, value] : nj.at("properties").items()) {
        const auto status = status_from_string(value.get<std::string>());
        if (key.size() != 1 || !status) throw Error("report JSON: bad normality property");
        r.normality.properties[key[0]] = *status;
    }
    r.kappa_v = jd::real(j.at("kappa_v"));
    r.diagonalizable = j.at("diagonalizable").get<bool>();
    r.biorthonormal_basis_exists = j.at("biorthonormal_basis_exists").get<bool>();
    r.residual_identity_angle = jd::real(j.at("residual_identity_angle"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& [phase, ms] : j.at("timings").items()) doc.timings[phase] = jd::real(ms);
    return doc;
}

/// Human-readable summary.
inline void write_text_report(std::ostream& os, const ReportDocument& doc) {
    const DiagnosisReport& r = doc.report;
    os << "matrix        " << r.ambient_dim << "x" << r.ambient_dim << "  " << doc.input_digest << "\n";
    os << "tolerance     rank " << doc.tolerance.rank_eps << ", cluster " << doc.tolerance.cluster_eps << ", residual "
       << doc.tolerance.residual_eps << "\n\n";
    os << "point spectrum (" << r.spectrum.clusters.size() << " clusters)\n";
    for (std::size_t i = 0; i < r.spectrum.clusters.size(); ++i) {
        const auto& c = r.spectrum.clusters[i];
        const auto& root = r.root_spaces[i];
        os << "  [" << i << "] lambda = " << c.value.real() << (c.value.imag() < 0 ? " - " : " + ")
           << std::abs(c.value.imag()) << "i   m_a = " << c.algebraic_multiplicity
           << "  m_g = " << c.geometric_multiplicity << (c.semi_simple ? "  semi-simple" : "  defective")
           << "  segre [";
        for (std::size_t k = 0; k < root.segre.size(); ++k) os << (k ? "," : "") << root.segre[k];
        os << "]  self-orthogonality " << r.eigen_links[i].self_orthogonality << "\n";
    }
    os << "\nconditions\n";
    for (const auto& v : r.verdicts) {
        os << "  " << std::left << std::setw(4) << to_string(v.id) << std::setw(8) << to_string(v.status) << v.detail
           << "\n";
    }
    os << std::right;
    os << "\nnormality     " << (r.normality.is_normal ? "normal" : "not normal") << " (commutator "
       << r.normality.commutator_norm << ")  properties";
    for (const auto& [key, status] : r.normality.properties) os << " " << key << ":" << to_string(status);
    os << "\n";
    os << "kappa(V)      " << r.kappa_v << "\n";
    os << "diagonalizable " << (r.diagonalizable ? "yes" : "no") << "\n";
    os << "biorthonormal basis " << (r.biorthonormal_basis_exists ? "exists" : "does not exist") << "\n";
    os << "residual identity angle " << r.residual_identity_angle << "\n";
    for (const auto& note : r.notes) os << "note: " << note << "\n";
    if (!doc.timings.empty()) {
        os << "timings (ms)";
        for (const auto& [phase, ms] : doc.timings) os << " " << phase << "=" << ms;
        os << "\n";
    }
}

}  // namespace biortho
