#pragma once

// Command implementations behind the `biortho` executable. Each command
// writes to caller-provided streams and returns the process exit code, so
// tests can drive them without spawning processes.
//
// analyze exit codes: 0 biorthonormal basis exists, 2 diagnosis completed but
// some condition fails, 1 input or numerical error.

#include "biortho/conditions.hpp"
#include "biortho/gallery.hpp"
#include "biortho/matrix_market.hpp"
#include "biortho/report_json.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace biortho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConditionFailed = 2;

/// Parses "1.5", "-2i", "0.5+0i", "1e-3-2.5e2i" ("j" also accepted for the imaginary unit).
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    auto number = [&](std::string_view part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::string_view body = part.front() == '+' ? part.substr(1) : part;
        double v = 0.0;
        const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
        if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
            throw InvalidArgument("cannot parse complex number '" + std::string(text) + "'");
        }
        return v;
    };
    if (s.empty()) throw InvalidArgument("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    return {number(std::string_view(s).substr(0, split)), number(std::string_view(s).substr(split))};
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view text, Parse&& parse) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, end - pos);
        if (!item.empty()) out.push_back(parse(item));
        pos = end + 1;
    }
    return out;
}

inline std::size_t parse_count(std::string_view s) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidArgument("expected a non-negative integer, found '" + std::string(s) + "'");
    }
    return v;
}

inline double parse_real(std::string_view s) {
    const Complex z = parse_complex(s);
    if (z.imag() != 0.0) throw InvalidArgument("expected a real number, found '" + std::string(s) + "'");
    return z.real();
}

/// Default tolerance, honoring BIORTHO_TOL_RANK when set.
inline Tolerance default_tolerance() {
    Tolerance tol;
    if (const char* env = std::getenv("BIORTHO_TOL_RANK"); env != nullptr && *env != '\0') {
        tol.rank_eps = parse_real(env);
    }
    return tol;
}

inline std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline ReportDocument analyze_matrix(const ComplexMatrix& m, const Tolerance& tol, bool with_timings = false) {
    using clock = std::chrono::steady_clock;
    ReportDocument doc;
    doc.tolerance = tol;
    const auto t0 = clock::now();
    doc.input_digest = matrix_digest(m);
    const auto t1 = clock::now();
    doc.report = check_conditions(m, tol);
    const auto t2 = clock::now();
    if (with_timings) {
        const auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
        doc.timings["digest"] = ms(t1 - t0);
        doc.timings["diagnose"] = ms(t2 - t1);
    }
    return doc;
}

struct AnalyzeOptions {
    std::string path;          ///< single matrix file
    std::string dir;           ///< or: every *.mtx file in a directory
    std::string format = "text";
    std::string out;           ///< output file; stdout when empty
    Tolerance tol;
    bool timings = false;
    unsigned jobs = 0;         ///< directory mode worker count; 0 = hardware concurrency
};

namespace detail {

struct FileOutcome {
    std::string name;
    int code = kExitError;
    std::optional<ReportDocument> doc;
    std::string error;
};

inline FileOutcome analyze_file(const std::string& path, const AnalyzeOptions& opt) {
    FileOutcome res;
    res.name = std::filesystem::path(path).filename().string();
    try {
        const ComplexMatrix m = read_matrix_market_file(path);
        if (m.rows() != m.cols()) {
            throw InvalidArgument("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  "; only square matrices can be diagnosed");
        }
        res.doc = analyze_matrix(m, opt.tol, opt.timings);
        res.code = res.doc->report.biorthonormal_basis_exists ? kExitOk : kExitConditionFailed;
    } catch (const std::exception& e) {
        res.error = path + ": " + e.what();
        res.code = kExitError;
    }
    return res;
}

inline int combine(int a, int b) {
    if (a == kExitError || b == kExitError) return kExitError;
    if (a == kExitConditionFailed || b == kExitConditionFailed) return kExitConditionFailed;
    return kExitOk;
}

inline bool write_output(const std::string& text, const std::string& out, std::ostream& stdout_stream,
                         std::ostream& err) {
    if (out.empty() || out == "-") {
        stdout_stream << text;
        return true;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << text)) {
        err << "error: cannot write '" << out << "'\n";
        return false;
    }
    return true;
}

}  // namespace detail

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        opt.tol.validate();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    if (opt.format != "text" && opt.format != "json") {
        err << "error: --format must be text or json\n";
        return kExitError;
    }
    if (opt.path.empty() == opt.dir.empty()) {
        err << "error: give exactly one of a matrix file or --dir\n";
        return kExitError;
    }

    std::vector<std::string> files;
    if (!opt.path.empty()) {
        files.push_back(opt.path);
    } else {
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(opt.dir, ec)) {
            if (entry.is_regular_file() && entry.path().extension() == ".mtx") files.push_back(entry.path().string());
        }
        if (ec) {
            err << "error: cannot list '" << opt.dir << "': " << ec.message() << "\n";
            return kExitError;
        }
        std::sort(files.begin(), files.end());
    }

    std::vector<detail::FileOutcome> results(files.size());
    {
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const unsigned workers = std::max(1u, std::min<unsigned>(opt.jobs ? opt.jobs : hw,
                                                                 static_cast<unsigned>(files.size())));
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w + 1 < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < files.size(); i = next++) results[i] = detail::analyze_file(files[i], opt);
            });
        }
        for (std::size_t i = next++; i < files.size(); i = next++) results[i] = detail::analyze_file(files[i], opt);
    }

    int code = kExitOk;
    for (const auto& r : results) {
        code = detail::combine(code, r.code);
        if (!r.error.empty()) err << "error: " << r.error << "\n";
    }

    std::string text;
    if (opt.format == "json") {
        if (opt.dir.empty()) {
            if (results.front().doc) text = render_json(*results.front().doc);
        } else {
            nlohmann::json batch = nlohmann::json::object();
            for (const auto& r : results) {
                batch[r.name] = r.doc ? to_json(*r.doc) : nlohmann::json{{"error", r.error}};
            }
            text = nlohmann::json{{"reports", batch}}.dump(2) + "\n";
        }
    } else {
        std::ostringstream os;
        for (const auto& r : results) {
            if (!opt.dir.empty()) os << "== " << r.name << "\n";
            if (r.doc) write_text_report(os, *r.doc);
            if (!opt.dir.empty()) os << "\n";
        }
        text = os.str();
    }
    if (!text.empty() && !detail::write_output(text, opt.out, out, err)) return kExitError;
    return code;
}

struct GalleryOptions {
    FamilySpec spec;
    std::string out;  ///< stdout when empty or "-"
};

inline int cmd_gallery(const GalleryOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ComplexMatrix m = generate(opt.spec);
        return detail::write_output(write_matrix_market(m), opt.out, out, err) ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

struct StudyOptions {
    FamilySpec family;
    std::vector<std::size_t> sizes;
    std::vector<Complex> grid;
    std::string sweep_param;           ///< optional parameter swept over sweep_values (e.g. "t")
    std::vector<double> sweep_values;
    std::string out;
    Tolerance tol;
};

namespace detail {

inline std::string cell(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return format_double(x);
}

inline std::string cell(Complex z) {
    return format_double(z.real()) + (std::signbit(z.imag()) ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace detail

/// Tab-separated table, one row per (sweep value, size, probe point).
inline std::string render_study(const std::vector<std::pair<std::optional<double>, TruncationStudy>>& studies,
                                const std::string& sweep_param) {
    std::ostringstream os;
    os << "family\tsize";
    if (!sweep_param.empty()) os << "\t" << sweep_param;
    os << "\tprobe\tsigma_min\tkappa_v\tself_orthogonality\tbiorthonormal_basis_exists\tconditions\n";
    for (const auto& [sweep, study] : studies) {
        for (const auto& row : study.rows) {
            const std::size_t probes = std::max<std::size_t>(1, study.probe_grid.size());
            for (std::size_t p = 0; p < probes; ++p) {
                os << study.family.name << "\t" << row.size;
                if (!sweep_param.empty()) os << "\t" << detail::cell(*sweep);
                if (study.probe_grid.empty()) {
                    os << "\t-\t-";
                } else {
                    os << "\t" << detail::cell(study.probe_grid[p]) << "\t" << detail::cell(row.sigma_min[p]);
                }
                os << "\t" << detail::cell(row.kappa_v) << "\t" << detail::cell(row.self_orthogonality) << "\t"
                   << (row.biorthonormal_basis_exists ? "true" : "false") << "\t" << row.verdict_summary << "\n";
            }
        }
    }
    return os.str();
}

inline int cmd_study(const StudyOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        opt.tol.validate();
        std::vector<std::pair<std::optional<double>, TruncationStudy>> studies;
        if (opt.sweep_param.empty()) {
            studies.emplace_back(std::nullopt, truncation_study(opt.family, opt.sizes, opt.grid, opt.tol));
        } else {
            for (double v : opt.sweep_values) {
                FamilySpec spec = opt.family;
                spec.params[opt.sweep_param] = v;
                studies.emplace_back(v, truncation_study(spec, opt.sizes, opt.grid, opt.tol));
            }
        }
        return detail::write_output(render_study(studies, opt.sweep_param), opt.out, out, err) ? kExitOk
                                                                                              : kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace biortho::cli
