// biortho: biorthonormal-basis diagnostics for complex matrices.
//
//   biortho analyze matrix.mtx [--format json] [--out report.json]
//   biortho analyze --dir corpus/ --format json
//   biortho gallery jordan --lambda 0 --segre 2 --out j2.mtx
//   biortho study shift_trunc --sizes 4,8,16 --grid 0.5+0i

#include "biortho/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace biortho;

struct TolFlags {
    std::optional<double> rank, cluster, residual;

    void attach(CLI::App* app) {
        app->add_option("--tol-rank", rank, "relative singular-value cutoff (default 1e-10, env BIORTHO_TOL_RANK)");
        app->add_option("--tol-cluster", cluster, "eigenvalue clustering radius relative to the spectral scale");
        app->add_option("--tol-residual", residual, "verification threshold");
    }
    Tolerance resolve() const {
        Tolerance tol = cli::default_tolerance();
        if (rank) tol.rank_eps = *rank;
        if (cluster) tol.cluster_eps = *cluster;
        if (residual) tol.residual_eps = *residual;
        return tol;
    }
};

struct FamilyFlags {
    std::string name;
    std::size_t size = 0;
    std::string lambda, segre, a, b, kappa, scale, decay;
    std::uint64_t seed = 0;

    void attach(CLI::App* app, bool with_t) {
        app->add_option("family", name, "family name")->required();
        app->add_option("--lambda", lambda, "eigenvalue for jordan/block_jordan, e.g. 0.5+1i");
        app->add_option("--segre", segre, "comma-separated Jordan block sizes");
        app->add_option("--a", a, "pt_dimer gain/loss parameter");
        app->add_option("--b", b, "pt_dimer/ep_family coupling");
        app->add_option("--kappa", kappa, "block_jordan similarity condition number");
        app->add_option("--scale", scale, "diag family radius");
        app->add_option("--decay", decay, "weighted_shift_trunc weight exponent");
        app->add_option("--seed", seed, "seed for random families");
        if (with_t) app->add_option("--t", t_value, "ep_family distance to the exceptional point");
    }

    FamilySpec spec(std::size_t default_size) const {
        FamilySpec s;
        s.name = name;
        s.seed = seed;
        if (!segre.empty()) s.segre = cli::parse_list<std::size_t>(segre, cli::parse_count);
        if (!lambda.empty()) s.params["lambda"] = cli::parse_complex(lambda);
        if (!a.empty()) s.params["a"] = cli::parse_real(a);
        if (!b.empty()) s.params["b"] = cli::parse_real(b);
        if (!kappa.empty()) s.params["kappa"] = cli::parse_real(kappa);
        if (!scale.empty()) s.params["scale"] = cli::parse_real(scale);
        if (!decay.empty()) s.params["decay"] = cli::parse_real(decay);
        if (!t_value.empty()) s.params["t"] = cli::parse_real(t_value);
        s.size = size;
        if (s.size == 0 && !s.segre.empty()) s.size = std::accumulate(s.segre.begin(), s.segre.end(), std::size_t{0});
        if (s.size == 0 && (name == "pt_dimer" || name == "ep_family")) s.size = 2;
        if (s.size == 0) s.size = default_size;
        return s;
    }

    std::string t_value;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biorthonormal eigenbasis diagnostics for non-Hermitian matrices"};
    app.require_subcommand(1);

    cli::AnalyzeOptions analyze;
    TolFlags analyze_tol;
    auto* analyze_cmd = app.add_subcommand("analyze", "diagnose a Matrix Market file (exit 0: basis exists, 2: a condition fails, 1: error)");
    analyze_cmd->add_option("matrix", analyze.path, "Matrix Market file");
    analyze_cmd->add_option("--dir", analyze.dir, "analyze every *.mtx file in a directory");
    analyze_cmd->add_option("--format", analyze.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    analyze_cmd->add_option("--out", analyze.out, "write the report to a file");
    analyze_cmd->add_flag("--timings", analyze.timings, "record per-phase timings in the report");
    analyze_cmd->add_option("--jobs", analyze.jobs, "worker threads for --dir");
    analyze_tol.attach(analyze_cmd);

    FamilyFlags gallery_flags;
    std::string gallery_out;
    auto* gallery_cmd = app.add_subcommand("gallery", "write a generated matrix in Matrix Market format");
    gallery_flags.attach(gallery_cmd, true);
    gallery_cmd->add_option("--size", gallery_flags.size, "matrix dimension");
    gallery_cmd->add_option("--out", gallery_out, "output file (stdout by default)");

    FamilyFlags study_flags;
    std::string sizes, grid, t_sweep, study_out;
    TolFlags study_tol;
    auto* study_cmd = app.add_subcommand("study", "truncation study: one table row per size and probe point");
    study_flags.attach(study_cmd, false);
    study_cmd->add_option("--sizes", sizes, "comma-separated increasing sizes")->required();
    study_cmd->add_option("--grid", grid, "comma-separated complex probe points, e.g. 0.5+0i");
    study_cmd->add_option("--t", t_sweep, "comma-separated ep_family t values to sweep");
    study_cmd->add_option("--out", study_out, "output file (stdout by default)");
    study_tol.attach(study_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) {
            analyze.tol = analyze_tol.resolve();
            return cli::cmd_analyze(analyze, std::cout, std::cerr);
        }
        if (*gallery_cmd) {
            cli::GalleryOptions opt{gallery_flags.spec(0), gallery_out};
            if (opt.spec.size == 0) {
                std::cerr << "error: --size is required for family " << opt.spec.name << "\n";
                return cli::kExitError;
            }
            return cli::cmd_gallery(opt, std::cout, std::cerr);
        }
        if (*study_cmd) {
            cli::StudyOptions opt;
            opt.sizes = cli::parse_list<std::size_t>(sizes, cli::parse_count);
            opt.family = study_flags.spec(opt.sizes.empty() ? 1 : opt.sizes.front());
            if (!grid.empty()) opt.grid = cli::parse_list<Complex>(grid, cli::parse_complex);
            if (!t_sweep.empty()) {
                opt.sweep_param = "t";
                opt.sweep_values = cli::parse_list<double>(t_sweep, cli::parse_real);
            }
            opt.out = study_out;
            opt.tol = study_tol.resolve();
            return cli::cmd_study(opt, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitError;
    }
    return cli::kExitError;
}
