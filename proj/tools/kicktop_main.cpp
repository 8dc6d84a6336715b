#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "pipeline.hpp"

using kicktop::pipeline::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{
        "kicked-top analysis pipeline: classical chaos maps, Floquet spectral statistics, "
        "Husimi localization measures and mixed-state decay"};
    app.require_subcommand(1);
    app.fallthrough();  // -c/--set may follow the subcommand

    std::string config_file;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_file, "config file (key = value per line)");
    app.add_option("-s,--set", overrides,
                   "override a config key, e.g. --set j_list=128,256 --set gamma_list=2.6");

    struct FlagSet {
        std::vector<long> j_list;
        std::vector<double> gamma_list;
        double alpha = 0.0;
        bool has_alpha = false;
        std::string grid;
        std::string cache_dir, out_dir;
        bool no_cache = false, allow_large = false, allow_coarse = false;
        int workers = -1;
        double tol = 0.0;
        std::string box;
    } flags;

    for (auto* sub : {app.add_subcommand("classical", "SALI masks and the chaotic fraction"),
                      app.add_subcommand("spectral",
                                         "spacing-ratio indicator and entropy means per (j, gamma)"),
                      app.add_subcommand("husimi", "per-eigenstate record tables (S, ELM, H, M)"),
                      app.add_subcommand("decay", "mixed-fraction decay fits and P(M) histograms"),
                      app.add_subcommand("audit",
                                         "grid-convergence and oracle-equivalence checks")}) {
        sub->add_option("--j", flags.j_list, "spin sizes");
        sub->add_option("--gamma", flags.gamma_list, "kick strengths");
        sub->add_option("--alpha", flags.alpha, "precession angle")
            ->each([&](const std::string&) { flags.has_alpha = true; });
        sub->add_option("--grid", flags.grid, "phase-space grid, e.g. 200x400");
        sub->add_option("--cache-dir", flags.cache_dir, "spectrum cache directory");
        sub->add_option("--out-dir", flags.out_dir, "output directory");
        sub->add_flag("--no-cache", flags.no_cache, "ignore caches and recompute");
        sub->add_flag("--allow-large", flags.allow_large, "opt into j > 2^11 runs");
        sub->add_flag("--allow-coarse-grid", flags.allow_coarse,
                      "allow j above a quarter of the grid cell count");
        sub->add_option("--workers", flags.workers, "worker thread count (0 = default)");
        sub->add_option("--tol", flags.tol, "Krylov tolerance");
        sub->add_option("--box", flags.box, "Husimi dump box m0:m1:elm0:elm1");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig config;
        if (!config_file.empty()) config = kicktop::pipeline::parse_config_file(config_file);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set needs key=value, got '" + kv + "'");
            kicktop::pipeline::apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!flags.j_list.empty()) config.j_list = flags.j_list;
        if (!flags.gamma_list.empty()) config.gamma_list = flags.gamma_list;
        if (flags.has_alpha) config.alpha = flags.alpha;
        if (!flags.grid.empty()) {
            const auto x = flags.grid.find('x');
            if (x == std::string::npos) throw std::invalid_argument("--grid must be NxM");
            config.n_theta = std::stoi(flags.grid.substr(0, x));
            config.n_phi = std::stoi(flags.grid.substr(x + 1));
        }
        if (!flags.cache_dir.empty()) config.cache_dir = flags.cache_dir;
        if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
        if (flags.no_cache) config.use_cache = false;
        if (flags.allow_large) config.allow_large = true;
        if (flags.allow_coarse) config.allow_coarse_grid = true;
        if (flags.workers >= 0) config.workers = flags.workers;
        if (flags.tol > 0.0) config.krylov_tol = flags.tol;
        if (!flags.box.empty())
            kicktop::pipeline::apply_override(config, "dump_box", flags.box);

        bool ok = false;
        if (app.got_subcommand("classical")) ok = kicktop::pipeline::cmd_classical(config);
        else if (app.got_subcommand("spectral")) ok = kicktop::pipeline::cmd_spectral(config);
        else if (app.got_subcommand("husimi")) ok = kicktop::pipeline::cmd_husimi(config);
        else if (app.got_subcommand("decay")) ok = kicktop::pipeline::cmd_decay(config);
        else if (app.got_subcommand("audit")) ok = kicktop::pipeline::cmd_audit(config);
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
