#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rtstab/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rt - two-phase interface stability toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    const char* names[] = {"symbol", "curve",   "max",     "zeros",
                           "profile", "witness", "simulate"};
    const char* descr[] = {
        "evaluate the boundary symbol along a wavenumber list",
        "sample the growth-rate curve lambda(tau) over the unstable band",
        "locate the maximal growth rate and its wavenumber",
        "count right-half-plane zeros per wavenumber",
        "solve one transmission mode profile and export it",
        "approximate-eigenvalue residual scaling experiment",
        "linearized modal evolution of an interface perturbation"};
    for (int i = 0; i < 7; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descr[i]);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory (default .)");
        sub->add_option("--seed", seed, "seed override for seeded randomness")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--threads", threads, "worker threads (default config)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        rtstab::io::RunConfig cfg = rtstab::io::parse_config_file(config_path);
        if (seed_set) cfg.seed = seed;
        if (threads > 0) cfg.threads = threads;
        const std::string cmd = app.get_subcommands().front()->get_name();
        return rtstab::io::run_command(cmd, cfg, out_dir);
    } catch (const rtstab::ConfigInvalid& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return rtstab::io::kConfig;
    } catch (const std::exception& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return rtstab::io::kIo;
    }
}
