// padelab: exact-arithmetic Pade table and overconvergence experiments.
//
//   padelab <table|ray|windows|overconv> --config cfg.json [--out DIR]
//            [--precision BITS] [--threads N] [--verbose]
//
// Exit codes: 0 success, 2 config error, 3 capability error, 4 numeric failure.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "padelab/errors.hpp"
#include "padelab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact Pade approximation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int precision = 0;
    int threads = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--precision", precision, "significand bits (overrides config)");
    app.add_option("--threads", threads, "worker threads (overrides config)");
    app.add_flag("--verbose", verbose, "print artifact names");

    std::string command;
    for (const char* name : {"table", "ray", "windows", "overconv"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough(); // global flags may follow the subcommand
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        padelab::RunConfig cfg = padelab::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (precision > 0) {
            if (precision < 64) throw padelab::ConfigError("--precision: must be >= 64");
            cfg.precision_bits = precision;
        }
        if (threads > 0) cfg.threads = threads;
        auto artifacts = padelab::run_command(command, cfg);
        if (verbose)
            for (const auto& a : artifacts) std::cout << cfg.out_dir << "/" << a << "\n";
        return 0;
    } catch (const padelab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const padelab::ScheduleError& e) {
        std::cerr << "config error (schedule): " << e.what() << "\n";
        return 2;
    } catch (const padelab::DomainError& e) {
        std::cerr << "config error (precondition): " << e.what() << "\n";
        return 2;
    } catch (const padelab::CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const padelab::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what()
                  << " (best residual " << e.best_residual << ")\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
