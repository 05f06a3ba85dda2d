/// @file hyperturb_main.cpp
/// @brief CLI entry point: hyperturb <run|sweep|check|eigen> --config PATH
///        [--out DIR] [--seed N].

#include <cstdlib>
#include <iostream>
#include <string>

#include "hyperturb/commands.hpp"
#include "hyperturb/io.hpp"

namespace {

void usage(std::ostream& out) {
    out << "usage: hyperturb <run|sweep|check|eigen> --config PATH [--out DIR] [--seed N]\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hyperturb;

    if (argc < 2) {
        usage(std::cerr);
        return kExitConfigError;
    }
    const std::string mode = argv[1];
    if (mode == "--help" || mode == "-h") {
        usage(std::cout);
        return kExitOk;
    }
    if (mode != "run" && mode != "sweep" && mode != "check" && mode != "eigen") {
        std::cerr << "unknown mode '" << mode << "'\n";
        usage(std::cerr);
        return kExitConfigError;
    }

    std::string config_path;
    std::string out_dir;
    std::string seed_text;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&](const char* name) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << name << " requires a value\n";
                std::exit(kExitConfigError);
            }
            return argv[++i];
        };
        if (arg == "--config") {
            config_path = next("--config");
        } else if (arg == "--out") {
            out_dir = next("--out");
        } else if (arg == "--seed") {
            seed_text = next("--seed");
        } else {
            std::cerr << "unknown argument '" << arg << "'\n";
            usage(std::cerr);
            return kExitConfigError;
        }
    }
    if (config_path.empty()) {
        std::cerr << "--config is required\n";
        return kExitConfigError;
    }

    RunConfig config;
    try {
        config = parse_config(read_text_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    }

    // The subcommand is authoritative; a conflicting explicit mode key is an error.
    if (config.mode_explicit && config.mode != mode) {
        std::cerr << "configuration error: config sets mode '" << config.mode
                  << "' but the subcommand is '" << mode << "'\n";
        return kExitConfigError;
    }
    config.mode = mode;

    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!seed_text.empty()) {
        try {
            config.seed = std::stoull(seed_text);
        } catch (...) {
            std::cerr << "--seed expects a nonnegative integer\n";
            return kExitConfigError;
        }
    }

    return run_command(config, std::cout);
}
