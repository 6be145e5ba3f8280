#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "romnav/cli.hpp"

using namespace romnav;

namespace {

RunConfig load_config(const std::string& config_path, const std::string& output_override,
                      bool seed_given, std::uint64_t seed) {
    RunConfig cfg = config_path.empty() ? RunConfig::defaults()
                                        : RunConfig::load(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    if (seed_given) cfg.seed = seed;
    return cfg;
}

std::vector<double> parse_horizons(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size() || !(v > 0.0)) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("sweep: bad horizon value '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError("sweep: --horizons list is empty");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ROM wind forecasting and station-keeping pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, output_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--config", config_path, "JSON configuration file (defaults apply)");
    app.add_option("--output", output_dir, "output directory (overrides config)");
    app.add_option_function<std::uint64_t>(
           "--seed",
           [&](std::uint64_t s) {
               seed = s;
               seed_given = true;
           },
           "scenario seed (overrides config)");

    auto* train = app.add_subcommand("train", "build the basis and model archives");
    auto* run = app.add_subcommand("run", "run one closed-loop episode");
    auto* sweep = app.add_subcommand("sweep", "run one episode per horizon");

    std::string horizons_csv = "1.5,3,6,12";
    int jobs = 1;
    sweep->add_option("--horizons", horizons_csv, "comma-separated horizon hours");
    sweep->add_option("--jobs", jobs, "parallel episodes (default 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(config_path, output_dir, seed_given, seed);
        if (train->parsed()) {
            cmd_train(cfg, std::cout);
        } else if (run->parsed()) {
            cmd_run(cfg, std::cout);
        } else if (sweep->parsed()) {
            cmd_sweep(cfg, parse_horizons(horizons_csv), jobs, std::cout);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
