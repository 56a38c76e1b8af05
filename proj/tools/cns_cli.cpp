#include "cns/config.hpp"
#include "cns/errors.hpp"
#include "cns/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

#ifndef CNS_VERSION
#define CNS_VERSION "unknown"
#endif

namespace {

int config_failure(const std::string& message) {
    const nlohmann::ordered_json record = {
        {"status", "failed"}, {"kind", "ConfigError"}, {"message", message}, {"exit_code", cns::exit_config}};
    std::cerr << record.dump() << '\n';
    return cns::exit_config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady compressible Navier-Stokes solver on the unit square with slip boundary conditions"};
    app.set_version_flag("--version", CNS_VERSION);
    std::string config_path;
    std::optional<std::string> mode, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    bool quiet = false;
    app.add_option("--config", config_path, "run configuration file")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "override the mode")
        ->check(CLI::IsMember({"solve", "mms", "estimates", "sweep", "uniqueness"}));
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--n", n, "grid intervals per side")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "print nothing on success");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cns::exit_config;
    }

    cns::RunSpec spec;
    try {
        if (!config_path.empty()) spec = cns::load_config(config_path);
        if (mode) spec.mode = *mode;
        if (out) spec.out_dir = *out;
        if (seed) spec.seed = *seed;
        if (n) spec.solve.n = *n;
        spec.validate();
    } catch (const cns::ConfigError& e) {
        return config_failure(e.what());
    }

    const cns::RunOutcome outcome = cns::run(spec);
    if (outcome.exit_code != cns::exit_ok)
        std::cerr << outcome.summary << "\nfailure record: " << (outcome.out_dir / "failure.json").string() << '\n';
    else if (!quiet)
        std::cout << outcome.summary << "\noutput: " << outcome.out_dir.string() << '\n';
    return outcome.exit_code;
}
