// sybilsim -- scenario runner for the Sybil-detection protocol simulator.
//
// Subcommands:
//   run      --config <path> [--seed N] --out <dir>
//   sweep    --config <path> --out <dir>
//   validate --config <path>
//   fixtures --out <dir>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vanet/config.hpp"
#include "vanet/errors.hpp"
#include "vanet/fixtures.hpp"
#include "vanet/sim.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) vanet::fail(vanet::Errc::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write-then-rename so a failed run never leaves a partial output file.
void write_file_atomic(const fs::path& path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            vanet::fail(vanet::Errc::io_error, "cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

vanet::sim::ScenarioConfig load_config(const fs::path& path,
                                       std::optional<std::uint64_t> seed_override) {
    vanet::sim::ScenarioConfig config = vanet::cli::parse_config(read_file(path));
    if (seed_override) config.seed = *seed_override;
    return config;
}

int cmd_run(const fs::path& config_path, std::optional<std::uint64_t> seed_override,
            const fs::path& out_dir) {
    vanet::sim::ScenarioConfig config = load_config(config_path, seed_override);
    vanet::sim::World world = vanet::sim::build_world(config);
    vanet::sim::ScenarioMetrics metrics = vanet::sim::run(world);

    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "metrics.csv", vanet::sim::metrics_csv(metrics));
    write_file_atomic(out_dir / "summary.txt", vanet::sim::summary_text(metrics));
    write_file_atomic(out_dir / "roster.csv", world.home_ca.roster_csv());
    std::cout << vanet::sim::summary_text(metrics);
    return 0;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir) {
    vanet::sim::ScenarioConfig config = load_config(config_path, std::nullopt);
    if (!config.sweep)
        vanet::fail(vanet::Errc::config_error, "config declares no [sweep] section");
    auto rows = vanet::sim::sweep(config, config.sweep->axis, config.sweep->values);
    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "sweep.csv", vanet::sim::sweep_csv(rows));
    std::cout << vanet::sim::sweep_csv(rows);
    return 0;
}

int cmd_validate(const fs::path& config_path) {
    vanet::sim::ScenarioConfig config = load_config(config_path, std::nullopt);
    vanet::sim::build_world(config);  // region disjointness and scenario checks
    std::cout << "ok: " << config_path.string() << "\n";
    return 0;
}

int cmd_fixtures(const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "keyed_digest_vectors.txt",
                      vanet::fixtures::keyed_digest_vectors());
    write_file_atomic(out_dir / "keypair_vectors.txt", vanet::fixtures::keypair_vectors());
    write_file_atomic(out_dir / "encrypt_vectors.txt", vanet::fixtures::encrypt_vectors());
    write_file_atomic(out_dir / "wire_vectors.txt", vanet::fixtures::wire_vectors());
    std::cout << "wrote fixtures to " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sybil-detection protocol simulator for vehicular networks"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "run one scenario and write metrics");
    run->add_option("--config", config_path, "scenario config file")->required();
    CLI::Option* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--out", out_dir, "output directory")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run the config's parameter sweep");
    sweep->add_option("--config", config_path, "scenario config file")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();

    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    validate->add_option("--config", config_path, "scenario config file")->required();

    CLI::App* fixtures = app.add_subcommand("fixtures", "emit golden-vector fixture files");
    fixtures->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::optional<std::uint64_t> seed_override;
            if (seed_opt->count() > 0) seed_override = seed;
            return cmd_run(config_path, seed_override, out_dir);
        }
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
        if (validate->parsed()) return cmd_validate(config_path);
        if (fixtures->parsed()) return cmd_fixtures(out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
