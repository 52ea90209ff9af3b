// Command line around the ecmm C API: simulate, bath, check.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ecmm/ecmm.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitAborts = 3;

int exit_code_for(ecmm_status st) {
    switch (st) {
        case ECMM_OK:
            return 0;
        case ECMM_ERROR_VALIDATION:
            return kExitBadConfig;
        case ECMM_ERROR_TRAJECTORY_ABORTS:
            return kExitAborts;
        default:
            return kExitFailure;
    }
}

int report_error(const char* what, ecmm_status st) {
    std::cerr << "error: " << what << ": " << ecmm_last_error() << "\n";
    return exit_code_for(st);
}

bool write_file(const std::filesystem::path& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

using config_ptr = std::unique_ptr<ecmm_config, decltype(&ecmm_config_free)>;

int load_config(const std::string& path, config_ptr& cfg) {
    ecmm_config* raw = nullptr;
    const ecmm_status st = ecmm_config_load(path.c_str(), &raw);
    if (st != ECMM_OK) return report_error("config", st);
    cfg.reset(raw);
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& output_dir, bool have_seed,
                 std::uint64_t seed, int threads, bool scale_time) {
    config_ptr cfg(nullptr, &ecmm_config_free);
    if (int rc = load_config(config_path, cfg)) return rc;
    if (have_seed) ecmm_config_set_seed(cfg.get(), seed);

    char* warnings = nullptr;
    if (ecmm_config_warnings(cfg.get(), &warnings) == ECMM_OK && warnings) {
        if (*warnings) std::cerr << "warning: " << warnings;
        ecmm_string_free(warnings);
    }

    ecmm_result* res = nullptr;
    const ecmm_status st = ecmm_simulate(cfg.get(), threads, &res);
    if (st != ECMM_OK) return report_error("simulate", st);
    std::unique_ptr<ecmm_result, decltype(&ecmm_result_free)> res_guard(res, &ecmm_result_free);

    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory '" << output_dir
                  << "': " << ec.message() << "\n";
        return kExitFailure;
    }

    char* csv = nullptr;
    char* meta = nullptr;
    if (ecmm_result_to_csv(res, scale_time ? 1 : 0, &csv) != ECMM_OK)
        return report_error("simulate", ECMM_ERROR_RUNTIME);
    std::unique_ptr<char, decltype(&ecmm_string_free)> csv_guard(csv, &ecmm_string_free);
    if (ecmm_result_run_json(res, &meta) != ECMM_OK)
        return report_error("simulate", ECMM_ERROR_RUNTIME);
    std::unique_ptr<char, decltype(&ecmm_string_free)> meta_guard(meta, &ecmm_string_free);

    const std::filesystem::path dir(output_dir);
    const auto csv_path = dir / "populations.csv";
    const auto json_path = dir / "run.json";
    if (!write_file(csv_path, csv) || !write_file(json_path, meta)) {
        std::cerr << "error: cannot write output files in '" << output_dir << "'\n";
        return kExitFailure;
    }

    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << " ("
              << ecmm_result_num_times(res) << " times, aborts " << ecmm_result_abort_count(res)
              << ", wall " << ecmm_result_wall_seconds(res) << " s)\n";
    return 0;
}

int run_bath(const std::string& config_path, const std::string& output_path) {
    config_ptr cfg(nullptr, &ecmm_config_free);
    if (int rc = load_config(config_path, cfg)) return rc;

    ecmm_bath_table* tab = nullptr;
    const ecmm_status st = ecmm_bath_table_create(cfg.get(), &tab);
    if (st != ECMM_OK) return report_error("bath", st);
    std::unique_ptr<ecmm_bath_table, decltype(&ecmm_bath_table_free)> tab_guard(
        tab, &ecmm_bath_table_free);

    char* csv = nullptr;
    if (ecmm_bath_table_to_csv(tab, &csv) != ECMM_OK)
        return report_error("bath", ECMM_ERROR_RUNTIME);
    std::unique_ptr<char, decltype(&ecmm_string_free)> csv_guard(csv, &ecmm_string_free);

    if (output_path == "-") {
        std::cout << csv;
        return 0;
    }
    if (!write_file(output_path, csv)) {
        std::cerr << "error: cannot write '" << output_path << "'\n";
        return kExitFailure;
    }
    std::cout << "wrote " << output_path << " (" << ecmm_bath_table_num_modes(tab) << " modes)\n";
    return 0;
}

int run_check(bool quick) {
    ecmm_check_report* rep = nullptr;
    const ecmm_status st = ecmm_check_run(quick ? 1 : 0, &rep);
    if (st != ECMM_OK) return report_error("check", st);
    std::unique_ptr<ecmm_check_report, decltype(&ecmm_check_report_free)> rep_guard(
        rep, &ecmm_check_report_free);

    for (size_t i = 0; i < ecmm_check_num_rows(rep); ++i)
        std::printf("[%s] %-45s %s\n", ecmm_check_passed(rep, i) ? "PASS" : "FAIL",
                    ecmm_check_name(rep, i), ecmm_check_detail(rep, i));
    return ecmm_check_all_passed(rep) ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("ecmm ") + ecmm_version() +
                 " -- two-state open-system population dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    std::string output_file;
    std::uint64_t seed = 0;
    int threads = 0;
    bool scale_time = false;
    bool quick = false;

    CLI::App* simulate = app.add_subcommand("simulate", "run a population simulation");
    simulate->add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--output", output_dir, "output directory (default: current)");
    CLI::Option* seed_opt =
        simulate->add_option("--seed", seed, "override ensemble.seed from the config");
    simulate->add_option("--threads", threads,
                         "worker threads (0: ECMM_THREADS env or hardware count)");
    simulate->add_flag("--scale-time-by-delta", scale_time,
                       "emit the time column multiplied by the model delta");

    CLI::App* bath = app.add_subcommand("bath", "dump the discretized bath as CSV");
    bath->add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    bath->add_option("--output", output_file, "output file ('-' for stdout)")->required();

    CLI::App* check = app.add_subcommand("check", "run the embedded invariant suite");
    check->add_flag("--quick", quick, "smaller Monte Carlo sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    if (simulate->parsed())
        return run_simulate(config_path, output_dir, seed_opt->count() > 0, seed, threads,
                            scale_time);
    if (bath->parsed()) return run_bath(config_path, output_file);
    return run_check(quick);
}
