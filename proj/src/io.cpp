#include "ecmm/io.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace ecmm {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string populations_csv(const PopulationResult& result, double time_scale) {
    if (result.num_states != 2)
        throw std::invalid_argument("populations_csv: expects a two-state result");
    const std::string n = std::to_string(result.initial_state + 1);
    std::string out;
    out.reserve(64 + result.times.size() * 160);
    out += "t,P_1_" + n + ",P_2_" + n + ",D,se_P_1_" + n + ",se_P_2_" + n + ",se_D\n";
    for (std::size_t k = 0; k < result.times.size(); ++k) {
        out += format_double(result.times[k] * time_scale);
        out += ',';
        out += format_double(result.populations[0][k]);
        out += ',';
        out += format_double(result.populations[1][k]);
        out += ',';
        out += format_double(result.difference[k]);
        out += ',';
        out += format_double(result.populations_se[0][k]);
        out += ',';
        out += format_double(result.populations_se[1][k]);
        out += ',';
        out += format_double(result.difference_se[k]);
        out += '\n';
    }
    return out;
}

std::string bath_csv(const SpectralDensity& sd, const DiscretizedBath& bath) {
    std::string out = "j,omega_j,c_j\n";
    for (int j = 0; j < bath.num_modes(); ++j) {
        out += std::to_string(j + 1);
        out += ',';
        out += format_double(bath.omega[j]);
        out += ',';
        out += format_double(bath.c[j]);
        out += '\n';
    }
    const double disc = reorganization_energy(bath);
    const double cont = sd.reorganization_energy();
    out += "# reorganization energy: discrete ";
    out += format_double(disc);
    out += ", continuum ";
    out += format_double(cont);
    out += ", ratio ";
    out += format_double(cont != 0.0 ? disc / cont : 0.0);
    out += '\n';
    return out;
}

std::string run_json(const RunConfig& effective_cfg, const PopulationResult& result,
                     const std::string& version) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(run_config_to_json(effective_cfg));
    j["n_trajectories"] = result.n_trajectories;
    j["n_aborted"] = result.n_aborted;
    j["version"] = version;
    j["wall_seconds"] = result.wall_seconds;
    return j.dump(2) + "\n";
}

}  // namespace ecmm
