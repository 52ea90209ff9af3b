// io.hpp -- text output formats. All numbers are shortest round-trip decimals
// so equal doubles always serialize to equal bytes.
#pragma once

#include <string>

#include "ecmm/bath.hpp"
#include "ecmm/config.hpp"
#include "ecmm/estimators.hpp"

namespace ecmm {

std::string format_double(double v);

// Header exactly: t,P_1_1,P_2_1,D,se_P_1_1,se_P_2_1,se_D
// One row per record time; time column multiplied by time_scale.
std::string populations_csv(const PopulationResult& result, double time_scale = 1.0);

// Header j,omega_j,c_j, one row per mode (j starts at 1), then a trailing '#'
// comment with the discrete and continuum reorganization energies.
std::string bath_csv(const SpectralDensity& sd, const DiscretizedBath& bath);

// Run metadata: effective config echo, code version, abort count, wall time.
// parse_run_config accepts this document directly.
std::string run_json(const RunConfig& effective_cfg, const PopulationResult& result,
                     const std::string& version);

}  // namespace ecmm
