// sampling.hpp -- deterministic RNG substreams, initial-condition samplers on
// the constraint sphere, and closed-form moment oracles used to cross-check them.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ecmm/mapping.hpp"

namespace ecmm {

// Random substream addressed by (seed, stream_id). Equal addresses reproduce
// the same sequence no matter which thread consumes them or in what order
// streams are created. Normals come from Box-Muller on top of mt19937_64 so
// the sequence does not depend on the C++ library's distribution internals.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();   // N(0, 1)

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Uniform point on the constraint sphere: 2F standard normals rescaled onto
// radius^2 = 2 (1 + F gamma). Draw order is x_0..x_{F-1} then p_0..p_{F-1}.
ElectronicPhasePoint sample_uniform_constraint(const MappingSpace& space, RngStream& rng);

// Focused start used by the mean-field baseline: (x, p) = sqrt(2) (cos th, sin th)
// on initial_state (0-based), th uniform in [0, 2 pi), all other pairs zero.
// Total action is exactly 1 per pair convention, i.e. norm 2.
ElectronicPhasePoint sample_ehrenfest_initial(int num_states, int initial_state, RngStream& rng);

// E[X_{i1} ... X_{ik}] for i.i.d. standard normals via Wick pair enumeration.
// Indices in [0, dim); k <= 8 (throws beyond); odd k gives 0.
double gaussian_moment_oracle(const std::vector<int>& indices, int dim);

// The same monomial averaged over the sphere sum_i X_i^2 = 2 xi in `dim`
// coordinates: Gaussian value times the radial rescaling
//   Gamma(dim/2) / (2^{k/2} Gamma((dim + k)/2)) * (2 xi)^{k/2}.
double sphere_moment_oracle(const std::vector<int>& indices, int dim, double xi);

// Surface measure of the unit sphere in `dim` coordinates: 2 pi^{dim/2} / Gamma(dim/2).
double sphere_surface_measure(int dim);

}  // namespace ecmm
