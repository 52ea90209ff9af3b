#include "ecmm/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ecmm {

namespace {

// splitmix64 finalizer; full-period bijective mixer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    // Decorrelate nearby seeds and nearby stream ids before seeding the engine.
    const std::uint64_t golden = 0x9e3779b97f4a7c15ull;
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (stream_id * golden + golden));
    eng_.seed(h);
}

std::uint64_t RngStream::next_u64() { return eng_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

ElectronicPhasePoint sample_uniform_constraint(const MappingSpace& space, RngStream& rng) {
    const int f = space.num_states();
    ElectronicPhasePoint z;
    z.x.resize(f);
    z.p.resize(f);
    double norm = 0.0;
    do {
        for (int n = 0; n < f; ++n) z.x[n] = rng.normal();
        for (int n = 0; n < f; ++n) z.p[n] = rng.normal();
        norm = z.action_norm();
    } while (norm == 0.0);
    const double s = std::sqrt(space.radius_sq() / norm);
    for (int n = 0; n < f; ++n) {
        z.x[n] *= s;
        z.p[n] *= s;
    }
    return z;
}

ElectronicPhasePoint sample_ehrenfest_initial(int num_states, int initial_state, RngStream& rng) {
    if (num_states < 1) throw std::invalid_argument("sample_ehrenfest_initial: need states");
    if (initial_state < 0 || initial_state >= num_states)
        throw std::invalid_argument("sample_ehrenfest_initial: initial state out of range");
    ElectronicPhasePoint z;
    z.x.assign(num_states, 0.0);
    z.p.assign(num_states, 0.0);
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    const double r = std::numbers::sqrt2;
    z.x[initial_state] = r * std::cos(th);
    z.p[initial_state] = r * std::sin(th);
    return z;
}

namespace {

// Sum over perfect matchings of the index multiset; only equal indices pair.
double wick_sum(std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    if (idx.size() % 2 != 0) return 0.0;
    double total = 0.0;
    const int head = idx[0];
    for (std::size_t j = 1; j < idx.size(); ++j) {
        if (idx[j] != head) continue;
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (k != j) rest.push_back(idx[k]);
        total += wick_sum(rest);
    }
    return total;
}

}  // namespace

double gaussian_moment_oracle(const std::vector<int>& indices, int dim) {
    if (dim < 1) throw std::invalid_argument("gaussian_moment_oracle: dim must be positive");
    if (indices.size() > 8)
        throw std::invalid_argument("gaussian_moment_oracle: order capped at 8");
    for (int i : indices)
        if (i < 0 || i >= dim)
            throw std::invalid_argument("gaussian_moment_oracle: index out of range");
    std::vector<int> idx = indices;
    return wick_sum(idx);
}

double sphere_moment_oracle(const std::vector<int>& indices, int dim, double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("sphere_moment_oracle: xi must be positive");
    const double g = gaussian_moment_oracle(indices, dim);  // also validates
    if (g == 0.0) return 0.0;
    const double k = static_cast<double>(indices.size());
    // radial factor: Gamma(L/2) / (2^{k/2} Gamma((L+k)/2)) * (2 xi)^{k/2}
    const double log_factor = std::lgamma(dim / 2.0) - std::lgamma((dim + k) / 2.0) +
                              0.5 * k * (std::log(2.0 * xi) - std::log(2.0));
    return g * std::exp(log_factor);
}

double sphere_surface_measure(int dim) {
    if (dim < 1) throw std::invalid_argument("sphere_surface_measure: dim must be positive");
    return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

}  // namespace ecmm
