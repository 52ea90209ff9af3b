// mapping.hpp -- electronic phase space on the action constraint, the kernel
// pair it carries, and the operator <-> phase-space function correspondence.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ecmm {

using complexd = std::complex<double>;

// Thrown when a phase-space point is off the constraint sphere.
class ConstraintViolation : public std::runtime_error {
public:
    ConstraintViolation(double measured_norm, double expected_norm);
    double measured_norm() const noexcept { return measured_; }
    double expected_norm() const noexcept { return expected_; }

private:
    double measured_;
    double expected_;
};

// Dense Hermitian operator on the F-state electronic space. Construction
// rejects matrices whose anti-Hermitian part exceeds tol (relative to the
// largest entry).
class HermitianOperator {
public:
    explicit HermitianOperator(Eigen::MatrixXcd m, double tol = 1e-12);

    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }

    static HermitianOperator identity(int dim);
    static HermitianOperator projector(int state, int dim);  // |state><state|
    static HermitianOperator pauli_x();
    static HermitianOperator pauli_y();
    static HermitianOperator pauli_z();

private:
    Eigen::MatrixXcd m_;
};

// One (x, p) oscillator pair per electronic state.
struct ElectronicPhasePoint {
    std::vector<double> x;
    std::vector<double> p;

    int num_states() const noexcept { return static_cast<int>(x.size()); }
    double action_norm() const noexcept;  // sum_n (x_n^2 + p_n^2)
};

// Phase space of F oscillator pairs restricted to the sphere
//
//     sum_n (x_n^2 + p_n^2) = 2 (1 + F gamma),   gamma in (-1/F, inf).
//
// gamma is the zero-point parameter; the one value held here is shared by
// sampling, the kernel pair, and the population weights.
class MappingSpace {
public:
    MappingSpace(int num_states, double gamma);

    int num_states() const noexcept { return f_; }
    double gamma() const noexcept { return gamma_; }
    double radius_sq() const noexcept { return radius_sq_; }  // 2 (1 + F gamma)

    // Coefficients of the inverse kernel (see inverse_kernel below):
    //   scale = (1 + F) / (1 + F gamma)^2,  shift = (1 - gamma) / (1 + F gamma)
    double inv_kernel_scale() const noexcept { return inv_scale_; }
    double inv_kernel_shift() const noexcept { return inv_shift_; }

    bool on_constraint(const ElectronicPhasePoint& z, double rel_tol = 1e-10) const;
    // Throws ConstraintViolation carrying the measured norm.
    void require_on_constraint(const ElectronicPhasePoint& z, double rel_tol = 1e-10) const;

private:
    int f_;
    double gamma_;
    double radius_sq_;
    double inv_scale_;
    double inv_shift_;
};

// Covariant kernel K(z)[n][m] = (x_n + i p_n)(x_m - i p_m)/2 - gamma delta_nm.
// Unit trace on the constraint sphere.
HermitianOperator kernel(const MappingSpace& space, const ElectronicPhasePoint& z);

// Contravariant partner, also unit trace, with the scale/shift coefficients of
// the space: Kinv(z)[n][m] = scale (x_n + i p_n)(x_m - i p_m)/2 - shift delta_nm.
HermitianOperator inverse_kernel(const MappingSpace& space, const ElectronicPhasePoint& z);

// A(z) = Tr[A K(z)]; the function the kernel assigns to an operator.
complexd op_to_function(const MappingSpace& space, const HermitianOperator& a,
                        const ElectronicPhasePoint& z);

// Btilde(z) = Tr[Kinv(z) B]; the adjoint-side function used at measurement time.
complexd op_to_adjoint_function(const MappingSpace& space, const HermitianOperator& b,
                                const ElectronicPhasePoint& z);

// Exact low moments of the uniform measure on the constraint sphere. Indices
// run over the 2F flattened coordinates (x_0..x_{F-1}, p_0..p_{F-1}):
//   E[X_i X_j]         = (1 + F gamma)/F * d_ij
//   E[X_i X_j X_k X_l] = (1 + F gamma)^2 / (F (F + 1)) * (d_ij d_kl + d_ik d_jl + d_il d_jk)
double sphere_moment2(const MappingSpace& space, int i, int j);
double sphere_moment4(const MappingSpace& space, int i, int j, int k, int l);

// Monte Carlo estimate of Tr[A B] as F * E[A(z) Btilde(z)] over uniform
// constraint samples. Standard errors are per real/imaginary part.
struct McTraceEstimate {
    complexd value;
    double se_re = 0.0;
    double se_im = 0.0;
};
McTraceEstimate trace_product_mc(const MappingSpace& space, const HermitianOperator& a,
                                 const HermitianOperator& b, std::uint64_t n_samples,
                                 std::uint64_t seed);

}  // namespace ecmm
