// lindblad.hpp — Driven-dissipative master equation on the truncated Fock
// space: dense Liouvillian assembly, steady state, time evolution.
//
// Internal units: angular rates in rad/µs (2π × MHz), time in µs. The
// Liouvillian acts on column-major vec(ρ).

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qpt {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// How the l-photon jump channels treat coherences between Fock states:
// one collapse operator per l (retains cross-n coherences within a channel)
// or one per (n, l) transition (fully dephasing).
enum class JumpVariant { CoherentPerL, PerTransition };

struct LiouvillianSpec {
    int dim = 0;                       // N + 1
    double detuning = 0.0;             // δ = ω_pump − ω_bare, rad/µs
    double eta = 0.0;                  // drive amplitude, rad/µs
    double kappa = 0.0;                // single-photon loss κ_c + κ_int, 1/µs
    Eigen::VectorXd lamb_diag;         // δω_n diagonal, rad/µs (size dim)
    // per-l jump rates: rates[l-1](n) is the |n+l⟩ → |n⟩ rate in 1/µs
    std::vector<Eigen::VectorXd> jump_rates;
    JumpVariant variant = JumpVariant::CoherentPerL;
    // extra incoherent 0↔1 pumping (two-tone saturation model), 1/µs
    double pump01 = 0.0;

    void validate() const;
    Matrix hamiltonian() const;
    std::vector<Matrix> collapse_operators() const;
};

Matrix annihilation_operator(int dim);

// Dense (dim²×dim²) generator L with L vec(ρ) = −i[H,ρ] + Σ D[J_k]ρ.
Matrix build_liouvillian(const LiouvillianSpec& spec);

// Unique trace-one solution of L vec(ρ) = 0 by direct solve with the trace
// row substituted; Hermitized, residual-checked, nullspace-checked.
Matrix steady_state(const Matrix& liouvillian);

// Fixed-step RK4 propagation of vec(ρ) to each time in t_grid (µs), with the
// step chosen from ‖L‖ and halved until the trace drift stays below 1e-8.
std::vector<Matrix> evolve(const Matrix& liouvillian, const Matrix& rho0,
                           const std::vector<double>& t_grid);

struct Observables {
    std::complex<double> mean_a;
    double n_mean = 0.0;
    Eigen::VectorXd populations;
};

Observables observables(const Matrix& rho);

}  // namespace qpt
