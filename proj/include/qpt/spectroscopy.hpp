// spectroscopy.hpp — Experiment-level drivers: reflection spectra vs
// (bias, probe frequency), Zeno saturation sweeps, power-broadening fits,
// and two-tone probing of the 1→2 transition.

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpt/model.hpp"

namespace qpt {

struct SpectrumResult {
    Eigen::VectorXd v_grid_uv;
    Eigen::VectorXd f_grid_ghz;
    Eigen::MatrixXcd s11;            // (bias, frequency)
    Eigen::VectorXd center_ghz;      // fitted resonance per bias column
    Eigen::VectorXd fwhm_mhz;
    Eigen::VectorXd depth;           // 1 − min |S11|²
    std::vector<bool> fit_ok;
};

struct TlsFit {
    double center_ghz = 0.0;
    double fwhm_mhz = 0.0;     // fitted full width of the |S11|² dip
    double kappa_fit_mhz = 0.0;
    double gamma_mhz = 0.0;    // power broadening from fwhm² = κ² + 2Γ²
    double residual = 0.0;
};

struct ZenoPoint {
    double eta_mhz = 0.0;
    double abs_a_sq = 0.0;           // |⟨a⟩|² at resonant drive
    double n_mean = 0.0;
    Eigen::VectorXd populations;
    double gamma_fit_mhz = 0.0;      // power broadening from a probe sweep
    double tls_abs_a_sq = 0.0;       // ideal two-level reference
};

enum class TwoToneMethod { Saturation, Bichromatic };

struct SolverOptions {
    JumpVariant variant = JumpVariant::CoherentPerL;
    int threads = 1;
};

// Single-port reflection S₁₁ = 1 + κ_c ⟨a⟩ / (iη) with ⟨a⟩ from the steady
// state in the probe rotating frame; the phase convention gives the standard
// over-coupled dip 1 − κ_c/(κ/2 − iδ) for the empty linear cavity.
std::complex<double> reflection(const Model& model, double v_uv, double f_probe_ghz,
                                double eta_mhz,
                                JumpVariant variant = JumpVariant::CoherentPerL,
                                double pump01_mhz = 0.0);

// Grid sweep of reflection with per-column resonance extraction. Fit failures
// are flagged per column, never fatal.
SpectrumResult spectrum_map(const Model& model, const Eigen::VectorXd& v_grid_uv,
                            const Eigen::VectorXd& f_grid_ghz, double eta_mhz,
                            const SolverOptions& opt = {});

// Resonant-drive steady states across the pump grid at fixed bias, with the
// ideal-TLS reference curve and a power-broadening fit per point.
std::vector<ZenoPoint> zeno_sweep(const Model& model, double v_uv,
                                  const Eigen::VectorXd& eta_grid_mhz,
                                  const SolverOptions& opt = {},
                                  bool fit_broadening = true);

// Least-squares Lorentzian-dip fit of |S₁₁|²(f); Γ extracted from the fitted
// width through fwhm² = κ² + 2Γ² when a κ prior is supplied.
TlsFit fit_tls_lineshape(const Eigen::VectorXd& f_ghz, const Eigen::VectorXd& abs2,
                         double kappa_prior_mhz = 0.0);

// Two-tone spectroscopy of the 1→2 transition: tone 1 saturates 0↔1 (either
// as an incoherent pumping rate or as an explicit time-averaged bichromatic
// drive), tone 2 sweeps f_grid.
SpectrumResult two_tone(const Model& model, const Eigen::VectorXd& v_grid_uv,
                        const Eigen::VectorXd& f_grid_ghz, double eta2_mhz,
                        double tone1_rate_mhz,
                        TwoToneMethod method = TwoToneMethod::Saturation,
                        const SolverOptions& opt = {});

// Steady-state flux balance: drive input vs κ-weighted photon emission plus
// junction-absorbed photons, relative mismatch (input-output consistency).
double flux_imbalance(const Model& model, double v_uv, double detuning_mhz,
                      double eta_mhz, JumpVariant variant = JumpVariant::CoherentPerL);

}  // namespace qpt
