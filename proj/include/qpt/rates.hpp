// rates.hpp — Fock-state-resolved photoassisted loss rates γ_n and Lamb
// shifts δω_n of the mode coupled to the junction, plus the classical
// admittance shift used for comparison.
//
// All rates and shifts are returned as ordinary frequencies in MHz (the
// γ/2π convention); the angular factor enters only at the Liouvillian.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpt/fockfc.hpp"
#include "qpt/junction.hpp"

namespace qpt {

struct ModeParams {
    double omega_ghz = 6.0;       // mode frequency ω/2π
    double z_c_kohm = 4.5;        // characteristic impedance
    double kappa_c_mhz = 0.45;    // coupling loss κ_c/2π
    double kappa_int_mhz = 2.4;   // extra single-photon loss κ_int/2π
    int cutoff = 15;              // Fock truncation N
    int l_max = 24;               // series cutoff for the Lamb-shift sum

    Lambda lambda() const { return Lambda::from_impedance_kohm(z_c_kohm); }
    double photon_uev() const;    // ħω in µeV
    double kappa_tot_mhz() const { return kappa_c_mhz + kappa_int_mhz; }

    void validate() const;
};

struct RateProfile {
    double v_uv = 0.0;
    Eigen::VectorXd gamma_mhz;        // γ_n/2π, n = 0..N
    Eigen::VectorXd delta_omega_mhz;  // δω_n/2π, n = 0..N
    Eigen::MatrixXd gamma_l_mhz;      // per-process breakdown, (n, l)
};

// Eq.-style golden-rule loss rate of |n⟩: (1/e) Σ_{l=1..n} α_{n−l,l} I(V + lħω/e).
double gamma_n(double v_uv, int n, const ModeParams& mode, const IvTable& iv,
               const FcTable& fc);

// Lamb shift of |n⟩ from the KK-transformed current, both sums truncated at
// l_max (the dropped λ^{2l}/l! tail is negligible there).
double lamb_shift_n(double v_uv, int n, const ModeParams& mode, const IvTable& iv,
                    const FcTable& fc);

// δω_m − δω_n for the n→m transition, m = n+1.
double transition_shift(double v_uv, int n, int m, const ModeParams& mode,
                        const IvTable& iv, const FcTable& fc);

// Explicit series for the 0→1 shift,
//   −(λ² e^{−λ²}/2e) Σ_l λ^{2l}/l! (I^KK_{−l−1} + I^KK_{−l+1} − 2 I^KK_{−l}),
// an independent algebraic route that must match transition_shift(0,1).
double transition_shift_01_series(double v_uv, const ModeParams& mode,
                                  const IvTable& iv);

// Classical (λ²-order, no e^{−λ²}) admittance shift,
//   −(λ²/2e)(I^KK_1 + I^KK_{−1} − 2 I^KK_0).
double classical_shift(double v_uv, const ModeParams& mode, const IvTable& iv);

// Voltage sweep of rates and shifts for n = 0..cutoff.
std::vector<RateProfile> rate_profile(const Eigen::VectorXd& v_grid,
                                      const ModeParams& mode, const IvTable& iv,
                                      const FcTable& fc);

}  // namespace qpt
