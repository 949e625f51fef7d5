// junction.hpp — BCS quasiparticle I(V) of the SIS junction, its
// Kramers-Kronig transform, and the tabulated/interpolated form shared by the
// rate and master-equation layers.

#pragma once

#include <Eigen/Dense>

namespace qpt {

struct JunctionParams {
    double delta_uev = 200.0;        // gap Δ per electrode
    double r_tunnel_kohm = 150.0;    // bare R_T far above the gap
    double r_eff_kohm = 430.0;       // effective R̃_T absorbing the multimode blockade factor
    double temperature_uev = 0.0;    // k_B T
    double dynes = 0.0;              // γ_D / Δ, gap-edge smearing knob (0 = sharp BCS)

    void validate() const;
};

// BCS density of states |E|/sqrt(E² − Δ²) outside the gap, 0 inside.
// With dynes > 0 the standard |Re (E+iγ)/sqrt((E+iγ)²−Δ²)| regularization.
double bcs_dos(double e_uev, double delta_uev, double dynes = 0.0);

// Quasiparticle current through the junction at bias V (µV), in nA, by
// adaptive quadrature with the inverse-square-root band-edge singularities
// removed by local variable substitution. r_kohm ≤ 0 selects r_eff.
double qp_current(double v_uv, const JunctionParams& p, double r_kohm = 0.0,
                  double rel_tol = 1e-9);

// Sampled I(V) and its KK transform on a uniform symmetric voltage grid with
// shape-preserving cubic interpolation. Immutable after construction.
class IvTable {
public:
    static IvTable build(const JunctionParams& p, double span_uv = 0.0,
                         double spacing_uv = 0.5, double r_kohm = 0.0,
                         bool with_kk = true);

    const JunctionParams& params() const { return params_; }
    double r_kohm() const { return r_kohm_; }
    double span_uv() const { return grid_(grid_.size() - 1); }
    double spacing_uv() const { return spacing_; }
    const Eigen::VectorXd& grid() const { return grid_; }
    const Eigen::VectorXd& i_samples() const { return i_; }
    const Eigen::VectorXd& ikk_samples() const { return ikk_; }
    bool has_kk() const { return has_kk_; }

    // Cubic interpolation; i_at clamps to exact 0 inside the gap at T = 0.
    double i_at(double v_uv) const;
    double ikk_at(double v_uv) const;

private:
    JunctionParams params_;
    double r_kohm_ = 0.0;
    double spacing_ = 0.0;
    bool has_kk_ = false;
    Eigen::VectorXd grid_, i_, ikk_;   // samples
    Eigen::VectorXd di_, dikk_;        // interpolation slopes
    friend IvTable kk_transform(const IvTable&);
};

// Principal-value Hilbert transform on a uniform grid,
//   out(V) = (1/π) P ∫ g(V')/(V'−V) dV',
// with the pole handled by subtracting g(V) from the integrand and an
// analytic c/V' tail beyond the grid when tail_correction is set.
Eigen::VectorXd hilbert_pv(const Eigen::VectorXd& v, const Eigen::VectorXd& g,
                           bool tail_correction = true);

// Fill ikk with the KK transform of the ohmic-subtracted current
// I_reg(V) = I(V) − V/R. Throws GridTooNarrow when the analytic tail
// correction exceeds 1% of the transform scale.
IvTable kk_transform(const IvTable& iv);

}  // namespace qpt
