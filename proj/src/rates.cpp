#include "qpt/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "qpt/constants.hpp"
#include "qpt/errors.hpp"

namespace qpt {

double ModeParams::photon_uev() const { return omega_ghz * constants::uev_per_ghz; }

void ModeParams::validate() const {
    if (omega_ghz <= 0.0) throw std::invalid_argument("ModeParams: omega must be > 0");
    if (z_c_kohm < 0.0) throw std::invalid_argument("ModeParams: negative impedance");
    if (kappa_c_mhz <= 0.0 || kappa_int_mhz < 0.0)
        throw std::invalid_argument("ModeParams: bad loss rates");
    if (cutoff < 1 || l_max < 1) throw std::invalid_argument("ModeParams: bad cutoffs");
}

double gamma_n(double v_uv, int n, const ModeParams& mode, const IvTable& iv,
               const FcTable& fc) {
    const double hw = mode.photon_uev();
    double sum = 0.0;
    for (int l = 1; l <= n; ++l)
        sum += fc.alpha(n - l, l) * iv.i_at(v_uv + l * hw);
    return sum * constants::mhz_per_na;
}

double lamb_shift_n(double v_uv, int n, const ModeParams& mode, const IvTable& iv,
                    const FcTable& fc) {
    const double hw = mode.photon_uev();
    const double span = iv.span_uv();
    const int l_max = std::min(mode.l_max, fc.cutoff() - n);
    if (v_uv - l_max * hw < -span || v_uv + n * hw > span)
        throw GridTooNarrow("lamb_shift_n: IV table does not cover the shifted biases");

    double sum = 0.0;
    for (int l = 1; l <= n; ++l)
        sum += fc.alpha(n - l, l) * iv.ikk_at(v_uv + l * hw);
    for (int l = 0; l <= l_max; ++l)
        sum += fc.alpha(n, l) * iv.ikk_at(v_uv - l * hw);
    return -0.5 * sum * constants::mhz_per_na;
}

double transition_shift(double v_uv, int n, int m, const ModeParams& mode,
                        const IvTable& iv, const FcTable& fc) {
    if (m != n + 1) throw std::invalid_argument("transition_shift: need m = n + 1");
    return lamb_shift_n(v_uv, m, mode, iv, fc) - lamb_shift_n(v_uv, n, mode, iv, fc);
}

double transition_shift_01_series(double v_uv, const ModeParams& mode,
                                  const IvTable& iv) {
    const double hw = mode.photon_uev();
    const double lam2 = std::pow(mode.lambda().value, 2);
    const double span = iv.span_uv();
    double sum = 0.0;
    double coeff = 1.0;  // λ^{2l}/l!
    for (int l = 0; l <= mode.l_max; ++l) {
        if (v_uv - (l + 1) * hw < -span)
            throw GridTooNarrow("transition_shift_01_series: table too narrow");
        const double comb = iv.ikk_at(v_uv - (l + 1) * hw) +
                            iv.ikk_at(v_uv - (l - 1) * hw) -
                            2.0 * iv.ikk_at(v_uv - l * hw);
        sum += coeff * comb;
        coeff *= lam2 / (l + 1);
    }
    return -0.5 * lam2 * std::exp(-lam2) * sum * constants::mhz_per_na;
}

double classical_shift(double v_uv, const ModeParams& mode, const IvTable& iv) {
    const double hw = mode.photon_uev();
    const double lam2 = std::pow(mode.lambda().value, 2);
    const double comb = iv.ikk_at(v_uv + hw) + iv.ikk_at(v_uv - hw) -
                        2.0 * iv.ikk_at(v_uv);
    return -0.5 * lam2 * comb * constants::mhz_per_na;
}

std::vector<RateProfile> rate_profile(const Eigen::VectorXd& v_grid,
                                      const ModeParams& mode, const IvTable& iv,
                                      const FcTable& fc) {
    const int n_max = mode.cutoff;
    const double hw = mode.photon_uev();
    std::vector<RateProfile> out;
    out.reserve(v_grid.size());
    for (Eigen::Index k = 0; k < v_grid.size(); ++k) {
        RateProfile p;
        p.v_uv = v_grid(k);
        p.gamma_mhz.setZero(n_max + 1);
        p.delta_omega_mhz.setZero(n_max + 1);
        p.gamma_l_mhz.setZero(n_max + 1, n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            for (int l = 1; l <= n; ++l) {
                p.gamma_l_mhz(n, l) =
                    fc.alpha(n - l, l) * iv.i_at(p.v_uv + l * hw) * constants::mhz_per_na;
                p.gamma_mhz(n) += p.gamma_l_mhz(n, l);
            }
            p.delta_omega_mhz(n) = lamb_shift_n(p.v_uv, n, mode, iv, fc);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qpt
