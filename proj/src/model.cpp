#include "qpt/model.hpp"

#include <algorithm>
#include <cmath>

#include "qpt/constants.hpp"

namespace qpt {

Model Model::build(const JunctionParams& jp, const ModeParams& mp,
                   double iv_spacing_uv) {
    jp.validate();
    mp.validate();
    const double hw = mp.photon_uev();
    const int reach = std::max(mp.l_max, mp.cutoff) + 1;
    const double span = 2.0 * jp.delta_uev + std::max(12.0, double(reach)) * hw;
    return Model{jp, mp, IvTable::build(jp, span, iv_spacing_uv),
                 FcTable(mp.lambda(), mp.cutoff + mp.l_max)};
}

LiouvillianSpec Model::liouvillian_spec(double v_uv, double detuning_mhz,
                                        double eta_mhz, JumpVariant variant,
                                        double pump01_mhz) const {
    const int dim = mode.cutoff + 1;
    const double hw = mode.photon_uev();

    LiouvillianSpec spec;
    spec.dim = dim;
    spec.detuning = constants::two_pi_mhz * detuning_mhz;
    spec.eta = constants::two_pi_mhz * eta_mhz;
    spec.kappa = constants::two_pi_mhz * mode.kappa_tot_mhz();
    spec.variant = variant;
    spec.pump01 = constants::two_pi_mhz * pump01_mhz;

    spec.lamb_diag.resize(dim);
    for (int n = 0; n < dim; ++n)
        spec.lamb_diag(n) =
            constants::two_pi_mhz * lamb_shift_n(v_uv, n, mode, iv, fc);

    spec.jump_rates.resize(mode.cutoff);
    for (int l = 1; l <= mode.cutoff; ++l) {
        Eigen::VectorXd r(dim - l);
        const double current = iv.i_at(v_uv + l * hw);
        for (int n = 0; n + l < dim; ++n)
            r(n) = std::max(0.0, fc.alpha(n, l) * current * constants::rate_per_na);
        spec.jump_rates[l - 1] = std::move(r);
    }
    return spec;
}

}  // namespace qpt
