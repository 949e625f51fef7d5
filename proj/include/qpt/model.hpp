// model.hpp — Bundles the junction and mode parameters with their derived
// tables (I(V)/I^KK and Franck-Condon cache) and builds Liouvillian specs.

#pragma once

#include "qpt/fockfc.hpp"
#include "qpt/junction.hpp"
#include "qpt/lindblad.hpp"
#include "qpt/rates.hpp"

namespace qpt {

struct Model {
    JunctionParams junction;
    ModeParams mode;
    IvTable iv;
    FcTable fc;

    // Builds the IV table wide enough for every shifted bias the cutoff and
    // the Lamb-shift series can request.
    static Model build(const JunctionParams& jp, const ModeParams& mp,
                       double iv_spacing_uv = 0.5);

    // Liouvillian ingredients at bias V: number-resolved l-photon jump rates,
    // Lamb-shift diagonal, single-photon loss, drive and detuning (ordinary
    // MHz in, angular rad/µs inside the spec).
    LiouvillianSpec liouvillian_spec(double v_uv, double detuning_mhz,
                                     double eta_mhz,
                                     JumpVariant variant = JumpVariant::CoherentPerL,
                                     double pump01_mhz = 0.0) const;
};

}  // namespace qpt
