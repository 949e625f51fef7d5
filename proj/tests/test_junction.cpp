#include <doctest.h>

#include <cmath>
#include <random>

#include "qpt/constants.hpp"
#include "qpt/errors.hpp"
#include "qpt/junction.hpp"

using namespace qpt;

namespace {

JunctionParams default_params() { return JunctionParams{}; }

}  // namespace

TEST_CASE("bcs density of states") {
    CHECK(bcs_dos(100.0, 200.0) == 0.0);
    CHECK(bcs_dos(400.0, 200.0) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    const double e = 200.0 * 1.0001;
    CHECK(bcs_dos(e, 200.0) ==
          doctest::Approx(e / std::sqrt(e * e - 200.0 * 200.0)).epsilon(1e-10));
    CHECK(bcs_dos(-400.0, 200.0) == bcs_dos(400.0, 200.0));
}

TEST_CASE("qp current gap blockade and asymptotics") {
    const JunctionParams p = default_params();

    SUBCASE("blockade below 2 delta at T=0") {
        CHECK(qp_current(300.0, p) == 0.0);
        CHECK(qp_current(399.9, p) == 0.0);
    }

    SUBCASE("ohmic asymptote") {
        const double v = 10.0 * 2.0 * p.delta_uev;  // 20 Δ
        const double i = qp_current(v, p);
        CHECK(i * p.r_eff_kohm / v == doctest::Approx(1.0).epsilon(0.01));
    }

    SUBCASE("gap-edge jump is pi/2") {
        const double v = 2.0 * p.delta_uev * (1.0 + 1e-4);
        const double i = qp_current(v, p);
        CHECK(i * p.r_eff_kohm / p.delta_uev == doctest::Approx(constants::pi / 2).epsilon(0.01));
    }

    SUBCASE("oddness") {
        CHECK(qp_current(-500.0, p) == doctest::Approx(-qp_current(500.0, p)).epsilon(1e-12));
    }

    SUBCASE("linearity in 1/R") {
        JunctionParams q = p;
        q.r_eff_kohm = 2.0 * p.r_eff_kohm;
        CHECK(qp_current(500.0, q) == doctest::Approx(0.5 * qp_current(500.0, p)).epsilon(1e-12));
    }
}

TEST_CASE("iv table symmetry and interpolation") {
    const JunctionParams p = default_params();
    const IvTable iv = IvTable::build(p, 700.0, 0.5);

    SUBCASE("grid oddness of I and evenness of IKK") {
        const auto& g = iv.grid();
        const auto& i = iv.i_samples();
        const auto& kk = iv.ikk_samples();
        const Eigen::Index n = g.size();
        const double kk_scale = kk.cwiseAbs().maxCoeff();
        for (Eigen::Index k = 0; k < n; ++k) {
            CHECK(std::abs(i(k) + i(n - 1 - k)) < 1e-9);
            CHECK(std::abs(kk(k) - kk(n - 1 - k)) < 1e-6 * kk_scale);
        }
    }

    SUBCASE("monotone I at T=0 for V > 0") {
        const auto& g = iv.grid();
        for (Eigen::Index k = 1; k < g.size(); ++k)
            if (g(k - 1) >= 0.0) CHECK(iv.i_samples()(k) >= iv.i_samples()(k - 1));
    }

    SUBCASE("grid points reproduce samples, gap clamps to zero") {
        const auto& g = iv.grid();
        const Eigen::Index mid = g.size() / 2;
        CHECK(iv.i_at(g(mid + 100)) == doctest::Approx(iv.i_samples()(mid + 100)).epsilon(1e-12));
        CHECK(iv.i_at(123.456) == 0.0);
    }

    SUBCASE("linear-region midpoint") {
        // far above the gap I is close to linear; the interpolant should be too
        const double v = 650.1234;
        const double lin = 0.5 * (iv.i_at(650.0) + iv.i_at(650.5));
        CHECK(iv.i_at(v - 0.25 + 0.0034) == doctest::Approx(lin).epsilon(1e-3));
    }

    SUBCASE("dense-vs-coarse agreement at random voltages") {
        const IvTable fine = IvTable::build(p, 700.0, 0.125);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> vs(405.0, 690.0);
        for (int t = 0; t < 100; ++t) {
            const double v = vs(rng);
            CHECK(iv.i_at(v) == doctest::Approx(fine.i_at(v)).epsilon(1e-3));
        }
    }

    SUBCASE("out of range throws") {
        CHECK_THROWS_AS((void)iv.i_at(5000.0), OutOfRange);
        CHECK_THROWS_AS((void)iv.ikk_at(-5000.0), OutOfRange);
    }
}

TEST_CASE("hilbert transform analytic pairs") {
    // V'/(V'²+w²) ↔ w/(V²+w²) under (1/π) P ∫ g(V')/(V'−V) dV'
    const int n = 12001;
    const double span = 1500.0;
    const double w = 30.0;
    Eigen::VectorXd v(n), odd(n), even(n);
    for (int k = 0; k < n; ++k) {
        v(k) = -span + 2.0 * span * k / (n - 1.0);
        odd(k) = v(k) / (v(k) * v(k) + w * w);
        even(k) = w / (v(k) * v(k) + w * w);
    }

    SUBCASE("zero in, zero out") {
        const Eigen::VectorXd z = hilbert_pv(v, Eigen::VectorXd::Zero(n));
        CHECK(z.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("odd lorentzian to even lorentzian") {
        const Eigen::VectorXd h = hilbert_pv(v, odd);
        double err = 0.0;
        for (int k = 0; k < n; ++k) err = std::max(err, std::abs(h(k) - even(k)));
        CHECK(err < 1e-4 * even.cwiseAbs().maxCoeff());
    }

    SUBCASE("transform of odd input is even") {
        const Eigen::VectorXd h = hilbert_pv(v, odd);
        const double scale = h.cwiseAbs().maxCoeff();
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(h(k) - h(n - 1 - k)) < 1e-6 * scale);
    }

    SUBCASE("inverse transform recovers the input") {
        // H² = −1: applying the transform twice negates. The even partner
        // decays like 1/V² so its tails carry no c/V component.
        const Eigen::VectorXd h = hilbert_pv(v, odd);
        const Eigen::VectorXd back = -hilbert_pv(v, h);
        const double scale = odd.cwiseAbs().maxCoeff();
        for (int k = n / 10; k < n - n / 10; ++k)
            CHECK(std::abs(back(k) - odd(k)) < 1e-3 * scale);
    }
}

TEST_CASE("kk transform of the junction table") {
    const JunctionParams p = default_params();
    const IvTable iv = IvTable::build(p, 700.0, 0.5);

    SUBCASE("resistance scaling is exact") {
        JunctionParams q = p;
        q.r_eff_kohm = 2.0 * p.r_eff_kohm;
        const IvTable iv2 = IvTable::build(q, 700.0, 0.5);
        const Eigen::Index mid = iv.grid().size() / 2;
        for (Eigen::Index k = mid; k < iv.grid().size(); k += 97) {
            CHECK(iv2.i_samples()(k) == doctest::Approx(0.5 * iv.i_samples()(k)).epsilon(1e-12));
            CHECK(iv2.ikk_samples()(k) ==
                  doctest::Approx(0.5 * iv.ikk_samples()(k)).epsilon(1e-9));
        }
    }

    SUBCASE("inverse KK recovers the regularized current") {
        // I_reg jumps at ±2Δ and I_KK is log-singular there; the discrete
        // roundtrip cannot resolve the jump itself, so test away from it
        const Eigen::Index n = iv.grid().size();
        Eigen::VectorXd reg(n);
        for (Eigen::Index k = 0; k < n; ++k)
            reg(k) = iv.i_samples()(k) - iv.grid()(k) / iv.r_kohm();
        const Eigen::VectorXd back = -hilbert_pv(iv.grid(), iv.ikk_samples());
        const double scale = reg.cwiseAbs().maxCoeff();
        const double two_delta = 2.0 * p.delta_uev;
        for (Eigen::Index k = n / 10; k < n - n / 10; ++k) {
            if (std::abs(std::abs(iv.grid()(k)) - two_delta) < 5.0) continue;
            CHECK(std::abs(back(k) - reg(k)) < 1e-2 * scale);
        }
    }
}
