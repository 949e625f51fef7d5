#include "qpt/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpt/constants.hpp"
#include "qpt/errors.hpp"
#include "qpt/parallel.hpp"

namespace qpt {

namespace {

using Cplx = std::complex<double>;

Cplx s11_from_state(const Model& model, const Matrix& rho, double eta_mhz) {
    const double kappa_c = constants::two_pi_mhz * model.mode.kappa_c_mhz;
    const double eta = constants::two_pi_mhz * eta_mhz;
    // drive η(a+a†) corresponds to a_in = iη/√κ_c, so S11 = a_out/a_in
    // = 1 + κ_c <a>/(iη); for the empty cavity this is 1 − κ_c/(κ/2 − iδ)
    const Cplx mean_a = observables(rho).mean_a;
    return 1.0 + kappa_c * mean_a / (Cplx(0.0, 1.0) * eta);
}

// Lorentzian dip y = b − c / ((x−x0)² + (w/2)²), x in MHz relative to the
// window center. Levenberg-Marquardt with a numeric Jacobian; deterministic
// initialization from the raw dip.
struct DipFit {
    double x0, w, c, b, residual;
};

DipFit fit_dip(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    Eigen::Index imin;
    y.minCoeff(&imin);
    const double b0 = y.maxCoeff();
    const double depth = b0 - y(imin);
    if (depth <= 0.0) throw FitFailed("fit_dip: no dip in data");

    // fwhm guess from the half-depth crossings around the minimum
    const double half = y(imin) + 0.5 * depth;
    double lo = x(0), hi = x(n - 1);
    for (Eigen::Index k = imin; k >= 0; --k)
        if (y(k) > half) { lo = x(k); break; }
    for (Eigen::Index k = imin; k < n; ++k)
        if (y(k) > half) { hi = x(k); break; }
    double w0 = std::max(hi - lo, 2.0 * (x(1) - x(0)));

    Eigen::Vector4d p(x(imin), w0, depth * 0.25 * w0 * w0, b0);
    auto model_at = [&](const Eigen::Vector4d& q, double xi) {
        const double d = xi - q(0);
        return q(3) - q(2) / (d * d + 0.25 * q(1) * q(1));
    };
    auto residuals = [&](const Eigen::Vector4d& q) {
        Eigen::VectorXd r(n);
        for (Eigen::Index k = 0; k < n; ++k) r(k) = model_at(q, x(k)) - y(k);
        return r;
    };

    double mu = 1e-3;
    Eigen::VectorXd r = residuals(p);
    double cost = r.squaredNorm();
    for (int it = 0; it < 200; ++it) {
        Eigen::MatrixXd jac(n, 4);
        for (int j = 0; j < 4; ++j) {
            Eigen::Vector4d q = p;
            const double h = std::max(1e-8, 1e-6 * std::abs(p(j)));
            q(j) += h;
            jac.col(j) = (residuals(q) - r) / h;
        }
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Eigen::Vector4d jtr = jac.transpose() * r;
        Eigen::Matrix4d damped = jtj;
        damped.diagonal() += mu * jtj.diagonal().cwiseMax(1e-12);
        const Eigen::Vector4d step = damped.ldlt().solve(-jtr);
        Eigen::Vector4d q = p + step;
        q(1) = std::abs(q(1));
        const Eigen::VectorXd r_new = residuals(q);
        const double cost_new = r_new.squaredNorm();
        if (cost_new < cost) {
            const double rel = step.norm() / std::max(1e-12, p.norm());
            p = q;
            r = r_new;
            cost = cost_new;
            mu = std::max(mu * 0.3, 1e-12);
            if (rel < 1e-8) break;
        } else {
            mu *= 10.0;
            if (mu > 1e12) break;
        }
    }
    if (!p.allFinite() || p(1) <= 0.0) throw FitFailed("fit_dip: diverged");
    return {p(0), p(1), p(2), p(3), std::sqrt(cost)};
}

}  // namespace

TlsFit fit_tls_lineshape(const Eigen::VectorXd& f_ghz, const Eigen::VectorXd& abs2,
                         double kappa_prior_mhz) {
    if (f_ghz.size() < 12)
        throw FitFailed("fit_tls_lineshape: need at least 12 frequency points");
    const double f_ref = f_ghz.mean();
    const Eigen::VectorXd x = (f_ghz.array() - f_ref) * 1e3;  // MHz
    const DipFit dip = fit_dip(x, abs2);

    TlsFit out;
    out.center_ghz = f_ref + dip.x0 * 1e-3;
    out.fwhm_mhz = dip.w;
    out.residual = dip.residual;
    if (kappa_prior_mhz > 0.0) {
        out.kappa_fit_mhz = kappa_prior_mhz;
        out.gamma_mhz = std::sqrt(
            std::max(0.0, 0.5 * (dip.w * dip.w - kappa_prior_mhz * kappa_prior_mhz)));
    } else {
        out.kappa_fit_mhz = dip.w;
        out.gamma_mhz = 0.0;
    }
    return out;
}

std::complex<double> reflection(const Model& model, double v_uv, double f_probe_ghz,
                                double eta_mhz, JumpVariant variant,
                                double pump01_mhz) {
    const double detuning_mhz = (f_probe_ghz - model.mode.omega_ghz) * 1e3;
    const auto spec =
        model.liouvillian_spec(v_uv, detuning_mhz, eta_mhz, variant, pump01_mhz);
    const Matrix rho = steady_state(build_liouvillian(spec));
    return s11_from_state(model, rho, eta_mhz);
}

SpectrumResult spectrum_map(const Model& model, const Eigen::VectorXd& v_grid_uv,
                            const Eigen::VectorXd& f_grid_ghz, double eta_mhz,
                            const SolverOptions& opt) {
    SpectrumResult res;
    res.v_grid_uv = v_grid_uv;
    res.f_grid_ghz = f_grid_ghz;
    const Eigen::Index nv = v_grid_uv.size();
    const Eigen::Index nf = f_grid_ghz.size();
    res.s11.resize(nv, nf);
    res.center_ghz.setZero(nv);
    res.fwhm_mhz.setZero(nv);
    res.depth.setZero(nv);
    res.fit_ok.assign(nv, false);

    parallel_for(static_cast<std::size_t>(nv), opt.threads, [&](std::size_t iv) {
        const double v = v_grid_uv(static_cast<Eigen::Index>(iv));
        for (Eigen::Index jf = 0; jf < nf; ++jf)
            res.s11(iv, jf) =
                reflection(model, v, f_grid_ghz(jf), eta_mhz, opt.variant);
        const Eigen::VectorXd abs2 = res.s11.row(iv).cwiseAbs2().transpose();
        res.depth(iv) = 1.0 - abs2.minCoeff();
        try {
            const TlsFit fit = fit_tls_lineshape(f_grid_ghz, abs2);
            res.center_ghz(iv) = fit.center_ghz;
            res.fwhm_mhz(iv) = fit.fwhm_mhz;
            res.fit_ok[iv] = true;
        } catch (const FitFailed&) {
            res.center_ghz(iv) = std::numeric_limits<double>::quiet_NaN();
            res.fwhm_mhz(iv) = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return res;
}

std::vector<ZenoPoint> zeno_sweep(const Model& model, double v_uv,
                                  const Eigen::VectorXd& eta_grid_mhz,
                                  const SolverOptions& opt, bool fit_broadening) {
    // pump locked to the shifted 0→1 resonance
    const double f_pump =
        model.mode.omega_ghz +
        transition_shift(v_uv, 0, 1, model.mode, model.iv, model.fc) * 1e-3;
    const double kappa_mhz = model.mode.kappa_tot_mhz();
    const double kappa = constants::two_pi_mhz * kappa_mhz;

    std::vector<ZenoPoint> out(eta_grid_mhz.size());
    parallel_for(out.size(), opt.threads, [&](std::size_t k) {
        ZenoPoint& pt = out[k];
        pt.eta_mhz = eta_grid_mhz(static_cast<Eigen::Index>(k));
        const auto spec = model.liouvillian_spec(
            v_uv, (f_pump - model.mode.omega_ghz) * 1e3, pt.eta_mhz, opt.variant);
        const Matrix rho = steady_state(build_liouvillian(spec));
        const Observables obs = observables(rho);
        pt.abs_a_sq = std::norm(obs.mean_a);
        pt.n_mean = obs.n_mean;
        pt.populations = obs.populations;

        const double eta = constants::two_pi_mhz * pt.eta_mhz;
        const double y0 = 0.25 * kappa * kappa;
        pt.tls_abs_a_sq = eta * eta * y0 / std::pow(y0 + 2.0 * eta * eta, 2);

        if (fit_broadening) {
            const double fwhm_pred =
                std::sqrt(kappa_mhz * kappa_mhz + 8.0 * pt.eta_mhz * pt.eta_mhz);
            const int npts = 41;
            Eigen::VectorXd f(npts), abs2(npts);
            for (int i = 0; i < npts; ++i) {
                f(i) = f_pump + 3.0 * fwhm_pred * (i / (npts - 1.0) - 0.5) * 1e-3;
                abs2(i) = std::norm(
                    reflection(model, v_uv, f(i), pt.eta_mhz, opt.variant));
            }
            try {
                pt.gamma_fit_mhz = fit_tls_lineshape(f, abs2, kappa_mhz).gamma_mhz;
            } catch (const FitFailed&) {
                pt.gamma_fit_mhz = std::numeric_limits<double>::quiet_NaN();
            }
        }
    });
    return out;
}

SpectrumResult two_tone(const Model& model, const Eigen::VectorXd& v_grid_uv,
                        const Eigen::VectorXd& f_grid_ghz, double eta2_mhz,
                        double tone1_rate_mhz, TwoToneMethod method,
                        const SolverOptions& opt) {
    SpectrumResult res;
    res.v_grid_uv = v_grid_uv;
    res.f_grid_ghz = f_grid_ghz;
    const Eigen::Index nv = v_grid_uv.size();
    const Eigen::Index nf = f_grid_ghz.size();
    res.s11.resize(nv, nf);
    res.center_ghz.setZero(nv);
    res.fwhm_mhz.setZero(nv);
    res.depth.setZero(nv);
    res.fit_ok.assign(nv, false);

    parallel_for(static_cast<std::size_t>(nv), opt.threads, [&](std::size_t iv) {
        const double v = v_grid_uv(static_cast<Eigen::Index>(iv));
        // tone 1 sits on the fitted low-power 0→1 resonance
        const double f01 =
            model.mode.omega_ghz +
            transition_shift(v, 0, 1, model.mode, model.iv, model.fc) * 1e-3;

        for (Eigen::Index jf = 0; jf < nf; ++jf) {
            if (method == TwoToneMethod::Saturation) {
                res.s11(iv, jf) = reflection(model, v, f_grid_ghz(jf), eta2_mhz,
                                             opt.variant, tone1_rate_mhz);
            } else {
                // bichromatic: integrate in the tone-2 frame with tone 1 as an
                // explicitly oscillating drive and read off the DC component
                const double det2 = (f_grid_ghz(jf) - model.mode.omega_ghz) * 1e3;
                const auto spec =
                    model.liouvillian_spec(v, det2, eta2_mhz, opt.variant);
                const Matrix l0 = build_liouvillian(spec);
                const int d = spec.dim;
                const Matrix a = annihilation_operator(d);
                const Matrix id = Matrix::Identity(d, d);
                const double eta1 = constants::two_pi_mhz * tone1_rate_mhz;
                const double delta_12 = constants::two_pi_mhz * (f01 - f_grid_ghz(jf)) * 1e3;

                // superoperator of −i[op, ·] for the rotating tone-1 terms
                auto kron_comm = [&](const Matrix& op) {
                    Matrix s = Matrix::Zero(d * d, d * d);
                    for (int i = 0; i < d; ++i)
                        for (int j2 = 0; j2 < d; ++j2)
                            for (int k2 = 0; k2 < d; ++k2) {
                                // −i (I ⊗ op) and +i (opᵀ ⊗ I) pieces of −i[op, ·]
                                s(i * d + j2, i * d + k2) += Cplx(0, -1) * op(j2, k2);
                                s(j2 * d + i, k2 * d + i) += Cplx(0, 1) * op(k2, j2);
                            }
                    return s;
                };
                const Matrix l_plus = eta1 * kron_comm(a);           // e^{+iΔt} a term
                const Matrix l_minus = eta1 * kron_comm(Matrix(a.adjoint()));  // e^{−iΔt} a†

                Vector x(d * d);
                {
                    Matrix rho0 = Matrix::Zero(d, d);
                    rho0(0, 0) = 1.0;
                    x = Eigen::Map<const Vector>(rho0.data(), d * d);
                }
                const double lnorm = l0.cwiseAbs().maxCoeff() * d +
                                     2.0 * eta1 * d + std::abs(delta_12);
                const double dt = 0.05 / std::max(1.0, lnorm);
                const double kappa = constants::two_pi_mhz * model.mode.kappa_tot_mhz();
                const double t_settle = 12.0 / std::max(kappa, 1e-3);
                const double period =
                    std::abs(delta_12) > 1e-6 ? 2.0 * constants::pi / std::abs(delta_12)
                                              : t_settle;
                auto l_at = [&](double t) {
                    const Cplx ph = std::exp(Cplx(0.0, delta_12 * t));
                    return Matrix(l0 + ph * l_plus + std::conj(ph) * l_minus);
                };
                double t = 0.0;
                auto step = [&](double h) {
                    const Vector k1 = l_at(t) * x;
                    const Vector k2 = l_at(t + 0.5 * h) * (x + 0.5 * h * k1);
                    const Vector k3 = l_at(t + 0.5 * h) * (x + 0.5 * h * k2);
                    const Vector k4 = l_at(t + h) * (x + h * k3);
                    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    t += h;
                };
                while (t < t_settle) step(dt);
                // average ⟨a⟩ over a whole number of beat periods
                const double t_avg = 4.0 * period;
                Cplx acc = 0.0;
                long count = 0;
                const double t_end = t + t_avg;
                while (t < t_end) {
                    step(dt);
                    Matrix rho = Eigen::Map<const Matrix>(x.data(), d, d);
                    acc += observables(rho).mean_a;
                    ++count;
                }
                const Cplx a_dc = acc / double(count);
                const double kappa_c = constants::two_pi_mhz * model.mode.kappa_c_mhz;
                const double eta2 = constants::two_pi_mhz * eta2_mhz;
                res.s11(iv, jf) = 1.0 + kappa_c * a_dc / (Cplx(0.0, 1.0) * eta2);
            }
        }

        const Eigen::VectorXd abs2 = res.s11.row(iv).cwiseAbs2().transpose();
        res.depth(iv) = 1.0 - abs2.minCoeff();
        try {
            const TlsFit fit = fit_tls_lineshape(f_grid_ghz, abs2);
            res.center_ghz(iv) = fit.center_ghz;
            res.fwhm_mhz(iv) = fit.fwhm_mhz;
            res.fit_ok[iv] = true;
        } catch (const FitFailed&) {
            res.center_ghz(iv) = std::numeric_limits<double>::quiet_NaN();
            res.fwhm_mhz(iv) = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return res;
}

double flux_imbalance(const Model& model, double v_uv, double detuning_mhz,
                      double eta_mhz, JumpVariant variant) {
    const auto spec = model.liouvillian_spec(v_uv, detuning_mhz, eta_mhz, variant);
    const Matrix rho = steady_state(build_liouvillian(spec));
    const Observables obs = observables(rho);

    const double eta = constants::two_pi_mhz * eta_mhz;
    const double input = -2.0 * eta * obs.mean_a.imag();
    double junction = 0.0;
    for (std::size_t li = 0; li < spec.jump_rates.size(); ++li) {
        const int l = static_cast<int>(li) + 1;
        const auto& r = spec.jump_rates[li];
        for (int n = 0; n + l < spec.dim; ++n)
            junction += l * r(n) * obs.populations(n + l);
    }
    const double output = spec.kappa * obs.n_mean + junction;
    return std::abs(input - output) / std::max(std::abs(input), 1e-300);
}

}  // namespace qpt
