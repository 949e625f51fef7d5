#include "qpt/junction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qpt/constants.hpp"
#include "qpt/errors.hpp"
#include "qpt/quadrature.hpp"

namespace qpt {

namespace {

double fermi(double e_uev, double t_uev) {
    if (t_uev <= 0.0) return e_uev < 0.0 ? 1.0 : (e_uev > 0.0 ? 0.0 : 0.5);
    const double x = e_uev / t_uev;
    if (x > 500.0) return 0.0;
    if (x < -500.0) return 1.0;
    return 1.0 / (1.0 + std::exp(x));
}

// Shape-preserving (Fritsch-Carlson) slopes on a uniform grid.
Eigen::VectorXd pchip_slopes(const Eigen::VectorXd& y, double h) {
    const Eigen::Index n = y.size();
    Eigen::VectorXd d(n);
    if (n < 2) {
        d.setZero();
        return d;
    }
    Eigen::VectorXd del(n - 1);
    for (Eigen::Index k = 0; k + 1 < n; ++k) del(k) = (y(k + 1) - y(k)) / h;
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
        if (del(k - 1) * del(k) <= 0.0)
            d(k) = 0.0;
        else
            d(k) = 2.0 * del(k - 1) * del(k) / (del(k - 1) + del(k));
    }
    auto end_slope = [](double d0, double d1) {
        double s = 1.5 * d0 - 0.5 * d1;
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    d(0) = end_slope(del(0), n > 2 ? del(1) : del(0));
    d(n - 1) = end_slope(del(n - 2), n > 2 ? del(n - 3) : del(n - 2));
    return d;
}

double pchip_eval(const Eigen::VectorXd& v, const Eigen::VectorXd& y,
                  const Eigen::VectorXd& d, double h, double x) {
    const Eigen::Index n = v.size();
    Eigen::Index k = static_cast<Eigen::Index>(std::floor((x - v(0)) / h));
    k = std::clamp<Eigen::Index>(k, 0, n - 2);
    const double t = (x - v(k)) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y(k) + h10 * h * d(k) + h01 * y(k + 1) + h11 * h * d(k + 1);
}

}  // namespace

void JunctionParams::validate() const {
    if (delta_uev <= 0.0) throw std::invalid_argument("JunctionParams: delta must be > 0");
    if (r_tunnel_kohm <= 0.0 || r_eff_kohm < r_tunnel_kohm)
        throw std::invalid_argument("JunctionParams: need r_eff >= r_tunnel > 0");
    if (temperature_uev < 0.0 || dynes < 0.0)
        throw std::invalid_argument("JunctionParams: negative temperature or dynes");
}

double bcs_dos(double e_uev, double delta_uev, double dynes) {
    if (dynes > 0.0) {
        const std::complex<double> z(e_uev, dynes * delta_uev);
        return std::abs(std::real(z / std::sqrt(z * z - delta_uev * delta_uev)));
    }
    const double a = std::abs(e_uev);
    if (a <= delta_uev) return 0.0;
    return a / std::sqrt(a * a - delta_uev * delta_uev);
}

double qp_current(double v_uv, const JunctionParams& p, double r_kohm, double rel_tol) {
    p.validate();
    const double r = r_kohm > 0.0 ? r_kohm : p.r_eff_kohm;
    if (v_uv == 0.0) return 0.0;
    if (v_uv < 0.0) return -qp_current(-v_uv, p, r, rel_tol);

    const double delta = p.delta_uev;
    const double t = p.temperature_uev;
    const double ev = v_uv;  // e = 1 in these units
    quad::Options opt;
    opt.rel_tol = rel_tol;

    if (t == 0.0 && p.dynes == 0.0) {
        // Sharp BCS at T = 0: I = (1/eR) ∫_Δ^{eV−Δ} n(E) n(eV−E) dE with
        // inverse-sqrt edges removed by E = Δ cosh u; by symmetry twice the
        // lower half.
        if (ev <= 2.0 * delta) return 0.0;
        const double u_max = std::acosh(ev / (2.0 * delta));
        auto f = [&](double u) {
            const double e = delta * std::cosh(u);
            return delta * std::cosh(u) * bcs_dos(ev - e, delta);
        };
        return 2.0 / r * quad::integrate(f, 0.0, u_max, opt);
    }

    // General case: split at every band edge inside the thermal window and
    // absorb the edge singularities with a sin² endpoint substitution.
    const double pad = 60.0 * t;
    const double lo = -ev - pad;
    const double hi = pad;
    std::vector<double> pts{lo, hi};
    for (double b : {-delta, delta, -ev - delta, -ev + delta})
        if (b > lo && b < hi) pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    auto integrand = [&](double e) {
        return bcs_dos(e, delta, p.dynes) * bcs_dos(e + ev, delta, p.dynes) *
               (fermi(e, t) - fermi(e + ev, t));
    };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k];
        const double b = pts[k + 1];
        if (b - a <= 0.0) continue;
        const double mid = 0.5 * (a + b);
        if (p.dynes == 0.0 &&
            (bcs_dos(mid, delta) == 0.0 || bcs_dos(mid + ev, delta) == 0.0))
            continue;
        auto g = [&](double theta) {
            const double s = std::sin(theta);
            const double e = a + (b - a) * s * s;
            return integrand(e) * (b - a) * std::sin(2.0 * theta);
        };
        total += quad::integrate(g, 0.0, 0.5 * constants::pi, opt);
    }
    return total / r;
}

Eigen::VectorXd hilbert_pv(const Eigen::VectorXd& v, const Eigen::VectorXd& g,
                           bool tail_correction) {
    const Eigen::Index n = v.size();
    if (n < 4 || g.size() != n) throw std::invalid_argument("hilbert_pv: bad grid");
    const double h = v(1) - v(0);
    const double a_hi = v(n - 1);
    const double a_lo = -v(0);
    const double c_hi = tail_correction ? g(n - 1) * v(n - 1) : 0.0;
    const double c_lo = tail_correction ? g(0) * v(0) : 0.0;

    // slope of g for the removable point at V' = V
    Eigen::VectorXd dg(n);
    for (Eigen::Index k = 1; k + 1 < n; ++k) dg(k) = (g(k + 1) - g(k - 1)) / (2.0 * h);
    dg(0) = (g(1) - g(0)) / h;
    dg(n - 1) = (g(n - 1) - g(n - 2)) / h;

    auto tail_hi = [&](double vj) {
        if (c_hi == 0.0) return 0.0;
        if (std::abs(vj) < 0.5 * h) return c_hi / a_hi;
        return c_hi / vj * std::log(a_hi / (a_hi - vj));
    };
    auto tail_lo = [&](double vj) {
        if (c_lo == 0.0) return 0.0;
        if (std::abs(vj) < 0.5 * h) return c_lo / a_lo;
        return c_lo / vj * std::log((a_lo + vj) / a_lo);
    };

    Eigen::VectorXd out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double vj = v(j);
        double sum = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double q = (k == j) ? dg(j) : (g(k) - g(j)) / (v(k) - vj);
            const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
            sum += w * q;
        }
        double logs = 0.0;
        if (j == n - 1) {
            // the ln(a_hi − vj) pieces of the boundary and the upper tail
            // cancel under the c/V' tail model
            logs += -g(j) * std::log(vj + a_lo);
            logs += (c_hi != 0.0 ? c_hi / vj * std::log(a_hi) : 0.0);
            logs += tail_lo(vj);
        } else if (j == 0) {
            logs += g(j) * std::log(a_hi - vj);
            logs += (c_lo != 0.0 ? -c_lo / vj * std::log(a_lo) : 0.0);
            logs += tail_hi(vj);
        } else {
            if (g(j) != 0.0) logs += g(j) * std::log((a_hi - vj) / (vj + a_lo));
            logs += tail_hi(vj) + tail_lo(vj);
        }
        out(j) = (h * sum + logs) / constants::pi;
    }
    return out;
}

IvTable IvTable::build(const JunctionParams& p, double span_uv, double spacing_uv,
                       double r_kohm, bool with_kk) {
    p.validate();
    if (spacing_uv <= 0.0) throw std::invalid_argument("IvTable: spacing must be > 0");
    const double auto_span = 2.0 * p.delta_uev + 12.0 * 6.0 * constants::uev_per_ghz;
    const double span = std::max(span_uv, auto_span);
    const Eigen::Index m = static_cast<Eigen::Index>(std::ceil(span / spacing_uv));
    const Eigen::Index n = 2 * m + 1;

    IvTable t;
    t.params_ = p;
    t.r_kohm_ = r_kohm > 0.0 ? r_kohm : p.r_eff_kohm;
    t.spacing_ = spacing_uv;
    t.grid_.resize(n);
    t.i_.resize(n);
    for (Eigen::Index k = 0; k < n; ++k)
        t.grid_(k) = static_cast<double>(k - m) * spacing_uv;
    // exact oddness by construction: evaluate V ≥ 0 and mirror
    for (Eigen::Index k = m; k < n; ++k) t.i_(k) = qp_current(t.grid_(k), p, t.r_kohm_);
    for (Eigen::Index k = 0; k < m; ++k) t.i_(k) = -t.i_(2 * m - k);
    t.di_ = pchip_slopes(t.i_, spacing_uv);

    if (with_kk) return kk_transform(t);
    t.ikk_.setZero(n);
    t.dikk_.setZero(n);
    return t;
}

IvTable kk_transform(const IvTable& iv) {
    IvTable t = iv;
    const Eigen::Index n = t.grid_.size();
    Eigen::VectorXd reg(n);
    for (Eigen::Index k = 0; k < n; ++k)
        reg(k) = t.i_(k) - t.grid_(k) / t.r_kohm_;
    t.ikk_ = hilbert_pv(t.grid_, reg);
    t.dikk_ = pchip_slopes(t.ikk_, t.spacing_);
    t.has_kk_ = true;

    // tail sanity: the c/V' model must be stable near the grid edge; its
    // drift bounds the uncorrected remainder of the transform
    const Eigen::Index probe = std::max<Eigen::Index>(4, n / 50);
    const double c_hi = reg(n - 1) * t.grid_(n - 1);
    const double c_err = std::abs(c_hi - reg(n - 1 - probe) * t.grid_(n - 1 - probe));
    const double scale = t.ikk_.cwiseAbs().maxCoeff();
    const double a = t.grid_(n - 1);
    double worst = 0.0;
    for (Eigen::Index j = 1; j + 1 < n; ++j) {
        const double vj = std::abs(t.grid_(j));
        double tail_err;
        if (vj < 0.5 * t.spacing_)
            tail_err = 2.0 * c_err / a;
        else
            tail_err = c_err / vj * (std::log(a / (a - vj)) + std::log((a + vj) / a));
        worst = std::max(worst, tail_err / constants::pi);
    }
    if (worst > 0.01 * scale)
        throw GridTooNarrow("kk_transform: tail-model uncertainty exceeds 1% of the transform scale");
    return t;
}

double IvTable::i_at(double v_uv) const {
    if (v_uv < grid_(0) || v_uv > grid_(grid_.size() - 1))
        throw OutOfRange("i_at: voltage outside table span");
    if (params_.temperature_uev == 0.0 && params_.dynes == 0.0 &&
        std::abs(v_uv) <= 2.0 * params_.delta_uev)
        return 0.0;
    return pchip_eval(grid_, i_, di_, spacing_, v_uv);
}

double IvTable::ikk_at(double v_uv) const {
    if (!has_kk_) throw std::logic_error("ikk_at: table built without KK transform");
    if (v_uv < grid_(0) || v_uv > grid_(grid_.size() - 1))
        throw OutOfRange("ikk_at: voltage outside table span");
    return pchip_eval(grid_, ikk_, dikk_, spacing_, v_uv);
}

}  // namespace qpt
