#include "qpt/fockfc.hpp"

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qpt/constants.hpp"

namespace qpt {

Lambda Lambda::from_impedance_kohm(double z_c_kohm) {
    if (z_c_kohm < 0.0) throw std::invalid_argument("Lambda: negative impedance");
    return Lambda{std::sqrt(constants::pi * z_c_kohm / constants::r_k_kohm)};
}

double laguerre(int n, int l, double x) {
    assert(n >= 0 && l >= 0 && x >= 0.0);
    if (n == 0) return 1.0;
    double lm1 = 1.0;               // L_0
    double lk = 1.0 + l - x;        // L_1
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0 + l - x) * lk - (k - 1.0 + l) * lm1) / k;
        lm1 = lk;
        lk = next;
    }
    return lk;
}

double franck_condon(Lambda lambda, int n, int l) {
    assert(n >= 0 && l >= 0);
    const double lam = lambda.value;
    if (lam == 0.0) return l == 0 ? 1.0 : 0.0;
    const double x = lam * lam;
    const double lg = laguerre(n, l, x);
    const double log_pref =
        2.0 * l * std::log(lam) - x + std::lgamma(n + 1.0) - std::lgamma(n + l + 1.0);
    return std::exp(log_pref) * lg * lg;
}

FcTable::FcTable(Lambda lambda, int cutoff, bool with_matrix)
    : lambda_(lambda), cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("FcTable: negative cutoff");
    alpha_.setZero(cutoff + 1, cutoff + 1);
    for (int n = 0; n <= cutoff; ++n)
        for (int l = 0; n + l <= cutoff; ++l)
            alpha_(n, l) = franck_condon(lambda, n, l);

    if (with_matrix) {
        if (cutoff < 4) throw std::invalid_argument("displacement_matrix: cutoff < 4");
        const int dim = cutoff + 1;
        // X = λ (a + a†), tridiagonal and real symmetric
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
        for (int n = 0; n + 1 < dim; ++n) {
            const double v = lambda.value * std::sqrt(n + 1.0);
            x(n, n + 1) = v;
            x(n + 1, n) = v;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const Eigen::MatrixXd& u = es.eigenvectors();
        Eigen::VectorXcd phase(dim);
        for (int k = 0; k < dim; ++k)
            phase(k) = std::exp(std::complex<double>(0.0, ev(k)));
        matrix_ = u.cast<std::complex<double>>() * phase.asDiagonal() *
                  u.transpose().cast<std::complex<double>>();
    }
}

double FcTable::alpha(int n, int l) const {
    if (n < 0 || l < 0 || n + l > cutoff_)
        throw std::out_of_range("FcTable::alpha: index outside cutoff");
    if (2 * (n + l) > cutoff_) truncation_warning_.store(true);
    return alpha_(n, l);
}

FcTable displacement_matrix(Lambda lambda, int cutoff) {
    return FcTable(lambda, cutoff, true);
}

}  // namespace qpt
