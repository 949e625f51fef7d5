// fockfc.hpp — Franck-Condon matrix elements of the Fock-space displacement
// operator exp(iλ(a+a†)), plus the generalized Laguerre recurrence they need.

#pragma once

#include <atomic>
#include <optional>

#include <Eigen/Dense>

namespace qpt {

// Dimensionless displacement amplitude λ = sqrt(π Z_c / R_K).
struct Lambda {
    double value = 0.0;

    static Lambda from_impedance_kohm(double z_c_kohm);
    static Lambda from_value(double lambda) { return Lambda{lambda}; }
};

// Generalized Laguerre polynomial L_n^{(l)}(x) by the three-term upward
// recurrence. Stable in the n ≲ 30, x ≲ 1 regime used here.
double laguerre(int n, int l, double x);

// Closed-form Franck-Condon coefficient
//   α_{nl} = λ^{2l} e^{-λ²} n!/(n+l)! [L_n^{(l)}(λ²)]²,
// factorials taken through lgamma so cutoffs up to ~60 stay finite.
double franck_condon(Lambda lambda, int n, int l);

// Cache of Franck-Condon coefficients for one (λ, N), immutable after
// construction and safe for concurrent reads. The optional dense matrix of
// exp(iλ(a+a†)) on the truncated space is the brute-force oracle for the
// closed form.
class FcTable {
public:
    FcTable(Lambda lambda, int cutoff, bool with_matrix = false);

    Lambda lambda() const { return lambda_; }
    int cutoff() const { return cutoff_; }

    // α_{nl}; requires n + l ≤ cutoff. Queries in the outer half of the
    // cutoff set the truncation warning (the matrix oracle is unreliable
    // there, the closed form itself is fine).
    double alpha(int n, int l) const;

    bool has_matrix() const { return matrix_.has_value(); }
    const Eigen::MatrixXcd& matrix() const { return *matrix_; }

    bool truncation_warning() const { return truncation_warning_.load(); }

private:
    Lambda lambda_;
    int cutoff_;
    Eigen::MatrixXd alpha_;  // alpha_(n, l)
    std::optional<Eigen::MatrixXcd> matrix_;
    mutable std::atomic<bool> truncation_warning_{false};
};

// Dense (N+1)×(N+1) matrix of exp(iλ(a+a†)) via eigendecomposition of the
// truncated tridiagonal quadrature operator; requires N ≥ 4.
FcTable displacement_matrix(Lambda lambda, int cutoff);

}  // namespace qpt
