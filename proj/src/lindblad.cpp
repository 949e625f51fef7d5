#include "qpt/lindblad.hpp"

#include <cmath>

#include "qpt/errors.hpp"

namespace qpt {

namespace {

using Cplx = std::complex<double>;

// Adds c·(I⊗A − 0 ) style sandwich terms entry-wise; vec(XρY) = (Yᵀ⊗X)vec(ρ)
// in column-major vectorization. The collapse operators are sparse (ladder
// structure), so filling nonzeros directly beats forming Kronecker products.

// liou += kron(a, b) over the nonzeros of a and b
void add_kron(Matrix& liou, const Matrix& a, const Matrix& b, const Cplx& c) {
    const Eigen::Index d = a.rows();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const Cplx aij = c * a(i, j);
            if (aij == Cplx(0.0)) continue;
            for (Eigen::Index k = 0; k < d; ++k)
                for (Eigen::Index l = 0; l < d; ++l)
                    if (b(k, l) != Cplx(0.0))
                        liou(i * d + k, j * d + l) += aij * b(k, l);
        }
}

// liou += c·(kron(id, m) + kron(mᵀ, id))
void add_sandwich_id(Matrix& liou, const Matrix& m, const Cplx& c) {
    const Eigen::Index d = m.rows();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k) {
            const Eigen::Index r = i * d + k;
            for (Eigen::Index l = 0; l < d; ++l) {
                if (m(k, l) != Cplx(0.0)) liou(r, i * d + l) += c * m(k, l);
                if (m(l, i) != Cplx(0.0)) liou(r, l * d + k) += c * m(l, i);
            }
        }
}

// Lindblad dissipator of J added in vectorized form:
// kron(J̄, J) − ½ kron(id, J†J) − ½ kron((J†J)ᵀ, id)
void add_dissipator(Matrix& liou, const Matrix& j) {
    add_kron(liou, j.conjugate(), j, 1.0);
    const Matrix jdj = j.adjoint() * j;
    add_sandwich_id(liou, jdj, -0.5);
}

}  // namespace

Matrix annihilation_operator(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(n + 1.0);
    return a;
}

void LiouvillianSpec::validate() const {
    if (dim < 2) throw DimensionMismatch("LiouvillianSpec: dim must be >= 2");
    if (lamb_diag.size() != 0 && lamb_diag.size() != dim)
        throw DimensionMismatch("LiouvillianSpec: lamb_diag size mismatch");
    if (kappa < 0.0 || pump01 < 0.0)
        throw DimensionMismatch("LiouvillianSpec: negative rate");
    for (std::size_t l = 0; l < jump_rates.size(); ++l) {
        const auto& r = jump_rates[l];
        if (r.size() != dim - static_cast<int>(l) - 1)
            throw DimensionMismatch("LiouvillianSpec: jump rate vector size mismatch");
        if ((r.array() < 0.0).any())
            throw DimensionMismatch("LiouvillianSpec: negative jump rate");
    }
}

Matrix LiouvillianSpec::hamiltonian() const {
    const Matrix a = annihilation_operator(dim);
    Matrix h = -detuning * (a.adjoint() * a) + eta * (a + a.adjoint());
    if (lamb_diag.size() == dim)
        for (int n = 0; n < dim; ++n) h(n, n) += lamb_diag(n);
    return h;
}

std::vector<Matrix> LiouvillianSpec::collapse_operators() const {
    std::vector<Matrix> ops;
    if (kappa > 0.0) ops.push_back(std::sqrt(kappa) * annihilation_operator(dim));
    for (std::size_t li = 0; li < jump_rates.size(); ++li) {
        const int l = static_cast<int>(li) + 1;
        const auto& r = jump_rates[li];
        if (variant == JumpVariant::CoherentPerL) {
            Matrix j = Matrix::Zero(dim, dim);
            bool any = false;
            for (int n = 0; n + l < dim; ++n) {
                j(n, n + l) = std::sqrt(r(n));
                any = any || r(n) > 0.0;
            }
            if (any) ops.push_back(std::move(j));
        } else {
            for (int n = 0; n + l < dim; ++n) {
                if (r(n) <= 0.0) continue;
                Matrix j = Matrix::Zero(dim, dim);
                j(n, n + l) = std::sqrt(r(n));
                ops.push_back(std::move(j));
            }
        }
    }
    if (pump01 > 0.0) {
        Matrix up = Matrix::Zero(dim, dim);
        up(1, 0) = std::sqrt(pump01);
        Matrix down = Matrix::Zero(dim, dim);
        down(0, 1) = std::sqrt(pump01);
        ops.push_back(std::move(up));
        ops.push_back(std::move(down));
    }
    return ops;
}

Matrix build_liouvillian(const LiouvillianSpec& spec) {
    spec.validate();
    const int d = spec.dim;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix h = spec.hamiltonian();
    Matrix liou = Matrix::Zero(d * d, d * d);
    add_kron(liou, id, h, Cplx(0.0, -1.0));
    add_kron(liou, h.transpose(), id, Cplx(0.0, 1.0));
    for (const Matrix& j : spec.collapse_operators()) add_dissipator(liou, j);
    return liou;
}

Matrix steady_state(const Matrix& liouvillian) {
    const Eigen::Index d2 = liouvillian.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
    if (d * d != d2 || liouvillian.cols() != d2)
        throw DimensionMismatch("steady_state: not a superoperator");

    // replace the first row by the trace constraint
    Matrix sys = liouvillian;
    Vector rhs = Vector::Zero(d2);
    sys.row(0).setZero();
    for (Eigen::Index n = 0; n < d; ++n) sys(0, n * d + n) = 1.0;
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Matrix> lu(sys);
    Vector x = lu.solve(rhs);
    // iterative refinement against the constrained system
    for (int it = 0; it < 3; ++it) x += lu.solve(rhs - sys * x);

    const double residual = (liouvillian * x).cwiseAbs().maxCoeff();
    // a degenerate steady-state manifold can still yield a consistent x with
    // a tiny residual; a collapsing LU pivot of the constrained system is the
    // tell, and triggers the (costlier) explicit nullity check
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const bool rank_deficient = pivots.minCoeff() <= 1e-12 * pivots.maxCoeff();
    if (!x.allFinite() || residual > 1e-9 || rank_deficient) {
        // distinguish a degenerate nullspace from a plain failure
        Eigen::FullPivLU<Matrix> full(liouvillian);
        full.setThreshold(1e-10);
        if (d2 - full.rank() > 1)
            throw SingularLiouvillian("steady_state: degenerate steady-state manifold");
        if (!x.allFinite() || residual > 1e-9)
            throw SingularLiouvillian("steady_state: solve failed, residual " +
                                      std::to_string(residual));
    }

    Matrix rho = Eigen::Map<const Matrix>(x.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
}

std::vector<Matrix> evolve(const Matrix& liouvillian, const Matrix& rho0,
                           const std::vector<double>& t_grid) {
    const Eigen::Index d = rho0.rows();
    if (d * d != liouvillian.rows())
        throw DimensionMismatch("evolve: operator/state size mismatch");

    const double norm = liouvillian.cwiseAbs().maxCoeff() * double(d);
    double dt = norm > 0.0 ? 0.1 / norm : 1e-3;

    auto run = [&](double step) {
        std::vector<Matrix> out;
        out.reserve(t_grid.size());
        Vector x = Eigen::Map<const Vector>(rho0.data(), d * d);
        double t = 0.0;
        double max_drift = 0.0;
        auto trace_of = [&](const Vector& v) {
            Cplx tr = 0.0;
            for (Eigen::Index n = 0; n < d; ++n) tr += v(n * d + n);
            return tr;
        };
        const double tr0 = trace_of(x).real();
        for (double target : t_grid) {
            while (t < target) {
                const double hstep = std::min(step, target - t);
                const Vector k1 = liouvillian * x;
                const Vector k2 = liouvillian * (x + 0.5 * hstep * k1);
                const Vector k3 = liouvillian * (x + 0.5 * hstep * k2);
                const Vector k4 = liouvillian * (x + hstep * k3);
                x += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += hstep;
            }
            max_drift = std::max(max_drift, std::abs(trace_of(x).real() - tr0));
            out.push_back(Eigen::Map<const Matrix>(x.data(), d, d));
        }
        return std::pair{out, max_drift};
    };

    for (int attempt = 0; attempt < 12; ++attempt) {
        auto [states, drift] = run(dt);
        if (drift < 1e-8) return states;
        dt *= 0.5;
        if (dt < 1e-12) break;
    }
    throw StepSizeUnderflow("evolve: step control failed to bound trace drift");
}

Observables observables(const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    const Matrix a = annihilation_operator(static_cast<int>(d));
    Observables obs;
    obs.mean_a = (a * rho).trace();
    obs.n_mean = (a.adjoint() * a * rho).trace().real();
    obs.populations = rho.diagonal().real();
    return obs;
}

}  // namespace qpt
