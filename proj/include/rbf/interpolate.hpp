#pragma once

#include "rbf/geometry.hpp"
#include "rbf/kernel.hpp"
#include "rbf/types.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace rbf {

/// The saddle-point system of kernel interpolation: Gram block A with
/// A_ij = phi(||x_i - x_j||), polynomial block P with P_ij = p_j(x_i), and a
/// full-pivot LU factorization of [[A, P], [P^T, 0]] shared by all solves.
template <class Scalar>
class SaddleSystem {
public:
    static constexpr Scalar condition_warning_threshold = Scalar(1e12);

    SaddleSystem(RadialKernel<Scalar> kernel, CenterSet<Scalar> centers, PolynomialBasis basis)
        : kernel_(std::move(kernel)), centers_(std::move(centers)), basis_(std::move(basis)) {
        const int n = kernel_.dimension();
        if (centers_.dimension() != n || basis_.dimension() != n)
            throw invalid_argument("assemble: kernel, centers and basis dimensions disagree");
        if (basis_.order() < kernel_.cpd_order())
            throw invalid_argument("assemble: basis order " + std::to_string(basis_.order()) +
                                   " below kernel cpd order " +
                                   std::to_string(kernel_.cpd_order()));
        if (!unisolvency_check(centers_, basis_))
            throw numerical_error("assemble: centers are not unisolvent for the order-" +
                                  std::to_string(basis_.order()) + " polynomial basis");

        const Index M = centers_.size();
        A_.resize(M, M);
        for (Index i = 0; i < M; ++i) {
            A_(i, i) = kernel_.profile(Scalar(0));
            for (Index j = i + 1; j < M; ++j) {
                const Scalar r = (centers_.points().row(i) - centers_.points().row(j)).norm();
                A_(i, j) = A_(j, i) = kernel_.profile(r);
            }
        }
        P_ = polynomial_matrix(centers_, basis_);

        MatX<Scalar> K = saddle_matrix();
        lu_.compute(K);
        const auto diag = lu_.matrixLU().diagonal().cwiseAbs();
        const Scalar dmin = diag.minCoeff();
        condition_estimate_ = dmin > Scalar(0) ? diag.maxCoeff() / dmin
                                               : std::numeric_limits<Scalar>::infinity();
        if (!lu_.isInvertible()) {
            std::ostringstream os;
            os << "assemble: saddle system numerically singular (condition estimate "
               << condition_estimate_;
            if (M >= 2) os << ", separation distance " << separation_distance(centers_);
            os << ")";
            throw numerical_error(os.str());
        }
    }

    const RadialKernel<Scalar>& kernel() const { return kernel_; }
    const CenterSet<Scalar>& centers() const { return centers_; }
    const PolynomialBasis& basis() const { return basis_; }
    const MatX<Scalar>& gram() const { return A_; }
    const MatX<Scalar>& poly() const { return P_; }
    Index size() const { return centers_.size(); }
    Index poly_size() const { return basis_.size(); }

    MatX<Scalar> saddle_matrix() const {
        const Index M = size(), Q = poly_size();
        MatX<Scalar> K = MatX<Scalar>::Zero(M + Q, M + Q);
        K.topLeftCorner(M, M) = A_;
        K.topRightCorner(M, Q) = P_;
        K.bottomLeftCorner(Q, M) = P_.transpose();
        return K;
    }

    /// R^(mu)(x): the vector of D^mu psi(x - x_j).
    VecX<Scalar> kernel_vector(Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu) const {
        VecX<Scalar> r(size());
        for (Index j = 0; j < size(); ++j) {
            const VecX<Scalar> d = x - centers_.point(j);
            r[j] = eval_derivative(kernel_, mu, d);
        }
        return r;
    }

    /// S^(mu)(x) for this system's basis.
    VecX<Scalar> moment_vector(Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu) const {
        return poly_moment_vector<Scalar>(basis_, mu, x);
    }

    /// Solves [[A, P], [P^T, 0]] z = (top, bottom), returning the full z.
    VecX<Scalar> solve_saddle(Eigen::Ref<const VecX<Scalar>> top,
                              Eigen::Ref<const VecX<Scalar>> bottom) const {
        VecX<Scalar> rhs(size() + poly_size());
        rhs.head(size()) = top;
        rhs.tail(poly_size()) = bottom;
        return lu_.solve(rhs);
    }

    Scalar condition_estimate() const { return condition_estimate_; }
    bool ill_conditioned() const { return condition_estimate_ > condition_warning_threshold; }

private:
    RadialKernel<Scalar> kernel_;
    CenterSet<Scalar> centers_;
    PolynomialBasis basis_;
    MatX<Scalar> A_;
    MatX<Scalar> P_;
    Eigen::FullPivLU<MatX<Scalar>> lu_;
    Scalar condition_estimate_ = Scalar(0);
};

template <class Scalar>
SaddleSystem<Scalar> assemble(const RadialKernel<Scalar>& kernel, const CenterSet<Scalar>& centers,
                              const PolynomialBasis& basis) {
    return SaddleSystem<Scalar>(kernel, centers, basis);
}

/// Convenience overload with the basis order defaulted to the kernel's cpd order.
template <class Scalar>
SaddleSystem<Scalar> assemble(const RadialKernel<Scalar>& kernel,
                              const CenterSet<Scalar>& centers) {
    return assemble(kernel, centers, PolynomialBasis(kernel.cpd_order(), kernel.dimension()));
}

template <class Scalar>
struct Interpolant {
    SaddleSystem<Scalar> system;
    VecX<Scalar> a;
    VecX<Scalar> b;
};

template <class Scalar>
Interpolant<Scalar> solve_interpolant(const SaddleSystem<Scalar>& system,
                                      Eigen::Ref<const VecX<Scalar>> values) {
    const Index M = system.size(), Q = system.poly_size();
    if (values.size() != M)
        throw invalid_argument("solve_interpolant: expected " + std::to_string(M) + " values");

    const VecX<Scalar> z = system.solve_saddle(values, VecX<Scalar>::Zero(Q));
    const VecX<Scalar> a = z.head(M);
    const VecX<Scalar> b = z.tail(Q);

    // contract checks: interpolation rows and moment rows of the residual
    const Scalar fmax = M > 0 ? values.cwiseAbs().maxCoeff() : Scalar(0);
    const VecX<Scalar> interp_residual = system.gram() * a + system.poly() * b - values;
    const Scalar tol = Scalar(1e-8);
    if (interp_residual.cwiseAbs().maxCoeff() > tol * (Scalar(1) + fmax)) {
        std::ostringstream os;
        os << "solve_interpolant: interpolation residual " << interp_residual.cwiseAbs().maxCoeff()
           << " exceeds contract (condition estimate " << system.condition_estimate();
        if (M >= 2) os << ", separation distance " << separation_distance(system.centers());
        os << ")";
        throw numerical_error(os.str());
    }
    if (Q > 0) {
        const Scalar amax = a.cwiseAbs().maxCoeff();
        const Scalar pmax = system.poly().cwiseAbs().maxCoeff();
        const Scalar moment_residual = (system.poly().transpose() * a).cwiseAbs().maxCoeff();
        if (moment_residual > tol * (amax * pmax + Scalar(1e-300)) + Scalar(1e-14) * (Scalar(1) + fmax))
            throw numerical_error("solve_interpolant: moment conditions violated (residual " +
                                  std::to_string(static_cast<double>(moment_residual)) + ")");
    }
    return Interpolant<Scalar>{system, a, b};
}

/// D^mu s(x) by termwise differentiation of the interpolant.
template <class Scalar>
Scalar evaluate(const Interpolant<Scalar>& interp, Eigen::Ref<const VecX<Scalar>> x,
                const MultiIndex& mu) {
    Scalar value = interp.system.kernel_vector(x, mu).dot(interp.a);
    if (interp.system.poly_size() > 0) value += interp.system.moment_vector(x, mu).dot(interp.b);
    return value;
}

template <class Scalar>
Scalar evaluate(const Interpolant<Scalar>& interp, Eigen::Ref<const VecX<Scalar>> x) {
    return evaluate(interp, x, MultiIndex::zero(interp.system.kernel().dimension()));
}

/// U^(mu)(x): Lagrange cardinal values (or their derivatives), obtained from
/// the shared factorization with right-hand side (R^(mu)(x), S^(mu)(x)).
template <class Scalar>
VecX<Scalar> lagrange_values(const SaddleSystem<Scalar>& system,
                             Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu) {
    const VecX<Scalar> z = system.solve_saddle(system.kernel_vector(x, mu),
                                               system.moment_vector(x, mu));
    return z.head(system.size());
}

template <class Scalar>
VecX<Scalar> lagrange_values(const SaddleSystem<Scalar>& system,
                             Eigen::Ref<const VecX<Scalar>> x) {
    return lagrange_values(system, x, MultiIndex::zero(system.kernel().dimension()));
}

}  // namespace rbf
