#pragma once

#include "rbf/interpolate.hpp"
#include "rbf/types.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>

#include <cmath>
#include <optional>
#include <string>

namespace rbf {

/// Sign convention for the constant term of the Kriging quadratic form:
/// `original` uses +psi^(2mu)(0), `corrected` uses (-1)^|mu| psi^(2mu)(0).
/// The two agree for |mu| = 0.
enum class SignConvention { original, corrected };

inline const char* convention_name(SignConvention c) {
    return c == SignConvention::original ? "original" : "corrected";
}

inline SignConvention convention_from_name(const std::string& name) {
    if (name == "original") return SignConvention::original;
    if (name == "corrected") return SignConvention::corrected;
    throw invalid_argument("unknown sign convention '" + name + "'");
}

/// The constant term of the Kriging form under the chosen convention.
template <class Scalar>
Scalar constant_term(const RadialKernel<Scalar>& kernel, const MultiIndex& mu,
                     SignConvention convention) {
    const MultiIndex two_mu = mu.doubled();
    if (two_mu.order() > 2)
        throw invalid_argument("constant_term: 2*mu order " + std::to_string(two_mu.order()) +
                               " outside derivative support");
    const VecX<Scalar> origin = VecX<Scalar>::Zero(kernel.dimension());
    const Scalar value = eval_derivative(kernel, two_mu, origin);
    if (convention == SignConvention::corrected && (mu.order() % 2) != 0) return -value;
    return value;
}

/// U^T A U - 2 U^T R^(mu)(x) + constant term.
template <class Scalar>
Scalar quadratic_form(const SaddleSystem<Scalar>& system, Eigen::Ref<const VecX<Scalar>> U,
                      Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu,
                      SignConvention convention) {
    if (U.size() != system.size())
        throw invalid_argument("quadratic_form: weight vector length mismatch");
    const VecX<Scalar> R = system.kernel_vector(x, mu);
    return U.dot(system.gram() * U) - 2 * U.dot(R) + constant_term(system.kernel(), mu, convention);
}

template <class Scalar>
struct KrigingProblem {
    const SaddleSystem<Scalar>& system;
    VecX<Scalar> x;
    MultiIndex mu;
    SignConvention convention = SignConvention::corrected;
};

template <class Scalar>
struct KrigingValue {
    Scalar kappa_sq = Scalar(0);
    /// Defined iff kappa_sq is nonnegative up to solver noise; a negative
    /// minimized value beyond tolerance is reported, not clamped.
    std::optional<Scalar> kappa;
    VecX<Scalar> minimizer;
    SignConvention convention = SignConvention::corrected;
};

/// Minimizes the Kriging quadratic form over P^T U = S^(mu)(x) through the
/// stationarity system [2A, P; P^T, 0].  The factorization is independent of
/// the evaluation point and is shared across calls.
template <class Scalar>
class KrigingSolver {
public:
    explicit KrigingSolver(const SaddleSystem<Scalar>& system) : system_(system) {
        const Index M = system.size(), Q = system.poly_size();
        MatX<Scalar> K = MatX<Scalar>::Zero(M + Q, M + Q);
        K.topLeftCorner(M, M) = 2 * system.gram();
        K.topRightCorner(M, Q) = system.poly();
        K.bottomLeftCorner(Q, M) = system.poly().transpose();
        lu_.compute(K);
        if (!lu_.isInvertible())
            throw numerical_error("minimize_kriging: stationarity system numerically singular");
    }

    const SaddleSystem<Scalar>& system() const { return system_; }

    KrigingValue<Scalar> minimize(Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu,
                                  SignConvention convention = SignConvention::corrected) const {
        const Index M = system_.size(), Q = system_.poly_size();
        const MultiIndex two_mu = mu.doubled();
        if (two_mu.order() > 2)
            throw invalid_argument("minimize_kriging: derivative support does not cover 2*mu");

        VecX<Scalar> rhs(M + Q);
        rhs.head(M) = 2 * system_.kernel_vector(x, mu);
        const VecX<Scalar> s = system_.moment_vector(x, mu);
        rhs.tail(Q) = s;
        const VecX<Scalar> z = lu_.solve(rhs);
        const VecX<Scalar> U = z.head(M);

        KrigingValue<Scalar> result;
        result.minimizer = U;
        result.convention = convention;
        result.kappa_sq = quadratic_form(system_, U, x, mu, convention);

        const Scalar scale = tolerance_scale(U);
        if (Q > 0) {
            const Scalar feas = (system_.poly().transpose() * U - s).cwiseAbs().maxCoeff();
            if (feas > Scalar(1e-8) * (Scalar(1) + scale))
                throw numerical_error(
                    "minimize_kriging: constraint residual " +
                    std::to_string(static_cast<double>(feas)) +
                    " — infeasibility cannot occur under unisolvency (internal error)");
        }
        if (result.kappa_sq >= -Scalar(1e-9) * scale)
            result.kappa = std::sqrt(std::max(result.kappa_sq, Scalar(0)));
        return result;
    }

    /// Scale for kappa tolerances: max(|phi(0)|, max|A|) * ||U||_2^2.
    Scalar tolerance_scale(Eigen::Ref<const VecX<Scalar>> U) const {
        const Scalar phi0 = std::abs(system_.kernel().profile(Scalar(0)));
        const Scalar amax = system_.gram().cwiseAbs().maxCoeff();
        return std::max(phi0, amax) * U.squaredNorm();
    }

private:
    const SaddleSystem<Scalar>& system_;
    Eigen::FullPivLU<MatX<Scalar>> lu_;
};

template <class Scalar>
KrigingValue<Scalar> minimize_kriging(const KrigingProblem<Scalar>& problem) {
    return KrigingSolver<Scalar>(problem.system).minimize(problem.x, problem.mu,
                                                          problem.convention);
}

template <class Scalar>
KrigingValue<Scalar> minimize_kriging(const SaddleSystem<Scalar>& system,
                                      Eigen::Ref<const VecX<Scalar>> x, const MultiIndex& mu,
                                      SignConvention convention = SignConvention::corrected) {
    return KrigingSolver<Scalar>(system).minimize(x, mu, convention);
}

}  // namespace rbf
