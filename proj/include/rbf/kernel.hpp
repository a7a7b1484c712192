#pragma once

#include "rbf/multi_index.hpp"
#include "rbf/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

namespace rbf {

enum class KernelFamily { gaussian, multiquadric, norm, thin_plate_spline };

inline const char* family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::gaussian: return "gaussian";
        case KernelFamily::multiquadric: return "multiquadric";
        case KernelFamily::norm: return "norm";
        case KernelFamily::thin_plate_spline: return "thin_plate_spline";
    }
    return "?";
}

inline KernelFamily family_from_name(std::string_view name) {
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "multiquadric") return KernelFamily::multiquadric;
    if (name == "norm") return KernelFamily::norm;
    if (name == "thin_plate_spline" || name == "tps") return KernelFamily::thin_plate_spline;
    throw invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

/// Behaviour of the (generalized) Fourier transform psi_hat of the kernel:
/// two-sided algebraic decay bound psi_hat(t) <= c*|t|^(-n-s) with exponent
/// s0 near the origin and s_infinity at infinity.  s_infinity == +inf is the
/// "unbounded" sentinel for superalgebraic decay.
template <class Scalar>
struct SpectrumDescriptor {
    bool has_closed_form = false;
    bool singular_at_origin = false;
    Scalar decay_constant = Scalar(0);
    Scalar s0 = Scalar(0);
    Scalar s_infinity = Scalar(0);

    bool unbounded_s_infinity() const { return std::isinf(static_cast<double>(s_infinity)); }
};

/// Radial kernel psi(x) = phi(||x||).  Profiles are stored under a sign
/// normalization that makes the moment-constrained Gram quadratic form
/// nonnegative without an extra alternating factor:
///
///   gaussian           phi(r) = exp(-beta r^2)        cpd order 0
///   multiquadric       phi(r) = -sqrt(c^2 + r^2)      cpd order 1
///   norm               phi(r) = -r                    cpd order 1
///   thin_plate_spline  phi(r) = r^2 log r             cpd order 2 (n = 2 only)
template <class Scalar>
class RadialKernel {
public:
    RadialKernel(KernelFamily family, int dimension, Scalar shape = Scalar(1))
        : family_(family), dimension_(dimension), shape_(shape) {
        if (dimension_ < 1)
            throw invalid_argument("RadialKernel: dimension must be positive");
        switch (family_) {
            case KernelFamily::gaussian:
            case KernelFamily::multiquadric:
                if (!(shape_ > Scalar(0)))
                    throw invalid_argument("RadialKernel: shape parameter must be positive");
                break;
            case KernelFamily::norm:
                shape_ = Scalar(1);  // unused
                break;
            case KernelFamily::thin_plate_spline:
                shape_ = Scalar(1);  // unused
                if (dimension_ != 2)
                    throw invalid_argument("RadialKernel: thin_plate_spline is defined for n=2 only");
                break;
        }
    }

    KernelFamily family() const { return family_; }
    int dimension() const { return dimension_; }
    Scalar shape() const { return shape_; }

    int cpd_order() const {
        switch (family_) {
            case KernelFamily::gaussian: return 0;
            case KernelFamily::multiquadric: return 1;
            case KernelFamily::norm: return 1;
            case KernelFamily::thin_plate_spline: return 2;
        }
        return 0;
    }

    /// phi(r).  For the thin-plate spline, phi(0) = 0 is the limit value.
    Scalar profile(Scalar r) const {
        if (r < Scalar(0)) throw invalid_argument("eval_profile: r must be nonnegative");
        switch (family_) {
            case KernelFamily::gaussian: return std::exp(-shape_ * r * r);
            case KernelFamily::multiquadric: return -std::sqrt(shape_ * shape_ + r * r);
            case KernelFamily::norm: return -r;
            case KernelFamily::thin_plate_spline:
                return r == Scalar(0) ? Scalar(0) : r * r * std::log(r);
        }
        return Scalar(0);
    }

    SpectrumDescriptor<Scalar> spectrum() const {
        const Scalar inf = std::numeric_limits<Scalar>::infinity();
        const Scalar pi = std::numbers::pi_v<Scalar>;
        SpectrumDescriptor<Scalar> d;
        switch (family_) {
            case KernelFamily::gaussian:
                d.has_closed_form = true;
                d.singular_at_origin = false;
                // bounded near 0: |t|^(-n-s0) = 1 with s0 = -n, c = psi_hat(0)
                d.decay_constant = std::pow(pi / shape_, Scalar(dimension_) / 2);
                d.s0 = Scalar(-dimension_);
                d.s_infinity = inf;
                break;
            case KernelFamily::multiquadric:
                // no closed-form transform here; exponents support Eq-style
                // admissibility checks only
                d.has_closed_form = false;
                d.singular_at_origin = true;
                d.decay_constant = Scalar(1);
                d.s0 = Scalar(1);
                d.s_infinity = inf;
                break;
            case KernelFamily::norm:
                d.has_closed_form = (dimension_ == 1);
                d.singular_at_origin = true;
                d.decay_constant = Scalar(2);
                d.s0 = Scalar(1);
                d.s_infinity = Scalar(1);
                break;
            case KernelFamily::thin_plate_spline:
                d.has_closed_form = true;
                d.singular_at_origin = true;
                d.decay_constant = Scalar(8) * pi;
                d.s0 = Scalar(2);
                d.s_infinity = Scalar(2);
                break;
        }
        return d;
    }

    /// psi_hat as a function of ||t||, valid for t != 0 on singular spectra.
    Scalar spectrum_radial(Scalar t_norm) const {
        const Scalar pi = std::numbers::pi_v<Scalar>;
        switch (family_) {
            case KernelFamily::gaussian:
                return std::pow(pi / shape_, Scalar(dimension_) / 2) *
                       std::exp(-t_norm * t_norm / (4 * shape_));
            case KernelFamily::norm:
                if (dimension_ != 1)
                    throw invalid_argument("eval_spectrum: norm kernel spectrum is provided for n=1 only");
                if (t_norm == Scalar(0))
                    throw invalid_argument("eval_spectrum: spectrum singular at t=0");
                return Scalar(2) / (t_norm * t_norm);
            case KernelFamily::thin_plate_spline: {
                if (t_norm == Scalar(0))
                    throw invalid_argument("eval_spectrum: spectrum singular at t=0");
                const Scalar t2 = t_norm * t_norm;
                return Scalar(8) * pi / (t2 * t2);
            }
            case KernelFamily::multiquadric:
                throw invalid_argument("eval_spectrum: multiquadric has no closed-form spectrum");
        }
        return Scalar(0);
    }

private:
    KernelFamily family_;
    int dimension_;
    Scalar shape_;
};

template <class Scalar>
bool same_kernel(const RadialKernel<Scalar>& a, const RadialKernel<Scalar>& b) {
    return a.family() == b.family() && a.dimension() == b.dimension() && a.shape() == b.shape();
}

template <class Scalar>
Scalar eval_profile(const RadialKernel<Scalar>& kernel, Scalar r) {
    return kernel.profile(r);
}

/// Classical partial derivative D^mu psi(x) by the radial chain rule, written
/// out per family so that no removable singularity is evaluated by division.
/// Supported total orders: |mu| <= 2.  The norm and thin-plate-spline kernels
/// are not differentiable at x = 0 and reject |mu| >= 1 there.
template <class Scalar>
Scalar eval_derivative(const RadialKernel<Scalar>& kernel, const MultiIndex& mu,
                       Eigen::Ref<const VecX<Scalar>> x) {
    const int n = kernel.dimension();
    if (mu.dimension() != n || x.size() != n)
        throw invalid_argument("eval_derivative: dimension mismatch");
    const int order = mu.order();
    if (order > 2)
        throw invalid_argument("eval_derivative: derivative order " + std::to_string(order) +
                               " unsupported (max 2)");

    const Scalar r2 = x.squaredNorm();
    const Scalar r = std::sqrt(r2);

    if (order == 0) return kernel.profile(r);

    // axes being differentiated: j (and k for order 2; j == k when mu_j = 2)
    int j = -1, k = -1;
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < mu[i]; ++c) {
            if (j < 0) j = i;
            else k = i;
        }
    }

    const bool at_origin = (r2 == Scalar(0));
    const Scalar beta = kernel.shape();

    switch (kernel.family()) {
        case KernelFamily::gaussian: {
            const Scalar psi = std::exp(-beta * r2);
            if (order == 1) return -2 * beta * x[j] * psi;
            const Scalar kron = (j == k) ? Scalar(1) : Scalar(0);
            return (4 * beta * beta * x[j] * x[k] - 2 * beta * kron) * psi;
        }
        case KernelFamily::multiquadric: {
            const Scalar s = std::sqrt(beta * beta + r2);
            if (order == 1) return -x[j] / s;
            const Scalar kron = (j == k) ? Scalar(1) : Scalar(0);
            return -kron / s + x[j] * x[k] / (s * s * s);
        }
        case KernelFamily::norm: {
            if (at_origin)
                throw invalid_argument("eval_derivative: norm kernel not differentiable at x=0");
            if (order == 1) return -x[j] / r;
            const Scalar kron = (j == k) ? Scalar(1) : Scalar(0);
            return -kron / r + x[j] * x[k] / (r2 * r);
        }
        case KernelFamily::thin_plate_spline: {
            if (at_origin)
                throw invalid_argument(
                    "eval_derivative: thin_plate_spline derivatives undefined at x=0");
            const Scalar L = std::log(r);
            if (order == 1) return x[j] * (2 * L + 1);
            const Scalar kron = (j == k) ? Scalar(1) : Scalar(0);
            return kron * (2 * L + 1) + 2 * x[j] * x[k] / r2;
        }
    }
    return Scalar(0);
}

/// psi_hat(t) for kernels with a closed-form (generalized) transform, under
/// the convention psi(y) = (2 pi)^-n * integral exp(i<y,t>) psi_hat(t) dt.
template <class Scalar>
Scalar eval_spectrum(const RadialKernel<Scalar>& kernel, Eigen::Ref<const VecX<Scalar>> t) {
    if (t.size() != kernel.dimension())
        throw invalid_argument("eval_spectrum: dimension mismatch");
    return kernel.spectrum_radial(t.norm());
}

/// Admissibility of the derivative order mu for the spectral representation:
/// 2|mu| < s_infinity and s0 < 2q.
template <class Scalar>
bool check_exponent_conditions(const RadialKernel<Scalar>& kernel, const MultiIndex& mu) {
    const SpectrumDescriptor<Scalar> d = kernel.spectrum();
    const Scalar two_mu = Scalar(2 * mu.order());
    return two_mu < d.s_infinity && d.s0 < Scalar(2 * kernel.cpd_order());
}

}  // namespace rbf
