#pragma once

#include "rbf/types.hpp"

#include <Eigen/Dense>

#include <initializer_list>
#include <sstream>
#include <string>

namespace rbf {

/// A multi-index mu in N^n, used both for derivative orders and monomial
/// exponents. Construction of any nonnegative index is allowed; derivative
/// evaluators reject total orders they do not support.
class MultiIndex {
public:
    explicit MultiIndex(Eigen::ArrayXi components) : components_(std::move(components)) {
        if (components_.size() == 0)
            throw invalid_argument("MultiIndex: dimension must be positive");
        if ((components_ < 0).any())
            throw invalid_argument("MultiIndex: components must be nonnegative");
    }

    MultiIndex(std::initializer_list<int> components)
        : MultiIndex(Eigen::ArrayXi::Map(components.begin(),
                                         static_cast<Index>(components.size()))) {}

    static MultiIndex zero(int dimension) {
        return MultiIndex(Eigen::ArrayXi::Zero(dimension));
    }

    static MultiIndex unit(int dimension, int axis) {
        Eigen::ArrayXi c = Eigen::ArrayXi::Zero(dimension);
        c[axis] = 1;
        return MultiIndex(c);
    }

    int dimension() const { return static_cast<int>(components_.size()); }

    /// Total order |mu|.
    int order() const { return components_.sum(); }

    int operator[](int i) const { return components_[i]; }

    /// Componentwise doubling, 2*mu.
    MultiIndex doubled() const { return MultiIndex(Eigen::ArrayXi(2 * components_)); }

    const Eigen::ArrayXi& components() const { return components_; }

    bool operator==(const MultiIndex& other) const {
        return components_.size() == other.components_.size() &&
               (components_ == other.components_).all();
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (Index i = 0; i < components_.size(); ++i) {
            if (i > 0) os << ',';
            os << components_[i];
        }
        os << ')';
        return os.str();
    }

private:
    Eigen::ArrayXi components_;
};

}  // namespace rbf
