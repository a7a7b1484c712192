#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rbf {

template <class Scalar>
using VecX = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Eigen::Index;

/// Raised when a precondition on caller-supplied data is violated.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails (singular system, non-convergent
/// quadrature, infeasible constraints).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* library_version = "0.1.0";

}  // namespace rbf
