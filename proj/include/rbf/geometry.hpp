#pragma once

#include "rbf/multi_index.hpp"
#include "rbf/types.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace rbf {

/// A finite set of pairwise distinct centers in R^n, stored one point per row.
template <class Scalar>
class CenterSet {
public:
    explicit CenterSet(MatX<Scalar> points) : points_(std::move(points)) {
        if (points_.rows() < 1)
            throw invalid_argument("CenterSet: at least one center required");
        if (points_.cols() < 1)
            throw invalid_argument("CenterSet: dimension must be positive");
        for (Index i = 0; i < points_.rows(); ++i)
            for (Index j = i + 1; j < points_.rows(); ++j)
                if ((points_.row(i) - points_.row(j)).norm() == Scalar(0))
                    throw invalid_argument("CenterSet: centers " + std::to_string(i) + " and " +
                                           std::to_string(j) + " coincide");
    }

    Index size() const { return points_.rows(); }
    int dimension() const { return static_cast<int>(points_.cols()); }
    const MatX<Scalar>& points() const { return points_; }
    VecX<Scalar> point(Index i) const { return points_.row(i).transpose(); }

    /// New set with one appended center.
    CenterSet with_point(Eigen::Ref<const VecX<Scalar>> x) const {
        MatX<Scalar> p(points_.rows() + 1, points_.cols());
        p.topRows(points_.rows()) = points_;
        p.row(points_.rows()) = x.transpose();
        return CenterSet(std::move(p));
    }

private:
    MatX<Scalar> points_;
};

/// Dimension of P_q, the polynomials of total degree < q in n variables.
inline Index basis_dimension(int q, int n) {
    if (q < 0) throw invalid_argument("basis_dimension: q must be nonnegative");
    if (n < 1) throw invalid_argument("basis_dimension: n must be positive");
    if (q == 0) return 0;
    // binomial(q + n - 1, n)
    long long value = 1;
    for (int i = 1; i <= n; ++i) value = value * (q - 1 + i) / i;
    return static_cast<Index>(value);
}

/// Monomial basis of P_q in graded-lexicographic order (degree first, then
/// lexicographic with the leading variable decreasing): 1, x, y, x^2, xy, y^2, ...
class PolynomialBasis {
public:
    PolynomialBasis(int order, int dimension) : order_(order), dimension_(dimension) {
        if (order_ < 0) throw invalid_argument("PolynomialBasis: order must be nonnegative");
        if (dimension_ < 1) throw invalid_argument("PolynomialBasis: dimension must be positive");
        Eigen::ArrayXi current = Eigen::ArrayXi::Zero(dimension_);
        for (int degree = 0; degree < order_; ++degree) emit(current, 0, degree);
    }

    int order() const { return order_; }
    int dimension() const { return dimension_; }
    Index size() const { return static_cast<Index>(exponents_.size()); }
    const std::vector<MultiIndex>& exponents() const { return exponents_; }

private:
    void emit(Eigen::ArrayXi& current, int axis, int remaining) {
        if (axis == dimension_ - 1) {
            current[axis] = remaining;
            exponents_.emplace_back(Eigen::ArrayXi(current));
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            current[axis] = e;
            emit(current, axis + 1, remaining - e);
        }
        current[axis] = 0;
    }

    int order_;
    int dimension_;
    std::vector<MultiIndex> exponents_;
};

namespace detail {

/// D^mu x^alpha evaluated at a point: falling-factorial coefficient times the
/// reduced monomial, zero when any mu_k exceeds alpha_k.
template <class Scalar>
Scalar monomial_derivative(const MultiIndex& alpha, const MultiIndex& mu,
                           Eigen::Ref<const VecX<Scalar>> x) {
    Scalar value = Scalar(1);
    for (int k = 0; k < alpha.dimension(); ++k) {
        const int a = alpha[k], m = mu[k];
        if (m > a) return Scalar(0);
        Scalar coeff = Scalar(1);
        for (int i = 0; i < m; ++i) coeff *= Scalar(a - i);
        Scalar mono = Scalar(1);
        for (int i = 0; i < a - m; ++i) mono *= x[k];
        value *= coeff * mono;
    }
    return value;
}

}  // namespace detail

/// S^(mu)(x): the vector of mu-derivatives of the basis polynomials at x.
template <class Scalar>
VecX<Scalar> poly_moment_vector(const PolynomialBasis& basis, const MultiIndex& mu,
                                Eigen::Ref<const VecX<Scalar>> x) {
    if (mu.dimension() != basis.dimension() || x.size() != basis.dimension())
        throw invalid_argument("poly_moment_vector: dimension mismatch");
    VecX<Scalar> s(basis.size());
    for (Index i = 0; i < basis.size(); ++i)
        s[i] = detail::monomial_derivative<Scalar>(basis.exponents()[i], mu, x);
    return s;
}

/// The M x Q matrix P with P_ij = p_j(x_i).
template <class Scalar>
MatX<Scalar> polynomial_matrix(const CenterSet<Scalar>& centers, const PolynomialBasis& basis) {
    if (basis.dimension() != centers.dimension())
        throw invalid_argument("polynomial_matrix: dimension mismatch");
    MatX<Scalar> P(centers.size(), basis.size());
    const MultiIndex mu0 = MultiIndex::zero(basis.dimension());
    for (Index i = 0; i < centers.size(); ++i) {
        const VecX<Scalar> xi = centers.point(i);
        P.row(i) = poly_moment_vector<Scalar>(basis, mu0, xi).transpose();
    }
    return P;
}

/// True iff no nonzero p in P_q vanishes on all centers, decided by the rank
/// of P with singular values above rel_tol times the largest.
template <class Scalar>
bool unisolvency_check(const CenterSet<Scalar>& centers, const PolynomialBasis& basis,
                       Scalar rel_tol = Scalar(1e-10)) {
    if (basis.size() == 0) return true;
    if (centers.size() < basis.size()) return false;
    const MatX<Scalar> P = polynomial_matrix(centers, basis);
    Eigen::JacobiSVD<MatX<Scalar>> svd(P);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == Scalar(0)) return false;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rel_tol * sv[0]) ++rank;
    return rank == basis.size();
}

/// Grid-sampled fill distance h_rho(x): the largest distance to the nearest
/// center over the ball of radius rho around x, maximized over a regular
/// tensor grid on the ball's bounding box.  A lower bound on the true value,
/// converging as the resolution grows.
template <class Scalar>
Scalar fill_distance(const CenterSet<Scalar>& centers, Eigen::Ref<const VecX<Scalar>> x,
                     Scalar rho, int resolution = 33) {
    const int n = centers.dimension();
    if (x.size() != n) throw invalid_argument("fill_distance: dimension mismatch");
    if (!(rho > Scalar(0))) throw invalid_argument("fill_distance: rho must be positive");
    if (resolution < 8) throw invalid_argument("fill_distance: resolution must be at least 8");
    if (n > 3) throw invalid_argument("fill_distance: dimensions above 3 unsupported");

    const Scalar step = 2 * rho / Scalar(resolution - 1);
    const Scalar rho2 = rho * rho * (Scalar(1) + Scalar(16) * std::numeric_limits<Scalar>::epsilon());
    Scalar best = Scalar(0);
    VecX<Scalar> y(n);
    std::vector<int> idx(static_cast<size_t>(n), 0);
    const long total = static_cast<long>(std::pow(static_cast<double>(resolution), n));
    for (long cell = 0; cell < total; ++cell) {
        long rem = cell;
        for (int d = 0; d < n; ++d) {
            idx[static_cast<size_t>(d)] = static_cast<int>(rem % resolution);
            rem /= resolution;
        }
        for (int d = 0; d < n; ++d) y[d] = x[d] - rho + step * Scalar(idx[static_cast<size_t>(d)]);
        if ((y - x).squaredNorm() > rho2) continue;
        const Scalar dist = (centers.points().rowwise() - y.transpose()).rowwise().norm().minCoeff();
        if (dist > best) best = dist;
    }
    return best;
}

/// Minimum pairwise distance; a conditioning diagnostic for the Gram matrix.
template <class Scalar>
Scalar separation_distance(const CenterSet<Scalar>& centers) {
    if (centers.size() < 2)
        throw invalid_argument("separation_distance: at least two centers required");
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < centers.size(); ++i)
        for (Index j = i + 1; j < centers.size(); ++j)
            best = std::min(best, Scalar((centers.points().row(i) - centers.points().row(j)).norm()));
    return best;
}

namespace detail {

inline bool comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace detail

/// Centers file: one point per line, whitespace-separated coordinates, '#'
/// starts a comment line.  The dimension is inferred from the first data line
/// and enforced on the rest.
template <class Scalar>
CenterSet<Scalar> read_centers(std::istream& in, const std::string& name = "<stream>") {
    std::vector<std::vector<Scalar>> rows;
    std::string line;
    int lineno = 0;
    Index dim = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::vector<Scalar> row;
        double v;
        while (ls >> v) row.push_back(Scalar(v));
        if (!ls.eof())
            throw invalid_argument(name + ": line " + std::to_string(lineno) +
                                   ": malformed coordinate");
        if (dim < 0) {
            dim = static_cast<Index>(row.size());
            if (dim == 0)
                throw invalid_argument(name + ": line " + std::to_string(lineno) + ": empty point");
        } else if (static_cast<Index>(row.size()) != dim) {
            throw invalid_argument(name + ": line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(dim) + " coordinates, got " +
                                   std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw invalid_argument(name + ": no data lines");
    MatX<Scalar> pts(static_cast<Index>(rows.size()), dim);
    for (Index i = 0; i < pts.rows(); ++i)
        for (Index j = 0; j < dim; ++j) pts(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return CenterSet<Scalar>(std::move(pts));
}

template <class Scalar>
CenterSet<Scalar> read_centers_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open centers file '" + path + "'");
    return read_centers<Scalar>(in, path);
}

/// Values file: one number per line, '#' comments.
template <class Scalar>
VecX<Scalar> read_values(std::istream& in, const std::string& name = "<stream>") {
    std::vector<Scalar> vals;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::comment_or_blank(line)) continue;
        std::istringstream ls(line);
        double v;
        if (!(ls >> v))
            throw invalid_argument(name + ": line " + std::to_string(lineno) + ": malformed value");
        std::string rest;
        if (ls >> rest)
            throw invalid_argument(name + ": line " + std::to_string(lineno) +
                                   ": expected one value per line");
        vals.push_back(Scalar(v));
    }
    if (vals.empty()) throw invalid_argument(name + ": no data lines");
    return VecX<Scalar>::Map(vals.data(), static_cast<Index>(vals.size()));
}

template <class Scalar>
VecX<Scalar> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open values file '" + path + "'");
    return read_values<Scalar>(in, path);
}

}  // namespace rbf
