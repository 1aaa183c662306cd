#pragma once

// Grids, differential operators, dense eigensolvers and gauge-fixed
// derivatives of eigenvector fields. All physics modules sit on top of this.

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "polsim/errors.hpp"
#include "polsim/util.hpp"

namespace polsim {

struct Grid1D {
    double min = 0.0;
    double max = 1.0;
    int n_points = 0;

    Grid1D() = default;
    Grid1D(double min_, double max_, int n) : min(min_), max(max_), n_points(n) {
        if (n_points < 8) throw param_error("Grid1D: n_points must be >= 8");
        if (!(max > min)) throw param_error("Grid1D: max must exceed min");
    }

    double spacing() const { return (max - min) / (n_points - 1); }
    double point(int i) const { return min + i * spacing(); }

    Eigen::VectorXd points() const {
        Eigen::VectorXd x(n_points);
        for (int i = 0; i < n_points; ++i) x[i] = point(i);
        return x;
    }

    bool contains(double x) const { return x >= min && x <= max; }
};

struct EigenSolution {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd vectors;   // orthonormal columns in the tagged basis
    std::string basis_tag;
};

// -1/(2m) d^2/dR^2 with the 5-point (4th order) stencil and Dirichlet
// boundaries (the matrix is the principal submatrix of the infinite-grid
// operator, which keeps it symmetric and positive semidefinite).
inline Eigen::MatrixXd kinetic_matrix(const Grid1D& grid, double mass) {
    if (!(mass > 0)) throw param_error("kinetic_matrix: mass must be positive");
    const int n = grid.n_points;
    const double h = grid.spacing();
    const double a = 1.0 / (24.0 * mass * h * h);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        K(i, i) = 30.0 * a;
        if (i + 1 < n) {
            K(i, i + 1) = -16.0 * a;
            K(i + 1, i) = -16.0 * a;
        }
        if (i + 2 < n) {
            K(i, i + 2) = a;
            K(i + 2, i) = a;
        }
    }
    return K;
}

namespace detail {

// Deterministic sign: first coefficient with significant magnitude is made
// positive.
inline void fix_vector_signs(Eigen::MatrixXd& V) {
    for (int j = 0; j < V.cols(); ++j) {
        const double thr = 1e-10 * V.col(j).cwiseAbs().maxCoeff();
        for (int i = 0; i < V.rows(); ++i) {
            if (std::abs(V(i, j)) > thr) {
                if (V(i, j) < 0) V.col(j) = -V.col(j);
                break;
            }
        }
    }
}

inline int first_significant_row(const Eigen::VectorXd& v) {
    const double thr = 1e-10 * v.cwiseAbs().maxCoeff();
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > thr) return i;
    return 0;
}

// Order degenerate eigenvalue groups by the basis index of the first
// significant coefficient, so labels are stable across scans.
inline void order_degenerate(Eigen::VectorXd& w, Eigen::MatrixXd& V) {
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    int i = 0;
    while (i < w.size()) {
        int j = i + 1;
        while (j < w.size() && std::abs(w[j] - w[i]) <= 1e-12 * scale) ++j;
        if (j - i > 1) {
            std::vector<int> idx(j - i);
            for (int t = 0; t < j - i; ++t) idx[t] = i + t;
            std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                return first_significant_row(V.col(a)) < first_significant_row(V.col(b));
            });
            Eigen::MatrixXd Vg(V.rows(), j - i);
            Eigen::VectorXd wg(j - i);
            for (int t = 0; t < j - i; ++t) {
                Vg.col(t) = V.col(idx[t]);
                wg[t] = w[idx[t]];
            }
            V.middleCols(i, j - i) = Vg;
            w.segment(i, j - i) = wg;
        }
        i = j;
    }
}

} // namespace detail

// Lowest-k eigenpairs of a real symmetric matrix. Dense LAPACK (dsyevr /
// dsyevd) above a small-size cutoff, Eigen below it. Symmetry is validated,
// not silently repaired.
inline EigenSolution solve_hermitian(const Eigen::MatrixXd& H, int k,
                                     std::string basis_tag = std::string()) {
    const int n = static_cast<int>(H.rows());
    if (H.cols() != n) throw validation_error("solve_hermitian: matrix not square");
    if (k < 1 || k > n) throw param_error("solve_hermitian: k out of range");

    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale)
        throw validation_error("solve_hermitian: matrix not symmetric (|H-H^T| = " +
                               std::to_string(asym) + ")");

    Eigen::VectorXd w(k);
    Eigen::MatrixXd V(n, k);

    if (n <= 64) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        w = es.eigenvalues().head(k);
        V = es.eigenvectors().leftCols(k);
    } else if (k == n) {
        Eigen::MatrixXd A = H;
        Eigen::VectorXd wi(n);
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, A.data(), n, wi.data());
        if (info != 0) throw convergence_error("dsyevd failed, info=" + std::to_string(info));
        w = wi;
        V = A;
    } else {
        Eigen::MatrixXd A = H;
        Eigen::VectorXd wi(n);
        Eigen::MatrixXd Z(n, k);
        std::vector<lapack_int> isuppz(2 * static_cast<size_t>(k));
        lapack_int m = 0;
        const int info =
            LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, A.data(), n, 0.0, 0.0, 1, k,
                           0.0, &m, wi.data(), Z.data(), n, isuppz.data());
        if (info != 0 || m != k)
            throw convergence_error("dsyevr failed, info=" + std::to_string(info));
        w = wi.head(k);
        V = Z;
    }

    detail::order_degenerate(w, V);
    detail::fix_vector_signs(V);

    // Residual spot check; full check when cheap.
    const int ncheck = (static_cast<long>(n) * n * k <= 64L * 1024 * 1024) ? k
                                                                           : std::min(k, 8);
    for (int j = 0; j < ncheck; ++j) {
        const double res = (H * V.col(j) - w[j] * V.col(j)).norm();
        if (res > 1e-8 * scale * std::sqrt(static_cast<double>(n)))
            throw convergence_error("solve_hermitian: residual too large");
    }

    return EigenSolution{std::move(w), std::move(V), std::move(basis_tag)};
}

// Flip column signs so that successive overlaps <v(R_i)|v(R_{i+1})> are
// positive. Columns are the same eigenvector tracked over a scan coordinate.
// Overlap below 0.5 means the state changed identity between grid points.
inline Eigen::MatrixXd gauge_fix_sign(Eigen::MatrixXd field) {
    for (int i = 0; i + 1 < field.cols(); ++i) {
        const double ov = field.col(i).dot(field.col(i + 1));
        if (std::abs(ov) <= 0.5)
            throw gauge_error("gauge fix: overlap " + std::to_string(ov) +
                              " below 0.5 between scan points " + std::to_string(i) + " and " +
                              std::to_string(i + 1) + "; refine the grid");
        if (ov < 0) field.col(i + 1) = -field.col(i + 1);
    }
    return field;
}

// d/dR of an eigenvector field in the smooth (sign-fixed) gauge. Second-order
// central differences, one-sided at the window edges.
inline Eigen::MatrixXd gauge_fixed_derivative(const Eigen::MatrixXd& vectors_over_R,
                                              const Grid1D& grid_R) {
    if (vectors_over_R.cols() != grid_R.n_points)
        throw param_error("gauge_fixed_derivative: field/grid size mismatch");
    const Eigen::MatrixXd f = gauge_fix_sign(vectors_over_R);
    const double h = grid_R.spacing();
    const int n = static_cast<int>(f.cols());
    Eigen::MatrixXd d(f.rows(), n);
    for (int i = 1; i + 1 < n; ++i) d.col(i) = (f.col(i + 1) - f.col(i - 1)) / (2 * h);
    d.col(0) = (-3.0 * f.col(0) + 4.0 * f.col(1) - f.col(2)) / (2 * h);
    d.col(n - 1) = (3.0 * f.col(n - 1) - 4.0 * f.col(n - 2) + f.col(n - 3)) / (2 * h);
    return d;
}

// d^2/dR^2 of a sign-fixed field (interior: 3-point stencil; edges copied
// from their neighbours, adequate because all uses decay at the window edge).
inline Eigen::MatrixXd gauge_fixed_second_derivative(const Eigen::MatrixXd& vectors_over_R,
                                                     const Grid1D& grid_R) {
    if (vectors_over_R.cols() != grid_R.n_points)
        throw param_error("gauge_fixed_second_derivative: field/grid size mismatch");
    const Eigen::MatrixXd f = gauge_fix_sign(vectors_over_R);
    const double h2 = grid_R.spacing() * grid_R.spacing();
    const int n = static_cast<int>(f.cols());
    Eigen::MatrixXd d(f.rows(), n);
    for (int i = 1; i + 1 < n; ++i)
        d.col(i) = (f.col(i + 1) - 2.0 * f.col(i) + f.col(i - 1)) / h2;
    d.col(0) = d.col(1);
    d.col(n - 1) = d.col(n - 2);
    return d;
}

} // namespace polsim
