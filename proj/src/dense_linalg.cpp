#include "pslr/dense_linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace pslr {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd m(a.nrows, a.ncols);
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t j = 0; j < a.ncols; ++j) m(i, j) = a(i, j);
    }
    return m;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
    DenseMatrix d(m.rows(), m.cols());
    for (index_t i = 0; i < d.nrows; ++i) {
        for (index_t j = 0; j < d.ncols; ++j) d(i, j) = m(i, j);
    }
    return d;
}

}  // namespace

std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("dense_eigenvalues: matrix not square");
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
    std::vector<std::complex<double>> out(static_cast<size_t>(a.nrows));
    for (index_t i = 0; i < a.nrows; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return out;
}

double dense_norm2(const DenseMatrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double dense_norm_fro(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.values) s += v * v;
    return std::sqrt(s);
}

DenseMatrix dense_inverse(const DenseMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("dense_inverse: matrix not square");
    Eigen::MatrixXd m = to_eigen(a);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) throw SingularMatrix("dense_inverse: singular matrix");
    return from_eigen(lu.inverse());
}

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.ncols != b.nrows) throw DimensionError("dense_matmul: shape mismatch");
    return from_eigen(to_eigen(a) * to_eigen(b));
}

DenseMatrix dense_sub(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.nrows != b.nrows || a.ncols != b.ncols) throw DimensionError("dense_sub: shape mismatch");
    DenseMatrix d = a;
    for (size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return d;
}

DenseMatrix dense_identity(index_t n) {
    DenseMatrix d(n, n);
    for (index_t i = 0; i < n; ++i) d(i, i) = 1.0;
    return d;
}

Vector dense_solve(const DenseMatrix& a, const Vector& b) {
    if (a.nrows != a.ncols || static_cast<index_t>(b.size()) != a.nrows) {
        throw DimensionError("dense_solve: shape mismatch");
    }
    Eigen::VectorXd rhs(a.nrows);
    for (index_t i = 0; i < a.nrows; ++i) rhs(i) = b[static_cast<size_t>(i)];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(to_eigen(a));
    Eigen::VectorXd x = lu.solve(rhs);
    Vector out(static_cast<size_t>(a.nrows));
    for (index_t i = 0; i < a.nrows; ++i) out[static_cast<size_t>(i)] = x(i);
    return out;
}

}  // namespace pslr
