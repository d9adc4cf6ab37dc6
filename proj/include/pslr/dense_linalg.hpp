#ifndef PSLR_DENSE_LINALG_HPP
#define PSLR_DENSE_LINALG_HPP

#include <complex>

#include "pslr/csr.hpp"

namespace pslr {

/// Eigenvalues of a general real matrix.
std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a);

/// Spectral (2-) norm via SVD.
double dense_norm2(const DenseMatrix& a);

double dense_norm_fro(const DenseMatrix& a);

DenseMatrix dense_inverse(const DenseMatrix& a);

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix dense_sub(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix dense_identity(index_t n);

Vector dense_solve(const DenseMatrix& a, const Vector& b);

}  // namespace pslr

#endif
