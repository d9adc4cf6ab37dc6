#ifndef PSLR_CSR_HPP
#define PSLR_CSR_HPP

#include <cstdint>
#include <vector>

#include "pslr/types.hpp"

namespace pslr {

/// Sparse matrix in compressed-row form. Canonical: within each row the
/// column indices are strictly increasing and duplicates have been merged.
struct CsrMatrix {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> row_ptr;  // length nrows+1
    std::vector<index_t> col_idx;
    std::vector<double> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Entry lookup by binary search within the row; zero if absent.
    double at(index_t i, index_t j) const;

    /// Checks the CSR invariants (monotone row_ptr, sorted columns, bounds).
    void validate() const;
};

struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// Builds a canonical CSR matrix from (row, col, value) triplets.
/// Duplicate entries are summed.
CsrMatrix csr_from_triplets(index_t nrows, index_t ncols, std::vector<Triplet> entries);

CsrMatrix csr_identity(index_t n);
CsrMatrix csr_diag(const Vector& d);

/// Toeplitz band matrix with vals[k] on diagonal offsets[k].
CsrMatrix gen_banded(index_t n, const std::vector<index_t>& offsets, const Vector& vals);

/// y = a * x, exact row-major / ascending-column traversal order.
Vector spmv(const CsrMatrix& a, const Vector& x);

CsrMatrix transpose(const CsrMatrix& a);

/// c = a + beta * b (patterns merged).
CsrMatrix csr_add(const CsrMatrix& a, const CsrMatrix& b, double beta = 1.0);

/// Scales every stored value.
CsrMatrix csr_scale(const CsrMatrix& a, double s);

/// Symmetric permutation P a P^T; perm[i] is the old index placed at new row i.
CsrMatrix csr_permute_sym(const CsrMatrix& a, const std::vector<index_t>& perm);

bool is_symmetric(const CsrMatrix& a, double rel_tol = 1e-12);

/// Row-major dense matrix. Used for the small Arnoldi factors and oracles.
struct DenseMatrix {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<double> values;  // row-major, length nrows*ncols

    DenseMatrix() = default;
    DenseMatrix(index_t r, index_t c) : nrows(r), ncols(c), values(static_cast<size_t>(r * c), 0.0) {}

    double& operator()(index_t i, index_t j) { return values[static_cast<size_t>(i * ncols + j)]; }
    double operator()(index_t i, index_t j) const { return values[static_cast<size_t>(i * ncols + j)]; }
};

DenseMatrix to_dense(const CsrMatrix& a);
Vector dense_matvec(const DenseMatrix& a, const Vector& x);
Vector dense_matvec_transpose(const DenseMatrix& a, const Vector& x);

// Small vector helpers shared across the solvers.
double dot(const Vector& x, const Vector& y);
double nrm2(const Vector& x);
void axpy(double alpha, const Vector& x, Vector& y);  // y += alpha*x
Vector scaled(const Vector& x, double alpha);

}  // namespace pslr

#endif
