#ifndef PSLR_FACTOR_HPP
#define PSLR_FACTOR_HPP

#include <optional>

#include "pslr/csr.hpp"

namespace pslr {

enum class FactorKind { LU, ILU0, Cholesky, IC0 };

/// Triangular factor pair. LU/ILU0 store unit-lower L (unit diagonal stored
/// explicitly) and upper U; Cholesky/IC0 store non-unit L with upper = L^T.
/// perm is the row permutation from partial pivoting: PA = LU, with
/// (Pb)[i] = b[perm[i]].
struct Factorization {
    FactorKind kind = FactorKind::LU;
    CsrMatrix lower;
    CsrMatrix upper;
    std::optional<std::vector<index_t>> perm;

    bool incomplete() const { return kind == FactorKind::ILU0 || kind == FactorKind::IC0; }
    index_t dim() const { return lower.nrows; }
};

/// Incomplete LU with zero fill: the factor pattern is restricted to the
/// pattern of a. Exact for matrices whose LU has no fill (e.g. tridiagonal).
Factorization ilu0(const CsrMatrix& a);

/// Incomplete Cholesky with zero fill on the lower-triangle pattern of a.
Factorization ic0(const CsrMatrix& a);

/// Exact dense factorization; LU uses partial pivoting.
Factorization factor_dense(const DenseMatrix& a, FactorKind kind);

/// x = U^{-1} L^{-1} P b via forward/back substitution.
Vector apply_inverse(const Factorization& f, const Vector& b);

}  // namespace pslr

#endif
