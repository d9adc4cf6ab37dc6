#ifndef PSLR_BASELINES_HPP
#define PSLR_BASELINES_HPP

#include "pslr/krylov.hpp"

namespace pslr {

/// v -> D^{-1} v with D = diag(a).
LinearOperator jacobi_inverse(const CsrMatrix& a);

struct AdiConfig {
    double alpha = 1.5;
    double tol = 1e-6;
    index_t maxit = 300;
    // inner half-step solves
    double inner_tol = 1e-8;
    index_t inner_maxit = 200;
};

/// Alternating splitting iteration on a = H + S with H the symmetric part and
/// S the skew part. The H-shifted half step is solved by PCG with IC0 of
/// H + alpha I, the S-shifted half step by GMRES. Stops at
/// ||b - a x|| <= tol * ||b||.
GmresResult adi_solve(const CsrMatrix& a, const Vector& b, const AdiConfig& cfg);

/// Reverse Cuthill-McKee ordering on the symmetrized pattern of a.
/// perm[i] is the old index placed at position i.
std::vector<index_t> rcm_order(const CsrMatrix& a);

/// Max |i - j| over stored entries.
index_t bandwidth(const CsrMatrix& a);

}  // namespace pslr

#endif
