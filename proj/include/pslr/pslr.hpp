#ifndef PSLR_PSLR_HPP
#define PSLR_PSLR_HPP

#include "pslr/factor.hpp"
#include "pslr/krylov.hpp"
#include "pslr/saddle.hpp"

namespace pslr {

/// Power-series Schur-inverse approximation with Arnoldi low-rank correction.
/// The truncated series sum_{i=0}^m M^i C^{-1} is applied by Horner
/// accumulation and the correction (I + V G V^T) inverts the series residual
/// through the Woodbury identity, G = (I - H)^{-1} - I.
struct PslrPreconditioner {
    Factorization ata_fact;
    Factorization c_fact;
    index_t m = 5;
    index_t r_k = 15;
    DenseMatrix v;  // p x k, orthonormal columns
    DenseMatrix g;  // k x k
    DenseMatrix h;  // k x k Hessenberg recorded at build time (diagnostic)
    SaddleSign sign = SaddleSign::Positive;
    double build_seconds = 0.0;
};

/// Series-plus-correction approximate inverse for a general splitting A = I - F.
struct PinvOperator {
    LinearOperator f_op;
    index_t m = 5;
    DenseMatrix v;
    DenseMatrix g;
};

/// Matrix-free M = -C^{-1} B (A^T A)^{-1} B^T (dimension p).
LinearOperator schur_m_operator(const SaddleSystem& sys, const Factorization& ata_fact,
                                const Factorization& c_fact);

/// (sum_{i=0}^m M^i) C^{-1} v by Horner accumulation; exactly m applications of M.
Vector power_series_apply(const LinearOperator& m_op, const Factorization& c_fact, index_t m,
                          const Vector& v);

/// Matrix-free series residual E_rr(m): v -> C (M^{m+1} (C^{-1} v)).
LinearOperator build_errop(const LinearOperator& m_op, const CsrMatrix& c_mat,
                           const Factorization& c_fact, index_t m);

/// Dense correction factor G = (I - H)^{-1} - I; throws CorrectionSingular when
/// I - H is singular to 1e-12.
DenseMatrix correction_from_hessenberg(const DenseMatrix& h);

/// Factors the blocks (IC0 for symmetric A^T A, ILU0 otherwise; dense Cholesky
/// for C up to order 2000, IC0 beyond) and runs Arnoldi on E_rr(m) from the
/// normalized all-ones vector.
PslrPreconditioner build_pslr(const SaddleSystem& sys, index_t m, index_t r_k);

/// Same construction with caller-supplied factorizations (e.g. exact dense ones).
PslrPreconditioner build_pslr(const SaddleSystem& sys, index_t m, index_t r_k,
                              Factorization ata_fact, Factorization c_fact);

/// Approximate inverse of the Schur complement: t = g + V G V^T g, then the
/// truncated series (dimension p).
Vector apply_schur_inverse(const PslrPreconditioner& pre, const SaddleSystem& sys, const Vector& g);

/// Block substitution solve z = (x, y) for the assembled saddle system.
Vector apply_pslr(const PslrPreconditioner& pre, const SaddleSystem& sys, const Vector& b);

LinearOperator pslr_operator(const PslrPreconditioner& pre, const SaddleSystem& sys);

/// Builds the Pinv operator for A = I - F (Arnoldi on F^{m+1} started from
/// b/||b||) and applies it to b.
struct PinvResult {
    Vector x;
    PinvOperator op;
};
PinvResult pinv_solve(const LinearOperator& f_op, const Vector& b, index_t m, index_t r_k);

Vector pinv_apply(const PinvOperator& op, const Vector& v);

struct ErrorDiagnostics {
    double norm_x = 0.0;     // ||E_rr(m) - V H V^T||_2
    double norm_zinv = 0.0;  // ||(I - V H V^T)^{-1}||_2
    double bound = 0.0;      // product of the two
    double actual = 0.0;     // ||S^{-1} - S_app^{-1}||_2 / ||S^{-1}||_2
};

/// Densified check of the approximation-accuracy bound. Requires p <= dense_cap.
ErrorDiagnostics error_diagnostics(const SaddleSystem& sys, const PslrPreconditioner& pre,
                                   index_t dense_cap);

/// Power-iteration estimate of the spectral radius (deterministic all-ones
/// start). An estimate, not a certificate.
double spectral_radius(const LinearOperator& op, index_t iters);

}  // namespace pslr

#endif
