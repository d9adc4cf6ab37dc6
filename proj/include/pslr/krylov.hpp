#ifndef PSLR_KRYLOV_HPP
#define PSLR_KRYLOV_HPP

#include <optional>

#include "pslr/operator.hpp"

namespace pslr {

enum class SolveStatus { Converged, MaxIterations, Breakdown };

struct SolveReport {
    index_t iterations = 0;
    Vector residual_history;  // 2-norms, starting with the initial residual
    SolveStatus status = SolveStatus::MaxIterations;
    double time_order = 0.0;
    double time_precond = 0.0;
    double time_iterate = 0.0;
    double time_total = 0.0;
    /// True residual norm recomputed from the returned iterate.
    double final_residual = 0.0;

    double relative_residual() const {
        return residual_history.empty() ? 0.0 : final_residual / residual_history.front();
    }
};

struct ArnoldiResult {
    DenseMatrix v;  // n x k, orthonormal columns
    DenseMatrix h;  // k x k upper Hessenberg, h = v^T op v
    index_t k = 0;
    bool breakdown = false;
    double h_next = 0.0;  // h_{k+1,k}
    Vector v_next;        // next basis vector when no breakdown
};

/// Modified Gram-Schmidt Arnoldi with one reorthogonalization pass.
/// Stops early on lucky breakdown (h_{j+1,j} <= 1e-14 * ||op v_j||).
ArnoldiResult arnoldi(const LinearOperator& op, const Vector& v1, index_t r_k);

struct GmresResult {
    Vector x;
    SolveReport report;
};

/// Full (non-restarted) GMRES. The optional preconditioner is applied on the
/// right: the solve is A P u = b, x = x0 + P u, so reported residuals are true
/// system residuals. Terminates at ||b - A x|| <= tol * ||b - A x0||.
GmresResult gmres(const LinearOperator& op, const Vector& b, const Vector& x0, double tol,
                  index_t maxit, const std::optional<LinearOperator>& precond = std::nullopt);

GmresResult cg(const CsrMatrix& a, const Vector& b, const Vector& x0, double tol, index_t maxit);

GmresResult pcg(const CsrMatrix& a, const Vector& b, const Vector& x0, double tol, index_t maxit,
                const LinearOperator& m_inv);

}  // namespace pslr

#endif
