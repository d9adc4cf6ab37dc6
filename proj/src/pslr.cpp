#include "pslr/pslr.hpp"

#include <chrono>
#include <cmath>

#include "pslr/dense_linalg.hpp"

namespace pslr {

namespace {

/// Dense inverse by partial-pivot elimination with a relative singularity
/// threshold; the sizes here are the Arnoldi rank, so cubic cost is fine.
DenseMatrix small_inverse(const DenseMatrix& a, double rel_tol, const char* what) {
    const index_t n = a.nrows;
    DenseMatrix work = a;
    DenseMatrix inv = dense_identity(n);
    double amax = 0.0;
    for (double v : a.values) amax = std::max(amax, std::fabs(v));
    if (amax == 0.0) amax = 1.0;
    for (index_t k = 0; k < n; ++k) {
        index_t piv = k;
        for (index_t i = k + 1; i < n; ++i) {
            if (std::fabs(work(i, k)) > std::fabs(work(piv, k))) piv = i;
        }
        if (std::fabs(work(piv, k)) <= rel_tol * amax) throw CorrectionSingular(what);
        if (piv != k) {
            for (index_t j = 0; j < n; ++j) {
                std::swap(work(k, j), work(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        }
        const double d = work(k, k);
        for (index_t j = 0; j < n; ++j) {
            work(k, j) /= d;
            inv(k, j) /= d;
        }
        for (index_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = work(i, k);
            if (f == 0.0) continue;
            for (index_t j = 0; j < n; ++j) {
                work(i, j) -= f * work(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// v + V G V^T v with V n x k, G k x k.
Vector low_rank_correct(const DenseMatrix& v_mat, const DenseMatrix& g_mat, const Vector& v) {
    if (v_mat.ncols == 0) return v;
    Vector vt = dense_matvec_transpose(v_mat, v);          // k
    Vector gv = dense_matvec(g_mat, vt);                   // k
    Vector corr = dense_matvec(v_mat, gv);                 // n
    Vector out = v;
    axpy(1.0, corr, out);
    return out;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

LinearOperator schur_m_operator(const SaddleSystem& sys, const Factorization& ata_fact,
                                const Factorization& c_fact) {
    if (ata_fact.dim() != sys.n() || c_fact.dim() != sys.p()) {
        throw DimensionError("schur_m_operator: factorization dimensions inconsistent");
    }
    const CsrMatrix b = sys.b_block;
    const CsrMatrix bt = transpose(b);
    return {sys.p(), [b, bt, ata_fact, c_fact](const Vector& v) {
                Vector w = spmv(bt, v);
                w = apply_inverse(ata_fact, w);
                w = spmv(b, w);
                w = apply_inverse(c_fact, w);
                for (auto& x : w) x = -x;
                return w;
            }};
}

Vector power_series_apply(const LinearOperator& m_op, const Factorization& c_fact, index_t m,
                          const Vector& v) {
    if (m < 0) throw InvalidInput("power_series_apply: m must be >= 0");
    Vector w = apply_inverse(c_fact, v);
    Vector acc = w;
    for (index_t i = 0; i < m; ++i) {
        w = m_op.apply(w);
        axpy(1.0, w, acc);
    }
    return acc;
}

LinearOperator build_errop(const LinearOperator& m_op, const CsrMatrix& c_mat,
                           const Factorization& c_fact, index_t m) {
    if (m < 0) throw InvalidInput("build_errop: m must be >= 0");
    return {m_op.dim, [m_op, c_mat, c_fact, m](const Vector& v) {
                Vector w = apply_inverse(c_fact, v);
                for (index_t i = 0; i <= m; ++i) w = m_op.apply(w);
                return spmv(c_mat, w);
            }};
}

DenseMatrix correction_from_hessenberg(const DenseMatrix& h) {
    const index_t k = h.nrows;
    DenseMatrix imh(k, k);
    for (index_t i = 0; i < k; ++i) {
        for (index_t j = 0; j < k; ++j) imh(i, j) = (i == j ? 1.0 : 0.0) - h(i, j);
    }
    DenseMatrix g = small_inverse(imh, 1e-12, "pslr: I - H singular (eigenvalue of E_rr at 1)");
    for (index_t i = 0; i < k; ++i) g(i, i) -= 1.0;
    return g;
}

PslrPreconditioner build_pslr(const SaddleSystem& sys, index_t m, index_t r_k) {
    Factorization ata_fact = is_symmetric(sys.ata) ? ic0(sys.ata) : ilu0(sys.ata);
    Factorization c_fact;
    if (sys.p() <= 2000) {
        c_fact = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
    } else {
        c_fact = ic0(sys.c_block);
    }
    return build_pslr(sys, m, r_k, std::move(ata_fact), std::move(c_fact));
}

PslrPreconditioner build_pslr(const SaddleSystem& sys, index_t m, index_t r_k,
                              Factorization ata_fact, Factorization c_fact) {
    if (m < 0) throw InvalidInput("build_pslr: m must be >= 0");
    if (r_k < 1 || r_k > sys.p()) throw InvalidInput("build_pslr: r_k out of range");
    const auto t0 = std::chrono::steady_clock::now();

    PslrPreconditioner pre;
    pre.m = m;
    pre.r_k = r_k;
    pre.sign = sys.sign;
    pre.ata_fact = std::move(ata_fact);
    pre.c_fact = std::move(c_fact);

    const LinearOperator m_op = schur_m_operator(sys, pre.ata_fact, pre.c_fact);
    const LinearOperator err = build_errop(m_op, sys.c_block, pre.c_fact, m);
    const Vector ones(static_cast<size_t>(sys.p()), 1.0);
    const ArnoldiResult ar = arnoldi(err, ones, r_k);
    pre.v = ar.v;
    pre.h = ar.h;
    pre.g = correction_from_hessenberg(ar.h);
    pre.build_seconds = elapsed(t0);
    return pre;
}

Vector apply_schur_inverse(const PslrPreconditioner& pre, const SaddleSystem& sys, const Vector& g) {
    const LinearOperator m_op = schur_m_operator(sys, pre.ata_fact, pre.c_fact);
    const Vector t = low_rank_correct(pre.v, pre.g, g);
    return power_series_apply(m_op, pre.c_fact, pre.m, t);
}

Vector apply_pslr(const PslrPreconditioner& pre, const SaddleSystem& sys, const Vector& b) {
    const index_t n = sys.n();
    const index_t p = sys.p();
    if (static_cast<index_t>(b.size()) != n + p) throw DimensionError("apply_pslr: rhs dimension mismatch");
    const Vector f(b.begin(), b.begin() + n);
    Vector g(b.begin() + n, b.end());

    // Schur-side right hand side from the block factorization: the lower-left
    // block is -B for Positive and +B for Negative, and the Negative system
    // eliminates to -S, so the series result flips sign there.
    const double sigma = sys.sign == SaddleSign::Positive ? 1.0 : -1.0;
    Vector bf = spmv(sys.b_block, apply_inverse(pre.ata_fact, f));
    axpy(sigma, bf, g);

    Vector y = apply_schur_inverse(pre, sys, g);
    if (sys.sign == SaddleSign::Negative) {
        for (auto& v : y) v = -v;
    }

    Vector rhs_x = spmv(transpose(sys.b_block), y);
    for (size_t i = 0; i < rhs_x.size(); ++i) rhs_x[i] = f[i] - rhs_x[i];
    const Vector x = apply_inverse(pre.ata_fact, rhs_x);

    Vector z;
    z.reserve(static_cast<size_t>(n + p));
    z.insert(z.end(), x.begin(), x.end());
    z.insert(z.end(), y.begin(), y.end());
    return z;
}

LinearOperator pslr_operator(const PslrPreconditioner& pre, const SaddleSystem& sys) {
    return {sys.dim(), [pre, sys](const Vector& v) { return apply_pslr(pre, sys, v); }};
}

PinvResult pinv_solve(const LinearOperator& f_op, const Vector& b, index_t m, index_t r_k) {
    if (m < 0) throw InvalidInput("pinv_solve: m must be >= 0");
    LinearOperator fp1{f_op.dim, [f_op, m](const Vector& v) {
                           Vector w = v;
                           for (index_t i = 0; i <= m; ++i) w = f_op.apply(w);
                           return w;
                       }};
    const ArnoldiResult ar = arnoldi(fp1, b, r_k);

    PinvResult res;
    res.op.f_op = f_op;
    res.op.m = m;
    res.op.v = ar.v;
    res.op.g = correction_from_hessenberg(ar.h);
    res.x = pinv_apply(res.op, b);
    return res;
}

Vector pinv_apply(const PinvOperator& op, const Vector& v) {
    Vector t = low_rank_correct(op.v, op.g, v);
    Vector acc = t;
    Vector w = std::move(t);
    for (index_t i = 0; i < op.m; ++i) {
        w = op.f_op.apply(w);
        axpy(1.0, w, acc);
    }
    return acc;
}

ErrorDiagnostics error_diagnostics(const SaddleSystem& sys, const PslrPreconditioner& pre,
                                   index_t dense_cap) {
    const index_t p = sys.p();
    if (p > dense_cap) throw ConfigError("error_diagnostics: p exceeds dense_cap");

    const LinearOperator m_op = schur_m_operator(sys, pre.ata_fact, pre.c_fact);
    const DenseMatrix e = densify(build_errop(m_op, sys.c_block, pre.c_fact, pre.m));
    const DenseMatrix series = densify(
        {p, [&](const Vector& v) { return power_series_apply(m_op, pre.c_fact, pre.m, v); }});

    const DenseMatrix vhvt = dense_matmul(dense_matmul(pre.v, pre.h),
                                          [&] {
                                              DenseMatrix vt(pre.v.ncols, pre.v.nrows);
                                              for (index_t i = 0; i < pre.v.nrows; ++i) {
                                                  for (index_t j = 0; j < pre.v.ncols; ++j) {
                                                      vt(j, i) = pre.v(i, j);
                                                  }
                                              }
                                              return vt;
                                          }());
    const DenseMatrix x = dense_sub(e, vhvt);
    const DenseMatrix z = dense_sub(dense_identity(p), vhvt);

    const DenseMatrix s_inv = dense_matmul(series, dense_inverse(dense_sub(dense_identity(p), e)));
    const DenseMatrix s_app_inv = dense_matmul(
        series, densify({p, [&](const Vector& v) { return low_rank_correct(pre.v, pre.g, v); }}));

    ErrorDiagnostics diag;
    diag.norm_x = dense_norm2(x);
    diag.norm_zinv = dense_norm2(dense_inverse(z));
    diag.bound = diag.norm_x * diag.norm_zinv;
    const double s_inv_norm = dense_norm2(s_inv);
    diag.actual = s_inv_norm == 0.0 ? 0.0 : dense_norm2(dense_sub(s_inv, s_app_inv)) / s_inv_norm;
    // the absolute slack covers the full-rank limit where both sides sit at
    // roundoff level
    if (diag.actual > diag.bound * (1.0 + 1e-8) + 1e-12) {
        throw std::logic_error("error_diagnostics: accuracy bound violated");
    }
    return diag;
}

double spectral_radius(const LinearOperator& op, index_t iters) {
    if (iters < 10) throw InvalidInput("spectral_radius: iters must be >= 10");
    Vector v(static_cast<size_t>(op.dim), 1.0);
    double norm = nrm2(v);
    for (auto& x : v) x /= norm;
    double rayleigh = 0.0;
    for (index_t i = 0; i < iters; ++i) {
        Vector w = op.apply(v);
        const double wn = nrm2(w);
        if (wn == 0.0) return 0.0;
        rayleigh = std::fabs(dot(v, w));
        for (size_t j = 0; j < w.size(); ++j) v[j] = w[j] / wn;
    }
    return rayleigh;
}

}  // namespace pslr
