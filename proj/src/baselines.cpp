#include "pslr/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pslr/factor.hpp"

namespace pslr {

LinearOperator jacobi_inverse(const CsrMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("jacobi_inverse: matrix not square");
    Vector dinv(static_cast<size_t>(a.nrows));
    for (index_t i = 0; i < a.nrows; ++i) {
        const double d = a.at(i, i);
        if (d == 0.0) throw SingularMatrix("jacobi_inverse: zero diagonal entry");
        dinv[static_cast<size_t>(i)] = 1.0 / d;
    }
    return {a.nrows, [dinv](const Vector& v) {
                Vector y(v.size());
                for (size_t i = 0; i < v.size(); ++i) y[i] = dinv[i] * v[i];
                return y;
            }};
}

GmresResult adi_solve(const CsrMatrix& a, const Vector& b, const AdiConfig& cfg) {
    if (a.nrows != a.ncols) throw DimensionError("adi_solve: matrix not square");
    if (cfg.alpha <= 0.0) throw InvalidInput("adi_solve: alpha must be positive");
    if (cfg.maxit < 1) throw InvalidInput("adi_solve: maxit must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const index_t n = a.nrows;

    const CsrMatrix at = transpose(a);
    const CsrMatrix h = csr_scale(csr_add(a, at), 0.5);        // symmetric part
    const CsrMatrix s = csr_scale(csr_add(a, at, -1.0), 0.5);  // skew part
    const CsrMatrix eye = csr_identity(n);
    const CsrMatrix h_shift = csr_add(h, eye, cfg.alpha);
    const CsrMatrix s_shift = csr_add(s, eye, cfg.alpha);
    const LinearOperator s_shift_op = LinearOperator::from_csr(s_shift);

    GmresResult out;
    out.x.assign(static_cast<size_t>(n), 0.0);
    SolveReport& rep = out.report;
    const double bnorm = nrm2(b);
    rep.residual_history.push_back(bnorm);
    if (bnorm == 0.0) {
        rep.status = SolveStatus::Converged;
        rep.time_iterate = rep.time_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    LinearOperator h_precond = LinearOperator::identity(n);
    try {
        const Factorization h_ic = ic0(h_shift);
        h_precond = {n, [h_ic](const Vector& v) { return apply_inverse(h_ic, v); }};
    } catch (const PivotBreakdown&) {
        rep.status = SolveStatus::Breakdown;
        rep.time_iterate = rep.time_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    rep.status = SolveStatus::MaxIterations;
    for (index_t it = 0; it < cfg.maxit; ++it) {
        // (H + aI) x_half = (aI - S) x + b
        Vector rhs = spmv(s, out.x);
        for (size_t i = 0; i < rhs.size(); ++i) {
            rhs[i] = cfg.alpha * out.x[i] - rhs[i] + b[i];
        }
        GmresResult half = pcg(h_shift, rhs, out.x, cfg.inner_tol, cfg.inner_maxit, h_precond);
        if (half.report.status == SolveStatus::Breakdown) {
            rep.status = SolveStatus::Breakdown;
            rep.iterations = it;
            break;
        }

        // (S + aI) x = (aI - H) x_half + b
        rhs = spmv(h, half.x);
        for (size_t i = 0; i < rhs.size(); ++i) {
            rhs[i] = cfg.alpha * half.x[i] - rhs[i] + b[i];
        }
        GmresResult full = gmres(s_shift_op, rhs, half.x, cfg.inner_tol, cfg.inner_maxit);
        if (full.report.status == SolveStatus::Breakdown) {
            rep.status = SolveStatus::Breakdown;
            rep.iterations = it;
            break;
        }
        out.x = full.x;

        Vector r = spmv(a, out.x);
        for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
        const double rnorm = nrm2(r);
        rep.residual_history.push_back(rnorm);
        rep.iterations = it + 1;
        if (rnorm <= cfg.tol * bnorm) {
            rep.status = SolveStatus::Converged;
            break;
        }
    }
    rep.final_residual = rep.residual_history.back();
    rep.time_iterate = rep.time_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<index_t> rcm_order(const CsrMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("rcm_order: matrix not square");
    const index_t n = a.nrows;
    // symmetrized adjacency, diagonal dropped
    const CsrMatrix sym = csr_add(a, transpose(a));
    std::vector<std::vector<index_t>> adj(static_cast<size_t>(n));
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = sym.row_ptr[static_cast<size_t>(i)]; k < sym.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            const index_t j = sym.col_idx[static_cast<size_t>(k)];
            if (j != i) adj[static_cast<size_t>(i)].push_back(j);
        }
    }
    auto degree = [&](index_t v) { return static_cast<index_t>(adj[static_cast<size_t>(v)].size()); };

    std::vector<bool> visited(static_cast<size_t>(n), false);
    std::vector<index_t> order;
    order.reserve(static_cast<size_t>(n));
    for (;;) {
        index_t start = -1;
        for (index_t i = 0; i < n; ++i) {
            if (!visited[static_cast<size_t>(i)] && (start < 0 || degree(i) < degree(start))) start = i;
        }
        if (start < 0) break;
        std::vector<index_t> queue{start};
        visited[static_cast<size_t>(start)] = true;
        for (size_t head = 0; head < queue.size(); ++head) {
            const index_t v = queue[head];
            order.push_back(v);
            std::vector<index_t> nbrs;
            for (index_t w : adj[static_cast<size_t>(v)]) {
                if (!visited[static_cast<size_t>(w)]) {
                    visited[static_cast<size_t>(w)] = true;
                    nbrs.push_back(w);
                }
            }
            std::sort(nbrs.begin(), nbrs.end(),
                      [&](index_t x, index_t y) { return degree(x) != degree(y) ? degree(x) < degree(y) : x < y; });
            queue.insert(queue.end(), nbrs.begin(), nbrs.end());
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

index_t bandwidth(const CsrMatrix& a) {
    index_t bw = 0;
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            bw = std::max<index_t>(bw, std::abs(i - a.col_idx[static_cast<size_t>(k)]));
        }
    }
    return bw;
}

}  // namespace pslr
