#include "pslr/krylov.hpp"

#include <chrono>
#include <cmath>

namespace pslr {

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector residual(const LinearOperator& op, const Vector& b, const Vector& x) {
    Vector r = op.apply(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

}  // namespace

ArnoldiResult arnoldi(const LinearOperator& op, const Vector& v1, index_t r_k) {
    if (r_k < 1) throw InvalidInput("arnoldi: r_k must be >= 1");
    const double beta = nrm2(v1);
    if (beta == 0.0) throw InvalidInput("arnoldi: zero start vector");
    const index_t n = op.dim;

    std::vector<Vector> basis;
    basis.push_back(scaled(v1, 1.0 / beta));
    DenseMatrix h(r_k, r_k);

    ArnoldiResult res;
    for (index_t j = 0; j < r_k; ++j) {
        Vector w = op.apply(basis[static_cast<size_t>(j)]);
        const double wnorm = nrm2(w);
        for (index_t i = 0; i <= j; ++i) {
            const double hij = dot(basis[static_cast<size_t>(i)], w);
            h(i, j) += hij;
            axpy(-hij, basis[static_cast<size_t>(i)], w);
        }
        // one reorthogonalization pass
        for (index_t i = 0; i <= j; ++i) {
            const double c = dot(basis[static_cast<size_t>(i)], w);
            h(i, j) += c;
            axpy(-c, basis[static_cast<size_t>(i)], w);
        }
        const double hnext = nrm2(w);
        if (hnext <= 1e-14 * wnorm || j == r_k - 1) {
            res.k = j + 1;
            res.breakdown = hnext <= 1e-14 * wnorm;
            res.h_next = res.breakdown ? 0.0 : hnext;
            if (!res.breakdown) res.v_next = scaled(w, 1.0 / hnext);
            break;
        }
        h(j + 1, j) = hnext;
        basis.push_back(scaled(w, 1.0 / hnext));
    }

    res.v = DenseMatrix(n, res.k);
    for (index_t j = 0; j < res.k; ++j) {
        for (index_t i = 0; i < n; ++i) res.v(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    res.h = DenseMatrix(res.k, res.k);
    for (index_t i = 0; i < res.k; ++i) {
        for (index_t j = 0; j < res.k; ++j) res.h(i, j) = h(i, j);
    }
    return res;
}

GmresResult gmres(const LinearOperator& op, const Vector& b, const Vector& x0, double tol,
                  index_t maxit, const std::optional<LinearOperator>& precond) {
    if (tol <= 0.0) throw InvalidInput("gmres: tol must be positive");
    if (maxit < 1) throw InvalidInput("gmres: maxit must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    GmresResult out;
    out.x = x0;
    SolveReport& rep = out.report;

    Vector r0 = residual(op, b, x0);
    const double beta = nrm2(r0);
    rep.residual_history.push_back(beta);
    if (beta == 0.0) {
        rep.status = SolveStatus::Converged;
        rep.final_residual = 0.0;
        rep.time_iterate = rep.time_total = elapsed(t0);
        return out;
    }
    const double target = tol * beta;

    std::vector<Vector> basis;
    basis.push_back(scaled(r0, 1.0 / beta));
    std::vector<std::vector<double>> hcols;  // column j holds h(0..j+1, j)
    std::vector<double> cs, sn, g;
    g.push_back(beta);

    auto apply_op = [&](const Vector& v) {
        return precond ? op.apply(precond->apply(v)) : op.apply(v);
    };

    index_t j = 0;
    bool lucky = false;
    for (; j < maxit; ++j) {
        Vector w = apply_op(basis[static_cast<size_t>(j)]);
        const double wnorm = nrm2(w);
        std::vector<double> hcol(static_cast<size_t>(j) + 2, 0.0);
        for (index_t i = 0; i <= j; ++i) {
            const double hij = dot(basis[static_cast<size_t>(i)], w);
            hcol[static_cast<size_t>(i)] += hij;
            axpy(-hij, basis[static_cast<size_t>(i)], w);
        }
        for (index_t i = 0; i <= j; ++i) {
            const double c = dot(basis[static_cast<size_t>(i)], w);
            hcol[static_cast<size_t>(i)] += c;
            axpy(-c, basis[static_cast<size_t>(i)], w);
        }
        const double hnext = nrm2(w);
        hcol[static_cast<size_t>(j) + 1] = hnext;

        // apply accumulated Givens rotations, then form a new one
        for (index_t i = 0; i < j; ++i) {
            const double t = cs[static_cast<size_t>(i)] * hcol[static_cast<size_t>(i)] +
                             sn[static_cast<size_t>(i)] * hcol[static_cast<size_t>(i) + 1];
            hcol[static_cast<size_t>(i) + 1] = -sn[static_cast<size_t>(i)] * hcol[static_cast<size_t>(i)] +
                                               cs[static_cast<size_t>(i)] * hcol[static_cast<size_t>(i) + 1];
            hcol[static_cast<size_t>(i)] = t;
        }
        const double denom = std::hypot(hcol[static_cast<size_t>(j)], hnext);
        if (denom == 0.0) {
            rep.status = SolveStatus::Breakdown;
            break;
        }
        cs.push_back(hcol[static_cast<size_t>(j)] / denom);
        sn.push_back(hnext / denom);
        hcol[static_cast<size_t>(j)] = denom;
        hcol[static_cast<size_t>(j) + 1] = 0.0;
        g.push_back(-sn.back() * g[static_cast<size_t>(j)]);
        g[static_cast<size_t>(j)] *= cs.back();
        hcols.push_back(std::move(hcol));

        const double est = std::fabs(g.back());
        rep.residual_history.push_back(est);

        lucky = hnext <= 1e-14 * wnorm;
        if (est <= target || lucky) {
            ++j;
            break;
        }
        basis.push_back(scaled(w, 1.0 / hnext));
    }
    rep.iterations = j;

    // back substitution on the triangularized Hessenberg system
    if (!hcols.empty()) {
        std::vector<double> y(hcols.size(), 0.0);
        for (index_t i = static_cast<index_t>(hcols.size()) - 1; i >= 0; --i) {
            double s = g[static_cast<size_t>(i)];
            for (index_t k = i + 1; k < static_cast<index_t>(hcols.size()); ++k) {
                s -= hcols[static_cast<size_t>(k)][static_cast<size_t>(i)] * y[static_cast<size_t>(k)];
            }
            const double d = hcols[static_cast<size_t>(i)][static_cast<size_t>(i)];
            if (d == 0.0) {
                rep.status = SolveStatus::Breakdown;
                s = 0.0;
            } else {
                s /= d;
            }
            y[static_cast<size_t>(i)] = s;
        }
        Vector u(static_cast<size_t>(op.dim), 0.0);
        for (size_t k = 0; k < y.size(); ++k) axpy(y[k], basis[k], u);
        if (precond) u = precond->apply(u);
        axpy(1.0, u, out.x);
    }

    rep.final_residual = nrm2(residual(op, b, out.x));
    if (rep.status != SolveStatus::Breakdown) {
        const double est = rep.residual_history.back();
        rep.status = (est <= target || lucky) ? SolveStatus::Converged : SolveStatus::MaxIterations;
    }
    rep.time_iterate = rep.time_total = elapsed(t0);
    return out;
}

GmresResult pcg(const CsrMatrix& a, const Vector& b, const Vector& x0, double tol, index_t maxit,
                const LinearOperator& m_inv) {
    if (tol <= 0.0) throw InvalidInput("pcg: tol must be positive");
    if (maxit < 1) throw InvalidInput("pcg: maxit must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const LinearOperator op = LinearOperator::from_csr(a);

    GmresResult out;
    out.x = x0;
    SolveReport& rep = out.report;

    Vector r = residual(op, b, x0);
    const double beta0 = nrm2(r);
    rep.residual_history.push_back(beta0);
    if (beta0 == 0.0) {
        rep.status = SolveStatus::Converged;
        rep.time_iterate = rep.time_total = elapsed(t0);
        return out;
    }
    const double target = tol * beta0;

    Vector z = m_inv.apply(r);
    Vector p = z;
    double rz = dot(r, z);
    rep.status = SolveStatus::MaxIterations;
    for (index_t it = 0; it < maxit; ++it) {
        const Vector ap = spmv(a, p);
        const double curv = dot(p, ap);
        if (curv <= 0.0) {
            rep.status = SolveStatus::Breakdown;
            rep.iterations = it;
            break;
        }
        const double alpha = rz / curv;
        axpy(alpha, p, out.x);
        axpy(-alpha, ap, r);
        const double rnorm = nrm2(r);
        rep.residual_history.push_back(rnorm);
        rep.iterations = it + 1;
        if (rnorm <= target) {
            rep.status = SolveStatus::Converged;
            break;
        }
        z = m_inv.apply(r);
        const double rz_new = dot(r, z);
        const double omega = rz_new / rz;
        rz = rz_new;
        for (size_t i = 0; i < p.size(); ++i) p[i] = z[i] + omega * p[i];
    }
    rep.final_residual = nrm2(residual(op, b, out.x));
    rep.time_iterate = rep.time_total = elapsed(t0);
    return out;
}

GmresResult cg(const CsrMatrix& a, const Vector& b, const Vector& x0, double tol, index_t maxit) {
    return pcg(a, b, x0, tol, maxit, LinearOperator::identity(a.nrows));
}

}  // namespace pslr
