#include <doctest.h>

#include <cmath>

#include "pslr/bench.hpp"
#include "pslr/dense_linalg.hpp"
#include "pslr/pslr.hpp"
#include "test_helpers.hpp"

using namespace pslr;

namespace {

PslrPreconditioner build_exact(const SaddleSystem& sys, index_t m, index_t r_k) {
    return build_pslr(sys, m, r_k, factor_dense(to_dense(sys.ata), FactorKind::Cholesky),
                      factor_dense(to_dense(sys.c_block), FactorKind::Cholesky));
}

DenseMatrix schur_dense(const SaddleSystem& sys) {
    const auto ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
    const CsrMatrix bt = transpose(sys.b_block);
    const index_t p = sys.p();
    DenseMatrix s = to_dense(sys.c_block);
    for (index_t j = 0; j < p; ++j) {
        Vector e(static_cast<size_t>(p), 0.0);
        e[static_cast<size_t>(j)] = 1.0;
        const Vector col = spmv(sys.b_block, apply_inverse(ata_f, spmv(bt, e)));
        for (index_t i = 0; i < p; ++i) s(i, j) += col[static_cast<size_t>(i)];
    }
    return s;
}

}  // namespace

TEST_CASE("Woodbury identity: (I - V H V^T)^{-1} == I + V G V^T") {
    std::mt19937_64 rng(21);
    const index_t n = 40, k = 6;
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix v = testing::random_orthonormal(n, k, rng);
        DenseMatrix h(k, k);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (auto& x : h.values) x = uni(rng) * 0.3;  // keep I - H nonsingular
        const DenseMatrix g = correction_from_hessenberg(h);

        // lhs = (I - V H V^T)^{-1}, rhs = I + V G V^T
        const DenseMatrix vh = dense_matmul(v, h);
        DenseMatrix vt(k, n);
        for (index_t i = 0; i < n; ++i)
            for (index_t j = 0; j < k; ++j) vt(j, i) = v(i, j);
        const DenseMatrix lhs = dense_inverse(dense_sub(dense_identity(n), dense_matmul(vh, vt)));
        DenseMatrix rhs = dense_matmul(dense_matmul(v, g), vt);
        for (index_t i = 0; i < n; ++i) rhs(i, i) += 1.0;

        const double rel = dense_norm_fro(dense_sub(lhs, rhs)) / dense_norm_fro(lhs);
        CHECK(rel < 1e-12);
    }
}

TEST_CASE("correction_from_hessenberg rejects a singular I - H") {
    DenseMatrix h = dense_identity(3);  // I - H == 0
    CHECK_THROWS_AS(correction_from_hessenberg(h), CorrectionSingular);
}

TEST_CASE("series residual identity: I - S (sum M^i C^{-1}) == C M^{m+1} C^{-1}") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 4; ++trial) {
        const SaddleSystem sys = gen_random_saddle(20, 12, 100 + trial, 0.7);
        const auto ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        const auto c_f = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        const LinearOperator m_op = schur_m_operator(sys, ata_f, c_f);
        const DenseMatrix s = schur_dense(sys);

        for (index_t m = 0; m <= 4; ++m) {
            const LinearOperator series{sys.p(), [&](const Vector& v) {
                                            return power_series_apply(m_op, c_f, m, v);
                                        }};
            const LinearOperator errop = build_errop(m_op, sys.c_block, c_f, m);
            const DenseMatrix e = densify(errop);

            // lhs = I - S * Series
            DenseMatrix lhs = dense_matmul(schur_dense(sys), densify(series));
            lhs = dense_sub(dense_identity(sys.p()), lhs);
            const double rel = dense_norm_fro(dense_sub(lhs, e)) / dense_norm_fro(e);
            CHECK(rel < 1e-10);
            (void)s;
        }
    }
}

TEST_CASE("exact limit: r_k = p with exact factorizations recovers S^{-1}") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const SaddleSystem sys = gen_random_saddle(18, 10, 200 + trial, 0.8);
        const PslrPreconditioner pre = build_exact(sys, 2, sys.p());
        const Vector g = testing::random_vec(sys.p(), rng);
        const Vector y = apply_schur_inverse(pre, sys, g);
        const Vector y_ref = dense_solve(schur_dense(sys), g);
        const double rel = testing::max_abs_diff(y, y_ref) / nrm2(y_ref);
        CHECK(rel < 1e-8);
    }
}

TEST_CASE("apply_pslr solves the assembled system exactly in the exact limit") {
    for (SaddleSign sign : {SaddleSign::Positive, SaddleSign::Negative}) {
        const SaddleSystem sys = gen_random_saddle(16, 9, 321, 0.8, sign);
        const CsrMatrix a = assemble_saddle(sys);
        const PslrPreconditioner pre = build_exact(sys, 3, sys.p());
        std::mt19937_64 rng(24);
        const Vector b = testing::random_vec(sys.dim(), rng);
        const Vector z = apply_pslr(pre, sys, b);
        Vector r = b;
        axpy(-1.0, spmv(a, z), r);
        CHECK(nrm2(r) / nrm2(b) < 1e-8);
    }
}

TEST_CASE("build_pslr default factorization path produces a usable preconditioner") {
    const SaddleSystem sys = gen_random_saddle(40, 20, 77, 0.5);
    const PslrPreconditioner pre = build_pslr(sys, 5, 10);
    CHECK(pre.v.nrows == sys.p());
    CHECK(pre.v.ncols == pre.g.nrows);
    CHECK(pre.build_seconds >= 0.0);

    const CsrMatrix a = assemble_saddle(sys);
    std::mt19937_64 rng(25);
    const Vector b = testing::random_vec(sys.dim(), rng);
    const Vector z = apply_pslr(pre, sys, b);
    Vector r = b;
    axpy(-1.0, spmv(a, z), r);
    CHECK(nrm2(r) < nrm2(b));  // better than the zero guess
}

TEST_CASE("pslr_operator agrees with apply_pslr") {
    const SaddleSystem sys = gen_random_saddle(12, 6, 5, 0.6);
    const PslrPreconditioner pre = build_exact(sys, 2, 4);
    const LinearOperator op = pslr_operator(pre, sys);
    std::mt19937_64 rng(26);
    const Vector b = testing::random_vec(sys.dim(), rng);
    CHECK(testing::max_abs_diff(op(b), apply_pslr(pre, sys, b)) == 0.0);
}

TEST_CASE("error diagnostics bound holds and exact limit drives the error to zero") {
    for (int trial = 0; trial < 5; ++trial) {
        const SaddleSystem sys = gen_random_saddle(20, 12, 400 + trial, 0.7);
        const PslrPreconditioner pre = build_exact(sys, 3, 6);
        const ErrorDiagnostics diag = error_diagnostics(sys, pre, 64);
        CHECK(diag.actual <= diag.bound * (1.0 + 1e-8));
        CHECK(diag.bound == doctest::Approx(diag.norm_x * diag.norm_zinv).epsilon(1e-12));
    }

    const SaddleSystem sys = gen_random_saddle(20, 10, 11, 0.8);
    const ErrorDiagnostics exact = error_diagnostics(sys, build_exact(sys, 2, sys.p()), 64);
    CHECK(exact.actual < 1e-8);

    const SaddleSystem big = gen_random_saddle(10, 8, 1, 0.5);
    CHECK_THROWS_AS(error_diagnostics(big, build_exact(big, 2, 4), 4), ConfigError);
}

TEST_CASE("truncation error obeys the geometric-series bound") {
    // Instances scaled so ||M||_2 <= 0.9.
    for (int trial = 0; trial < 3; ++trial) {
        SaddleSystem sys = gen_random_saddle(20, 12, 500 + trial, 1.0);
        const auto ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        const auto c_f = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        {
            const double nm =
                dense_norm2(densify(schur_m_operator(sys, ata_f, c_f)));
            const double target = 0.6;
            sys.b_block = csr_scale(sys.b_block, std::sqrt(target / nm));
        }
        const auto ata_f2 = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        const auto c_f2 = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        const LinearOperator m_op = schur_m_operator(sys, ata_f2, c_f2);
        const double norm_m = dense_norm2(densify(m_op));
        REQUIRE(norm_m <= 0.9);
        const double norm_cinv = dense_norm2(dense_inverse(to_dense(sys.c_block)));
        const DenseMatrix s_inv = dense_inverse(schur_dense(sys));

        for (index_t m = 0; m <= 5; ++m) {
            const LinearOperator series{sys.p(), [&](const Vector& v) {
                                            return power_series_apply(m_op, c_f2, m, v);
                                        }};
            const double err = dense_norm2(dense_sub(s_inv, densify(series)));
            const double bound =
                std::pow(norm_m, static_cast<double>(m + 1)) * norm_cinv / (1.0 - norm_m);
            CHECK(err <= bound * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("pinv solves I - F systems and its operator is a usable preconditioner") {
    const index_t n = 60;
    // a = I - f with ||f|| < 1: a = tridiag(-0.2, 1, 0.1)
    const CsrMatrix f_mat = gen_banded(n, {-1, 1}, {0.2, -0.1});
    const CsrMatrix a = csr_add(csr_identity(n), f_mat, -1.0);
    std::mt19937_64 rng(27);
    const Vector b = testing::random_vec(n, rng);

    const PinvResult res = pinv_solve(LinearOperator::from_csr(f_mat), b, 5, 15);
    Vector r = b;
    axpy(-1.0, spmv(a, res.x), r);
    CHECK(nrm2(r) / nrm2(b) < 0.1);  // good initial guess quality

    // And as a right preconditioner it accelerates gmres.
    const LinearOperator pre{n, [&res](const Vector& v) { return pinv_apply(res.op, v); }};
    const GmresResult plain = gmres(LinearOperator::from_csr(a), b, Vector(n, 0.0), 1e-10, 300);
    const GmresResult accel =
        gmres(LinearOperator::from_csr(a), b, Vector(n, 0.0), 1e-10, 300, pre);
    CHECK(accel.report.status == SolveStatus::Converged);
    CHECK(accel.report.iterations <= plain.report.iterations);
}

TEST_CASE("spectral_radius estimates diagonal dominant eigenvalue") {
    const CsrMatrix d = csr_diag({0.5, -3.0, 2.0});
    const double rho = spectral_radius(LinearOperator::from_csr(d), 200);
    CHECK(rho == doctest::Approx(3.0).epsilon(1e-6));

    const CsrMatrix z = csr_from_triplets(3, 3, {});
    CHECK(spectral_radius(LinearOperator::from_csr(z), 10) == 0.0);
}

TEST_CASE("eigenvalue clustering of the preconditioned Schur operator improves with m") {
    const SaddleSystem sys = gen_random_saddle(32, 16, 4242, 0.9);
    auto cluster_count = [&](index_t m) {
        const PslrPreconditioner pre = build_exact(sys, m, 8);
        const auto eig = dense_eigenvalues(densify(preconditioned_schur_operator(sys, pre)));
        index_t count = 0;
        for (const auto& l : eig)
            if (std::abs(l - std::complex<double>(1.0, 0.0)) < 0.1) ++count;
        return count;
    };
    CHECK(cluster_count(5) >= cluster_count(3));
    CHECK(cluster_count(5) >= 1);
}
