// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each check exercises the public library surface only.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pslr/bench.hpp"
#include "pslr/dense_linalg.hpp"
#include "pslr/pslr.hpp"

using namespace pslr;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("criterion %2d %-34s %s%s%s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    if (!pass) ++g_failures;
}

Vector random_vec(index_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vector v(static_cast<size_t>(n));
    for (auto& x : v) x = uni(rng);
    return v;
}

DenseMatrix random_orthonormal(index_t n, index_t k, std::mt19937_64& rng) {
    DenseMatrix v(n, k);
    for (index_t j = 0; j < k; ++j) {
        Vector col = random_vec(n, rng);
        for (index_t jj = 0; jj < j; ++jj) {
            double d = 0.0;
            for (index_t i = 0; i < n; ++i) d += v(i, jj) * col[static_cast<size_t>(i)];
            for (index_t i = 0; i < n; ++i) col[static_cast<size_t>(i)] -= d * v(i, jj);
        }
        const double norm = nrm2(col);
        for (index_t i = 0; i < n; ++i) v(i, j) = col[static_cast<size_t>(i)] / norm;
    }
    return v;
}

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

// 1. Low-rank inversion identity holds to machine accuracy.
void criterion1() {
    std::mt19937_64 rng(1001);
    const index_t n = 100, k = 10;
    std::uniform_real_distribution<double> uni(-0.25, 0.25);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DenseMatrix v = random_orthonormal(n, k, rng);
        DenseMatrix h(k, k);
        for (auto& x : h.values) x = uni(rng);
        const DenseMatrix g = correction_from_hessenberg(h);

        DenseMatrix vt(k, n);
        for (index_t i = 0; i < n; ++i)
            for (index_t j = 0; j < k; ++j) vt(j, i) = v(i, j);
        const DenseMatrix lhs =
            dense_inverse(dense_sub(dense_identity(n), dense_matmul(dense_matmul(v, h), vt)));
        DenseMatrix rhs = dense_matmul(dense_matmul(v, g), vt);
        for (index_t i = 0; i < n; ++i) rhs(i, i) += 1.0;
        worst = std::max(worst, dense_norm_fro(dense_sub(lhs, rhs)) / dense_norm_fro(lhs));
    }
    report(1, "low-rank inversion identity", worst <= 1e-12,
           "max rel err " + std::to_string(worst));
}

// 2. Series residual identity with exact factorizations.
void criterion2() {
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        const SaddleSystem sys = gen_random_saddle(24, 14 + 4 * trial, 2000 + trial, 0.7);
        const auto ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        const auto c_f = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        const LinearOperator m_op = schur_m_operator(sys, ata_f, c_f);
        const DenseMatrix s = schur_dense(sys);
        for (index_t m = 0; m <= 5; ++m) {
            const LinearOperator series{sys.p(), [&](const Vector& v) {
                                            return power_series_apply(m_op, c_f, m, v);
                                        }};
            const DenseMatrix e = densify(build_errop(m_op, sys.c_block, c_f, m));
            DenseMatrix lhs = dense_sub(dense_identity(sys.p()),
                                        dense_matmul(s, densify(series)));
            worst = std::max(worst, dense_norm_fro(dense_sub(lhs, e)) / dense_norm_fro(e));
        }
    }
    report(2, "series residual identity", worst <= 1e-10, "max rel err " + std::to_string(worst));
}

// 3. Full-rank correction with exact factorizations solves exactly.
void criterion3() {
    std::mt19937_64 rng(3003);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        // p <= n so the Schur splitting map has full rank p and the Arnoldi
        // basis can reach the whole space
        const index_t n = 24 + (trial % 5) * 4;   // <= 40
        const index_t p = 10 + (trial % 4) * 4;   // <= 22
        const SaddleSystem sys = gen_random_saddle(n, p, 3000 + trial, 0.8);
        const PslrPreconditioner pre = build_exact(sys, 2, p);
        const CsrMatrix a = assemble_saddle(sys);
        const Vector b = random_vec(sys.dim(), rng);
        const Vector z = apply_pslr(pre, sys, b);
        Vector r = b;
        axpy(-1.0, spmv(a, z), r);
        worst = std::max(worst, nrm2(r) / nrm2(b));
    }
    report(3, "full-rank exact-limit solve", worst <= 1e-8, "max rel res " + std::to_string(worst));
}

// 4. Accuracy bound of the truncated-rank approximation.
void criterion4() {
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const index_t p = 10 + (trial % 6) * 5;  // <= 35
        const SaddleSystem sys = gen_random_saddle(30, p, 4000 + trial, 0.7);
        const index_t r_k = std::max<index_t>(2, p / 3);
        const ErrorDiagnostics d = error_diagnostics(sys, build_exact(sys, 3, r_k), 64);
        if (!(d.actual <= d.bound * (1.0 + 1e-8))) ok = false;
    }
    report(4, "approximation accuracy bound", ok);
}

// 5. Geometric truncation bound for contractive splittings.
void criterion5() {
    bool ok = true;
    for (int trial = 0; trial < 3 && ok; ++trial) {
        SaddleSystem sys = gen_random_saddle(24, 14, 5000 + trial, 1.0);
        auto ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        auto c_f = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        const double nm0 = dense_norm2(densify(schur_m_operator(sys, ata_f, c_f)));
        sys.b_block = csr_scale(sys.b_block, std::sqrt(0.7 / nm0));
        ata_f = factor_dense(to_dense(sys.ata), FactorKind::Cholesky);
        c_f = factor_dense(to_dense(sys.c_block), FactorKind::Cholesky);
        const LinearOperator m_op = schur_m_operator(sys, ata_f, c_f);
        const double norm_m = dense_norm2(densify(m_op));
        if (norm_m > 0.9) {
            ok = false;
            break;
        }
        const double norm_cinv = dense_norm2(dense_inverse(to_dense(sys.c_block)));
        const DenseMatrix s_inv = dense_inverse(schur_dense(sys));
        for (index_t m = 0; m <= 5; ++m) {
            const LinearOperator series{sys.p(), [&](const Vector& v) {
                                            return power_series_apply(m_op, c_f, m, v);
                                        }};
            const double err = dense_norm2(dense_sub(s_inv, densify(series)));
            const double bound =
                std::pow(norm_m, static_cast<double>(m + 1)) * norm_cinv / (1.0 - norm_m);
            if (err > bound * (1.0 + 1e-10)) ok = false;
        }
    }
    report(5, "series truncation bound", ok);
}

// 6. Saddle benchmark iteration window across start guesses.
void criterion6() {
    bool ok = true;
    std::string detail;
    const StartGuess guesses[] = {StartGuess::Pre, StartGuess::Zero, StartGuess::Random};
    for (StartGuess g : guesses) {
        BenchConfig cfg;
        cfg.problem = ProblemKind::Example1;
        cfg.order = 128;
        cfg.method = Method::PslrGmres;
        cfg.x0 = g;
        const BenchOutcome out = run_bench(cfg);
        const index_t lo = (g == StartGuess::Random) ? 9 : 8;
        const index_t hi = (g == StartGuess::Random) ? 15 : 14;
        detail += out.row.x0 + "=" + std::to_string(out.row.n_iter) + " ";
        if (out.row.status != "ok" || out.row.n_iter < lo || out.row.n_iter > hi) ok = false;
    }
    report(6, "saddle benchmark windows", ok, detail);
}

// 7. Banded general-system windows for series-GMRES and the splitting iteration.
void criterion7() {
    bool ok = true;
    std::string detail;

    BenchConfig cfg;
    cfg.problem = ProblemKind::Banded3;
    cfg.order = 128;
    cfg.method = Method::PslrGmres;
    const BenchOutcome pg = run_bench(cfg);
    detail += "pslr3=" + std::to_string(pg.row.n_iter) + " ";
    if (pg.row.status != "ok" || pg.row.error > 1e-6 || pg.row.n_iter < 9 || pg.row.n_iter > 19)
        ok = false;

    cfg.method = Method::Adi;
    const BenchOutcome a3 = run_bench(cfg);
    detail += "adi3=" + std::to_string(a3.row.n_iter) + " ";
    if (a3.row.status != "ok" || a3.row.error > 1e-6 || a3.row.n_iter < 13 || a3.row.n_iter > 23)
        ok = false;

    cfg.problem = ProblemKind::Banded5;
    const BenchOutcome a5 = run_bench(cfg);
    detail += "adi5=" + std::to_string(a5.row.n_iter);
    if (a5.row.status != "ok" || a5.row.n_iter < 7 || a5.row.n_iter > 17) ok = false;

    report(7, "banded benchmark windows", ok, detail);
}

// 8. Asymmetric tridiagonal baseline comparison.
void criterion8() {
    BenchConfig cfg;
    cfg.problem = ProblemKind::TridiagPaper;
    cfg.order = 128;
    cfg.method = Method::JacobiGmres;
    const BenchOutcome jac = run_bench(cfg);
    cfg.method = Method::PslrGmres;
    const BenchOutcome ps = run_bench(cfg);
    const bool ok = jac.row.status == "ok" && jac.row.n_iter <= 60 && ps.row.status == "ok" &&
                    ps.row.n_iter <= 25;
    report(8, "tridiagonal baseline comparison", ok,
           "jacobi=" + std::to_string(jac.row.n_iter) + " pslr=" + std::to_string(ps.row.n_iter));
}

// 9. Spectrum clustering improves with the series length.
void criterion9() {
    const SaddleSystem sys = gen_random_saddle(64, 64, 9009, 0.9);
    auto cluster = [&sys](index_t m) {
        const PslrPreconditioner pre = build_exact(sys, m, 15);
        const auto eig = dense_eigenvalues(densify(preconditioned_schur_operator(sys, pre)));
        index_t count = 0;
        for (const auto& l : eig)
            if (std::abs(l - std::complex<double>(1.0, 0.0)) < 0.1) ++count;
        return count;
    };
    const index_t c3 = cluster(3), c5 = cluster(5);
    report(9, "spectrum clustering with m", c5 >= c3,
           "m=3:" + std::to_string(c3) + " m=5:" + std::to_string(c5));
}

// 10. Krylov solutions match dense direct solves.
void criterion10() {
    bool ok = true;
    std::string detail;
    auto check_inf = [&](const Vector& x, const Vector& ref, const std::string& label) {
        double m = 0.0;
        for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - ref[i]));
        if (m > 1e-5) {
            ok = false;
            detail += label + " ";
        }
    };

    const ProblemKind kinds[] = {ProblemKind::Example1, ProblemKind::Banded3, ProblemKind::Banded5,
                                 ProblemKind::Banded7, ProblemKind::TridiagPaper,
                                 ProblemKind::RandomSaddle};
    for (ProblemKind kind : kinds) {
        BenchConfig cfg;
        cfg.problem = kind;
        cfg.order = 128;
        cfg.random_n = 64;
        cfg.random_p = 32;
        if (kind == ProblemKind::Example1) cfg.order = 64;
        const Problem prob = make_problem(cfg);
        if (prob.matrix.nrows > 300) continue;
        const Vector ref = dense_solve(to_dense(prob.matrix), prob.rhs);
        const Vector zero(prob.rhs.size(), 0.0);

        const GmresResult g =
            gmres(LinearOperator::from_csr(prob.matrix), prob.rhs, zero, 1e-10, 600);
        check_inf(g.x, ref, prob.name + ":gmres");

        if (is_symmetric(prob.matrix, 1e-10)) {
            const GmresResult c = cg(prob.matrix, prob.rhs, zero, 1e-12, 1000);
            check_inf(c.x, ref, prob.name + ":cg");
            const Factorization ic = ic0(prob.matrix);
            const LinearOperator m_inv{prob.matrix.nrows, [&ic](const Vector& v) {
                                           return apply_inverse(ic, v);
                                       }};
            const GmresResult p = pcg(prob.matrix, prob.rhs, zero, 1e-12, 1000, m_inv);
            check_inf(p.x, ref, prob.name + ":pcg");
        }
    }
    report(10, "dense-oracle equivalence", ok, detail);
}

// 11. External matrices: run only when supplied locally; accept +-15%.
void criterion11() {
    struct External {
        const char* file;
        Method method;
        index_t expected;
    };
    const External table[] = {
        {"494_bus.mtx", Method::PslrGmres, 334},  {"1138_bus.mtx", Method::PslrGmres, 581},
        {"bcsstk03.mtx", Method::PslrGmres, 334}, {"bcspwr02.mtx", Method::PslrGmres, 92},
        {"mcfe.mtx", Method::PslrGmres, 1417},    {"fs_541_3.mtx", Method::PslrGmres, 396},
        {"494_bus.mtx", Method::Pinv, 1138},      {"bcsstk03.mtx", Method::Pinv, 562},
        {"dwb512.mtx", Method::Pinv, 10},
    };

    std::string dir = "data";
    if (const char* env = std::getenv("PSLR_DATA_DIR")) dir = env;

    bool ok = true;
    int run = 0, skipped = 0;
    std::string detail;
    for (const External& e : table) {
        const std::string path = dir + "/" + e.file;
        if (!std::filesystem::exists(path)) {
            ++skipped;
            continue;
        }
        BenchConfig cfg;
        cfg.problem = ProblemKind::MmFile;
        cfg.mm_path = path;
        cfg.method = e.method;
        cfg.maxit = 3000;
        const BenchOutcome out = run_bench(cfg);
        ++run;
        const double lo = 0.85 * static_cast<double>(e.expected);
        const double hi = 1.15 * static_cast<double>(e.expected);
        const double got = static_cast<double>(out.row.n_iter);
        if (out.row.status != "ok" || got < lo || got > hi) {
            ok = false;
            detail += std::string(e.file) + "=" + std::to_string(out.row.n_iter) + " ";
        }
    }
    report(11, "external matrix suite", ok,
           std::to_string(run) + " run, " + std::to_string(skipped) + " skipped" +
               (detail.empty() ? "" : " (" + detail + ")"));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
