#include "pslr/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "pslr/dense_linalg.hpp"
#include "pslr/mmio.hpp"

namespace pslr {

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector random_vector(index_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vector v(static_cast<size_t>(n));
    for (auto& x : v) x = uni(rng);
    return v;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::PslrGmres: return "pslr_gmres";
        case Method::Gmres: return "gmres";
        case Method::Cg: return "cg";
        case Method::PcgIc0: return "pcg_ic0";
        case Method::Pinv: return "pinv";
        case Method::Adi: return "adi";
        case Method::JacobiGmres: return "jacobi_gmres";
    }
    return "?";
}

std::string guess_name(StartGuess g) {
    switch (g) {
        case StartGuess::Pre: return "pre";
        case StartGuess::Zero: return "zero";
        case StartGuess::Random: return "random";
    }
    return "?";
}

std::string status_string(const SolveReport& rep, index_t maxit) {
    switch (rep.status) {
        case SolveStatus::Converged: return "ok";
        case SolveStatus::Breakdown: return "breakdown";
        case SolveStatus::MaxIterations: return maxit >= 3000 ? "-" : "F";
    }
    return "?";
}

// The series for (I - F)^{-1} converges only when rho(F) < 1; past that the
// rank-r_k correction cannot deflate every divergent mode, so fall back to
// plain GMRES. The estimate is the documented power-iteration one.
constexpr double kSplitRadiusCap = 1.0;

}  // namespace

Problem make_problem(const BenchConfig& cfg) {
    Problem prob;
    switch (cfg.problem) {
        case ProblemKind::Example1: {
            prob.name = "example1";
            prob.saddle = gen_example1_order(cfg.order);
            prob.matrix = assemble_saddle(*prob.saddle);
            prob.rhs = random_vector(prob.matrix.nrows, cfg.seed);
            break;
        }
        case ProblemKind::Banded3:
            prob.name = "banded3";
            prob.matrix = gen_banded(cfg.order, {-1, 0, 1}, {2.0, 6.0, 2.0});
            prob.rhs.assign(static_cast<size_t>(cfg.order), 1.0);
            break;
        case ProblemKind::Banded5:
            prob.name = "banded5";
            prob.matrix = gen_banded(cfg.order, {-2, -1, 0, 1, 2}, {1.0, 2.0, 6.0, 2.0, 1.0});
            prob.rhs.assign(static_cast<size_t>(cfg.order), 1.0);
            break;
        case ProblemKind::Banded7:
            prob.name = "banded7";
            prob.matrix = gen_banded(cfg.order, {-3, -2, -1, 0, 1, 2, 3},
                                     {0.5, 1.0, 2.0, 6.0, 2.0, 1.0, 0.5});
            prob.rhs.assign(static_cast<size_t>(cfg.order), 1.0);
            break;
        case ProblemKind::TridiagPaper:
            prob.name = "tridiag_paper";
            prob.matrix = gen_banded(cfg.order, {-1, 0, 1}, {-1.0, 2.0, 0.5});
            prob.rhs.assign(static_cast<size_t>(cfg.order), 1.0);
            break;
        case ProblemKind::MmFile: {
            prob.name = cfg.mm_path;
            prob.matrix = mm_read(cfg.mm_path);
            if (prob.matrix.nrows != prob.matrix.ncols) {
                throw ConfigError("bench: matrix file must be square");
            }
            prob.rhs = random_vector(prob.matrix.nrows, cfg.seed);
            break;
        }
        case ProblemKind::RandomSaddle: {
            prob.name = "random_saddle";
            prob.saddle = gen_random_saddle(cfg.random_n, cfg.random_p, cfg.seed, 0.5);
            prob.matrix = assemble_saddle(*prob.saddle);
            prob.rhs = random_vector(prob.matrix.nrows, cfg.seed + 1);
            break;
        }
    }
    return prob;
}

BenchOutcome run_bench(const BenchConfig& cfg) {
    if (cfg.tol <= 0.0) throw ConfigError("bench: tol must be positive");
    if (cfg.m > 5 && !cfg.allow_large_m) {
        throw ConfigError("bench: m > 5 requires --allow-large-m");
    }

    Problem prob = make_problem(cfg);
    const index_t dim = prob.matrix.nrows;

    BenchOutcome out;
    BenchRow& row = out.row;
    row.problem = prob.name;
    row.method = method_name(cfg.method);
    row.m = cfg.m;
    row.r_k = cfg.r_k;
    row.x0 = guess_name(cfg.x0);

    if (cfg.reorder) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<index_t> perm = rcm_order(prob.matrix);
        row.o_t = elapsed(t0);
        if (!prob.saddle) {
            // permute the plain system symmetrically; the saddle block
            // structure must stay intact, so only the ordering time is
            // reported there
            prob.matrix = csr_permute_sym(prob.matrix, perm);
            Vector rhs(prob.rhs.size());
            for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = prob.rhs[static_cast<size_t>(perm[i])];
            prob.rhs = rhs;
        }
    }

    const LinearOperator op = LinearOperator::from_csr(prob.matrix);
    const Vector& b = prob.rhs;
    Vector x0(static_cast<size_t>(dim), 0.0);
    if (cfg.x0 == StartGuess::Random) x0 = random_vector(dim, cfg.seed + 17);

    GmresResult res;
    switch (cfg.method) {
        case Method::Gmres: {
            res = gmres(op, b, x0, cfg.tol, cfg.maxit);
            break;
        }
        case Method::Cg: {
            if (!is_symmetric(prob.matrix, 1e-10)) {
                throw ConfigError("bench: cg requires a symmetric matrix");
            }
            res = cg(prob.matrix, b, x0, cfg.tol, cfg.maxit);
            break;
        }
        case Method::PcgIc0: {
            if (!is_symmetric(prob.matrix, 1e-10)) {
                throw ConfigError("bench: pcg_ic0 requires a symmetric matrix");
            }
            const auto t0 = std::chrono::steady_clock::now();
            const Factorization ic = ic0(prob.matrix);
            row.p_t = elapsed(t0);
            const LinearOperator m_inv{dim, [ic](const Vector& v) { return apply_inverse(ic, v); }};
            res = pcg(prob.matrix, b, x0, cfg.tol, cfg.maxit, m_inv);
            break;
        }
        case Method::JacobiGmres: {
            res = gmres(op, b, x0, cfg.tol, cfg.maxit, jacobi_inverse(prob.matrix));
            break;
        }
        case Method::Adi: {
            AdiConfig acfg;
            acfg.alpha = cfg.adi_alpha;
            acfg.tol = cfg.tol;
            acfg.maxit = cfg.maxit;
            res = adi_solve(prob.matrix, b, acfg);
            break;
        }
        case Method::Pinv: {
            const auto t0 = std::chrono::steady_clock::now();
            const LinearOperator f_op{dim, [&prob](const Vector& v) {
                                          Vector w = spmv(prob.matrix, v);
                                          for (size_t i = 0; i < w.size(); ++i) w[i] = v[i] - w[i];
                                          return w;
                                      }};
            const PinvResult pr = pinv_solve(f_op, b, cfg.m, cfg.r_k);
            row.p_t = elapsed(t0);
            res = gmres(op, b, pr.x, cfg.tol, cfg.maxit);
            break;
        }
        case Method::PslrGmres: {
            if (prob.saddle) {
                const auto t0 = std::chrono::steady_clock::now();
                const PslrPreconditioner pre = build_pslr(*prob.saddle, cfg.m, cfg.r_k);
                row.p_t = elapsed(t0);
                if (cfg.x0 == StartGuess::Pre) x0 = apply_pslr(pre, *prob.saddle, b);
                res = gmres(op, b, x0, cfg.tol, cfg.maxit);
            } else {
                const auto t0 = std::chrono::steady_clock::now();
                const CsrMatrix a = prob.matrix;
                const LinearOperator f_op{dim, [a](const Vector& v) {
                                              Vector w = spmv(a, v);
                                              for (size_t i = 0; i < w.size(); ++i) w[i] = v[i] - w[i];
                                              return w;
                                          }};
                const double rho = spectral_radius(f_op, 100);
                if (rho < kSplitRadiusCap) {
                    const PinvResult pr = pinv_solve(f_op, b, cfg.m, cfg.r_k);
                    row.p_t = elapsed(t0);
                    const PinvOperator pop = pr.op;
                    const LinearOperator precond{dim, [pop](const Vector& v) { return pinv_apply(pop, v); }};
                    if (cfg.x0 == StartGuess::Pre) x0 = pr.x;
                    res = gmres(op, b, x0, cfg.tol, cfg.maxit, precond);
                } else {
                    row.p_t = elapsed(t0);
                    res = gmres(op, b, x0, cfg.tol, cfg.maxit);
                }
            }
            break;
        }
    }

    row.i_t = res.report.time_iterate;
    row.t_t = row.o_t + row.p_t + row.i_t;
    row.n_iter = res.report.iterations;
    // relative to the right-hand side, so a warm start does not inflate it
    const double bn = nrm2(b);
    row.error = bn == 0.0 ? res.report.final_residual : res.report.final_residual / bn;
    row.status = status_string(res.report, cfg.maxit);
    out.report = res.report;
    out.x = std::move(res.x);
    return out;
}

std::string BenchRow::csv_header() {
    return "problem,method,m,r_k,x0,o-t,p-t,i-t,t-t,n-iter,error,status";
}

std::string BenchRow::csv() const {
    std::ostringstream os;
    os.precision(6);
    os << problem << "," << method << "," << m << "," << r_k << "," << x0 << "," << o_t << ","
       << p_t << "," << i_t << "," << t_t << "," << n_iter << ",";
    os.precision(12);
    os << error << "," << status;
    return os.str();
}

void emit_spectrum(const LinearOperator& op, const std::string& out_path, index_t cap) {
    if (op.dim > cap) throw ConfigError("emit_spectrum: dimension exceeds cap");
    const auto eigs = dense_eigenvalues(densify(op));
    std::ofstream out(out_path);
    if (!out) throw IoError("emit_spectrum: cannot open " + out_path);
    out << "re,im\n";
    out.precision(17);
    for (const auto& z : eigs) out << z.real() << "," << z.imag() << "\n";
}

void emit_spectrum(const CsrMatrix& a, const std::string& out_path, index_t cap) {
    emit_spectrum(LinearOperator::from_csr(a), out_path, cap);
}

LinearOperator preconditioned_schur_operator(const SaddleSystem& sys,
                                             const PslrPreconditioner& pre) {
    const CsrMatrix b = sys.b_block;
    const CsrMatrix bt = transpose(b);
    return {sys.p(), [sys, pre, b, bt](const Vector& v) {
                // S v = C v + B (A^T A)^{-1} B^T v
                Vector sv = spmv(sys.c_block, v);
                Vector w = spmv(b, apply_inverse(pre.ata_fact, spmv(bt, v)));
                axpy(1.0, w, sv);
                return apply_schur_inverse(pre, sys, sv);
            }};
}

std::string markdown_table(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "| problem | method | m | r_k | x0 | o-t | p-t | i-t | t-t | n-iter | error | status |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        std::ostringstream line;
        line.precision(6);
        line << "| " << r.problem << " | " << r.method << " | " << r.m << " | " << r.r_k << " | "
             << r.x0 << " | " << r.o_t << " | " << r.p_t << " | " << r.i_t << " | " << r.t_t
             << " | " << r.n_iter << " | ";
        line.precision(3);
        line << std::scientific << r.error << " | " << r.status << " |\n";
        os << line.str();
    }
    return os.str();
}

}  // namespace pslr
