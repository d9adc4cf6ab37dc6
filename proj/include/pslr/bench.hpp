#ifndef PSLR_BENCH_HPP
#define PSLR_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pslr/baselines.hpp"
#include "pslr/pslr.hpp"

namespace pslr {

enum class ProblemKind { Example1, Banded3, Banded5, Banded7, TridiagPaper, MmFile, RandomSaddle };
enum class Method { PslrGmres, Gmres, Cg, PcgIc0, Pinv, Adi, JacobiGmres };
enum class StartGuess { Pre, Zero, Random };

struct BenchConfig {
    ProblemKind problem = ProblemKind::Example1;
    std::string mm_path;        // MmFile only
    index_t order = 128;        // banded orders / example1 block order
    index_t random_n = 64;      // RandomSaddle
    index_t random_p = 32;
    Method method = Method::PslrGmres;
    index_t m = 5;
    index_t r_k = 15;
    double tol = 1e-6;
    index_t maxit = 500;
    StartGuess x0 = StartGuess::Zero;
    bool reorder = false;
    bool allow_large_m = false;
    std::uint64_t seed = 42;
    double adi_alpha = 1.5;
};

/// A prepared problem: either a saddle system plus its assembly, or a plain
/// square matrix.
struct Problem {
    std::string name;
    std::optional<SaddleSystem> saddle;
    CsrMatrix matrix;  // assembled saddle matrix or the plain matrix
    Vector rhs;
};

Problem make_problem(const BenchConfig& cfg);

struct BenchRow {
    std::string problem;
    std::string method;
    index_t m = 0;
    index_t r_k = 0;
    std::string x0;
    double o_t = 0.0;
    double p_t = 0.0;
    double i_t = 0.0;
    double t_t = 0.0;
    index_t n_iter = 0;
    double error = 0.0;
    std::string status;  // "ok", "F" (maxit < 3000), "-" (3000 exhausted), "breakdown"

    std::string csv() const;
    static std::string csv_header();
};

struct BenchOutcome {
    SolveReport report;
    BenchRow row;
    Vector x;
};

/// Builds the configured problem/method pair, runs it to termination and
/// fills one table row.
BenchOutcome run_bench(const BenchConfig& cfg);

/// Writes "re,im" eigenvalue scatter rows for a densifiable operator.
void emit_spectrum(const LinearOperator& op, const std::string& out_path, index_t cap = 1024);
void emit_spectrum(const CsrMatrix& a, const std::string& out_path, index_t cap = 1024);

/// The densified preconditioned Schur operator
/// (sum M^i C^{-1})(I + V G V^T) S used for the eigenvalue scatter studies.
LinearOperator preconditioned_schur_operator(const SaddleSystem& sys, const PslrPreconditioner& pre);

std::string markdown_table(const std::vector<BenchRow>& rows);

}  // namespace pslr

#endif
