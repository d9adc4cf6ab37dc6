#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pslr/bench.hpp"
#include "pslr/mmio.hpp"

namespace {

using namespace pslr;

ProblemKind parse_problem(const std::string& s) {
    if (s == "example1") return ProblemKind::Example1;
    if (s == "banded3") return ProblemKind::Banded3;
    if (s == "banded5") return ProblemKind::Banded5;
    if (s == "banded7") return ProblemKind::Banded7;
    if (s == "tridiag_paper") return ProblemKind::TridiagPaper;
    if (s == "random_saddle") return ProblemKind::RandomSaddle;
    return ProblemKind::MmFile;  // treated as a path
}

Method parse_method(const std::string& s) {
    if (s == "pslr_gmres") return Method::PslrGmres;
    if (s == "gmres") return Method::Gmres;
    if (s == "cg") return Method::Cg;
    if (s == "pcg_ic0") return Method::PcgIc0;
    if (s == "pinv") return Method::Pinv;
    if (s == "adi") return Method::Adi;
    if (s == "jacobi_gmres") return Method::JacobiGmres;
    throw ConfigError("unknown method: " + s);
}

StartGuess parse_guess(const std::string& s) {
    if (s == "pre") return StartGuess::Pre;
    if (s == "zero") return StartGuess::Zero;
    if (s == "random") return StartGuess::Random;
    throw ConfigError("unknown x0: " + s);
}

// "3", "0..5" or "0,2,5"
std::vector<index_t> parse_m_spec(const std::string& spec) {
    std::vector<index_t> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const index_t lo = std::stoll(spec.substr(0, dots));
        const index_t hi = std::stoll(spec.substr(dots + 2));
        for (index_t m = lo; m <= hi; ++m) out.push_back(m);
        return out;
    }
    size_t pos = 0;
    while (pos < spec.size()) {
        const size_t comma = spec.find(',', pos);
        const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PSLR_SEED")) return std::strtoull(env, nullptr, 10);
    return 42;
}

void fill_config(BenchConfig& cfg, const std::string& problem) {
    cfg.problem = parse_problem(problem);
    if (cfg.problem == ProblemKind::MmFile) cfg.mm_path = problem;
}

int exit_code_for(const BenchRow& row) {
    if (row.status == "ok") return 0;
    if (row.status == "F" || row.status == "-") return 2;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSLR saddle-point preconditioner bench front end"};
    app.require_subcommand(1);

    std::string problem = "example1";
    std::string out_path;
    std::string method = "pslr_gmres";
    std::string x0 = "zero";
    std::string m_spec = "5";
    std::string methods_spec;
    std::string x0_spec;
    std::string what = "matrix";
    std::string csv_path = "bench.csv";
    std::string md_path;
    BenchConfig cfg;
    cfg.seed = default_seed();
    index_t cap = 1024;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", problem, "problem name or MatrixMarket path");
        sub->add_option("--order", cfg.order, "matrix/block order for generated problems");
        sub->add_option("--n", cfg.random_n, "random_saddle primal dimension");
        sub->add_option("--p", cfg.random_p, "random_saddle constraint dimension");
        sub->add_option("--seed", cfg.seed, "seed for all randomness");
        sub->add_option("--tol", cfg.tol, "relative residual tolerance");
        sub->add_option("--maxit", cfg.maxit, "iteration cap");
        sub->add_option("--rk", cfg.r_k, "Arnoldi rank");
        sub->add_option("--alpha", cfg.adi_alpha, "ADI shift");
        sub->add_flag("--reorder", cfg.reorder, "apply RCM reordering");
        sub->add_flag("--allow-large-m", cfg.allow_large_m, "permit m > 5");
    };

    CLI::App* gen = app.add_subcommand("gen", "write a problem to MatrixMarket files");
    add_common(gen);
    gen->add_option("--out", out_path, "output directory")->required();

    CLI::App* solve = app.add_subcommand("solve", "run one solver configuration");
    add_common(solve);
    solve->add_option("--method", method, "solver method");
    solve->add_option("--m", m_spec, "series terms");
    solve->add_option("--x0", x0, "initial guess: pre|zero|random");

    CLI::App* bench = app.add_subcommand("bench", "sweep configurations and emit CSV/Markdown");
    add_common(bench);
    bench->add_option("--method", methods_spec, "comma-separated methods");
    bench->add_option("--m", m_spec, "series terms: single, a..b range or comma list");
    bench->add_option("--x0", x0_spec, "comma-separated initial guesses");
    bench->add_option("--csv", csv_path, "CSV output path");
    bench->add_option("--md", md_path, "Markdown output path");

    CLI::App* spectrum = app.add_subcommand("spectrum", "emit eigenvalue scatter data");
    add_common(spectrum);
    spectrum->add_option("--m", m_spec, "series terms for the preconditioned operator");
    spectrum->add_option("--what", what, "matrix | precond_schur");
    spectrum->add_option("--cap", cap, "dense eigenvalue size cap");
    spectrum->add_option("--out", out_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        fill_config(cfg, problem);

        if (gen->parsed()) {
            std::filesystem::create_directories(out_path);
            const Problem prob = make_problem(cfg);
            if (prob.saddle) {
                mm_write(prob.saddle->ata, out_path + "/ata.mtx");
                mm_write(prob.saddle->b_block, out_path + "/b.mtx");
                mm_write(prob.saddle->c_block, out_path + "/c.mtx");
            } else {
                mm_write(prob.matrix, out_path + "/matrix.mtx");
            }
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }

        if (solve->parsed()) {
            cfg.method = parse_method(method);
            cfg.x0 = parse_guess(x0);
            cfg.m = parse_m_spec(m_spec).at(0);
            const BenchOutcome out = run_bench(cfg);
            std::cout << "problem: " << out.row.problem << "\n"
                      << "method: " << out.row.method << "\n"
                      << "n-iter: " << out.row.n_iter << "\n"
                      << "error: " << out.row.error << "\n"
                      << "o-t: " << out.row.o_t << "\np-t: " << out.row.p_t << "\ni-t: " << out.row.i_t
                      << "\nt-t: " << out.row.t_t << "\n"
                      << "status: " << out.row.status << "\n";
            return exit_code_for(out.row);
        }

        if (bench->parsed()) {
            const std::vector<index_t> ms = parse_m_spec(m_spec);
            std::vector<Method> methods;
            if (methods_spec.empty()) {
                methods.push_back(Method::PslrGmres);
            } else {
                size_t pos = 0;
                while (pos < methods_spec.size()) {
                    const size_t comma = methods_spec.find(',', pos);
                    methods.push_back(parse_method(methods_spec.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos)));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            std::vector<StartGuess> guesses;
            if (x0_spec.empty()) {
                guesses.push_back(StartGuess::Zero);
            } else {
                size_t pos = 0;
                while (pos < x0_spec.size()) {
                    const size_t comma = x0_spec.find(',', pos);
                    guesses.push_back(parse_guess(x0_spec.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos)));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }

            std::vector<BenchRow> rows;
            int worst = 0;
            for (Method mm : methods) {
                for (StartGuess g : guesses) {
                    for (index_t m : ms) {
                        BenchConfig c = cfg;
                        c.method = mm;
                        c.x0 = g;
                        c.m = m;
                        const BenchOutcome out = run_bench(c);
                        rows.push_back(out.row);
                        worst = std::max(worst, exit_code_for(out.row));
                    }
                }
            }
            std::ofstream csv(csv_path);
            if (!csv) throw IoError("cannot open " + csv_path);
            csv << BenchRow::csv_header() << "\n";
            for (const auto& r : rows) csv << r.csv() << "\n";
            if (!md_path.empty()) {
                std::ofstream md(md_path);
                if (!md) throw IoError("cannot open " + md_path);
                md << markdown_table(rows);
            }
            std::cout << markdown_table(rows);
            return worst;
        }

        if (spectrum->parsed()) {
            const Problem prob = make_problem(cfg);
            if (what == "matrix") {
                emit_spectrum(prob.matrix, out_path, cap);
            } else if (what == "precond_schur") {
                if (!prob.saddle) throw ConfigError("precond_schur spectrum requires a saddle problem");
                cfg.m = parse_m_spec(m_spec).at(0);
                const PslrPreconditioner pre = build_pslr(*prob.saddle, cfg.m, cfg.r_k);
                emit_spectrum(preconditioned_schur_operator(*prob.saddle, pre), out_path, cap);
            } else {
                throw ConfigError("unknown --what: " + what);
            }
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
