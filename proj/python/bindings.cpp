#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pslr/baselines.hpp"
#include "pslr/bench.hpp"
#include "pslr/mmio.hpp"
#include "pslr/pslr.hpp"

namespace py = pybind11;
using namespace pslr;

namespace {

Vector to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 1) throw DimensionError("expected a 1-d array");
    const double* p = arr.data();
    return Vector(p, p + arr.shape(0));
}

py::array_t<double> to_array(const Vector& v) {
    py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::Breakdown: return "breakdown";
    }
    return "?";
}

py::dict report_dict(const GmresResult& res) {
    py::dict d;
    d["x"] = to_array(res.x);
    d["iterations"] = res.report.iterations;
    d["status"] = status_name(res.report.status);
    d["final_residual"] = res.report.final_residual;
    d["residual_history"] = to_array(res.report.residual_history);
    return d;
}

}  // namespace

PYBIND11_MODULE(_pslr, m) {
    m.doc() = "Power-series Schur-complement low-rank preconditioning for saddle point systems";

    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<PivotBreakdown>(m, "PivotBreakdown");
    py::register_exception<SingularMatrix>(m, "SingularMatrixError");
    py::register_exception<InvalidInput>(m, "InvalidInputError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<CsrMatrix>(m, "CsrMatrix")
        .def_property_readonly("shape",
                               [](const CsrMatrix& a) { return py::make_tuple(a.nrows, a.ncols); })
        .def_property_readonly("nnz", &CsrMatrix::nnz)
        .def("__getitem__",
             [](const CsrMatrix& a, std::pair<index_t, index_t> ij) {
                 if (ij.first < 0 || ij.first >= a.nrows || ij.second < 0 || ij.second >= a.ncols)
                     throw py::index_error();
                 return a.at(ij.first, ij.second);
             })
        .def("matvec", [](const CsrMatrix& a, py::array_t<double> x) {
            return to_array(spmv(a, to_vector(x)));
        })
        .def("transpose", [](const CsrMatrix& a) { return transpose(a); })
        .def("is_symmetric", [](const CsrMatrix& a) { return is_symmetric(a); })
        .def("to_coo", [](const CsrMatrix& a) {
            std::vector<index_t> rows;
            rows.reserve(static_cast<size_t>(a.nnz()));
            for (index_t i = 0; i < a.nrows; ++i) {
                for (index_t k = a.row_ptr[static_cast<size_t>(i)];
                     k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
                    rows.push_back(i);
                }
            }
            return py::make_tuple(rows, a.col_idx, a.values);
        });

    m.def(
        "from_triplets",
        [](index_t nrows, index_t ncols, const std::vector<index_t>& rows,
           const std::vector<index_t>& cols, const std::vector<double>& vals) {
            if (rows.size() != cols.size() || rows.size() != vals.size())
                throw DimensionError("triplet arrays must have equal length");
            std::vector<Triplet> trips(rows.size());
            for (size_t k = 0; k < rows.size(); ++k) trips[k] = {rows[k], cols[k], vals[k]};
            return csr_from_triplets(nrows, ncols, std::move(trips));
        },
        py::arg("nrows"), py::arg("ncols"), py::arg("rows"), py::arg("cols"), py::arg("vals"));

    m.def("gen_banded", &gen_banded, py::arg("n"), py::arg("offsets"), py::arg("vals"));
    m.def("identity", &csr_identity, py::arg("n"));
    m.def("mm_read", &mm_read, py::arg("path"));
    m.def("mm_write", &mm_write, py::arg("matrix"), py::arg("path"));

    py::class_<SaddleSystem>(m, "SaddleSystem")
        .def_readonly("ata", &SaddleSystem::ata)
        .def_readonly("b_block", &SaddleSystem::b_block)
        .def_readonly("c_block", &SaddleSystem::c_block)
        .def_property_readonly("n", &SaddleSystem::n)
        .def_property_readonly("p", &SaddleSystem::p)
        .def("assemble", [](const SaddleSystem& sys) { return assemble_saddle(sys); });

    py::enum_<SaddleSign>(m, "SaddleSign")
        .value("positive", SaddleSign::Positive)
        .value("negative", SaddleSign::Negative);

    m.def("example1", &gen_example1_order, py::arg("order") = 128);
    m.def("random_saddle", &gen_random_saddle, py::arg("n"), py::arg("p"), py::arg("seed"),
          py::arg("b_scale") = 1.0, py::arg("sign") = SaddleSign::Positive);

    py::class_<PslrPreconditioner>(m, "PslrPreconditioner")
        .def_readonly("m", &PslrPreconditioner::m)
        .def_readonly("r_k", &PslrPreconditioner::r_k)
        .def_readonly("build_seconds", &PslrPreconditioner::build_seconds);

    m.def("build_pslr",
          py::overload_cast<const SaddleSystem&, index_t, index_t>(&build_pslr),
          py::arg("system"), py::arg("m") = 5, py::arg("r_k") = 15);

    m.def(
        "apply_pslr",
        [](const PslrPreconditioner& pre, const SaddleSystem& sys, py::array_t<double> b) {
            return to_array(apply_pslr(pre, sys, to_vector(b)));
        },
        py::arg("preconditioner"), py::arg("system"), py::arg("b"));

    m.def(
        "solve_saddle",
        [](const SaddleSystem& sys, py::array_t<double> b, index_t m, index_t r_k, double tol,
           index_t maxit) {
            const PslrPreconditioner pre = build_pslr(sys, m, r_k);
            const Vector rhs = to_vector(b);
            const Vector x0 = apply_pslr(pre, sys, rhs);
            const CsrMatrix a = assemble_saddle(sys);
            return report_dict(gmres(LinearOperator::from_csr(a), rhs, x0, tol, maxit));
        },
        py::arg("system"), py::arg("b"), py::arg("m") = 5, py::arg("r_k") = 15,
        py::arg("tol") = 1e-6, py::arg("maxit") = 500,
        "Series-plus-low-rank start guess polished by full GMRES.");

    m.def(
        "gmres",
        [](const CsrMatrix& a, py::array_t<double> b, double tol, index_t maxit) {
            const Vector rhs = to_vector(b);
            return report_dict(
                gmres(LinearOperator::from_csr(a), rhs, Vector(rhs.size(), 0.0), tol, maxit));
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = 1e-6, py::arg("maxit") = 500);

    m.def(
        "cg",
        [](const CsrMatrix& a, py::array_t<double> b, double tol, index_t maxit) {
            const Vector rhs = to_vector(b);
            return report_dict(cg(a, rhs, Vector(rhs.size(), 0.0), tol, maxit));
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = 1e-6, py::arg("maxit") = 500);

    m.def(
        "pinv_solve",
        [](const CsrMatrix& a, py::array_t<double> b, index_t m, index_t r_k) {
            // splitting a = I - F
            const LinearOperator f_op{a.nrows, [a](const Vector& v) {
                                          Vector w = spmv(a, v);
                                          for (size_t i = 0; i < w.size(); ++i) w[i] = v[i] - w[i];
                                          return w;
                                      }};
            return to_array(pinv_solve(f_op, to_vector(b), m, r_k).x);
        },
        py::arg("a"), py::arg("b"), py::arg("m") = 5, py::arg("r_k") = 15);

    m.def(
        "adi_solve",
        [](const CsrMatrix& a, py::array_t<double> b, double alpha, double tol, index_t maxit) {
            AdiConfig cfg;
            cfg.alpha = alpha;
            cfg.tol = tol;
            cfg.maxit = maxit;
            return report_dict(adi_solve(a, to_vector(b), cfg));
        },
        py::arg("a"), py::arg("b"), py::arg("alpha") = 1.5, py::arg("tol") = 1e-6,
        py::arg("maxit") = 300);

    m.def("rcm_order", &rcm_order, py::arg("a"));
    m.def("bandwidth", &bandwidth, py::arg("a"));
    m.def(
        "spectral_radius",
        [](const CsrMatrix& a, index_t iters) {
            return spectral_radius(LinearOperator::from_csr(a), iters);
        },
        py::arg("a"), py::arg("iters") = 100);
}
