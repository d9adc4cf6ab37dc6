#include "pslr/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pslr {

double CsrMatrix::at(index_t i, index_t j) const {
    auto first = col_idx.begin() + row_ptr[static_cast<size_t>(i)];
    auto last = col_idx.begin() + row_ptr[static_cast<size_t>(i) + 1];
    auto it = std::lower_bound(first, last, j);
    if (it != last && *it == j) {
        return values[static_cast<size_t>(it - col_idx.begin())];
    }
    return 0.0;
}

void CsrMatrix::validate() const {
    if (static_cast<index_t>(row_ptr.size()) != nrows + 1) {
        throw DimensionError("csr: row_ptr length mismatch");
    }
    if (row_ptr.front() != 0 || row_ptr.back() != nnz()) {
        throw DimensionError("csr: row_ptr endpoints inconsistent with nnz");
    }
    for (index_t i = 0; i < nrows; ++i) {
        if (row_ptr[static_cast<size_t>(i)] > row_ptr[static_cast<size_t>(i) + 1]) {
            throw DimensionError("csr: row_ptr not non-decreasing");
        }
        for (index_t k = row_ptr[static_cast<size_t>(i)]; k < row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            if (col_idx[static_cast<size_t>(k)] < 0 || col_idx[static_cast<size_t>(k)] >= ncols) {
                throw DimensionError("csr: column index out of range");
            }
            if (k > row_ptr[static_cast<size_t>(i)] &&
                col_idx[static_cast<size_t>(k - 1)] >= col_idx[static_cast<size_t>(k)]) {
                throw DimensionError("csr: columns not strictly increasing within row");
            }
        }
    }
}

CsrMatrix csr_from_triplets(index_t nrows, index_t ncols, std::vector<Triplet> entries) {
    for (const auto& t : entries) {
        if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
            throw DimensionError("triplet index out of range");
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    CsrMatrix m;
    m.nrows = nrows;
    m.ncols = ncols;
    m.row_ptr.assign(static_cast<size_t>(nrows) + 1, 0);
    for (size_t k = 0; k < entries.size(); ++k) {
        if (k > 0 && entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
            m.values.back() += entries[k].value;
            continue;
        }
        m.col_idx.push_back(entries[k].col);
        m.values.push_back(entries[k].value);
        m.row_ptr[static_cast<size_t>(entries[k].row) + 1] += 1;
    }
    std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
    return m;
}

CsrMatrix csr_identity(index_t n) {
    CsrMatrix m;
    m.nrows = m.ncols = n;
    m.row_ptr.resize(static_cast<size_t>(n) + 1);
    m.col_idx.resize(static_cast<size_t>(n));
    m.values.assign(static_cast<size_t>(n), 1.0);
    for (index_t i = 0; i <= n; ++i) m.row_ptr[static_cast<size_t>(i)] = i;
    for (index_t i = 0; i < n; ++i) m.col_idx[static_cast<size_t>(i)] = i;
    return m;
}

CsrMatrix csr_diag(const Vector& d) {
    CsrMatrix m = csr_identity(static_cast<index_t>(d.size()));
    m.values = d;
    return m;
}

CsrMatrix gen_banded(index_t n, const std::vector<index_t>& offsets, const Vector& vals) {
    if (offsets.size() != vals.size()) {
        throw DimensionError("gen_banded: offsets/vals length mismatch");
    }
    for (size_t k = 0; k < offsets.size(); ++k) {
        if (std::llabs(offsets[k]) >= n) throw DimensionError("gen_banded: offset out of range");
        for (size_t j = k + 1; j < offsets.size(); ++j) {
            if (offsets[j] == offsets[k]) throw DimensionError("gen_banded: duplicate offset");
        }
    }
    std::vector<Triplet> trips;
    for (index_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < offsets.size(); ++k) {
            index_t j = i + offsets[k];
            if (j >= 0 && j < n) trips.push_back({i, j, vals[k]});
        }
    }
    return csr_from_triplets(n, n, std::move(trips));
}

Vector spmv(const CsrMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.ncols) {
        throw DimensionError("spmv: dimension mismatch");
    }
    Vector y(static_cast<size_t>(a.nrows), 0.0);
    for (index_t i = 0; i < a.nrows; ++i) {
        double sum = 0.0;
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            sum += a.values[static_cast<size_t>(k)] * x[static_cast<size_t>(a.col_idx[static_cast<size_t>(k)])];
        }
        y[static_cast<size_t>(i)] = sum;
    }
    return y;
}

CsrMatrix transpose(const CsrMatrix& a) {
    CsrMatrix t;
    t.nrows = a.ncols;
    t.ncols = a.nrows;
    t.row_ptr.assign(static_cast<size_t>(a.ncols) + 1, 0);
    t.col_idx.resize(static_cast<size_t>(a.nnz()));
    t.values.resize(static_cast<size_t>(a.nnz()));
    for (index_t k = 0; k < a.nnz(); ++k) {
        t.row_ptr[static_cast<size_t>(a.col_idx[static_cast<size_t>(k)]) + 1] += 1;
    }
    std::partial_sum(t.row_ptr.begin(), t.row_ptr.end(), t.row_ptr.begin());
    std::vector<index_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            index_t j = a.col_idx[static_cast<size_t>(k)];
            index_t pos = next[static_cast<size_t>(j)]++;
            t.col_idx[static_cast<size_t>(pos)] = i;
            t.values[static_cast<size_t>(pos)] = a.values[static_cast<size_t>(k)];
        }
    }
    return t;
}

CsrMatrix csr_add(const CsrMatrix& a, const CsrMatrix& b, double beta) {
    if (a.nrows != b.nrows || a.ncols != b.ncols) {
        throw DimensionError("csr_add: shape mismatch");
    }
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(a.nnz() + b.nnz()));
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            trips.push_back({i, a.col_idx[static_cast<size_t>(k)], a.values[static_cast<size_t>(k)]});
        }
    }
    for (index_t i = 0; i < b.nrows; ++i) {
        for (index_t k = b.row_ptr[static_cast<size_t>(i)]; k < b.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            trips.push_back({i, b.col_idx[static_cast<size_t>(k)], beta * b.values[static_cast<size_t>(k)]});
        }
    }
    return csr_from_triplets(a.nrows, a.ncols, std::move(trips));
}

CsrMatrix csr_scale(const CsrMatrix& a, double s) {
    CsrMatrix m = a;
    for (auto& v : m.values) v *= s;
    return m;
}

CsrMatrix csr_permute_sym(const CsrMatrix& a, const std::vector<index_t>& perm) {
    if (a.nrows != a.ncols || static_cast<index_t>(perm.size()) != a.nrows) {
        throw DimensionError("csr_permute_sym: shape mismatch");
    }
    std::vector<index_t> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<index_t>(i);
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(a.nnz()));
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            trips.push_back({inv[static_cast<size_t>(i)],
                             inv[static_cast<size_t>(a.col_idx[static_cast<size_t>(k)])],
                             a.values[static_cast<size_t>(k)]});
        }
    }
    return csr_from_triplets(a.nrows, a.ncols, std::move(trips));
}

bool is_symmetric(const CsrMatrix& a, double rel_tol) {
    if (a.nrows != a.ncols) return false;
    double scale = 0.0;
    for (double v : a.values) scale = std::max(scale, std::fabs(v));
    const CsrMatrix t = transpose(a);
    if (t.col_idx != a.col_idx || t.row_ptr != a.row_ptr) return false;
    for (size_t k = 0; k < a.values.size(); ++k) {
        if (std::fabs(a.values[k] - t.values[k]) > rel_tol * scale) return false;
    }
    return true;
}

DenseMatrix to_dense(const CsrMatrix& a) {
    DenseMatrix d(a.nrows, a.ncols);
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            d(i, a.col_idx[static_cast<size_t>(k)]) = a.values[static_cast<size_t>(k)];
        }
    }
    return d;
}

Vector dense_matvec(const DenseMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.ncols) {
        throw DimensionError("dense_matvec: dimension mismatch");
    }
    Vector y(static_cast<size_t>(a.nrows), 0.0);
    for (index_t i = 0; i < a.nrows; ++i) {
        double sum = 0.0;
        for (index_t j = 0; j < a.ncols; ++j) sum += a(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = sum;
    }
    return y;
}

Vector dense_matvec_transpose(const DenseMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.nrows) {
        throw DimensionError("dense_matvec_transpose: dimension mismatch");
    }
    Vector y(static_cast<size_t>(a.ncols), 0.0);
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t j = 0; j < a.ncols; ++j) y[static_cast<size_t>(j)] += a(i, j) * x[static_cast<size_t>(i)];
    }
    return y;
}

double dot(const Vector& x, const Vector& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double nrm2(const Vector& x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, const Vector& x, Vector& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector scaled(const Vector& x, double alpha) {
    Vector y = x;
    for (auto& v : y) v *= alpha;
    return y;
}

}  // namespace pslr
