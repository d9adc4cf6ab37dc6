#include "pslr/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pslr {

namespace {

index_t find_in_row(const CsrMatrix& a, index_t i, index_t j) {
    auto first = a.col_idx.begin() + a.row_ptr[static_cast<size_t>(i)];
    auto last = a.col_idx.begin() + a.row_ptr[static_cast<size_t>(i) + 1];
    auto it = std::lower_bound(first, last, j);
    if (it != last && *it == j) return static_cast<index_t>(it - a.col_idx.begin());
    return -1;
}

double max_abs_diag(const CsrMatrix& a) {
    double m = 0.0;
    for (index_t i = 0; i < a.nrows; ++i) {
        index_t d = find_in_row(a, i, i);
        if (d >= 0) m = std::max(m, std::fabs(a.values[static_cast<size_t>(d)]));
    }
    return m;
}

void split_lu(const CsrMatrix& work, Factorization& f) {
    std::vector<Triplet> lt, ut;
    for (index_t i = 0; i < work.nrows; ++i) {
        lt.push_back({i, i, 1.0});
        for (index_t k = work.row_ptr[static_cast<size_t>(i)]; k < work.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            index_t j = work.col_idx[static_cast<size_t>(k)];
            double v = work.values[static_cast<size_t>(k)];
            if (j < i) {
                lt.push_back({i, j, v});
            } else {
                ut.push_back({i, j, v});
            }
        }
    }
    f.lower = csr_from_triplets(work.nrows, work.ncols, std::move(lt));
    f.upper = csr_from_triplets(work.nrows, work.ncols, std::move(ut));
}

}  // namespace

Factorization ilu0(const CsrMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("ilu0: matrix not square");
    CsrMatrix work = a;
    const double pivot_floor = 1e-14 * max_abs_diag(a);
    std::vector<index_t> diag(static_cast<size_t>(a.nrows), -1);

    for (index_t i = 0; i < work.nrows; ++i) {
        for (index_t kk = work.row_ptr[static_cast<size_t>(i)]; kk < work.row_ptr[static_cast<size_t>(i) + 1];
             ++kk) {
            const index_t k = work.col_idx[static_cast<size_t>(kk)];
            if (k >= i) break;
            const double piv = work.values[static_cast<size_t>(diag[static_cast<size_t>(k)])];
            if (std::fabs(piv) <= pivot_floor) throw PivotBreakdown("ilu0: zero pivot");
            const double lik = work.values[static_cast<size_t>(kk)] / piv;
            work.values[static_cast<size_t>(kk)] = lik;
            // eliminate within the pattern of row i only
            for (index_t jj = diag[static_cast<size_t>(k)] + 1; jj < work.row_ptr[static_cast<size_t>(k) + 1];
                 ++jj) {
                const index_t pos = find_in_row(work, i, work.col_idx[static_cast<size_t>(jj)]);
                if (pos >= 0) work.values[static_cast<size_t>(pos)] -= lik * work.values[static_cast<size_t>(jj)];
            }
        }
        const index_t d = find_in_row(work, i, i);
        if (d < 0) throw PivotBreakdown("ilu0: structurally missing diagonal");
        if (std::fabs(work.values[static_cast<size_t>(d)]) <= pivot_floor) {
            throw PivotBreakdown("ilu0: zero pivot");
        }
        diag[static_cast<size_t>(i)] = d;
    }

    Factorization f;
    f.kind = FactorKind::ILU0;
    split_lu(work, f);
    return f;
}

Factorization ic0(const CsrMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("ic0: matrix not square");
    const index_t n = a.nrows;
    std::vector<std::vector<index_t>> lcols(static_cast<size_t>(n));
    std::vector<std::vector<double>> lvals(static_cast<size_t>(n));
    std::vector<double> ldiag(static_cast<size_t>(n), 0.0);

    for (index_t i = 0; i < n; ++i) {
        for (index_t kk = a.row_ptr[static_cast<size_t>(i)]; kk < a.row_ptr[static_cast<size_t>(i) + 1]; ++kk) {
            const index_t j = a.col_idx[static_cast<size_t>(kk)];
            if (j > i) break;
            // inner product of L rows i and j over their common pattern
            double s = a.values[static_cast<size_t>(kk)];
            const auto& ci = lcols[static_cast<size_t>(i)];
            const auto& cj = lcols[static_cast<size_t>(j)];
            size_t pi = 0, pj = 0;
            while (pi < ci.size() && pj < cj.size()) {
                if (ci[pi] == cj[pj]) {
                    s -= lvals[static_cast<size_t>(i)][pi] * lvals[static_cast<size_t>(j)][pj];
                    ++pi;
                    ++pj;
                } else if (ci[pi] < cj[pj]) {
                    ++pi;
                } else {
                    ++pj;
                }
            }
            if (j < i) {
                if (ldiag[static_cast<size_t>(j)] == 0.0) throw PivotBreakdown("ic0: zero pivot");
                lcols[static_cast<size_t>(i)].push_back(j);
                lvals[static_cast<size_t>(i)].push_back(s / ldiag[static_cast<size_t>(j)]);
            } else {
                if (s <= 0.0) throw PivotBreakdown("ic0: non-positive pivot (SPD violated under dropping)");
                ldiag[static_cast<size_t>(i)] = std::sqrt(s);
            }
        }
        if (ldiag[static_cast<size_t>(i)] == 0.0) {
            throw PivotBreakdown("ic0: structurally missing diagonal");
        }
    }

    std::vector<Triplet> lt;
    for (index_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < lcols[static_cast<size_t>(i)].size(); ++k) {
            lt.push_back({i, lcols[static_cast<size_t>(i)][k], lvals[static_cast<size_t>(i)][k]});
        }
        lt.push_back({i, i, ldiag[static_cast<size_t>(i)]});
    }
    Factorization f;
    f.kind = FactorKind::IC0;
    f.lower = csr_from_triplets(n, n, std::move(lt));
    f.upper = transpose(f.lower);
    return f;
}

Factorization factor_dense(const DenseMatrix& a, FactorKind kind) {
    if (a.nrows != a.ncols) throw DimensionError("factor_dense: matrix not square");
    const index_t n = a.nrows;
    double amax = 0.0;
    for (double v : a.values) amax = std::max(amax, std::fabs(v));
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(amax, 1.0) * static_cast<double>(n);

    if (kind == FactorKind::Cholesky) {
        DenseMatrix l(n, n);
        for (index_t i = 0; i < n; ++i) {
            for (index_t j = 0; j <= i; ++j) {
                double s = a(i, j);
                for (index_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
                if (j == i) {
                    if (s <= tiny * tiny) throw SingularMatrix("factor_dense: matrix not SPD");
                    l(i, i) = std::sqrt(s);
                } else {
                    l(i, j) = s / l(j, j);
                }
            }
        }
        std::vector<Triplet> lt;
        for (index_t i = 0; i < n; ++i) {
            for (index_t j = 0; j <= i; ++j) {
                if (l(i, j) != 0.0) lt.push_back({i, j, l(i, j)});
            }
        }
        Factorization f;
        f.kind = FactorKind::Cholesky;
        f.lower = csr_from_triplets(n, n, std::move(lt));
        f.upper = transpose(f.lower);
        return f;
    }

    if (kind != FactorKind::LU) throw ConfigError("factor_dense: unsupported kind");
    DenseMatrix work = a;
    std::vector<index_t> perm(static_cast<size_t>(n));
    for (index_t i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    for (index_t k = 0; k < n; ++k) {
        index_t piv = k;
        for (index_t i = k + 1; i < n; ++i) {
            if (std::fabs(work(i, k)) > std::fabs(work(piv, k))) piv = i;
        }
        if (std::fabs(work(piv, k)) <= tiny) throw SingularMatrix("factor_dense: singular matrix");
        if (piv != k) {
            for (index_t j = 0; j < n; ++j) std::swap(work(k, j), work(piv, j));
            std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(piv)]);
        }
        for (index_t i = k + 1; i < n; ++i) {
            work(i, k) /= work(k, k);
            for (index_t j = k + 1; j < n; ++j) work(i, j) -= work(i, k) * work(k, j);
        }
    }
    std::vector<Triplet> lt, ut;
    for (index_t i = 0; i < n; ++i) {
        lt.push_back({i, i, 1.0});
        for (index_t j = 0; j < i; ++j) {
            if (work(i, j) != 0.0) lt.push_back({i, j, work(i, j)});
        }
        for (index_t j = i; j < n; ++j) {
            if (work(i, j) != 0.0) ut.push_back({i, j, work(i, j)});
        }
    }
    Factorization f;
    f.kind = FactorKind::LU;
    f.lower = csr_from_triplets(n, n, std::move(lt));
    f.upper = csr_from_triplets(n, n, std::move(ut));
    f.perm = std::move(perm);
    return f;
}

Vector apply_inverse(const Factorization& f, const Vector& b) {
    const index_t n = f.dim();
    if (static_cast<index_t>(b.size()) != n) throw DimensionError("apply_inverse: dimension mismatch");

    Vector x(b.size());
    if (f.perm) {
        for (index_t i = 0; i < n; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>((*f.perm)[static_cast<size_t>(i)])];
    } else {
        x = b;
    }

    const CsrMatrix& l = f.lower;
    for (index_t i = 0; i < n; ++i) {
        double s = x[static_cast<size_t>(i)];
        double diag = 0.0;
        for (index_t k = l.row_ptr[static_cast<size_t>(i)]; k < l.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            const index_t j = l.col_idx[static_cast<size_t>(k)];
            if (j < i) {
                s -= l.values[static_cast<size_t>(k)] * x[static_cast<size_t>(j)];
            } else if (j == i) {
                diag = l.values[static_cast<size_t>(k)];
            }
        }
        if (diag == 0.0) throw SingularMatrix("apply_inverse: zero diagonal in L");
        x[static_cast<size_t>(i)] = s / diag;
    }

    const CsrMatrix& u = f.upper;
    for (index_t i = n - 1; i >= 0; --i) {
        double s = x[static_cast<size_t>(i)];
        double diag = 0.0;
        for (index_t k = u.row_ptr[static_cast<size_t>(i)]; k < u.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            const index_t j = u.col_idx[static_cast<size_t>(k)];
            if (j > i) {
                s -= u.values[static_cast<size_t>(k)] * x[static_cast<size_t>(j)];
            } else if (j == i) {
                diag = u.values[static_cast<size_t>(k)];
            }
        }
        if (diag == 0.0) throw SingularMatrix("apply_inverse: zero diagonal in U");
        x[static_cast<size_t>(i)] = s / diag;
    }
    return x;
}

}  // namespace pslr
