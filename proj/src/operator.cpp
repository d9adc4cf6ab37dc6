#include "pslr/operator.hpp"

namespace pslr {

LinearOperator LinearOperator::from_csr(const CsrMatrix& a) {
    if (a.nrows != a.ncols) throw DimensionError("operator: matrix not square");
    return {a.nrows, [a](const Vector& v) { return spmv(a, v); }};
}

LinearOperator LinearOperator::compose(const LinearOperator& outer, const LinearOperator& inner) {
    if (outer.dim != inner.dim) throw DimensionError("operator: composition dimension mismatch");
    return {outer.dim, [outer, inner](const Vector& v) { return outer.apply(inner.apply(v)); }};
}

DenseMatrix densify(const LinearOperator& op) {
    DenseMatrix d(op.dim, op.dim);
    Vector e(static_cast<size_t>(op.dim), 0.0);
    for (index_t j = 0; j < op.dim; ++j) {
        e[static_cast<size_t>(j)] = 1.0;
        const Vector col = op.apply(e);
        for (index_t i = 0; i < op.dim; ++i) d(i, j) = col[static_cast<size_t>(i)];
        e[static_cast<size_t>(j)] = 0.0;
    }
    return d;
}

}  // namespace pslr
