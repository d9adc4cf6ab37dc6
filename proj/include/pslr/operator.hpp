#ifndef PSLR_OPERATOR_HPP
#define PSLR_OPERATOR_HPP

#include <functional>
#include <utility>

#include "pslr/csr.hpp"

namespace pslr {

/// Matrix-free linear action on vectors of a fixed dimension.
struct LinearOperator {
    index_t dim = 0;
    std::function<Vector(const Vector&)> apply;

    Vector operator()(const Vector& v) const { return apply(v); }

    static LinearOperator identity(index_t n) {
        return {n, [](const Vector& v) { return v; }};
    }
    static LinearOperator from_csr(const CsrMatrix& a);
    static LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);
};

/// Densifies an operator column by column (unit-vector probes).
DenseMatrix densify(const LinearOperator& op);

}  // namespace pslr

#endif
