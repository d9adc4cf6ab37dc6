#ifndef PSLR_SADDLE_HPP
#define PSLR_SADDLE_HPP

#include <cstdint>

#include "pslr/csr.hpp"

namespace pslr {

enum class SaddleSign {
    Positive,  // [A^T A, B^T; -B, C]
    Negative,  // [A^T A, B^T;  B, -C]
};

/// Block form of a 2x2 saddle point system. Stores B (p x n); B^T is
/// materialized by transpose at assembly.
struct SaddleSystem {
    CsrMatrix ata;      // n x n, SPD
    CsrMatrix b_block;  // p x n
    CsrMatrix c_block;  // p x p, SPD
    SaddleSign sign = SaddleSign::Positive;

    index_t n() const { return ata.nrows; }
    index_t p() const { return c_block.nrows; }
    index_t dim() const { return n() + p(); }

    /// Checks block shape consistency and symmetry of ata / c_block.
    void validate() const;
};

/// Places the four blocks per the sign convention into one (n+p) x (n+p) CSR.
CsrMatrix assemble_saddle(const SaddleSystem& sys);

/// Order-256 asymmetric test system: ata = tridiag(1,4,1) of order 128,
/// B with a single 1 at (0,127), C = I.
SaddleSystem gen_example1();

/// Same construction at a different block order.
SaddleSystem gen_example1_order(index_t n);

/// Seeded random SPD-blocked saddle system. b_scale controls the magnitude of
/// the coupling block and with it the norm of C^{-1} B (A^T A)^{-1} B^T.
SaddleSystem gen_random_saddle(index_t n, index_t p, std::uint64_t seed, double b_scale = 1.0,
                               SaddleSign sign = SaddleSign::Positive);

}  // namespace pslr

#endif
