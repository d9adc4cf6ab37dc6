#include "pslr/saddle.hpp"

#include <cmath>
#include <random>

namespace pslr {

void SaddleSystem::validate() const {
    if (ata.nrows != ata.ncols) throw DimensionError("saddle: ata not square");
    if (c_block.nrows != c_block.ncols) throw DimensionError("saddle: c_block not square");
    if (b_block.nrows != c_block.nrows || b_block.ncols != ata.ncols) {
        throw DimensionError("saddle: b_block shape inconsistent with ata/c_block");
    }
    if (!is_symmetric(ata)) throw InvalidInput("saddle: ata not symmetric");
    if (!is_symmetric(c_block)) throw InvalidInput("saddle: c_block not symmetric");
}

CsrMatrix assemble_saddle(const SaddleSystem& sys) {
    sys.validate();
    const index_t n = sys.n();
    const index_t p = sys.p();
    const CsrMatrix bt = transpose(sys.b_block);
    const double lower_sign = sys.sign == SaddleSign::Positive ? -1.0 : 1.0;
    const double c_sign = sys.sign == SaddleSign::Positive ? 1.0 : -1.0;

    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(sys.ata.nnz() + 2 * sys.b_block.nnz() + sys.c_block.nnz()));
    auto add_block = [&trips](const CsrMatrix& m, index_t roff, index_t coff, double s) {
        for (index_t i = 0; i < m.nrows; ++i) {
            for (index_t k = m.row_ptr[static_cast<size_t>(i)]; k < m.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
                trips.push_back({i + roff, m.col_idx[static_cast<size_t>(k)] + coff,
                                 s * m.values[static_cast<size_t>(k)]});
            }
        }
    };
    add_block(sys.ata, 0, 0, 1.0);
    add_block(bt, 0, n, 1.0);
    add_block(sys.b_block, n, 0, lower_sign);
    add_block(sys.c_block, n, n, c_sign);
    return csr_from_triplets(n + p, n + p, std::move(trips));
}

SaddleSystem gen_example1() { return gen_example1_order(128); }

SaddleSystem gen_example1_order(index_t n) {
    SaddleSystem sys;
    sys.ata = gen_banded(n, {-1, 0, 1}, {1.0, 4.0, 1.0});
    sys.b_block = csr_from_triplets(n, n, {{0, n - 1, 1.0}});
    sys.c_block = csr_identity(n);
    sys.sign = SaddleSign::Positive;
    return sys;
}

SaddleSystem gen_random_saddle(index_t n, index_t p, std::uint64_t seed, double b_scale,
                               SaddleSign sign) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    // Diagonally dominant symmetric tridiagonal-plus-noise blocks keep the
    // factorizations well conditioned.
    auto spd_block = [&](index_t m, double diag) {
        std::vector<Triplet> trips;
        for (index_t i = 0; i < m; ++i) {
            trips.push_back({i, i, diag + 0.5 * std::fabs(uni(rng))});
            if (i + 1 < m) {
                const double off = 0.5 * uni(rng);
                trips.push_back({i, i + 1, off});
                trips.push_back({i + 1, i, off});
            }
        }
        return csr_from_triplets(m, m, std::move(trips));
    };

    SaddleSystem sys;
    sys.ata = spd_block(n, 4.0);
    sys.c_block = spd_block(p, 2.0);
    std::vector<Triplet> btrips;
    std::uniform_int_distribution<index_t> col(0, n - 1);
    for (index_t i = 0; i < p; ++i) {
        // a few entries per row, duplicates summed by the builder
        for (int k = 0; k < 3; ++k) btrips.push_back({i, col(rng), b_scale * uni(rng)});
    }
    sys.b_block = csr_from_triplets(p, n, std::move(btrips));
    sys.sign = sign;
    return sys;
}

}  // namespace pslr
