#include "pslr/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pslr {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

CsrMatrix mm_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("mm_read: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("mm_read: empty file");
    std::istringstream header(lower(line));
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%matrixmarket" || object != "matrix") {
        throw ParseError("mm_read: malformed MatrixMarket banner");
    }
    if (format != "coordinate") throw UnsupportedFormat("mm_read: only coordinate format supported");
    if (field != "real" && field != "integer") {
        throw UnsupportedFormat("mm_read: unsupported field '" + field + "'");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw UnsupportedFormat("mm_read: unsupported symmetry '" + symmetry + "'");
    }
    const bool symmetric = symmetry == "symmetric";

    index_t nrows = 0, ncols = 0;
    long long nnz_decl = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream sizes(line);
        if (!(sizes >> nrows >> ncols >> nnz_decl)) throw ParseError("mm_read: malformed size line");
        break;
    }
    if (nrows <= 0 || ncols <= 0 || nnz_decl < 0) throw ParseError("mm_read: invalid dimensions");

    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(nnz_decl));
    long long seen = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream entry(line);
        index_t i, j;
        double v;
        if (!(entry >> i >> j >> v)) throw ParseError("mm_read: malformed entry line");
        if (i < 1 || i > nrows || j < 1 || j > ncols) {
            throw ParseError("mm_read: index out of declared bounds");
        }
        trips.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) trips.push_back({j - 1, i - 1, v});
        ++seen;
    }
    if (seen != nnz_decl) throw ParseError("mm_read: entry count does not match header");
    return csr_from_triplets(nrows, ncols, std::move(trips));
}

void mm_write(const CsrMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("mm_write: cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.nrows << " " << a.ncols << " " << a.nnz() << "\n";
    out.precision(17);
    for (index_t i = 0; i < a.nrows; ++i) {
        for (index_t k = a.row_ptr[static_cast<size_t>(i)]; k < a.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
            out << (i + 1) << " " << (a.col_idx[static_cast<size_t>(k)] + 1) << " "
                << a.values[static_cast<size_t>(k)] << "\n";
        }
    }
    if (!out) throw IoError("mm_write: write failure on " + path);
}

}  // namespace pslr
