#ifndef PSLR_MMIO_HPP
#define PSLR_MMIO_HPP

#include <string>

#include "pslr/csr.hpp"

namespace pslr {

/// Reads a Matrix Market coordinate file (real or integer field, general or
/// symmetric). Symmetric storage is mirrored to full, 1-based indices are
/// converted to 0-based and duplicates are summed.
CsrMatrix mm_read(const std::string& path);

/// Writes coordinate-real-general with 17 significant digits.
void mm_write(const CsrMatrix& a, const std::string& path);

}  // namespace pslr

#endif
