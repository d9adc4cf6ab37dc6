#ifndef PSLR_TYPES_HPP
#define PSLR_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pslr {

using index_t = std::ptrdiff_t;
using Vector = std::vector<double>;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFormat : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PivotBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorrectionSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pslr

#endif
